#include "eulerlab/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "eulerlab/errors.hpp"

namespace eulerlab {

namespace {

// 53-bit uniform in [0,1); fully pinned down by the mt19937_64 stream
double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Knuth's product method; total masses here are O(1)
std::size_t next_poisson(std::mt19937_64& rng, double lambda) {
  const double limit = std::exp(-lambda);
  std::size_t count = 0;
  double prod = next_uniform(rng);
  while (prod > limit) {
    ++count;
    prod *= next_uniform(rng);
  }
  return count;
}

}  // namespace

SampleBatch sample(const SignedAtomicMeasure& measure, std::size_t n,
                   std::uint64_t seed) {
  double total = 0.0;
  std::vector<double> cumulative;
  cumulative.reserve(measure.atoms().size());
  for (const Atom& atom : measure.atoms()) {
    if (atom.weight < 0.0) {
      throw Error(ErrorCode::SignedMeasure,
                  "cannot sample a measure with negative weights");
    }
    total += atom.weight;
    cumulative.push_back(total);
  }

  SampleBatch batch;
  batch.seed = seed;
  batch.source = measure;
  batch.points.assign(n, Vec2{0.0, 0.0});
  if (total <= 0.0) {
    // degenerate compound-Poisson law: all mass at the origin
    return batch;
  }

  std::mt19937_64 rng(seed);
  for (Vec2& point : batch.points) {
    const std::size_t jumps = next_poisson(rng, total);
    for (std::size_t j = 0; j < jumps; ++j) {
      const double u = next_uniform(rng) * total;
      const auto it =
          std::upper_bound(cumulative.begin(), cumulative.end(), u);
      const std::size_t index =
          std::min(static_cast<std::size_t>(it - cumulative.begin()),
                   cumulative.size() - 1);
      const Vec2& x = measure.atoms()[index].x;
      point[0] += x[0];
      point[1] += x[1];
    }
  }
  return batch;
}

std::complex<double> empirical_cf(const SampleBatch& batch, const Vec2& t) {
  if (batch.points.empty()) {
    throw Error(ErrorCode::EmptyBatch, "no points to average");
  }
  std::complex<double> sum(0.0, 0.0);
  for (const Vec2& point : batch.points) {
    sum += std::polar(1.0, dot(t, point));
  }
  return sum / static_cast<double>(batch.points.size());
}

void write_batch_csv(std::ostream& out, const SampleBatch& batch) {
  out << "x1,x2\n";
  char buf[32];
  for (const Vec2& point : batch.points) {
    std::snprintf(buf, sizeof buf, "%.17g", point[0]);
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.17g", point[1]);
    out << buf << '\n';
  }
}

}  // namespace eulerlab
