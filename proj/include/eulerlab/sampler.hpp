#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "eulerlab/expansion.hpp"

namespace eulerlab {

struct SampleBatch {
  std::vector<Vec2> points;
  std::uint64_t seed = 0;
  SignedAtomicMeasure source;
};

/// Draws n points from the compound-Poisson law of a nonnegative measure:
/// N ~ Poisson(total mass), then N atoms chosen with probability
/// weight / total mass, summed. Deterministic given (measure, n, seed):
/// mt19937_64 seeded directly, uniforms are (x >> 11) * 2^-53, Poisson by
/// Knuth's product method, category by cumulative inversion.
SampleBatch sample(const SignedAtomicMeasure& measure, std::size_t n,
                   std::uint64_t seed);

/// (1/n) sum e^{i<t, point>}.
std::complex<double> empirical_cf(const SampleBatch& batch, const Vec2& t);

/// Columns: x1, x2.
void write_batch_csv(std::ostream& out, const SampleBatch& batch);

}  // namespace eulerlab
