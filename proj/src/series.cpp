#include "eulerlab/series.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "eulerlab/errors.hpp"

namespace eulerlab {

namespace {

constexpr std::size_t kMaxCombinedSupport = 20000000;

void format17(char* buf, std::size_t size, double value) {
  std::snprintf(buf, size, "%.17g", value);
}

}  // namespace

CoeffLattice::CoeffLattice(std::int64_t p, int degree)
    : p_(p), degree_(degree) {
  if (degree < 0) {
    throw Error(ErrorCode::InvalidArgument, "lattice degree must be >= 0");
  }
  c_.assign(static_cast<std::size_t>(degree_ + 1) * (degree_ + 1),
            Rational(0));
}

std::size_t CoeffLattice::index(int i, int j) const {
  if (i < 0 || j < 0 || i > degree_ || j > degree_) {
    throw Error(ErrorCode::InvalidArgument, "lattice index out of range");
  }
  return static_cast<std::size_t>(i) * (degree_ + 1) + j;
}

bool CoeffLattice::nonnegative() const {
  for (const Rational& value : c_) {
    if (sign(value) < 0) return false;
  }
  return true;
}

std::optional<std::pair<int, int>> CoeffLattice::first_negative() const {
  for (int i = 0; i <= degree_; ++i) {
    for (int j = 0; j <= degree_; ++j) {
      if (sign(at(i, j)) < 0) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

CoeffLattice coeff_lattice(const Product& product, std::int64_t p, int K) {
  CoeffLattice lattice(p, K);
  lattice.at(0, 0) = 1;
  for (const Factor& factor : product.factors()) {
    if (factor.p() != p) continue;
    // multiply by sum_n alpha^n X^{n a1} Y^{n a2}: the result satisfies
    // c_new(i,j) = c_old(i,j) + alpha * c_new(i-a1, j-a2), so one ascending
    // in-place pass per factor suffices
    const int a1 = factor.a()[0];
    const int a2 = factor.a()[1];
    const Rational& alpha = factor.alpha();
    if (sign(alpha) == 0) continue;
    for (int i = 0; i <= K; ++i) {
      for (int j = 0; j <= K; ++j) {
        if (i >= a1 && j >= a2) {
          lattice.at(i, j) += alpha * lattice.at(i - a1, j - a2);
        }
      }
    }
  }
  return lattice;
}

bool remultiply_check(const CoeffLattice& lattice, const Product& product) {
  const int K = lattice.degree();
  CoeffLattice acc = lattice;
  for (const Factor& factor : product.factors()) {
    if (factor.p() != lattice.p()) continue;
    const int a1 = factor.a()[0];
    const int a2 = factor.a()[1];
    const Rational& alpha = factor.alpha();
    if (sign(alpha) == 0) continue;
    // descending so the shifted reads still see pre-multiplication values
    for (int i = K; i >= 0; --i) {
      for (int j = K; j >= 0; --j) {
        if (i >= a1 && j >= a2) {
          acc.at(i, j) -= alpha * acc.at(i - a1, j - a2);
        }
      }
    }
  }
  for (int i = 0; i <= K; ++i) {
    for (int j = 0; j <= K; ++j) {
      const Rational expected = (i == 0 && j == 0) ? Rational(1) : Rational(0);
      if (acc.at(i, j) != expected) return false;
    }
  }
  return true;
}

ShintaniDistribution shintani_distribution(const Product& product, Vec2 sigma,
                                           int K) {
  ShintaniDistribution dist;
  dist.sigma = sigma;
  dist.degree = K;

  for (const Factor& factor : product.factors()) {
    if (dot(factor.a(), sigma) <= 0.0) {
      throw Error(ErrorCode::DomainViolation,
                  "<a,sigma> must be positive for every factor");
    }
  }

  std::size_t combined_size = 1;
  for (std::int64_t p : product.primes()) {
    const CoeffLattice lattice = coeff_lattice(product, p, K);
    if (auto neg = lattice.first_negative()) {
      throw Error(ErrorCode::NotADistribution,
                  "negative series coefficient at p=" + std::to_string(p) +
                      ", (i,j)=(" + std::to_string(neg->first) + "," +
                      std::to_string(neg->second) + ")");
    }

    // normalizer of the prime-p part at t = 0
    double z_p = 1.0;
    const double logp = std::log(static_cast<double>(p));
    for (const Factor& factor : product.factors()) {
      if (factor.p() != p) continue;
      z_p /= 1.0 - to_double(factor.alpha()) *
                       std::exp(-dot(factor.a(), sigma) * logp);
    }

    ShintaniDistribution::PrimeComponent component;
    component.p = p;
    component.partial_mass = 0.0;
    for (int i = 0; i <= K; ++i) {
      for (int j = 0; j <= K; ++j) {
        const Rational& coeff = lattice.at(i, j);
        if (sign(coeff) == 0) continue;
        const double mass = to_double(coeff) *
                            std::exp(-(i * sigma[0] + j * sigma[1]) * logp) /
                            z_p;
        component.masses.emplace_back(i, j, mass);
        component.partial_mass += mass;
      }
    }
    dist.Z *= z_p;
    combined_size *= component.masses.size();
    if (combined_size > kMaxCombinedSupport) {
      throw Error(ErrorCode::InvalidArgument,
                  "combined support too large; reduce the series order");
    }
    dist.components.push_back(std::move(component));
  }

  // cartesian product over primes; points are distinct by construction
  dist.support.assign(1, {Vec2{0.0, 0.0}, 1.0});
  for (const auto& component : dist.components) {
    const double logp = std::log(static_cast<double>(component.p));
    std::vector<std::pair<Vec2, double>> next;
    next.reserve(dist.support.size() * component.masses.size());
    for (const auto& [point, mass] : dist.support) {
      for (const auto& [i, j, m] : component.masses) {
        next.emplace_back(Vec2{point[0] - i * logp, point[1] - j * logp},
                          mass * m);
      }
    }
    dist.support = std::move(next);
  }

  double total = 1.0;
  for (const auto& component : dist.components) {
    total *= component.partial_mass;
  }
  dist.mass_deficit = 1.0 - total;
  return dist;
}

std::complex<double> cf_oracle(const ShintaniDistribution& dist,
                               const Vec2& t) {
  std::complex<double> out(1.0, 0.0);
  for (const auto& component : dist.components) {
    const double logp = std::log(static_cast<double>(component.p));
    std::complex<double> factor(0.0, 0.0);
    for (const auto& [i, j, mass] : component.masses) {
      factor += mass * std::polar(1.0, -(i * t[0] + j * t[1]) * logp);
    }
    out *= factor;
  }
  return out;
}

std::complex<double> cf_oracle_direct(const ShintaniDistribution& dist,
                                      const Vec2& t) {
  std::complex<double> out(0.0, 0.0);
  for (const auto& [point, mass] : dist.support) {
    out += mass * std::polar(1.0, dot(t, point));
  }
  return out;
}

void write_lattice_csv(std::ostream& out, const CoeffLattice& lattice) {
  out << "i,j,num,den\n";
  for (int i = 0; i <= lattice.degree(); ++i) {
    for (int j = 0; j <= lattice.degree(); ++j) {
      const Rational& value = lattice.at(i, j);
      out << i << ',' << j << ',' << value.get_num().get_str() << ','
          << value.get_den().get_str() << '\n';
    }
  }
}

void write_distribution_csv(std::ostream& out,
                            const ShintaniDistribution& dist) {
  out << "x1,x2,mass\n";
  char buf[32];
  for (const auto& [point, mass] : dist.support) {
    format17(buf, sizeof buf, point[0]);
    out << buf << ',';
    format17(buf, sizeof buf, point[1]);
    out << buf << ',';
    format17(buf, sizeof buf, mass);
    out << buf << '\n';
  }
}

}  // namespace eulerlab
