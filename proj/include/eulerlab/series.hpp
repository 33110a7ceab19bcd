#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "eulerlab/euler.hpp"

namespace eulerlab {

/// Truncated coefficients of the prime-p part of a product as a power
/// series in X = p^{-s1}, Y = p^{-s2}: c(i,j) is the exact rational
/// coefficient of X^i Y^j for 0 <= i,j <= degree.
class CoeffLattice {
 public:
  CoeffLattice(std::int64_t p, int degree);

  std::int64_t p() const { return p_; }
  int degree() const { return degree_; }

  const Rational& at(int i, int j) const { return c_[index(i, j)]; }
  Rational& at(int i, int j) { return c_[index(i, j)]; }

  bool nonnegative() const;
  std::optional<std::pair<int, int>> first_negative() const;

 private:
  std::size_t index(int i, int j) const;

  std::int64_t p_;
  int degree_;
  std::vector<Rational> c_;
};

/// Convolution of the geometric series of all factors at prime p
/// (factors at other primes are ignored). Exact rational arithmetic.
CoeffLattice coeff_lattice(const Product& product, std::int64_t p, int K);

/// Multiplies the lattice back by the denominator polynomial
/// prod (1 - alpha X^{a1} Y^{a2}); true iff the result is exactly the
/// constant 1 up to the lattice degree.
bool remultiply_check(const CoeffLattice& lattice, const Product& product);

/// Discrete law on R^2 built from per-prime coefficient lattices.
struct ShintaniDistribution {
  struct PrimeComponent {
    std::int64_t p;
    // per-prime normalized masses at x = (-i log p, -j log p)
    std::vector<std::tuple<int, int, double>> masses;
    double partial_mass;  // sum of masses (<= 1)
  };

  std::vector<std::pair<Vec2, double>> support;  // combined points and masses
  std::vector<PrimeComponent> components;
  double Z = 1.0;  // normalizer eval(product, (sigma, 0))
  Vec2 sigma{1.0, 1.0};
  int degree = 0;
  double mass_deficit = 0.0;  // 1 - sum of combined masses
};

ShintaniDistribution shintani_distribution(const Product& product, Vec2 sigma,
                                           int K);

/// sum mass * e^{i<t,point>}, evaluated prime-by-prime (the combined support
/// is a product of independent per-prime laws, so the sum factorizes).
std::complex<double> cf_oracle(const ShintaniDistribution& dist, const Vec2& t);

/// Direct summation over the combined support; equal to cf_oracle up to
/// floating-point reassociation. Kept for cross-checking.
std::complex<double> cf_oracle_direct(const ShintaniDistribution& dist,
                                      const Vec2& t);

/// Columns: i, j, num, den.
void write_lattice_csv(std::ostream& out, const CoeffLattice& lattice);
/// Columns: x1, x2, mass.
void write_distribution_csv(std::ostream& out,
                            const ShintaniDistribution& dist);

}  // namespace eulerlab
