#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "eulerlab/rational.hpp"

namespace eulerlab {

using Vec2 = std::array<double, 2>;
using Dir2 = std::array<int, 2>;

inline double dot(const Vec2& a, const Vec2& b) {
  return a[0] * b[0] + a[1] * b[1];
}

inline double dot(const Dir2& a, const Vec2& b) {
  return a[0] * b[0] + a[1] * b[1];
}

bool is_prime(std::int64_t n);

/// One Euler factor (1 - alpha * p^{-<a,s>})^{-1} with p prime,
/// |alpha| <= 1 rational and a a nonzero nonnegative integer direction.
class Factor {
 public:
  Factor(std::int64_t p, Rational alpha, Dir2 a);

  std::int64_t p() const { return p_; }
  const Rational& alpha() const { return alpha_; }
  const Dir2& a() const { return a_; }

  friend bool operator==(const Factor& lhs, const Factor& rhs);
  // canonical order: (p, a lexicographic, alpha)
  friend bool operator<(const Factor& lhs, const Factor& rhs);

 private:
  std::int64_t p_;
  Rational alpha_;
  Dir2 a_;
};

Factor make_factor(std::int64_t p, const Rational& alpha, Dir2 a);

/// Finite multiset of factors; stored sorted so that evaluation and
/// formatting are independent of construction order.
class Product {
 public:
  Product() = default;
  explicit Product(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  bool empty() const { return factors_.empty(); }
  std::size_t size() const { return factors_.size(); }

  /// Distinct primes appearing in the factor list, ascending.
  std::vector<std::int64_t> primes() const;

  /// Multiset union.
  Product operator*(const Product& rhs) const;

  friend bool operator==(const Product& lhs, const Product& rhs) {
    return lhs.factors_ == rhs.factors_;
  }

 private:
  std::vector<Factor> factors_;
};

enum class Family { Gsharp, Gstar, F, G, H };

const char* to_string(Family family);

Product named_product(Family family, std::int64_t p);
Product named_product(const std::string& name, std::int64_t p);

struct EvalPoint {
  Vec2 sigma{1.0, 1.0};
  Vec2 t{0.0, 0.0};
};

/// Product of complex factor values at s = sigma + i t.
/// Requires <a,sigma> > 0 for every factor.
std::complex<double> eval(const Product& product, const EvalPoint& point);

/// eval at (sigma, t) divided by eval at (sigma, 0); equals 1 at t = 0.
std::complex<double> normalize(const Product& product, const EvalPoint& point);

/// |normalize| computed factor-wise from real cosines; no complex division.
/// Used where only the modulus matters (witness search inner loop).
class ModulusEvaluator {
 public:
  ModulusEvaluator(const Product& product, Vec2 sigma);

  double operator()(const Vec2& t) const;

 private:
  struct Term {
    double a1, a2;       // direction scaled by log p
    double twice_al;     // 2*alpha*lambda
    double one_plus_sq;  // 1 + (alpha*lambda)^2
    double base_sq;      // (1 - alpha*lambda)^2, the t = 0 value
  };
  std::vector<Term> terms_;
};

}  // namespace eulerlab
