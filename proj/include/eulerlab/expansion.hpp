#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <tuple>
#include <vector>

#include "eulerlab/euler.hpp"

namespace eulerlab {

/// Identifies the atom at x = -r log p * a. Directions are kept primitive
/// (gcd(a1,a2) = 1, with r absorbing the gcd) so that distinct keys always
/// name distinct locations.
struct AtomKey {
  std::int64_t p;
  int r;
  Dir2 a;

  friend bool operator==(const AtomKey& lhs, const AtomKey& rhs) {
    return lhs.p == rhs.p && lhs.r == rhs.r && lhs.a == rhs.a;
  }
  friend bool operator<(const AtomKey& lhs, const AtomKey& rhs) {
    return std::tie(lhs.p, lhs.a, lhs.r) < std::tie(rhs.p, rhs.a, rhs.r);
  }
};

/// Location under the storage convention x = -r log p * a.
Vec2 atom_location(const AtomKey& key);

using CoeffMap = std::map<AtomKey, Rational>;

/// Exact sigma-independent expansion coefficients of log of the normalized
/// product: each factor (p, alpha, a) adds alpha^r / r to the canonical key
/// of (p, r, a) for 1 <= r <= R. Keys whose merged coefficient is exactly
/// zero are removed.
CoeffMap merged_coefficients(const Product& product, int R);

/// Upper bound on the discarded tail sum_{r>R} |alpha|^r/r * lambda^r,
/// summed over factors: lambda^{R+1} / ((R+1)(1-lambda)), lambda = p^{-<a,sigma>}.
double tail_bound(const Product& product, Vec2 sigma, int R);

/// Smallest R with tail_bound < target; throws TruncationCap beyond cap.
int choose_truncation(const Product& product, Vec2 sigma,
                      double target = 1e-10, int cap = 200);

struct Atom {
  AtomKey key;
  Rational coeff;
  double weight;  // coeff * p^{-r <a,sigma>}
  Vec2 x;
};

/// Finite signed atomic measure realized at a particular sigma.
class SignedAtomicMeasure {
 public:
  SignedAtomicMeasure() = default;
  SignedAtomicMeasure(std::vector<Atom> atoms, Vec2 sigma, int truncation_order,
                      double tail_bound);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const Vec2& sigma() const { return sigma_; }
  int truncation_order() const { return truncation_order_; }
  double tail_bound() const { return tail_bound_; }

  double total_variation() const;
  bool nonnegative() const;
  std::vector<Atom> negative_atoms() const;

 private:
  std::vector<Atom> atoms_;
  Vec2 sigma_{1.0, 1.0};
  int truncation_order_ = 0;
  double tail_bound_ = 0.0;
};

SignedAtomicMeasure realize(const CoeffMap& coeffs, Vec2 sigma, int R,
                            double tail = 0.0);

/// merged_coefficients + tail_bound + realize in one step.
SignedAtomicMeasure expand(const Product& product, Vec2 sigma, int R);

/// exp( sum_atoms weight * (e^{i<t,x>} - 1) ).
std::complex<double> lk_eval(const SignedAtomicMeasure& measure, const Vec2& t);

/// Columns: p, r, a1, a2, coeff_num, coeff_den, weight, x1, x2.
void write_atoms_csv(std::ostream& out, const SignedAtomicMeasure& measure);

}  // namespace eulerlab
