#include "eulerlab/expansion.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "eulerlab/errors.hpp"

namespace eulerlab {

namespace {

AtomKey canonical_key(std::int64_t p, int r, Dir2 a) {
  const int g = std::gcd(a[0], a[1]);
  return AtomKey{p, r * g, {a[0] / g, a[1] / g}};
}

void format17(char* buf, std::size_t size, double value) {
  std::snprintf(buf, size, "%.17g", value);
}

}  // namespace

Vec2 atom_location(const AtomKey& key) {
  const double step = -key.r * std::log(static_cast<double>(key.p));
  // + 0.0 turns the -0.0 of zero components into plain 0
  return {step * key.a[0] + 0.0, step * key.a[1] + 0.0};
}

CoeffMap merged_coefficients(const Product& product, int R) {
  if (R < 1) {
    throw Error(ErrorCode::InvalidArgument, "truncation order must be >= 1");
  }
  CoeffMap coeffs;
  for (const Factor& factor : product.factors()) {
    if (sign(factor.alpha()) == 0) continue;
    Rational power = make_rational(1);
    for (int r = 1; r <= R; ++r) {
      power *= factor.alpha();
      coeffs[canonical_key(factor.p(), r, factor.a())] +=
          power / make_rational(r);
    }
  }
  for (auto it = coeffs.begin(); it != coeffs.end();) {
    if (sign(it->second) == 0) {
      it = coeffs.erase(it);
    } else {
      ++it;
    }
  }
  return coeffs;
}

double tail_bound(const Product& product, Vec2 sigma, int R) {
  if (R < 1) {
    throw Error(ErrorCode::InvalidArgument, "truncation order must be >= 1");
  }
  double bound = 0.0;
  for (const Factor& factor : product.factors()) {
    const double exponent = dot(factor.a(), sigma);
    if (exponent <= 0.0) {
      throw Error(ErrorCode::DomainViolation,
                  "<a,sigma> must be positive for every factor");
    }
    const double lambda =
        std::exp(-exponent * std::log(static_cast<double>(factor.p())));
    bound += std::pow(lambda, R + 1) / ((R + 1) * (1.0 - lambda));
  }
  return bound;
}

int choose_truncation(const Product& product, Vec2 sigma, double target,
                      int cap) {
  for (int R = 1; R <= cap; ++R) {
    if (tail_bound(product, sigma, R) < target) return R;
  }
  char target_text[32];
  std::snprintf(target_text, sizeof target_text, "%g", target);
  throw Error(ErrorCode::TruncationCap,
              std::string("tail bound does not reach ") + target_text +
                  " within R = " + std::to_string(cap));
}

SignedAtomicMeasure::SignedAtomicMeasure(std::vector<Atom> atoms, Vec2 sigma,
                                         int truncation_order,
                                         double tail_bound)
    : atoms_(std::move(atoms)),
      sigma_(sigma),
      truncation_order_(truncation_order),
      tail_bound_(tail_bound) {}

double SignedAtomicMeasure::total_variation() const {
  double out = 0.0;
  for (const Atom& atom : atoms_) out += std::abs(atom.weight);
  return out;
}

bool SignedAtomicMeasure::nonnegative() const {
  for (const Atom& atom : atoms_) {
    if (sign(atom.coeff) < 0) return false;
  }
  return true;
}

std::vector<Atom> SignedAtomicMeasure::negative_atoms() const {
  std::vector<Atom> out;
  for (const Atom& atom : atoms_) {
    if (sign(atom.coeff) < 0) out.push_back(atom);
  }
  return out;
}

SignedAtomicMeasure realize(const CoeffMap& coeffs, Vec2 sigma, int R,
                            double tail) {
  std::vector<Atom> atoms;
  atoms.reserve(coeffs.size());
  for (const auto& [key, coeff] : coeffs) {
    const double exponent = key.r * dot(key.a, sigma);
    if (exponent <= 0.0) {
      throw Error(ErrorCode::DomainViolation,
                  "<a,sigma> must be positive for every atom key");
    }
    Atom atom;
    atom.key = key;
    atom.coeff = coeff;
    atom.weight = to_double(coeff) *
                  std::exp(-exponent * std::log(static_cast<double>(key.p)));
    atom.x = atom_location(key);
    atoms.push_back(std::move(atom));
  }
  return SignedAtomicMeasure(std::move(atoms), sigma, R, tail);
}

SignedAtomicMeasure expand(const Product& product, Vec2 sigma, int R) {
  return realize(merged_coefficients(product, R), sigma, R,
                 tail_bound(product, sigma, R));
}

std::complex<double> lk_eval(const SignedAtomicMeasure& measure,
                             const Vec2& t) {
  std::complex<double> exponent(0.0, 0.0);
  for (const Atom& atom : measure.atoms()) {
    exponent += atom.weight * (std::polar(1.0, dot(t, atom.x)) - 1.0);
  }
  return std::exp(exponent);
}

void write_atoms_csv(std::ostream& out, const SignedAtomicMeasure& measure) {
  out << "p,r,a1,a2,coeff_num,coeff_den,weight,x1,x2\n";
  char buf[32];
  for (const Atom& atom : measure.atoms()) {
    out << atom.key.p << ',' << atom.key.r << ',' << atom.key.a[0] << ','
        << atom.key.a[1] << ',' << atom.coeff.get_num().get_str() << ','
        << atom.coeff.get_den().get_str();
    format17(buf, sizeof buf, atom.weight);
    out << ',' << buf;
    format17(buf, sizeof buf, atom.x[0]);
    out << ',' << buf;
    format17(buf, sizeof buf, atom.x[1]);
    out << ',' << buf << '\n';
  }
}

}  // namespace eulerlab
