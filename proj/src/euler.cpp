#include "eulerlab/euler.hpp"

#include <algorithm>
#include <cmath>

#include "eulerlab/errors.hpp"

namespace eulerlab {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t out = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) out = mulmod(out, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return out;
}

}  // namespace

// Deterministic Miller-Rabin; the witness set covers all 64-bit integers.
bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  std::uint64_t d = static_cast<std::uint64_t>(n - 1);
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  std::uint64_t un = static_cast<std::uint64_t>(n);
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, un);
    if (x == 1 || x == un - 1) continue;
    bool composite = true;
    for (int i = 0; i + 1 < s; ++i) {
      x = mulmod(x, x, un);
      if (x == un - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Factor::Factor(std::int64_t p, Rational alpha, Dir2 a)
    : p_(p), alpha_(std::move(alpha)), a_(a) {
  if (!is_prime(p_)) {
    throw Error(ErrorCode::NotPrime, std::to_string(p_) + " is not prime");
  }
  if (cmp(abs(alpha_), 1) > 0) {
    throw Error(ErrorCode::AlphaOutOfRange,
                "|alpha| must be <= 1, got " + alpha_.get_str());
  }
  if (a_[0] < 0 || a_[1] < 0 || (a_[0] == 0 && a_[1] == 0)) {
    throw Error(ErrorCode::ZeroDirection,
                "direction must be nonnegative and nonzero, got [" +
                    std::to_string(a_[0]) + "," + std::to_string(a_[1]) + "]");
  }
}

bool operator==(const Factor& lhs, const Factor& rhs) {
  return lhs.p_ == rhs.p_ && lhs.a_ == rhs.a_ && lhs.alpha_ == rhs.alpha_;
}

bool operator<(const Factor& lhs, const Factor& rhs) {
  if (lhs.p_ != rhs.p_) return lhs.p_ < rhs.p_;
  if (lhs.a_ != rhs.a_) return lhs.a_ < rhs.a_;
  return lhs.alpha_ < rhs.alpha_;
}

Factor make_factor(std::int64_t p, const Rational& alpha, Dir2 a) {
  return Factor(p, alpha, a);
}

Product::Product(std::vector<Factor> factors) : factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end());
}

std::vector<std::int64_t> Product::primes() const {
  std::vector<std::int64_t> out;
  for (const Factor& factor : factors_) {
    if (out.empty() || out.back() != factor.p()) out.push_back(factor.p());
  }
  // factors_ sorted by p first, so consecutive dedup suffices
  return out;
}

Product Product::operator*(const Product& rhs) const {
  std::vector<Factor> all = factors_;
  all.insert(all.end(), rhs.factors_.begin(), rhs.factors_.end());
  return Product(std::move(all));
}

const char* to_string(Family family) {
  switch (family) {
    case Family::Gsharp:
      return "Gsharp";
    case Family::Gstar:
      return "Gstar";
    case Family::F:
      return "F";
    case Family::G:
      return "G";
    case Family::H:
      return "H";
  }
  return "?";
}

Product named_product(Family family, std::int64_t p) {
  const Rational one = make_rational(1);
  const Rational minus_one = make_rational(-1);
  switch (family) {
    case Family::Gsharp:
      return Product({Factor(p, one, {1, 0}), Factor(p, one, {0, 1})});
    case Family::Gstar:
      return Product({Factor(p, minus_one, {1, 1})});
    case Family::F:
      return Product({Factor(p, one, {1, 1})});
    case Family::G:
      return named_product(Family::Gsharp, p) *
             named_product(Family::Gstar, p);
    case Family::H:
      return Product({Factor(p, minus_one, {1, 0}),
                      Factor(p, minus_one, {0, 1}), Factor(p, one, {1, 1})});
  }
  throw Error(ErrorCode::UnknownName, "unhandled family");
}

Product named_product(const std::string& name, std::int64_t p) {
  if (name == "Gsharp") return named_product(Family::Gsharp, p);
  if (name == "Gstar") return named_product(Family::Gstar, p);
  if (name == "F") return named_product(Family::F, p);
  if (name == "G") return named_product(Family::G, p);
  if (name == "H") return named_product(Family::H, p);
  throw Error(ErrorCode::UnknownName, "no product family named '" + name + "'");
}

namespace {

void require_domain(const Product& product, const Vec2& sigma) {
  for (const Factor& factor : product.factors()) {
    if (dot(factor.a(), sigma) <= 0.0) {
      throw Error(ErrorCode::DomainViolation,
                  "<a,sigma> must be positive for every factor");
    }
  }
}

}  // namespace

std::complex<double> eval(const Product& product, const EvalPoint& point) {
  require_domain(product, point.sigma);
  std::complex<double> out(1.0, 0.0);
  for (const Factor& factor : product.factors()) {
    const double logp = std::log(static_cast<double>(factor.p()));
    const double lambda = std::exp(-dot(factor.a(), point.sigma) * logp);
    const double phase = -dot(factor.a(), point.t) * logp;
    const std::complex<double> denom =
        1.0 - to_double(factor.alpha()) * lambda * std::polar(1.0, phase);
    if (denom == std::complex<double>(0.0, 0.0)) {
      throw Error(ErrorCode::PoleHit, "factor denominator is zero");
    }
    out /= denom;
  }
  return out;
}

std::complex<double> normalize(const Product& product, const EvalPoint& point) {
  if (point.t[0] == 0.0 && point.t[1] == 0.0) {
    require_domain(product, point.sigma);
    return {1.0, 0.0};
  }
  return eval(product, point) /
         eval(product, EvalPoint{point.sigma, {0.0, 0.0}});
}

ModulusEvaluator::ModulusEvaluator(const Product& product, Vec2 sigma) {
  require_domain(product, sigma);
  terms_.reserve(product.size());
  for (const Factor& factor : product.factors()) {
    const double logp = std::log(static_cast<double>(factor.p()));
    const double al =
        to_double(factor.alpha()) * std::exp(-dot(factor.a(), sigma) * logp);
    Term term;
    term.a1 = factor.a()[0] * logp;
    term.a2 = factor.a()[1] * logp;
    term.twice_al = 2.0 * al;
    term.one_plus_sq = 1.0 + al * al;
    term.base_sq = (1.0 - al) * (1.0 - al);
    terms_.push_back(term);
  }
}

double ModulusEvaluator::operator()(const Vec2& t) const {
  // |1 - al e^{-i phi}|^2 = 1 - 2 al cos(phi) + al^2 per factor
  double ratio_sq = 1.0;
  for (const Term& term : terms_) {
    const double phi = term.a1 * t[0] + term.a2 * t[1];
    ratio_sq *= term.base_sq / (term.one_plus_sq - term.twice_al * std::cos(phi));
  }
  return std::sqrt(ratio_sq);
}

}  // namespace eulerlab
