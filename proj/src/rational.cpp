#include "eulerlab/rational.hpp"

#include "eulerlab/errors.hpp"

namespace eulerlab {

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) {
    throw Error(ErrorCode::InvalidArgument, "zero denominator");
  }
  Rational q(mpz_class(static_cast<long>(num)),
             mpz_class(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

Rational rational_pow(const Rational& x, unsigned long e) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), x.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), x.get_den_mpz_t(), e);
  // x canonical and e-th powers of coprime integers stay coprime
  return out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace eulerlab
