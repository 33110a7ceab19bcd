#pragma once

#include <random>
#include <vector>

#include "eulerlab/euler.hpp"

namespace testsupport {

using namespace eulerlab;

inline const std::int64_t kSmallPrimes[] = {2, 3, 5, 7, 11, 13};

inline Factor random_factor(std::mt19937& rng) {
  std::uniform_int_distribution<int> prime_pick(0, 5);
  std::uniform_int_distribution<int> den_pick(1, 8);
  std::uniform_int_distribution<int> comp_pick(0, 3);
  const std::int64_t p = kSmallPrimes[prime_pick(rng)];
  const int den = den_pick(rng);
  std::uniform_int_distribution<int> num_pick(-den, den);
  Dir2 a{comp_pick(rng), comp_pick(rng)};
  if (a[0] == 0 && a[1] == 0) a[0] = 1;
  return Factor(p, make_rational(num_pick(rng), den), a);
}

inline Product random_product(std::mt19937& rng, int max_terms = 5) {
  std::uniform_int_distribution<int> count_pick(1, max_terms);
  std::uniform_int_distribution<int> kind_pick(0, 5);
  std::uniform_int_distribution<int> prime_pick(0, 5);
  std::vector<Factor> factors;
  const int terms = count_pick(rng);
  for (int i = 0; i < terms; ++i) {
    const int kind = kind_pick(rng);
    if (kind == 5) {
      factors.push_back(random_factor(rng));
    } else {
      const Product named = named_product(static_cast<Family>(kind),
                                          kSmallPrimes[prime_pick(rng)]);
      factors.insert(factors.end(), named.factors().begin(),
                     named.factors().end());
    }
  }
  return Product(std::move(factors));
}

inline Vec2 random_t(std::mt19937& rng, double radius = 20.0) {
  std::uniform_real_distribution<double> pick(-radius, radius);
  return {pick(rng), pick(rng)};
}

}  // namespace testsupport
