#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "eulerlab/dsl.hpp"
#include "eulerlab/errors.hpp"
#include "eulerlab/expansion.hpp"
#include "test_support.hpp"

using namespace eulerlab;

namespace {

// direct tail summation; dominated by the geometric bound
double tail_oracle(const Product& product, Vec2 sigma, int R, int upto) {
  double tail = 0.0;
  for (const Factor& factor : product.factors()) {
    const double lambda = std::exp(
        -dot(factor.a(), sigma) * std::log(static_cast<double>(factor.p())));
    const double alpha = std::abs(to_double(factor.alpha()));
    for (int r = R + 1; r <= upto; ++r) {
      tail += std::pow(alpha, r) * std::pow(lambda, r) / r;
    }
  }
  return tail;
}

Rational coeff_at(const CoeffMap& coeffs, const AtomKey& key) {
  const auto it = coeffs.find(key);
  return it == coeffs.end() ? Rational(0) : it->second;
}

}  // namespace

TEST_CASE("merged coefficients of Gsharp(2) at R=2") {
  const CoeffMap coeffs = merged_coefficients(named_product(Family::Gsharp, 2), 2);
  REQUIRE(coeffs.size() == 4);
  CHECK(coeff_at(coeffs, {2, 1, {1, 0}}) == make_rational(1));
  CHECK(coeff_at(coeffs, {2, 2, {1, 0}}) == make_rational(1, 2));
  CHECK(coeff_at(coeffs, {2, 1, {0, 1}}) == make_rational(1));
  CHECK(coeff_at(coeffs, {2, 2, {0, 1}}) == make_rational(1, 2));
}

TEST_CASE("odd powers cancel exactly in F(p)*G(p)") {
  const Product product = parse("F(2)*G(2)");
  const CoeffMap coeffs = merged_coefficients(product, 4);
  // diagonal direction: only even r survive, with coefficient 2/r
  CHECK(coeff_at(coeffs, {2, 1, {1, 1}}) == 0);
  CHECK(coeff_at(coeffs, {2, 2, {1, 1}}) == make_rational(1));
  CHECK(coeff_at(coeffs, {2, 3, {1, 1}}) == 0);
  CHECK(coeff_at(coeffs, {2, 4, {1, 1}}) == make_rational(1, 2));
  // zero entries are removed, not stored
  CHECK(coeffs.find(AtomKey{2, 1, {1, 1}}) == coeffs.end());

  for (std::int64_t p : {2, 3, 5}) {
    const CoeffMap big =
        merged_coefficients(named_product(Family::F, p) * named_product(Family::G, p), 50);
    for (const auto& [key, coeff] : big) {
      if (key.a == Dir2{1, 1}) {
        CHECK(key.r % 2 == 0);
        CHECK(coeff == make_rational(2, key.r));
      }
    }
  }
}

TEST_CASE("G(p)*H(p) keeps only even powers, all positive") {
  const Dir2 directions[] = {{1, 0}, {0, 1}, {1, 1}};
  for (std::int64_t p : {2, 3, 5}) {
    const CoeffMap coeffs = merged_coefficients(
        named_product(Family::G, p) * named_product(Family::H, p), 50);
    CHECK(coeffs.size() == 3 * 25);  // three directions, even r up to 50
    for (const auto& [key, coeff] : coeffs) {
      CHECK(key.r % 2 == 0);
      CHECK(sign(coeff) > 0);
      CHECK(coeff == make_rational(2, key.r));
    }
    for (int r = 2; r <= 50; r += 2) {
      for (const Dir2& a : directions) {
        CHECK(coeffs.count(AtomKey{p, r, a}) == 1);
      }
    }
  }
}

TEST_CASE("signed-measure detection across the named families") {
  auto has_negative = [](const Product& product) {
    for (const auto& [key, coeff] : merged_coefficients(product, 30)) {
      if (sign(coeff) < 0) return true;
    }
    return false;
  };
  CHECK(has_negative(parse("Gstar(2)")));
  CHECK(has_negative(parse("G(3)")));
  CHECK_FALSE(has_negative(parse("Gsharp(2)")));
  CHECK_FALSE(has_negative(parse("F(5)")));
  CHECK_FALSE(has_negative(parse("F(2)*G(2)")));
  CHECK_FALSE(has_negative(parse("G(3)*H(3)")));

  // the negative r=1 diagonal atom of G survives merging
  const CoeffMap g = merged_coefficients(parse("G(2)"), 30);
  CHECK(coeff_at(g, {2, 1, {1, 1}}) == make_rational(-1));
}

TEST_CASE("non-primitive directions merge onto the same lattice keys") {
  // (2, 1/2, (2,2)) lives at the same locations as even powers of (1,1)
  const Product raw({Factor(2, make_rational(1, 2), {2, 2})});
  const CoeffMap coeffs = merged_coefficients(raw, 3);
  REQUIRE(coeffs.size() == 3);
  CHECK(coeff_at(coeffs, {2, 2, {1, 1}}) == make_rational(1, 2));
  CHECK(coeff_at(coeffs, {2, 4, {1, 1}}) == make_rational(1, 8));
  CHECK(coeff_at(coeffs, {2, 6, {1, 1}}) == make_rational(1, 24));

  const CoeffMap merged = merged_coefficients(raw * parse("F(2)"), 2);
  // F contributes 1/2 at r=2; the raw factor contributes (1/2)^1/1 there too
  CHECK(coeff_at(merged, {2, 2, {1, 1}}) == make_rational(1));

  // atom locations stay consistent with the original direction
  const Vec2 x = atom_location(AtomKey{2, 2, {1, 1}});
  CHECK(x[0] == doctest::Approx(-2.0 * std::log(2.0)));
  CHECK(x[1] == doctest::Approx(-2.0 * std::log(2.0)));
}

TEST_CASE("empty product expands to the empty measure") {
  CHECK(merged_coefficients(Product{}, 10).empty());
  const SignedAtomicMeasure measure = expand(Product{}, {1.0, 1.0}, 10);
  CHECK(measure.atoms().empty());
  CHECK(lk_eval(measure, {3.0, -2.0}) == std::complex<double>(1.0, 0.0));
}

TEST_CASE("realized weights match hand values") {
  SUBCASE("Gsharp(2) at sigma=(1,1), R=2") {
    const SignedAtomicMeasure measure =
        expand(named_product(Family::Gsharp, 2), {1.0, 1.0}, 2);
    REQUIRE(measure.atoms().size() == 4);
    for (const Atom& atom : measure.atoms()) {
      const double expected = atom.key.r == 1 ? 0.5 : 0.125;
      CHECK(atom.weight == doctest::Approx(expected).epsilon(1e-15));
    }
  }

  SUBCASE("Gstar(2) at sigma=(1,1), R=3 alternates") {
    const SignedAtomicMeasure measure =
        expand(named_product(Family::Gstar, 2), {1.0, 1.0}, 3);
    REQUIRE(measure.atoms().size() == 3);
    const double expected[] = {-0.25, 1.0 / 32.0, -1.0 / 192.0};
    for (const Atom& atom : measure.atoms()) {
      CHECK(atom.weight ==
            doctest::Approx(expected[atom.key.r - 1]).epsilon(1e-15));
      const double step = -atom.key.r * std::log(2.0);
      CHECK(atom.x[0] == doctest::Approx(step));
      CHECK(atom.x[1] == doctest::Approx(step));
    }
  }

  SUBCASE("weights shrink when sigma grows") {
    const Product product = parse("G(2)*F(3)");
    const SignedAtomicMeasure small = expand(product, {1.0, 1.0}, 12);
    const SignedAtomicMeasure large = expand(product, {2.0, 3.0}, 12);
    REQUIRE(small.atoms().size() == large.atoms().size());
    for (std::size_t i = 0; i < small.atoms().size(); ++i) {
      CHECK(std::abs(large.atoms()[i].weight) <
            std::abs(small.atoms()[i].weight));
    }
  }
}

TEST_CASE("tail bound dominates the true tail and matches its closed form") {
  SUBCASE("F(2), sigma=(1,1), R=10") {
    const double bound = tail_bound(parse("F(2)"), {1.0, 1.0}, 10);
    const double closed = std::pow(0.25, 11) / (11.0 * 0.75);
    CHECK(bound == doctest::Approx(closed).epsilon(1e-14));
    const double oracle = tail_oracle(parse("F(2)"), {1.0, 1.0}, 10, 1000);
    CHECK(bound >= oracle);
    CHECK(bound <= 1.2 * oracle);
  }

  SUBCASE("per-factor additivity") {
    const Product product = parse("Gsharp(2)*Gsharp(3)");
    const double bound = tail_bound(product, {1.0, 1.0}, 20);
    const double two = tail_bound(named_product(Family::Gsharp, 2), {1.0, 1.0}, 20);
    const double three = tail_bound(named_product(Family::Gsharp, 3), {1.0, 1.0}, 20);
    CHECK(bound == doctest::Approx(two + three).epsilon(1e-14));
  }

  SUBCASE("monotone decreasing in R") {
    const Product product = parse("G(2)");
    double previous = tail_bound(product, {0.6, 0.8}, 1);
    for (int R = 2; R <= 40; ++R) {
      const double current = tail_bound(product, {0.6, 0.8}, R);
      CHECK(current < previous);
      previous = current;
    }
  }

  SUBCASE("random products: bound dominates a long direct summation") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
      const Product product = testsupport::random_product(rng);
      const Vec2 sigma{0.7, 1.1};
      const int R = 5 + trial % 7;
      CHECK(tail_bound(product, sigma, R) >=
            tail_oracle(product, sigma, R, 2000));
    }
  }
}

TEST_CASE("choose_truncation picks the smallest qualifying R") {
  const Product product = parse("G(2)*H(3)");
  const Vec2 sigma{1.0, 1.0};
  const int R = choose_truncation(product, sigma);
  CHECK(tail_bound(product, sigma, R) < 1e-10);
  CHECK(tail_bound(product, sigma, R - 1) >= 1e-10);

  CHECK_THROWS_WITH_AS(choose_truncation(parse("F(2)"), {1e-5, 1e-5}),
                       doctest::Contains("TruncationCap"), Error);
}

TEST_CASE("lk_eval closed forms and consistency with normalize") {
  SUBCASE("t = 0 gives 1") {
    const SignedAtomicMeasure measure = expand(parse("G(2)"), {1.0, 1.0}, 20);
    CHECK(lk_eval(measure, {0.0, 0.0}) == std::complex<double>(1.0, 0.0));
  }

  SUBCASE("single-atom compound-Poisson value") {
    const CoeffMap one{{AtomKey{2, 1, {1, 0}}, make_rational(3, 4)}};
    const SignedAtomicMeasure measure = realize(one, {1.0, 1.0}, 1);
    const double w = 0.75 * 0.5;
    const Vec2 x{-std::log(2.0), 0.0};
    const Vec2 t{1.3, -0.4};
    const std::complex<double> expected =
        std::exp(w * (std::polar(1.0, dot(t, x)) - 1.0));
    CHECK(std::abs(lk_eval(measure, t) - expected) < 1e-15);
  }

  SUBCASE("Gsharp(2) at R=40 reproduces normalize to 1e-9") {
    const Product product = named_product(Family::Gsharp, 2);
    const SignedAtomicMeasure measure = expand(product, {1.0, 1.0}, 40);
    const Vec2 t{1.0, 0.0};
    const auto via_measure = lk_eval(measure, t);
    const auto direct = normalize(product, {{1.0, 1.0}, t});
    CHECK(std::abs(via_measure - direct) < 1e-9);
  }

  SUBCASE("random products: error within |normalize|*(e^{2 tail}-1)") {
    std::mt19937 rng(90210);
    for (int trial = 0; trial < 60; ++trial) {
      const Product product = testsupport::random_product(rng);
      const Vec2 sigma{0.9, 1.0};
      const int R = 1 + trial % 25;
      const SignedAtomicMeasure measure = expand(product, sigma, R);
      const Vec2 t = testsupport::random_t(rng);
      const auto direct = normalize(product, {sigma, t});
      const double tolerance =
          std::abs(direct) * (std::exp(2.0 * measure.tail_bound()) - 1.0);
      CHECK(std::abs(lk_eval(measure, t) - direct) <= tolerance + 1e-13);
    }
  }
}

TEST_CASE("total variation matches a deep direct summation") {
  std::mt19937 rng(5150);
  for (int trial = 0; trial < 20; ++trial) {
    const Product product = testsupport::random_product(rng, 3);
    const Vec2 sigma{1.0, 1.3};
    const SignedAtomicMeasure at_r = expand(product, sigma, 12);
    const SignedAtomicMeasure deep = expand(product, sigma, 160);
    const double tv_deep = deep.total_variation();
    CHECK(tv_deep >= at_r.total_variation() - 1e-12);
    CHECK(tv_deep <= at_r.total_variation() + at_r.tail_bound() + 1e-12);
  }
}

TEST_CASE("atom CSV export") {
  const SignedAtomicMeasure measure =
      expand(named_product(Family::Gstar, 2), {1.0, 1.0}, 2);
  std::ostringstream out;
  write_atoms_csv(out, measure);
  const std::string text = out.str();
  CHECK(text.rfind("p,r,a1,a2,coeff_num,coeff_den,weight,x1,x2\n", 0) == 0);
  CHECK(text.find("2,1,1,1,-1,1,-0.25,") != std::string::npos);
  CHECK(text.find("2,2,1,1,1,2,0.03125,") != std::string::npos);
  CHECK(text.find('\r') == std::string::npos);
}
