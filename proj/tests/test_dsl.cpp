#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>

#include "eulerlab/dsl.hpp"
#include "eulerlab/errors.hpp"
#include "test_support.hpp"

using namespace eulerlab;

TEST_CASE("parse named products and raw factors") {
  const Product gh = parse("G(2)*H(3)");
  CHECK(gh.size() == 6);
  CHECK(gh.primes() == std::vector<std::int64_t>{2, 3});
  CHECK(gh == named_product(Family::G, 2) * named_product(Family::H, 3));

  CHECK(parse("factor(p=2, alpha=-1, a=[1,1])") ==
        named_product(Family::Gstar, 2));

  CHECK(parse("factor(p=5,alpha=3/4,a=[2,0])") ==
        Product({Factor(5, make_rational(3, 4), {2, 0})}));

  // whitespace is insignificant
  CHECK(parse("  G( 2 ) *  F(3)") ==
        named_product(Family::G, 2) * named_product(Family::F, 3));

  // multiset semantics: repetition squares the factor
  const Product ff = parse("F(2)*F(2)");
  CHECK(ff.size() == 2);
  CHECK(ff.factors()[0] == ff.factors()[1]);
}

TEST_CASE("parse error positions") {
  SUBCASE("dangling operator") {
    try {
      parse("F(2)*");
      FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
      CHECK(e.position() == 5);
      CHECK(e.expected() == "term");
    }
  }

  SUBCASE("empty input") {
    try {
      parse("");
      FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
      CHECK(e.position() == 0);
      CHECK(e.expected() == "term");
    }
  }

  SUBCASE("the empty product is spelled by omission, not '1'") {
    CHECK_THROWS_AS(parse("1"), SyntaxError);
  }

  SUBCASE("unknown name") {
    CHECK_THROWS_AS(parse("X(2)"), SyntaxError);
  }

  SUBCASE("trailing garbage") {
    CHECK_THROWS_AS(parse("F(2))"), SyntaxError);
  }

  SUBCASE("domain errors carry their own codes") {
    CHECK_THROWS_WITH_AS(parse("F(4)"), doctest::Contains("NotPrime"), Error);
    CHECK_THROWS_WITH_AS(parse("factor(p=2,alpha=2,a=[1,0])"),
                         doctest::Contains("AlphaOutOfRange"), Error);
    CHECK_THROWS_WITH_AS(parse("factor(p=2,alpha=1,a=[0,0])"),
                         doctest::Contains("ZeroDirection"), Error);
    CHECK_THROWS_AS(parse("factor(p=2,alpha=1/0,a=[1,0])"), SyntaxError);
  }
}

TEST_CASE("format canonicalizes") {
  CHECK(format(parse("H(3)*G(2)")) == "G(2)*H(3)");
  CHECK(format(Product{}) == "1");
  CHECK(format(Product({Factor(5, make_rational(1), {1, 1})})) == "F(5)");

  // named recognition from raw spellings
  CHECK(format(parse("factor(p=2,alpha=-1,a=[1,1])")) == "Gstar(2)");
  CHECK(format(parse("factor(p=2,alpha=1,a=[1,0])*factor(p=2,alpha=1,a=[0,1])"
                     "*factor(p=2,alpha=-1,a=[1,1])")) == "G(2)");

  // G + F rather than Gsharp + Gstar + F
  CHECK(format(parse("Gsharp(2)*Gstar(2)*F(2)")) == "F(2)*G(2)");

  // leftover raw factors come after named terms
  CHECK(format(parse("Gstar(2)*factor(p=2,alpha=1/2,a=[1,0])")) ==
        "Gstar(2)*factor(p=2,alpha=1/2,a=[1,0])");

  // primes ascending
  CHECK(format(parse("F(5)*F(3)*F(2)")) == "F(2)*F(3)*F(5)");
}

TEST_CASE("parse_expr keeps the source text") {
  const ProductExpr expr = parse_expr("H(3) * G(2)");
  CHECK(expr.text == "H(3) * G(2)");
  CHECK(expr.product == parse("G(2)*H(3)"));
  CHECK(format(parse(format(expr.product))) == format(expr.product));
}

TEST_CASE("round-trip: parse after format is the identity on products") {
  std::mt19937 rng(123456);
  for (int trial = 0; trial < 1000; ++trial) {
    const Product product = testsupport::random_product(rng, 6);
    const std::string text = format(product);
    CAPTURE(text);
    const Product again = parse(text);
    CHECK(again == product);
    // format is a fixed point after one canonicalization
    CHECK(format(again) == text);
  }
}

TEST_CASE("parse is total: garbage never crashes") {
  std::mt19937 rng(777);
  const std::string alphabet = "GFH*()[]=,/-0123456789ap xz";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> len(0, 24);
  for (int trial = 0; trial < 3000; ++trial) {
    std::string text;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) text.push_back(alphabet[pick(rng)]);
    try {
      (void)parse(text);
    } catch (const Error&) {
      // expected for almost every string; anything else would fail the test
    }
  }
}
