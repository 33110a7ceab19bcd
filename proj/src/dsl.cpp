#include "eulerlab/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "eulerlab/errors.hpp"

namespace eulerlab {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Product parse_product() {
    std::vector<Factor> factors;
    parse_term(factors);
    skip_ws();
    while (!at_end() && peek() == '*') {
      ++pos_;
      parse_term(factors);
      skip_ws();
    }
    if (!at_end()) {
      throw SyntaxError(pos_, "'*' or end of input");
    }
    return Product(std::move(factors));
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
      ++pos_;
    }
  }

  void expect(char c, const char* what) {
    skip_ws();
    if (at_end() || peek() != c) throw SyntaxError(pos_, what);
    ++pos_;
  }

  std::string parse_ident() {
    skip_ws();
    std::size_t start = pos_;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  std::int64_t parse_integer(const char* what) {
    skip_ws();
    std::size_t start = pos_;
    if (!at_end() && (peek() == '-' || peek() == '+')) ++pos_;
    std::size_t digits = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      ++pos_;
    }
    if (pos_ == digits) throw SyntaxError(start, what);
    try {
      return std::stoll(std::string(text_.substr(start, pos_ - start)));
    } catch (const std::out_of_range&) {
      throw Error(ErrorCode::InvalidArgument, "integer out of range");
    }
  }

  Rational parse_rational() {
    skip_ws();
    std::size_t start = pos_;
    std::size_t den_start = 0;
    parse_integer("rational");
    if (!at_end() && peek() == '/') {
      ++pos_;
      den_start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        ++pos_;
      }
      if (pos_ == den_start) throw SyntaxError(den_start, "positive integer");
    }
    std::string token(text_.substr(start, pos_ - start));
    token.erase(std::remove(token.begin(), token.end(), '+'), token.end());
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), token.c_str(), 10) != 0) {
      throw SyntaxError(start, "rational");
    }
    if (q.get_den() == 0) {
      throw SyntaxError(den_start, "positive integer");
    }
    q.canonicalize();
    return q;
  }

  void expect_keyword(std::string_view word) {
    skip_ws();
    if (text_.substr(pos_, word.size()) != word) {
      throw SyntaxError(pos_, "'" + std::string(word) + "'");
    }
    pos_ += word.size();
  }

  void parse_term(std::vector<Factor>& factors) {
    skip_ws();
    if (at_end() || !std::isalpha(static_cast<unsigned char>(peek()))) {
      throw SyntaxError(pos_, "term");
    }
    std::size_t ident_pos = pos_;
    std::string ident = parse_ident();
    if (ident == "factor") {
      expect('(', "'('");
      expect_keyword("p");
      expect('=', "'='");
      std::int64_t p = parse_integer("integer");
      expect(',', "','");
      expect_keyword("alpha");
      expect('=', "'='");
      Rational alpha = parse_rational();
      expect(',', "','");
      expect_keyword("a");
      expect('=', "'='");
      expect('[', "'['");
      std::int64_t a1 = parse_integer("integer");
      expect(',', "','");
      std::int64_t a2 = parse_integer("integer");
      expect(']', "']'");
      expect(')', "')'");
      constexpr std::int64_t kDirLimit = 1000000;
      if (a1 > kDirLimit || a2 > kDirLimit || a1 < -kDirLimit ||
          a2 < -kDirLimit) {
        throw Error(ErrorCode::InvalidArgument,
                    "direction components must stay within 1e6");
      }
      factors.push_back(
          make_factor(p, alpha, {static_cast<int>(a1), static_cast<int>(a2)}));
      return;
    }
    if (ident == "Gsharp" || ident == "Gstar" || ident == "F" ||
        ident == "G" || ident == "H") {
      expect('(', "'('");
      std::int64_t p = parse_integer("integer");
      expect(')', "')'");
      const Product named = named_product(ident, p);
      factors.insert(factors.end(), named.factors().begin(),
                     named.factors().end());
      return;
    }
    throw SyntaxError(ident_pos, "term");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

struct NamedPattern {
  Family family;
  std::vector<Factor> factors;
};

// Extraction order: larger families first so G wins over Gsharp+Gstar.
const std::vector<NamedPattern>& named_patterns(std::int64_t p) {
  thread_local std::map<std::int64_t, std::vector<NamedPattern>> cache;
  auto it = cache.find(p);
  if (it == cache.end()) {
    std::vector<NamedPattern> patterns;
    for (Family family : {Family::G, Family::H, Family::Gsharp, Family::F,
                          Family::Gstar}) {
      std::vector<Factor> factors = named_product(family, p).factors();
      patterns.push_back({family, std::move(factors)});
    }
    it = cache.emplace(p, std::move(patterns)).first;
  }
  return it->second;
}

}  // namespace

Product parse(std::string_view text) { return Parser(text).parse_product(); }

ProductExpr parse_expr(std::string_view text) {
  return ProductExpr{std::string(text), parse(text)};
}

std::string format(const Product& product) {
  if (product.empty()) return "1";

  // factors() is already canonically sorted; work prime by prime
  std::vector<std::string> terms;
  const std::vector<Factor>& all = product.factors();
  std::size_t i = 0;
  while (i < all.size()) {
    const std::int64_t p = all[i].p();
    std::vector<Factor> pool;
    while (i < all.size() && all[i].p() == p) pool.push_back(all[i++]);

    std::vector<std::string> named;
    for (const NamedPattern& pattern : named_patterns(p)) {
      while (true) {
        std::vector<Factor> rest = pool;
        bool matched = true;
        for (const Factor& needed : pattern.factors) {
          auto it = std::find(rest.begin(), rest.end(), needed);
          if (it == rest.end()) {
            matched = false;
            break;
          }
          rest.erase(it);
        }
        if (!matched) break;
        named.push_back(std::string(to_string(pattern.family)) + "(" +
                        std::to_string(p) + ")");
        pool = std::move(rest);
      }
    }
    std::sort(named.begin(), named.end());
    terms.insert(terms.end(), named.begin(), named.end());
    for (const Factor& factor : pool) {
      std::ostringstream os;
      os << "factor(p=" << factor.p() << ",alpha=" << to_string(factor.alpha())
         << ",a=[" << factor.a()[0] << "," << factor.a()[1] << "])";
      terms.push_back(os.str());
    }
  }

  std::string out;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (k > 0) out += "*";
    out += terms[k];
  }
  return out;
}

}  // namespace eulerlab
