#pragma once

#include <string>
#include <string_view>

#include "eulerlab/euler.hpp"

namespace eulerlab {

/// A parsed product together with the source text it came from.
struct ProductExpr {
  std::string text;
  Product product;
};

// Grammar:
//   product  := term { "*" term }
//   term     := named | raw
//   named    := ("Gsharp"|"Gstar"|"F"|"G"|"H") "(" integer ")"
//   raw      := "factor" "(" "p=" integer "," "alpha=" rational ","
//               "a=[" integer "," integer "]" ")"
//   rational := integer [ "/" positive-integer ]
// Whitespace is insignificant. The result is the multiset union of all
// terms' factors.
Product parse(std::string_view text);

ProductExpr parse_expr(std::string_view text);

/// Canonical text: factors sorted by (p, a, alpha); maximal named families
/// recognized and emitted per prime. The empty product formats as "1"
/// (which the grammar does not accept back; empty products are spelled by
/// omission).
std::string format(const Product& product);

}  // namespace eulerlab
