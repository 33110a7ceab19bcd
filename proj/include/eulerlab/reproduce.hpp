#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eulerlab/classify.hpp"

namespace eulerlab {

struct ReproduceRow {
  std::string family;        // e.g. "G(p)*H(q)"
  std::string product_text;  // canonical DSL for the instantiated product
  std::int64_t p = 0;
  std::int64_t q = 0;  // 0 for single-prime rows
  Vec2 sigma{1.0, 1.0};
  Verdict expected = Verdict::INCONCLUSIVE;
  Verdict computed = Verdict::INCONCLUSIVE;
  bool pass = false;
};

struct ReproduceReport {
  std::vector<ReproduceRow> rows;
  bool all_pass = false;
  double seconds = 0.0;
};

/// Runs the 11-row verdict table (Gsharp, Gstar, G; F, H; F*G, G*H, H*F at
/// one prime; F_p G_q, G_p H_q, H_p F_q at distinct primes) for every
/// ordered pair of distinct primes and every (sigma1, sigma2) combination.
/// Classifications are memoized across rows.
ReproduceReport reproduce(const std::vector<std::int64_t>& primes,
                          const std::vector<double>& sigmas,
                          int series_order = 64,
                          long witness_budget = 1000000);

}  // namespace eulerlab
