#include "eulerlab/reproduce.hpp"

#include <chrono>
#include <cstdio>
#include <map>

#include "eulerlab/dsl.hpp"
#include "eulerlab/errors.hpp"

namespace eulerlab {

namespace {

struct RowSpec {
  const char* label;
  bool two_prime;
  Verdict expected;
  Product (*build)(std::int64_t p, std::int64_t q);
};

const RowSpec kRows[] = {
    {"Gsharp(p)", false, Verdict::ID,
     [](std::int64_t p, std::int64_t) { return named_product(Family::Gsharp, p); }},
    {"Gstar(p)", false, Verdict::ND,
     [](std::int64_t p, std::int64_t) { return named_product(Family::Gstar, p); }},
    {"G(p)", false, Verdict::QID,
     [](std::int64_t p, std::int64_t) { return named_product(Family::G, p); }},
    {"F(p)", false, Verdict::ID,
     [](std::int64_t p, std::int64_t) { return named_product(Family::F, p); }},
    {"H(p)", false, Verdict::ND,
     [](std::int64_t p, std::int64_t) { return named_product(Family::H, p); }},
    {"F(p)*G(p)", false, Verdict::ID,
     [](std::int64_t p, std::int64_t) {
       return named_product(Family::F, p) * named_product(Family::G, p);
     }},
    {"G(p)*H(p)", false, Verdict::ID,
     [](std::int64_t p, std::int64_t) {
       return named_product(Family::G, p) * named_product(Family::H, p);
     }},
    {"H(p)*F(p)", false, Verdict::ND,
     [](std::int64_t p, std::int64_t) {
       return named_product(Family::H, p) * named_product(Family::F, p);
     }},
    {"F(p)*G(q)", true, Verdict::QID,
     [](std::int64_t p, std::int64_t q) {
       return named_product(Family::F, p) * named_product(Family::G, q);
     }},
    {"G(p)*H(q)", true, Verdict::ND,
     [](std::int64_t p, std::int64_t q) {
       return named_product(Family::G, p) * named_product(Family::H, q);
     }},
    {"H(p)*F(q)", true, Verdict::ND,
     [](std::int64_t p, std::int64_t q) {
       return named_product(Family::H, p) * named_product(Family::F, q);
     }},
};

std::string memo_key(const std::string& text, Vec2 sigma) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "|%.17g,%.17g", sigma[0], sigma[1]);
  return text + buf;
}

}  // namespace

ReproduceReport reproduce(const std::vector<std::int64_t>& primes,
                          const std::vector<double>& sigmas, int series_order,
                          long witness_budget) {
  if (primes.size() < 2) {
    throw Error(ErrorCode::InvalidArgument,
                "need at least two distinct primes");
  }
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (!is_prime(primes[i])) {
      throw Error(ErrorCode::NotPrime,
                  std::to_string(primes[i]) + " is not prime");
    }
    for (std::size_t j = i + 1; j < primes.size(); ++j) {
      if (primes[i] == primes[j]) {
        throw Error(ErrorCode::InvalidArgument, "primes must be distinct");
      }
    }
  }
  if (sigmas.empty()) {
    throw Error(ErrorCode::InvalidArgument, "need at least one sigma value");
  }
  for (double s : sigmas) {
    if (s <= 0.0) {
      throw Error(ErrorCode::InvalidArgument, "sigma values must be positive");
    }
  }

  const auto start = std::chrono::steady_clock::now();
  ReproduceReport report;
  report.all_pass = true;
  std::map<std::string, Verdict> memo;

  for (std::int64_t p : primes) {
    for (std::int64_t q : primes) {
      if (p == q) continue;
      for (double s1 : sigmas) {
        for (double s2 : sigmas) {
          const Vec2 sigma{s1, s2};
          for (const RowSpec& spec : kRows) {
            ReproduceRow row;
            row.family = spec.label;
            row.p = p;
            row.q = spec.two_prime ? q : 0;
            row.sigma = sigma;
            row.expected = spec.expected;

            const Product product = spec.build(p, q);
            row.product_text = format(product);
            const std::string key = memo_key(row.product_text, sigma);
            auto it = memo.find(key);
            if (it == memo.end()) {
              const Classification result =
                  classify(product, sigma, series_order, witness_budget);
              it = memo.emplace(key, result.verdict).first;
            }
            row.computed = it->second;
            row.pass = row.computed == row.expected;
            report.all_pass = report.all_pass && row.pass;
            report.rows.push_back(std::move(row));
          }
        }
      }
    }
  }

  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

}  // namespace eulerlab
