#include "eulerlab/classify.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "eulerlab/errors.hpp"

namespace eulerlab {

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::ID:
      return "ID";
    case Verdict::QID:
      return "QID";
    case Verdict::ND:
      return "ND";
    case Verdict::INCONCLUSIVE:
      return "INCONCLUSIVE";
  }
  return "?";
}

namespace {

double frac_dist(double x) {
  const double f = x - std::floor(x);
  return std::min(f, 1.0 - f);
}

nlohmann::json atom_to_json(const Atom& atom) {
  return nlohmann::json{{"p", atom.key.p},
                        {"r", atom.key.r},
                        {"a", {atom.key.a[0], atom.key.a[1]}},
                        {"coeff", to_string(atom.coeff)},
                        {"weight", atom.weight},
                        {"x", {atom.x[0], atom.x[1]}}};
}

nlohmann::json atoms_to_json(const SignedAtomicMeasure& measure) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const Atom& atom : measure.atoms()) atoms.push_back(atom_to_json(atom));
  return nlohmann::json{{"atoms", std::move(atoms)},
                        {"truncation_order", measure.truncation_order()},
                        {"tail_bound", measure.tail_bound()}};
}

}  // namespace

nlohmann::json to_json(const Classification& classification) {
  nlohmann::json evidence;
  switch (classification.kind) {
    case EvidenceKind::NonnegativeAtoms:
      evidence = atoms_to_json(classification.atoms);
      evidence["type"] = "nonnegative_atoms";
      break;
    case EvidenceKind::SignedAtomsPlusCF: {
      evidence = atoms_to_json(classification.atoms);
      evidence["type"] = "signed_atoms_plus_cf";
      evidence["cf_verified_order"] = classification.cf_verified_order;
      nlohmann::json negatives = nlohmann::json::array();
      for (const Atom& atom : classification.atoms.negative_atoms()) {
        negatives.push_back(atom_to_json(atom));
      }
      evidence["negative_atoms"] = std::move(negatives);
      break;
    }
    case EvidenceKind::Witness:
      evidence = {{"type", "witness"},
                  {"t", {classification.witness->t[0],
                         classification.witness->t[1]}},
                  {"modulus", classification.witness->modulus}};
      break;
    case EvidenceKind::Exhausted:
      evidence = {{"type", "exhausted"},
                  {"series_order", classification.series_order},
                  {"witness_budget", classification.witness_budget}};
      break;
  }
  nlohmann::json out{{"verdict", to_string(classification.verdict)},
                     {"sigma", {classification.sigma[0],
                                classification.sigma[1]}},
                     {"evidence", std::move(evidence)},
                     {"series_order", classification.series_order}};
  if (classification.witness) {
    out["witness"] = {{"t", {classification.witness->t[0],
                             classification.witness->t[1]}},
                      {"modulus", classification.witness->modulus}};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

double kronecker_t(const KroneckerQuery& query) {
  const std::size_t n = query.thetas.size();
  if (n == 0 || query.phis.size() != n) {
    throw Error(ErrorCode::InvalidArgument,
                "thetas and phis must be nonempty and of equal length");
  }
  if (query.epsilon <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  }
  if (query.budget < 1) {
    throw Error(ErrorCode::InvalidArgument, "budget must be >= 1");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (query.thetas[k] <= 0.0) {
      throw Error(ErrorCode::InvalidArgument, "thetas must be positive");
    }
    for (std::size_t l = k + 1; l < n; ++l) {
      if (query.thetas[k] == query.thetas[l]) {
        throw Error(ErrorCode::InvalidArgument,
                    "thetas must be pairwise distinct");
      }
    }
  }

  auto satisfies = [&](double t) {
    for (std::size_t k = 0; k < n; ++k) {
      if (frac_dist(t * query.thetas[k] - query.phis[k]) >= query.epsilon) {
        return false;
      }
    }
    return true;
  };

  if (n == 1) {
    // one-dimensional case is exact
    return query.phis[0] / query.thetas[0];
  }

  if (n == 2) {
    for (std::size_t j = 0; j < 2; ++j) {
      if (query.phis[j] != 0.5) continue;
      // odd multiples of 1/(2 theta_j) hit phase 1/2 exactly; scan for the
      // companion theta
      for (long m = 0; m < query.budget; ++m) {
        const double t = (2.0 * m + 1.0) / (2.0 * query.thetas[j]);
        if (satisfies(t)) return t;
      }
      throw Error(ErrorCode::BudgetExhausted,
                  "no odd multiple within epsilon after " +
                      std::to_string(query.budget) + " candidates");
    }
  }

  const double max_theta = *std::max_element(query.thetas.begin(),
                                             query.thetas.end());
  const double delta = query.epsilon / (2.0 * max_theta);
  for (long j = 1; j <= query.budget; ++j) {
    const double t = j * delta;
    if (satisfies(t)) return t;
  }
  throw Error(ErrorCode::BudgetExhausted,
              "no grid point within epsilon after " +
                  std::to_string(query.budget) + " candidates");
}

namespace {

long witness_thread_count(long rows) {
  unsigned hw = std::thread::hardware_concurrency();
  long threads = hw == 0 ? 1 : static_cast<long>(hw);
  threads = std::min(threads, 8L);
  if (const char* env = std::getenv("EULERLAB_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) threads = std::min(threads, cap);
  }
  return std::clamp(threads, 1L, std::max(rows, 1L));
}

std::optional<WitnessPoint> verify_witness(const Product& product, Vec2 sigma,
                                           const Vec2& t) {
  const double modulus = std::abs(normalize(product, EvalPoint{sigma, t}));
  if (modulus >= kNdThreshold) return WitnessPoint{t, modulus};
  return std::nullopt;
}

struct GridOutcome {
  long qualifying_index = LONG_MAX;
  Vec2 qualifying_t{0.0, 0.0};
  long best_index = LONG_MAX;
  double best_modulus = -1.0;
  Vec2 best_t{0.0, 0.0};
};

// Rows are striped across threads; each thread stops scanning further rows
// once it holds a qualifying point (later rows only yield larger indices).
// The reduction keeps the smallest qualifying index, so the outcome does not
// depend on the number of threads.
GridOutcome grid_scan(const ModulusEvaluator& modulus, long n_side,
                      double step) {
  const long threads = witness_thread_count(n_side);
  std::vector<GridOutcome> partial(static_cast<std::size_t>(threads));

  auto worker = [&](long worker_id) {
    GridOutcome& mine = partial[static_cast<std::size_t>(worker_id)];
    for (long row = worker_id; row < n_side; row += threads) {
      if (mine.qualifying_index != LONG_MAX) break;
      for (long col = 0; col < n_side; ++col) {
        const Vec2 t{row * step, col * step};
        const double value = modulus(t);
        const long index = row * n_side + col;
        if (value >= kNdThreshold) {
          mine.qualifying_index = index;
          mine.qualifying_t = t;
          break;
        }
        if (value > mine.best_modulus) {
          mine.best_modulus = value;
          mine.best_index = index;
          mine.best_t = t;
        }
      }
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (long id = 0; id < threads; ++id) pool.emplace_back(worker, id);
    for (std::thread& th : pool) th.join();
  }

  GridOutcome out;
  for (const GridOutcome& part : partial) {
    if (part.qualifying_index < out.qualifying_index) {
      out.qualifying_index = part.qualifying_index;
      out.qualifying_t = part.qualifying_t;
    }
    if (part.best_modulus > out.best_modulus ||
        (part.best_modulus == out.best_modulus &&
         part.best_index < out.best_index)) {
      out.best_modulus = part.best_modulus;
      out.best_index = part.best_index;
      out.best_t = part.best_t;
    }
  }
  return out;
}

Vec2 refine_ascent(const ModulusEvaluator& modulus, Vec2 center, double step) {
  double half = step;
  for (int level = 0; level < 8; ++level) {
    Vec2 best = center;
    double best_value = modulus(center);
    for (int k1 = -2; k1 <= 2; ++k1) {
      for (int k2 = -2; k2 <= 2; ++k2) {
        const Vec2 t{center[0] + k1 * half / 2.0, center[1] + k2 * half / 2.0};
        const double value = modulus(t);
        if (value > best_value) {
          best_value = value;
          best = t;
        }
      }
    }
    center = best;
    half /= 2.0;
  }
  return center;
}

}  // namespace

std::optional<WitnessPoint> find_nd_witness(const Product& product, Vec2 sigma,
                                            long budget) {
  if (budget < 1) {
    throw Error(ErrorCode::InvalidArgument, "witness budget must be >= 1");
  }
  if (product.empty()) return std::nullopt;
  const ModulusEvaluator modulus(product, sigma);
  const std::vector<std::int64_t> primes = product.primes();

  // stage (a): closed-form single-prime candidates, diagonals first
  for (std::int64_t p : primes) {
    const double base = std::numbers::pi / std::log(static_cast<double>(p));
    for (int m : {1, 2}) {
      const double v = base / m;
      if (auto witness = verify_witness(product, sigma, {v, v})) {
        return witness;
      }
    }
    for (int m : {1, 2}) {
      const double v = base / m;
      if (auto witness = verify_witness(product, sigma, {v, 0.0})) {
        return witness;
      }
      if (auto witness = verify_witness(product, sigma, {0.0, v})) {
        return witness;
      }
    }
  }

  // stage (b): Kronecker phase targets for each ordered pair of primes
  constexpr double kPhaseEpsilons[] = {0.02, 0.005, 0.001};
  for (std::size_t i = 0; i < primes.size(); ++i) {
    for (std::size_t j = i + 1; j < primes.size(); ++j) {
      const std::int64_t pairs[2][2] = {
          {primes[i], primes[j]},
          {primes[j], primes[i]},
      };
      for (const auto& pair : pairs) {
        const double theta_one = std::log(static_cast<double>(pair[0])) /
                                 (2.0 * std::numbers::pi);
        const double theta_half = std::log(static_cast<double>(pair[1])) /
                                  (2.0 * std::numbers::pi);
        for (double eps : kPhaseEpsilons) {
          KroneckerQuery query;
          query.thetas = {theta_one, theta_half};
          query.phis = {0.0, 0.5};
          query.epsilon = eps;
          query.budget = 100000;
          double t = 0.0;
          try {
            t = kronecker_t(query);
          } catch (const Error&) {
            continue;
          }
          if (auto witness = verify_witness(product, sigma, {t, t})) {
            return witness;
          }
        }
      }
    }
  }

  // stage (c): coarse grid over [0, T_max]^2, then local refinement
  const long n_side =
      std::max(2L, static_cast<long>(std::sqrt(static_cast<double>(budget))));
  const double min_logp = std::log(static_cast<double>(primes.front()));
  const double t_max =
      2.0 * std::numbers::pi * std::sqrt(static_cast<double>(budget)) /
      min_logp;
  const double step = t_max / (n_side - 1);

  const GridOutcome outcome = grid_scan(modulus, n_side, step);
  if (outcome.qualifying_index != LONG_MAX) {
    if (auto witness = verify_witness(product, sigma, outcome.qualifying_t)) {
      return witness;
    }
  }
  if (outcome.best_index != LONG_MAX) {
    const Vec2 refined = refine_ascent(modulus, outcome.best_t, step);
    if (auto witness = verify_witness(product, sigma, refined)) {
      return witness;
    }
  }
  return std::nullopt;
}

Classification classify(const Product& product, Vec2 sigma, int series_order,
                        long witness_budget) {
  Classification out;
  out.sigma = sigma;
  out.series_order = series_order;

  const int R = choose_truncation(product, sigma);
  const SignedAtomicMeasure measure = expand(product, sigma, R);

  if (measure.nonnegative()) {
    out.verdict = Verdict::ID;
    out.kind = EvidenceKind::NonnegativeAtoms;
    out.atoms = measure;
    return out;
  }

  if (auto witness = find_nd_witness(product, sigma, witness_budget)) {
    out.verdict = Verdict::ND;
    out.kind = EvidenceKind::Witness;
    out.witness = witness;
    return out;
  }

  bool series_nonnegative = true;
  for (std::int64_t p : product.primes()) {
    if (!coeff_lattice(product, p, series_order).nonnegative()) {
      series_nonnegative = false;
      break;
    }
  }
  if (series_nonnegative) {
    out.verdict = Verdict::QID;
    out.kind = EvidenceKind::SignedAtomsPlusCF;
    out.atoms = measure;
    out.cf_verified_order = series_order;
    return out;
  }

  out.verdict = Verdict::INCONCLUSIVE;
  out.kind = EvidenceKind::Exhausted;
  out.witness_budget = witness_budget;
  return out;
}

NdCertificate nd_certificate(Family family, std::int64_t p, std::int64_t q,
                             Vec2 sigma, int R, double t0) {
  if (family != Family::G && family != Family::F) {
    throw Error(ErrorCode::InvalidArgument,
                "certificate families are G and F (paired with H)");
  }
  if (R < 1) {
    throw Error(ErrorCode::InvalidArgument, "R must be >= 1");
  }

  NdCertificate cert;
  cert.p = p;
  cert.q = q;
  cert.R = R;
  cert.t0 = t0;

  const double logp = std::log(static_cast<double>(p));
  const double logq = std::log(static_cast<double>(q));
  const double s1 = sigma[0];
  const double s2 = sigma[1];

  // epsilon dominates every sum_{r>2R} r^{-1} x^{-r s} that was truncated
  auto geom_tail = [&](double logx, double s) {
    const double lambda = std::exp(-s * logx);
    return std::pow(lambda, 2 * R + 1) / ((2 * R + 1) * (1.0 - lambda));
  };
  double eps = 0.0;
  for (double logx : {logp, logq}) {
    for (double s : {s1, s2, s1 + s2}) {
      eps = std::max(eps, geom_tail(logx, s));
    }
  }
  cert.epsilon = eps;

  cert.epsilon_prime =
      std::max(std::abs(std::polar(1.0, t0 * logp) - 1.0),
               std::abs(std::polar(1.0, t0 * logq) + 1.0));
  const double epsp = cert.epsilon_prime;

  auto power_sum = [&](double logx, double s, int from, int by, int count) {
    // sum over count terms r = from, from+by, ... of x^{-r s}/r
    double sum = 0.0;
    int r = from;
    for (int k = 0; k < count; ++k, r += by) {
      sum += std::exp(-r * s * logx) / r;
    }
    return sum;
  };

  const double sp_axes = power_sum(logp, s1, 1, 1, 2 * R) +
                         power_sum(logp, s2, 1, 1, 2 * R);
  const double sp_diag = power_sum(logp, s1 + s2, 1, 1, 2 * R);
  const double sq_diag = power_sum(logq, s1 + s2, 1, 1, 2 * R);
  const double sq_odd =
      power_sum(logq, s1, 1, 2, R) + power_sum(logq, s2, 1, 2, R);
  const double sq_even =
      power_sum(logq, s1, 2, 2, R) + power_sum(logq, s2, 2, 2, R);

  cert.C = 4.0 * sq_odd;

  const Product p_part = named_product(family, p);
  const Product h_part = named_product(Family::H, q);
  const Vec2 t_diag{t0, t0};
  cert.p_part_value =
      2.0 * std::log(std::abs(normalize(p_part, EvalPoint{sigma, t_diag})));
  cert.h_part_value =
      2.0 * std::log(std::abs(normalize(h_part, EvalPoint{sigma, t_diag})));
  cert.log_modulus_sq = cert.p_part_value + cert.h_part_value;

  if (family == Family::G) {
    cert.C_prime = sp_axes + 2.0 * sp_diag + 2.0 * sq_diag + sq_odd + sq_even;
    cert.p_part_bound =
        -12.0 * eps - 4.0 * R * epsp * sp_axes - 8.0 * R * epsp * sp_diag;
    cert.lower_bound = -24.0 * eps - 4.0 * R * cert.C_prime * epsp + cert.C;
  } else {
    cert.C_prime = 2.0 * sp_diag + 2.0 * sq_diag + sq_odd + sq_even;
    cert.p_part_bound = -4.0 * eps - 8.0 * R * epsp * sp_diag;
    cert.lower_bound = -16.0 * eps - 4.0 * R * cert.C_prime * epsp + cert.C;
  }
  cert.h_part_bound = -12.0 * eps - 8.0 * R * epsp * sq_diag +
                      (4.0 - 4.0 * R * epsp) * sq_odd -
                      4.0 * R * epsp * sq_even;

  cert.inequalities_hold = cert.p_part_value > cert.p_part_bound &&
                           cert.h_part_value > cert.h_part_bound &&
                           cert.log_modulus_sq > cert.lower_bound;
  cert.bound_positive = cert.lower_bound > 0.0;
  return cert;
}

}  // namespace eulerlab
