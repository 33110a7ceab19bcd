#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "eulerlab/expansion.hpp"
#include "eulerlab/series.hpp"

namespace eulerlab {

inline constexpr double kNdThreshold = 1.0 + 1e-6;

enum class Verdict { ID, QID, ND, INCONCLUSIVE };

const char* to_string(Verdict verdict);

struct WitnessPoint {
  Vec2 t;
  double modulus;
};

enum class EvidenceKind {
  NonnegativeAtoms,
  SignedAtomsPlusCF,
  Witness,
  Exhausted,
};

struct Classification {
  Verdict verdict = Verdict::INCONCLUSIVE;
  Vec2 sigma{1.0, 1.0};
  EvidenceKind kind = EvidenceKind::Exhausted;
  SignedAtomicMeasure atoms;  // NonnegativeAtoms / SignedAtomsPlusCF
  int series_order = 0;       // K passed to classify
  int cf_verified_order = 0;  // set for SignedAtomsPlusCF
  std::optional<WitnessPoint> witness;
  long witness_budget = 0;  // reported for Exhausted
};

nlohmann::json to_json(const Classification& classification);

struct KroneckerQuery {
  std::vector<double> thetas;  // pairwise distinct, > 0
  std::vector<double> phis;    // target phases in [0,1)
  double epsilon = 0.02;
  long budget = 100000;
};

/// Returns t with dist(t*theta_k - phi_k, Z) < epsilon for every k.
/// Exact closed forms for one theta and for the two-theta case with one
/// phase equal to 1/2 (odd-multiple scan); otherwise a grid scan with step
/// epsilon / (2 max theta). Throws BudgetExhausted when the scan runs out.
double kronecker_t(const KroneckerQuery& query);

/// Three-stage deterministic search for a point with |normalize| >= 1+1e-6:
/// closed-form single-prime candidates, Kronecker phase targets for prime
/// pairs, then a coarse grid over [0, 2*pi*sqrt(budget)/min log p]^2 with
/// budget points followed by a local refinement from the best grid cell.
/// Absence is a value, not an error.
std::optional<WitnessPoint> find_nd_witness(const Product& product, Vec2 sigma,
                                            long budget = 1000000);

/// Pipeline: exact nonnegativity of the merged atom table (ID), else witness
/// search (ND), else per-prime series nonnegativity to order K (QID), else
/// INCONCLUSIVE.
Classification classify(const Product& product, Vec2 sigma,
                        int series_order = 64, long witness_budget = 1000000);

/// Numeric check of the lower-bound mechanism behind the two-prime ND
/// results: phase-controlled bounds for the factor at p (family G or F)
/// and the H factor at q, their combination, and positivity of the combined
/// bound. epsilon comes from the 2R series tails, epsilon' from the achieved
/// phases at t0.
struct NdCertificate {
  std::int64_t p = 0;  // prime approximated to phase 1 (G or F part)
  std::int64_t q = 0;  // prime approximated to phase -1 (H part)
  int R = 0;
  double t0 = 0.0;
  double epsilon = 0.0;
  double epsilon_prime = 0.0;
  double C = 0.0;
  double C_prime = 0.0;
  double p_part_value = 0.0;  // log(X(t0) X(-t0)) for the p family
  double p_part_bound = 0.0;
  double h_part_value = 0.0;  // log(H_q(t0) H_q(-t0))
  double h_part_bound = 0.0;
  double log_modulus_sq = 0.0;  // 2 log |product at (t0,t0)|
  double lower_bound = 0.0;     // combined certified bound
  bool inequalities_hold = false;
  bool bound_positive = false;
};

/// family must be Family::G or Family::F (the part at prime p); the other
/// part is H at prime q.
NdCertificate nd_certificate(Family family, std::int64_t p, std::int64_t q,
                             Vec2 sigma, int R, double t0);

}  // namespace eulerlab
