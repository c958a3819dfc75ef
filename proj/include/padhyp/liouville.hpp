#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padhyp/parameter.hpp"

namespace padhyp {

struct HypParams;

enum class LiouvilleStatus { NonLiouvilleCertified, LiouvilleWitnessed, Indeterminate };

const char* to_string(LiouvilleStatus s);

/// v_p(alpha - k) and v_p(alpha + k).
struct ValuationSample {
  long k = 0;
  ShiftValuation minus;
  ShiftValuation plus;
};

struct LiouvilleVerdict {
  LiouvilleStatus status = LiouvilleStatus::Indeterminate;
  double radius_lower = 0.0;
  double radius_upper = 1.0;
  std::vector<ValuationSample> evidence;
  long horizon = 0;
  /// Human-readable proof object for certified verdicts, or witness list.
  std::string certificate;
};

/// sum_i p^{a_i} with a_{i+1} = p^{a_i}, digits kept below horizon.
PadicParameter liouville_exemplar(unsigned long p, long a0, long horizon);

ShiftValuation param_shift_valuation(const PadicParameter& alpha, long k);

/// Rationals are certified through v_p(a/b -+ k) <= log_p(b k + |a|). Digit
/// streams are witnessed when two shifts k satisfy
/// v_p(alpha -+ k) >= max(k/2, 1 + log_p k), else Indeterminate.
/// Throws IsInteger for integers; HorizonTooSmall when a stream leaves some
/// sample undetermined and nothing is witnessed.
LiouvilleVerdict liouville_diagnose(const PadicParameter& alpha, long horizon);

/// CSV table "k,v_minus,v_plus" ("inf" or ">=H" where not exact).
std::string evidence_csv(const LiouvilleVerdict& verdict);

struct RadiusReport {
  /// V_k = sum_{s<=k} v_p(s - alpha), so the k-th coefficient has valuation -V_k.
  std::vector<long> partial_valuations;
  double slope = 0.0;
  double estimate = 0.0;
  double floor = 0.0;
  double slack = 0.0;
  /// estimate >= floor * (1 - slack).
  bool holds = false;
};

/// Newton polygon of sum_k x^k / prod_{s=0}^k (s - alpha) over k < horizon:
/// chord slope of the lower hull between horizon/2 and horizon.
RadiusReport radius_hypergeo_series(const PadicParameter& alpha, long horizon);

struct ProductBound {
  std::optional<long> valuation;  // nullopt = +infinity
  bool valuation_exact = true;
  double bound = 0.0;
  bool holds = false;
};

/// v_p(prod_{s=l}^N (s - alpha)) against (N-l+1)/(p-1) - 1 - log_p(N-l+1),
/// compared exactly in integers.
ProductBound product_valuation_bound(const PadicParameter& alpha, long l, long N);

struct FactorialBound {
  long valuation = 0;
  double bound = 0.0;
  bool holds = false;
};

/// Legendre's v_p(M!) against M/(p-1) - log_p M - 1, compared exactly.
FactorialBound factorial_valuation_check(unsigned long M, unsigned long p);

struct DivergenceReport {
  /// log_p(|prod_{s=l}^{l+k}(s - alpha)| r^{-k}) for k = 0..kmax.
  std::vector<double> log_sequence;
  bool diverges = false;
  double first_half_max = 0.0;
  double trailing_max = 0.0;
};

/// Sequence |prod (s - alpha)| r^{-k} with log_r = log_p r < -1/(p-1).
/// Divergent when the running maximum is reached in the last quarter and
/// exceeds the first-half maximum by at least one unit of log_p.
DivergenceReport tail_divergence_witness(const PadicParameter& alpha, long l, double log_r, long kmax);

/// Shared trailing-window divergence test on a log_p sequence.
bool trailing_divergence(const std::vector<double>& seq, double* first_half_max = nullptr,
                         double* trailing_max = nullptr);

struct PairVerdict {
  std::size_t i = 0;
  std::size_t j = 0;
  std::string difference;
  bool integer = false;
  LiouvilleStatus status = LiouvilleStatus::Indeterminate;
};

struct SigmaScanReport {
  std::vector<std::string> generators;
  long height_bound = 0;
  long horizon = 0;
  std::vector<PairVerdict> pairs;
  bool integer_difference = false;
  std::size_t scanned = 0;
  std::string worst_element;
  double worst_radius = 1.0;
  LiouvilleStatus status = LiouvilleStatus::NonLiouvilleCertified;
  bool sigma_mode = false;
};

/// Checks every alpha_i - beta_j; with height_bound > 0 also scans the
/// integer combinations of all parameters with |coefficient| <= height_bound
/// modulo Z. Never throws on verdicts.
SigmaScanReport hypothesis_check(const HypParams& params, long horizon, long height_bound);

}  // namespace padhyp
