#pragma once

#include <optional>
#include <vector>

#include "padhyp/growth.hpp"
#include "padhyp/hypergeom.hpp"

namespace padhyp {

/// sum_l c_l d^[l] with c_l stored for l = 0..truncation_order. When
/// exact_tail is set the coefficients beyond truncation_order are exactly
/// zero; otherwise they are unknown and bounded only by the growth certificate.
struct CoefficientSeries {
  const DworkField* field = nullptr;
  std::vector<PadicScalar> coeffs;
  long truncation_order = -1;
  std::optional<GrowthCertificate> growth;
  bool exact_tail = true;

  static CoefficientSeries make(const DworkField& field, std::vector<PadicScalar> coeffs, bool exact_tail = true,
                                std::optional<GrowthCertificate> growth = std::nullopt);
  /// Stored coefficient, exact zero past an exact tail, or O(pi^bound) from the certificate.
  PadicScalar at(long l) const;
  bool is_zero() const;
  /// sum_l c_l d^[l] as an A1 operator (x-degree 0).
  WeylOperator as_operator(Window window) const;
};

struct SolveOptions {
  /// Largest recurrence cutoff tried before giving up with TailBoundTooWeak.
  long max_cutoff = 2048;
};

struct DecayFit {
  double log_c2 = 0.0;
  double eta_quarter = 0.0;
  bool holds = false;
};

struct SolveReport {
  CoefficientSeries R;
  WeylOperator head_part;
  long l0 = 0;
  long cutoff = 0;
  /// Precision (pi-units) of each d_l; the rigorous bound on what the
  /// truncated recurrence omits.
  std::vector<std::optional<long>> tail_error_units;
  Valuation residual_valuation;
  long residual_checked_through = -1;
  DecayFit decay;
};

/// max({beta_j + 1} intersected with Z_{>=0}), or 0.
long compute_l0(const HypParams& params);

/// d_l for l < l0 from d_{l0} by
/// d_l = [s pi^{m-n} prod(l - beta) d_{l+1} - c_l] / prod(l - alpha), s = (-1)^{m+np}.
/// Returns sum_{l<l0} d_l d^[l]. Throws IntegerAlpha.
WeylOperator head_solve(const std::vector<PadicScalar>& c_head, const PadicScalar& d_l0, const HypParams& params,
                        const PadicConfig& config);

struct TailCoefficient {
  PadicScalar value;
  /// Precision of value in pi-units (nullopt when exact).
  std::optional<long> tail_bound_units;
};

/// d_{l0+s} from the series truncated at index l0+T plus a rigorous bound for
/// the omitted part. Throws TailBoundTooWeak below the scalar precision.
TailCoefficient tail_coefficient(long s, const CoefficientSeries& c, const HypParams& params, long T,
                                 const PadicConfig& config);

/// R = sum d_l d^[l] with P + R Hyp in x A1, checked by an independent
/// normal-form reduction. Throws PreconditionViolated, IntegerAlpha,
/// TailBoundTooWeak, ResidualNonzero.
SolveReport solve_x_surjectivity(const CoefficientSeries& P, const HypParams& params, const PadicConfig& config,
                                 const SolveOptions& options = {});

struct InjectivityReport {
  /// log_p(eta^{-k} |c_{l+k}|), -inf for zero.
  std::vector<double> log_sequence;
  bool zero = false;
  bool diverges = false;
};

/// Forward recurrence c_{l+1} = c_l prod(l - alpha) / (s pi^{m-n} prod(l - beta)).
InjectivityReport injectivity_witness(const HypParams& params, long l, const PadicScalar& c_l_trial, double eta,
                                      long kmax);

}  // namespace padhyp
