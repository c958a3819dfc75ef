#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padhyp/config.hpp"
#include "padhyp/parameter.hpp"
#include "padhyp/theta.hpp"
#include "padhyp/weyl.hpp"

namespace padhyp {

/// Which constant plays the role of pi: pi itself or (-1)^p pi.
enum class PiVariant { Pi, SignedPi };

const char* to_string(PiVariant v);
PiVariant flipped(PiVariant v);
PadicScalar pi_value(const DworkField& field, PiVariant v);

struct HypParams {
  std::vector<PadicParameter> alpha;
  std::vector<PadicParameter> beta;
  PiVariant pi_variant = PiVariant::Pi;

  std::size_t m() const { return alpha.size(); }
  std::size_t n() const { return beta.size(); }
  std::string to_string() const;
  bool operator==(const HypParams& o) const = default;
};

/// Componentwise shift of every alpha_i and beta_j by g.
HypParams shifted(const HypParams& params, const PadicParameter& g);

/// prod (theta - alpha_i) - (-1)^{m+np} pi^{m-n} x prod (theta - beta_j):
/// band 0 is prod(theta - alpha_i), band 1 is -(-1)^{m+np} pi^{m-n} prod(theta - beta_j).
ThetaForm hyp_theta(const HypParams& params, const PadicConfig& config);
WeylOperator hyp_operator(const HypParams& params, const PadicConfig& config, Flavor flavor = Flavor::B1);

enum class IdentityStatus { Verified, VerifiedToPrecision, Failed, Indeterminate };

const char* to_string(IdentityStatus s);

/// rhs is compared against unit * x^x_power * lhs.
struct IdentityReport {
  IdentityReport(const DworkField& field, Window window)
      : lhs(field, Flavor::B1, window), rhs(field, Flavor::B1, window), unit_used(PadicScalar::one(field)) {}

  std::string identity;
  IdentityStatus status = IdentityStatus::Indeterminate;
  WeylOperator lhs;
  WeylOperator rhs;
  PadicScalar unit_used;
  int x_power = 0;
  /// Smallest valuation among discrepancy coefficients (infinite when exactly zero).
  Valuation discrepancy;
  double discrepancy_norm = 0.0;
  std::optional<std::size_t> failed_step;
  std::vector<std::string> notes;
};

/// Compares two theta-forms up to a scalar and a left power of x, both read
/// off the lowest band. Throws TruncationOverflow when the Weyl normal forms do
/// not fit the window.
IdentityReport compare_up_to_unit(const std::string& name, const ThetaForm& lhs, const ThetaForm& rhs,
                                  const PadicConfig& config);

/// inv(Hyp_pi(alpha; beta)) against Hyp_{(-1)^p pi}(-beta; -alpha).
IdentityReport inversion_identity_check(const HypParams& params, const PadicConfig& config);

/// Hyp_pi(alpha; beta) twisted by gamma against Hyp_pi(alpha + gamma; beta + gamma).
IdentityReport kummer_identity_check(const HypParams& params, const PadicParameter& gamma,
                                     const PadicConfig& config);

/// Fourier image of Hyp_{(-1)^p pi}(-beta - 1; -alpha' - 1) against
/// Hyp_pi(alpha; beta) with alpha = (0, alpha'). Throws PreconditionViolated
/// when alpha_1 != 0 or some alpha_i - beta_j is an integer.
IdentityReport fourier_identity_check(const HypParams& params, const PadicConfig& config);

/// Same comparison without preconditions on alpha_1 (a nonzero alpha_1 simply fails).
IdentityReport fourier_identity_raw(const HypParams& params, const PadicConfig& config);

}  // namespace padhyp
