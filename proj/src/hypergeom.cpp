#include "padhyp/hypergeom.hpp"

#include <algorithm>
#include <cmath>

#include "padhyp/error.hpp"
#include "padhyp/substitution.hpp"

namespace padhyp {

namespace {

const DworkField& field_of(const PadicConfig& config) {
  config.validate();
  return DworkField::get(config.p, config.q);
}

std::vector<PadicScalar> as_scalars(const std::vector<PadicParameter>& ps, const DworkField& field, long prec) {
  std::vector<PadicScalar> out;
  out.reserve(ps.size());
  for (const auto& a : ps) {
    if (a.p() != field.p()) fail(ErrorKind::InvalidParameter, "parameter for a different prime");
    out.push_back(a.to_scalar(field, prec));
  }
  return out;
}

std::vector<PadicParameter> negate_minus_one(const std::vector<PadicParameter>& ps) {
  std::vector<PadicParameter> out;
  out.reserve(ps.size());
  for (const auto& a : ps) out.push_back((-a).plus(-1));
  return out;
}

std::vector<PadicParameter> negate(const std::vector<PadicParameter>& ps) {
  std::vector<PadicParameter> out;
  out.reserve(ps.size());
  for (const auto& a : ps) out.push_back(-a);
  return out;
}

WeylOperator checked_weyl(const ThetaForm& t, const PadicConfig& config, const std::string& what) {
  WeylOperator w = from_theta(t, Flavor::B1, window_of(config));
  if (w.truncated()) fail(ErrorKind::TruncationOverflow, what + " does not fit the truncation window");
  return w;
}

}  // namespace

const char* to_string(PiVariant v) { return v == PiVariant::Pi ? "pi" : "signed_pi"; }

PiVariant flipped(PiVariant v) { return v == PiVariant::Pi ? PiVariant::SignedPi : PiVariant::Pi; }

PadicScalar pi_value(const DworkField& field, PiVariant v) {
  PadicScalar pi = dwork_pi(field);
  if (v == PiVariant::SignedPi && field.p() % 2 == 1) return -pi;
  return pi;
}

std::string HypParams::to_string() const {
  std::string out = "Hyp_" + std::string(padhyp::to_string(pi_variant)) + "(";
  for (std::size_t i = 0; i < alpha.size(); ++i) out += (i ? "," : "") + alpha[i].to_string();
  out += ";";
  for (std::size_t j = 0; j < beta.size(); ++j) out += (j ? "," : "") + beta[j].to_string();
  return out + ")";
}

HypParams shifted(const HypParams& params, const PadicParameter& g) {
  HypParams out = params;
  for (auto& a : out.alpha) a = a + g;
  for (auto& b : out.beta) b = b + g;
  return out;
}

ThetaForm hyp_theta(const HypParams& params, const PadicConfig& config) {
  const DworkField& field = field_of(config);
  const long m = static_cast<long>(params.m());
  const long n = static_cast<long>(params.n());
  ThetaForm out(field);
  out.add_band(0, ThetaPoly::from_roots(field, as_scalars(params.alpha, field, config.precision)));
  const bool s_negative = (m + n * static_cast<long>(config.p)) % 2 != 0;
  PadicScalar c = pi_value(field, params.pi_variant).pow(m - n);
  if (!s_negative) c = -c;
  out.add_band(1, ThetaPoly::from_roots(field, as_scalars(params.beta, field, config.precision)).scaled(c));
  return out;
}

WeylOperator hyp_operator(const HypParams& params, const PadicConfig& config, Flavor flavor) {
  WeylOperator out = from_theta(hyp_theta(params, config), flavor, window_of(config));
  if (out.truncated()) fail(ErrorKind::TruncationOverflow, "hypergeometric operator exceeds the window");
  return out;
}

const char* to_string(IdentityStatus s) {
  switch (s) {
    case IdentityStatus::Verified: return "Verified";
    case IdentityStatus::VerifiedToPrecision: return "VerifiedToPrecision";
    case IdentityStatus::Failed: return "Failed";
    case IdentityStatus::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

IdentityReport compare_up_to_unit(const std::string& name, const ThetaForm& lhs, const ThetaForm& rhs,
                                  const PadicConfig& config) {
  const DworkField& field = field_of(config);
  IdentityReport r(field, window_of(config));
  r.identity = name;
  r.lhs = checked_weyl(lhs, config, name + " lhs");
  r.rhs = checked_weyl(rhs, config, name + " rhs");
  if (lhs.is_zero() || rhs.is_zero()) {
    r.status = lhs.is_zero() && rhs.is_zero() ? IdentityStatus::Verified : IdentityStatus::Failed;
    r.discrepancy = Valuation::infinity();
    return r;
  }
  r.x_power = rhs.min_band() - lhs.min_band();
  const PadicScalar ll = lhs.band(lhs.min_band()).leading();
  const PadicScalar rl = rhs.band(rhs.min_band()).leading();
  if (ll.zero_status() != ZeroStatus::NonZero) {
    r.status = IdentityStatus::Indeterminate;
    r.notes.push_back("leading coefficient of lhs is zero to precision");
    return r;
  }
  r.unit_used = rl / ll;
  ThetaForm diff = rhs - lhs.left_x_power(r.x_power).scaled(r.unit_used);
  if (diff.is_zero()) {
    r.status = IdentityStatus::Verified;
    r.discrepancy = Valuation::infinity();
    r.discrepancy_norm = 0.0;
    return r;
  }
  bool any_nonzero = false;
  std::optional<Valuation> worst;
  for (const auto& [b, f] : diff.bands()) {
    for (const auto& c : f.coeffs()) {
      const ZeroStatus z = c.zero_status();
      if (z == ZeroStatus::Zero) continue;
      const Valuation v = c.valuation();
      if (z == ZeroStatus::NonZero && !any_nonzero) {
        any_nonzero = true;
        worst.reset();
      }
      if (any_nonzero && z != ZeroStatus::NonZero) continue;
      if (!worst || v.units < worst->units) worst = v;
    }
  }
  r.discrepancy = worst.value_or(Valuation::infinity());
  r.discrepancy_norm = std::pow(static_cast<double>(field.p()), -r.discrepancy.value(field.p()));
  r.status = any_nonzero ? IdentityStatus::Failed : IdentityStatus::VerifiedToPrecision;
  return r;
}

IdentityReport inversion_identity_check(const HypParams& params, const PadicConfig& config) {
  ThetaForm lhs = apply_substitution(hyp_theta(params, config), SubstitutionRule::inversion());
  HypParams target{negate(params.beta), negate(params.alpha), flipped(params.pi_variant)};
  return compare_up_to_unit("inversion " + params.to_string(), lhs, hyp_theta(target, config), config);
}

IdentityReport kummer_identity_check(const HypParams& params, const PadicParameter& gamma,
                                     const PadicConfig& config) {
  ThetaForm lhs =
      apply_substitution(hyp_theta(params, config), SubstitutionRule::kummer(gamma, config.precision));
  return compare_up_to_unit("kummer " + params.to_string() + " by " + gamma.to_string(), lhs,
                            hyp_theta(shifted(params, gamma), config), config);
}

IdentityReport fourier_identity_raw(const HypParams& params, const PadicConfig& config) {
  if (params.m() < 1) fail(ErrorKind::PreconditionViolated, "Fourier identity needs m >= 1");
  const DworkField& field = field_of(config);
  std::vector<PadicParameter> rest(params.alpha.begin() + 1, params.alpha.end());
  HypParams source{negate_minus_one(params.beta), negate_minus_one(rest), flipped(params.pi_variant)};
  WeylOperator h = hyp_operator(source, config, Flavor::A1);
  WeylOperator image = apply_substitution(h, SubstitutionRule::fourier(pi_value(field, params.pi_variant)));
  if (image.truncated()) fail(ErrorKind::TruncationOverflow, "Fourier image exceeds the window");
  IdentityReport r =
      compare_up_to_unit("fourier " + params.to_string(), to_theta(image), hyp_theta(params, config), config);
  r.notes.push_back("source " + source.to_string());
  return r;
}

IdentityReport fourier_identity_check(const HypParams& params, const PadicConfig& config) {
  if (params.m() < 1) fail(ErrorKind::PreconditionViolated, "Fourier identity needs m >= 1");
  const PadicParameter& a1 = params.alpha.front();
  if (!a1.is_exact() || a1.exact_value() != 0) {
    fail(ErrorKind::PreconditionViolated, "alpha_1 must be 0; reduce by a Kummer twist first");
  }
  for (const auto& a : params.alpha) {
    for (const auto& b : params.beta) {
      if ((a - b).is_integer().value_or(false)) {
        fail(ErrorKind::PreconditionViolated, "alpha_i - beta_j is an integer");
      }
    }
  }
  return fourier_identity_raw(params, config);
}

}  // namespace padhyp
