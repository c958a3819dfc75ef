#include "padhyp/chain.hpp"

#include "padhyp/error.hpp"

namespace padhyp {

namespace {

std::vector<PadicParameter> tail_of(const std::vector<PadicParameter>& v) {
  return std::vector<PadicParameter>(v.begin() + 1, v.end());
}

std::vector<PadicParameter> negate(const std::vector<PadicParameter>& v) {
  std::vector<PadicParameter> out;
  for (const auto& a : v) out.push_back(-a);
  return out;
}

IdentityStatus combine(IdentityStatus a, IdentityStatus b) {
  auto rank = [](IdentityStatus s) {
    switch (s) {
      case IdentityStatus::Verified: return 0;
      case IdentityStatus::VerifiedToPrecision: return 1;
      case IdentityStatus::Indeterminate: return 2;
      case IdentityStatus::Failed: return 3;
    }
    return 3;
  };
  return rank(a) >= rank(b) ? a : b;
}

struct StepOutcome {
  IdentityStatus status = IdentityStatus::Verified;
  std::vector<std::string> notes;
};

void record(StepOutcome& out, const IdentityReport& r) {
  out.status = combine(out.status, r.status);
  out.notes.push_back(r.identity + ": " + to_string(r.status));
}

// target has alpha_1 reached by twisting with gamma.
void verify_alpha_peel(StepOutcome& out, const HypParams& target, const PadicParameter& gamma,
                       const PadicConfig& config) {
  const HypParams base = shifted(target, -gamma);
  record(out, kummer_identity_check(base, gamma, config));
  record(out, fourier_identity_raw(base, config));
  HypParams rest = shifted(HypParams{tail_of(base.alpha), base.beta, base.pi_variant},
                           PadicParameter::integer(1, gamma.p()));
  record(out, inversion_identity_check(rest, config));
}

}  // namespace

const char* to_string(StepKind k) {
  switch (k) {
    case StepKind::DeltaBase: return "delta_base";
    case StepKind::AlphaPeel: return "alpha_peel";
    case StepKind::BetaPeel: return "beta_peel";
  }
  return "delta_base";
}

DecompositionChain decompose(const HypParams& params, const DecomposeOptions& options) {
  SigmaScanReport hyp = hypothesis_check(params, options.horizon, 0);
  if (hyp.integer_difference) fail(ErrorKind::HypothesisViolation, "some alpha_i - beta_j is an integer");
  if (hyp.status == LiouvilleStatus::LiouvilleWitnessed) {
    fail(ErrorKind::HypothesisViolation, "some alpha_i - beta_j is a p-adic Liouville number");
  }
  if (hyp.status == LiouvilleStatus::Indeterminate && !options.assume_non_liouville) {
    fail(ErrorKind::LiouvilleIndeterminate, "Liouville status of a parameter difference is undecided");
  }
  DecompositionChain chain;
  chain.target = params;
  HypParams cur{{}, {}, params.pi_variant};
  chain.steps.push_back({StepKind::DeltaBase, std::nullopt, cur, cur});
  for (std::size_t j = params.n(); j-- > 0;) {
    cur.beta.insert(cur.beta.begin(), params.beta[j]);
    chain.steps.push_back(
        {StepKind::BetaPeel, params.beta[j], cur, HypParams{{}, {params.beta[j]}, params.pi_variant}});
  }
  for (std::size_t i = params.m(); i-- > 0;) {
    cur.alpha.insert(cur.alpha.begin(), params.alpha[i]);
    chain.steps.push_back(
        {StepKind::AlphaPeel, params.alpha[i], cur, HypParams{{params.alpha[i]}, {}, params.pi_variant}});
  }
  chain.degree_shift = -static_cast<long>(params.m() + params.n());
  return chain;
}

HypParams replay(const DecompositionChain& chain) {
  if (chain.steps.empty() || chain.steps.front().kind != StepKind::DeltaBase) {
    fail(ErrorKind::PreconditionViolated, "chain must start at DeltaBase");
  }
  HypParams cur{{}, {}, chain.target.pi_variant};
  for (std::size_t s = 1; s < chain.steps.size(); ++s) {
    const ChainStep& step = chain.steps[s];
    if (!step.gamma) fail(ErrorKind::PreconditionViolated, "peel step without gamma");
    if (step.kind == StepKind::AlphaPeel) cur.alpha.insert(cur.alpha.begin(), *step.gamma);
    if (step.kind == StepKind::BetaPeel) cur.beta.insert(cur.beta.begin(), *step.gamma);
    if (step.kind == StepKind::DeltaBase) fail(ErrorKind::PreconditionViolated, "DeltaBase inside the chain");
  }
  return cur;
}

IdentityReport chain_verify(const DecompositionChain& chain, const PadicConfig& config) {
  if (chain.steps.empty() || chain.steps.front().kind != StepKind::DeltaBase) {
    fail(ErrorKind::PreconditionViolated, "chain must start at DeltaBase");
  }
  WeylOperator target = hyp_operator(chain.target, config);
  IdentityReport report(target.field(), target.window());
  report.identity = "chain " + chain.target.to_string();
  report.lhs = target;
  report.rhs = target;
  report.status = IdentityStatus::Verified;
  report.discrepancy = Valuation::infinity();
  if (!chain.steps.front().result.alpha.empty() || !chain.steps.front().result.beta.empty()) {
    report.status = IdentityStatus::Failed;
    report.failed_step = 0;
    return report;
  }
  for (std::size_t s = 1; s < chain.steps.size(); ++s) {
    const ChainStep& step = chain.steps[s];
    const HypParams& prev = chain.steps[s - 1].result;
    const HypParams& t = step.result;
    StepOutcome out;
    try {
      if (!step.gamma) fail(ErrorKind::PreconditionViolated, "peel step without gamma");
      if (step.kind == StepKind::AlphaPeel) {
        if (t.alpha.empty() || !(HypParams{tail_of(t.alpha), t.beta, t.pi_variant} == prev)) {
          out.status = IdentityStatus::Failed;
          out.notes.push_back("step does not extend the previous parameters");
        } else {
          verify_alpha_peel(out, t, *step.gamma, config);
        }
      } else if (step.kind == StepKind::BetaPeel) {
        if (t.beta.empty() || !t.alpha.empty() || !(HypParams{t.alpha, tail_of(t.beta), t.pi_variant} == prev)) {
          out.status = IdentityStatus::Failed;
          out.notes.push_back("step does not extend the previous parameters");
        } else {
          record(out, inversion_identity_check(t, config));
          HypParams inv{negate(t.beta), negate(t.alpha), flipped(t.pi_variant)};
          verify_alpha_peel(out, inv, -*step.gamma, config);
        }
      } else {
        out.status = IdentityStatus::Failed;
        out.notes.push_back("DeltaBase inside the chain");
      }
    } catch (const Error& e) {
      throw Error(e.kind(), "step " + std::to_string(s) + ": " + e.what());
    }
    for (const auto& n : out.notes) report.notes.push_back("step " + std::to_string(s) + " " + n);
    report.status = combine(report.status, out.status);
    if (out.status == IdentityStatus::Failed || out.status == IdentityStatus::Indeterminate) {
      report.failed_step = s;
      return report;
    }
  }
  if (!(chain.steps.back().result == chain.target)) {
    report.status = IdentityStatus::Failed;
    report.failed_step = chain.steps.size() - 1;
    report.notes.push_back("last step does not reach the target");
  }
  return report;
}

}  // namespace padhyp
