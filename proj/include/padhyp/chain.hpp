#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padhyp/hypergeom.hpp"
#include "padhyp/liouville.hpp"

namespace padhyp {

/// DeltaBase is Hyp(;), the delta module at 1. An AlphaPeel step prepends
/// gamma to alpha: Kummer twist by gamma, Fourier step, inversion of the
/// rank-one remainder. A BetaPeel step prepends gamma to beta and is checked
/// as an AlphaPeel of the inverted operator.
enum class StepKind { DeltaBase, AlphaPeel, BetaPeel };

const char* to_string(StepKind k);

struct ChainStep {
  StepKind kind = StepKind::DeltaBase;
  std::optional<PadicParameter> gamma;
  /// Parameters reached after this step.
  HypParams result;
  /// The rank-one factor Hyp(gamma;) or Hyp(;gamma).
  HypParams factor;
};

struct DecompositionChain {
  HypParams target;
  std::vector<ChainStep> steps;
  long degree_shift = 0;

  /// Number of peel steps (DeltaBase excluded), m + n.
  std::size_t length() const { return steps.empty() ? 0 : steps.size() - 1; }
};

struct DecomposeOptions {
  long horizon = 256;
  /// Treat undecided digit-stream differences as non-Liouville.
  bool assume_non_liouville = false;
};

/// Throws HypothesisViolation or LiouvilleIndeterminate when some
/// alpha_i - beta_j is an integer, Liouville, or undecided.
DecompositionChain decompose(const HypParams& params, const DecomposeOptions& options = {});

/// Rebuilds the parameters from DeltaBase using the recorded gammas.
HypParams replay(const DecompositionChain& chain);

/// Per-step identity checks; failed_step holds the index into chain.steps.
IdentityReport chain_verify(const DecompositionChain& chain, const PadicConfig& config);

}  // namespace padhyp
