#pragma once

#include <string>

#include "padhyp/weyl.hpp"

namespace padhyp {

/// Weight of x^l d^[k]: l + k on A1, |l| + k on B1.
int growth_weight(Flavor flavor, int l, int k);

/// Dagger growth witness |a_{l,k}| < C eta^{w(l,k)}. C and eta are stored as
/// base-p logarithms so that very small or very large values stay finite.
struct GrowthCertificate {
  unsigned long p = 2;
  double log_c = 0.0;
  double log_eta = -1.0;
  Flavor flavor = Flavor::A1;
  Window verified_range;

  double C() const;
  double eta() const;

  /// A user-supplied pair (C, eta); throws InvalidParameter unless C > 0 and 0 < eta < 1.
  static GrowthCertificate from_values(unsigned long p, double c, double eta, Flavor flavor, Window range);
  static GrowthCertificate from_logs(unsigned long p, double log_c, double log_eta, Flavor flavor, Window range);

  /// Checks the strict inequality on every stored term of P.
  bool holds_for(const WeylOperator& op) const;
};

/// Envelope fit over the stored window. The envelope of log_p |a| by weight
/// is replaced by its upper concave hull; the chord slope over the upper half
/// of the weight range gives eta (or the canonical 1/2 when the slope is 0).
/// C is twice the smallest admissible constant. The returned certificate has
/// been checked term by term.
GrowthCertificate fit_growth(const WeylOperator& op, Flavor flavor);

}  // namespace padhyp
