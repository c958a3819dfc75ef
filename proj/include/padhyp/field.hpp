#pragma once

#include "padhyp/rational.hpp"

namespace padhyp {

/// The ring Q_p[pi]/(pi^{q-1} + (-p)^{(q-1)/(p-1)}). A genuine field
/// (totally ramified of degree p-1 over Q_p) when q = p; for q > p the
/// arithmetic is formal and only pi-power bookkeeping is guaranteed.
///
/// Instances are interned: get() returns a reference with static lifetime,
/// so scalars can hold a plain pointer to their field.
class DworkField {
 public:
  static const DworkField& get(unsigned long p, unsigned long q);

  unsigned long p() const { return p_; }
  unsigned long q() const { return q_; }
  /// Degree of the pi-basis, q - 1.
  int degree() const { return degree_; }
  /// The rational number pi^{q-1} = -(-p)^{(q-1)/(p-1)}.
  const Rational& pi_top_power() const { return top_; }
  bool is_field() const { return p_ == q_; }
  /// Valuations are tracked in units of 1/(p-1).
  long units_per_valuation() const { return static_cast<long>(p_ - 1); }

  DworkField(unsigned long p, unsigned long q);

 private:
  unsigned long p_;
  unsigned long q_;
  int degree_;
  Rational top_;
};

}  // namespace padhyp
