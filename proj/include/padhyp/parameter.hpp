#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "padhyp/rational.hpp"
#include "padhyp/scalar.hpp"

namespace padhyp {

/// v_p(alpha - k). When `exact` is false, `value` is only a lower bound (the
/// digit stream is exhausted before the valuation is determined).
struct ShiftValuation {
  long value = 0;
  bool exact = true;
  bool infinite = false;
};

/// An element of Z_p: either an exact rational with p-coprime denominator or a
/// digit stream known through a fixed horizon of p-adic digits.
class PadicParameter {
 public:
  static PadicParameter rational(const Rational& r, unsigned long p);
  static PadicParameter integer(long n, unsigned long p) { return rational(Rational(n), p); }
  /// Materializes digits 0..horizon-1 of sum_n digit(n) p^n.
  static PadicParameter digit_stream(const std::function<unsigned long(long)>& digit, long horizon, unsigned long p);
  /// alpha = residue mod p^horizon.
  static PadicParameter from_residue(Integer residue, long horizon, unsigned long p);

  unsigned long p() const { return p_; }
  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  /// The exact value; throws PreconditionViolated for digit streams.
  const Rational& exact_value() const;
  /// Number of known digits; nullopt for exact parameters.
  std::optional<long> horizon() const;
  /// alpha mod p^digits, in [0, p^digits). Requires digits <= horizon.
  Integer residue(long digits) const;
  unsigned long digit(long n) const;

  ShiftValuation shift_valuation(long k) const;
  /// nullopt when undecidable from the known digits (digit streams).
  std::optional<bool> is_integer() const;

  PadicParameter operator-() const;
  PadicParameter operator+(const PadicParameter& o) const;
  PadicParameter operator-(const PadicParameter& o) const { return *this + (-o); }
  PadicParameter plus(long n) const;

  /// Image in K; digit streams become approximate scalars with precision
  /// min(precision_units, horizon*(p-1)).
  PadicScalar to_scalar(const DworkField& field, long precision_units) const;

  std::string to_string() const;
  bool operator==(const PadicParameter& o) const;

 private:
  struct Stream {
    Integer residue;
    long horizon;
    bool operator==(const Stream&) const = default;
  };
  PadicParameter(unsigned long p, std::variant<Rational, Stream> v) : p_(p), value_(std::move(v)) {}
  Stream as_stream(long horizon) const;

  unsigned long p_;
  std::variant<Rational, Stream> value_;
};

}  // namespace padhyp
