#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padhyp/config.hpp"
#include "padhyp/field.hpp"
#include "padhyp/rational.hpp"

namespace padhyp {

/// A valuation in (1/(p-1))Z, stored as an integer count of units.
/// When `exact` is false the value is only a lower bound (the scalar is zero
/// to its tracked precision).
struct Valuation {
  long units = 0;
  bool infinite = false;
  bool exact = true;

  static Valuation infinity() { return {0, true, true}; }
  double value(unsigned long p) const;
  bool operator==(const Valuation&) const = default;
};

enum class ZeroStatus { Zero, NonZero, ZeroToPrecision };

/// Element of the Dwork field K = Q_p(pi), written sum_i c_i pi^i with
/// rational c_i (i < q-1). A scalar is either exact or known modulo
/// pi^precision; approximate scalars keep a canonical reduced representative
/// so equal approximations compare (and serialize) identically.
class PadicScalar {
 public:
  static PadicScalar zero(const DworkField& field);
  static PadicScalar one(const DworkField& field);
  static PadicScalar from_rational(const DworkField& field, const Rational& r);
  static PadicScalar from_integer(const DworkField& field, long n) { return from_rational(field, Rational(n)); }
  /// pi^n for any integer n.
  static PadicScalar pi_power(const DworkField& field, long n);
  static PadicScalar from_coeffs(const DworkField& field, std::vector<Rational> coeffs,
                                 std::optional<long> precision = std::nullopt);

  const DworkField& field() const { return *field_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  /// Absolute precision in pi-units; nullopt for exact scalars.
  const std::optional<long>& precision() const { return precision_; }
  bool is_exact() const { return !precision_.has_value(); }

  Valuation valuation() const;
  ZeroStatus zero_status() const;
  bool is_exact_zero() const;
  /// |a| = p^{-v(a)}; for a scalar that is zero to precision, the bound p^{-prec}.
  double norm() const;
  /// -v(a) as a real, i.e. log_p |a|; -inf for exact zero.
  double log_norm() const;

  /// Drops precision to `units` (never raises it).
  PadicScalar with_precision(long units) const;
  /// Forgets the precision tag and treats the representative as exact.
  PadicScalar representative() const;

  PadicScalar operator-() const;
  PadicScalar operator+(const PadicScalar& o) const;
  PadicScalar operator-(const PadicScalar& o) const;
  PadicScalar operator*(const PadicScalar& o) const;
  PadicScalar operator/(const PadicScalar& o) const;
  PadicScalar& operator+=(const PadicScalar& o) { return *this = *this + o; }
  PadicScalar& operator-=(const PadicScalar& o) { return *this = *this - o; }
  PadicScalar& operator*=(const PadicScalar& o) { return *this = *this * o; }
  PadicScalar scaled(const Rational& r) const;
  PadicScalar inverse() const;
  PadicScalar pow(long n) const;

  /// Structural equality: same field, same representative, same precision tag.
  bool operator==(const PadicScalar& o) const;
  bool operator!=(const PadicScalar& o) const { return !(*this == o); }

  /// Human readable, e.g. "1/2 + 3*pi" or "O(pi^20)".
  std::string to_string() const;

 private:
  PadicScalar(const DworkField* field, std::vector<Rational> coeffs, std::optional<long> precision);
  void normalize();
  /// Valuation lower bound used for precision propagation (units; nullopt = +inf).
  std::optional<long> valuation_floor() const;
  void check_same_field(const PadicScalar& o) const;

  const DworkField* field_;
  std::vector<Rational> coeffs_;
  std::optional<long> precision_;
};

/// Convenience: the distinguished Dwork pi of the field.
PadicScalar dwork_pi(const DworkField& field);
PadicScalar dwork_pi(const PadicConfig& config);

}  // namespace padhyp
