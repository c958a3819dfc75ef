#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "padhyp/config.hpp"
#include "padhyp/scalar.hpp"

namespace padhyp {

/// A1: x-degrees l >= 0 (functions on the affine line).
/// B1: l in Z (x inverted, the multiplicative group).
enum class Flavor { A1, B1 };

const char* to_string(Flavor f);

/// Truncation window: |l| <= lmax, k <= kmax.
struct Window {
  int lmax = 32;
  int kmax = 32;
  bool contains(int l, int k) const { return l >= -lmax && l <= lmax && k >= 0 && k <= kmax; }
  bool operator==(const Window&) const = default;
};

inline Window window_of(const PadicConfig& c) { return {c.lmax, c.kmax}; }

/// Key (l, k) of the basis element x^l d^[k], d^[k] = d^k / k!.
using TermKey = std::pair<int, int>;

/// Finite normal form sum a_{l,k} x^l d^[k] (x-powers on the left of divided
/// powers of d) in a truncation window. Exact-zero coefficients are never stored.
/// `truncated()` records whether any term was clipped by the window.
class WeylOperator {
 public:
  WeylOperator(const DworkField& field, Flavor flavor, Window window);

  static WeylOperator constant(const DworkField& field, Flavor flavor, Window window, const PadicScalar& c);
  static WeylOperator monomial(const DworkField& field, Flavor flavor, Window window, int l, int k,
                               const PadicScalar& c);
  static WeylOperator x(const DworkField& field, Flavor flavor, Window window);
  static WeylOperator d(const DworkField& field, Flavor flavor, Window window);
  /// d^k = k! d^[k].
  static WeylOperator d_power(const DworkField& field, Flavor flavor, Window window, int k);

  const DworkField& field() const { return *field_; }
  Flavor flavor() const { return flavor_; }
  const Window& window() const { return window_; }
  bool truncated() const { return truncated_; }
  const std::map<TermKey, PadicScalar>& terms() const { return terms_; }
  std::optional<PadicScalar> coeff(int l, int k) const;
  bool is_zero() const { return terms_.empty(); }

  /// Accumulates c x^l d^[k]; clips (and flags) outside the window.
  void add_term(int l, int k, const PadicScalar& c);
  void mark_truncated() { truncated_ = true; }

  /// A1 -> B1 always; B1 -> A1 only without negative x-powers.
  WeylOperator with_flavor(Flavor flavor) const;
  WeylOperator with_window(Window window) const;

  WeylOperator operator+(const WeylOperator& o) const;
  WeylOperator operator-(const WeylOperator& o) const;
  WeylOperator operator-() const;
  WeylOperator operator*(const WeylOperator& o) const;
  /// c * P.
  WeylOperator scaled(const PadicScalar& c) const;
  /// x^d * P (only a shift in normal form).
  WeylOperator left_x_power(int d) const;

  /// Smallest valuation among coefficients (infinite for the zero operator).
  Valuation min_valuation() const;

  bool operator==(const WeylOperator& o) const;
  bool same_support(const WeylOperator& o) const;

 private:
  void check_compatible(const WeylOperator& o) const;

  const DworkField* field_;
  Flavor flavor_;
  Window window_;
  std::map<TermKey, PadicScalar> terms_;
  bool truncated_ = false;
};

/// Normal form of P * Q using d^[k] x^c = sum_j binom(c, j) x^{c-j} d^[k-j].
WeylOperator op_mul(const WeylOperator& p, const WeylOperator& q);

/// Image of P in A1 / x A1: the d^[k]-coefficients of the l = 0 band.
std::vector<PadicScalar> reduce_mod_x(const WeylOperator& p);

}  // namespace padhyp
