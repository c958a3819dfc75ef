#pragma once

#include <map>
#include <string>
#include <vector>

#include "padhyp/scalar.hpp"
#include "padhyp/weyl.hpp"

namespace padhyp {

/// Polynomial in theta = x d with coefficients in K, lowest degree first.
/// Trailing exact zeros are dropped, so the zero polynomial has no coefficients.
class ThetaPoly {
 public:
  explicit ThetaPoly(const DworkField& field, std::vector<PadicScalar> coeffs = {});

  static ThetaPoly constant(const PadicScalar& c);
  /// theta - a.
  static ThetaPoly linear(const PadicScalar& a);
  /// prod_i (theta - roots[i]); 1 for no roots.
  static ThetaPoly from_roots(const DworkField& field, const std::vector<PadicScalar>& roots);

  const DworkField& field() const { return *field_; }
  const std::vector<PadicScalar>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  PadicScalar coeff(int j) const;
  PadicScalar leading() const;

  ThetaPoly operator+(const ThetaPoly& o) const;
  ThetaPoly operator-(const ThetaPoly& o) const;
  ThetaPoly operator-() const;
  ThetaPoly operator*(const ThetaPoly& o) const;
  ThetaPoly scaled(const PadicScalar& c) const;
  /// f(theta + c).
  ThetaPoly shifted(const PadicScalar& c) const;
  /// f(-theta).
  ThetaPoly negated_argument() const;
  PadicScalar eval(const PadicScalar& t) const;

  bool operator==(const ThetaPoly& o) const { return field_ == o.field_ && coeffs_ == o.coeffs_; }
  std::string to_string() const;

 private:
  void trim();
  const DworkField* field_;
  std::vector<PadicScalar> coeffs_;
};

/// sum_b x^b f_b(theta), x-powers on the left. Bands range over Z.
class ThetaForm {
 public:
  explicit ThetaForm(const DworkField& field) : field_(&field) {}

  const DworkField& field() const { return *field_; }
  const std::map<int, ThetaPoly>& bands() const { return bands_; }
  ThetaPoly band(int b) const;
  bool is_zero() const { return bands_.empty(); }
  int min_band() const;
  int max_band() const;

  /// Accumulates x^b f.
  void add_band(int b, const ThetaPoly& f);

  ThetaForm operator+(const ThetaForm& o) const;
  ThetaForm operator-(const ThetaForm& o) const;
  ThetaForm operator-() const;
  /// x^a f(theta) x^b g(theta) = x^{a+b} f(theta + b) g(theta).
  ThetaForm operator*(const ThetaForm& o) const;
  ThetaForm scaled(const PadicScalar& c) const;
  ThetaForm left_x_power(int d) const;

  bool operator==(const ThetaForm& o) const { return field_ == o.field_ && bands_ == o.bands_; }
  std::string to_string() const;

 private:
  const DworkField* field_;
  std::map<int, ThetaPoly> bands_;
};

/// x^l d^[k] = x^{l-k} binom(theta, k). Exact; never truncates.
ThetaForm to_theta(const WeylOperator& p);

/// x^b theta^j = sum_k S(j, k) k! x^{b+k} d^[k]. Terms outside the window are
/// clipped and flagged; negative x-powers raise FlavorMismatch for A1.
WeylOperator from_theta(const ThetaForm& t, Flavor flavor, Window window);

/// Stirling numbers of the second kind S(j, k).
const Integer& stirling2(int j, int k);

}  // namespace padhyp
