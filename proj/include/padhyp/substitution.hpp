#pragma once

#include <optional>
#include <string>

#include "padhyp/parameter.hpp"
#include "padhyp/theta.hpp"
#include "padhyp/weyl.hpp"

namespace padhyp {

enum class SubstitutionKind { Fourier, InverseFourier, Inversion, KummerTwist };

/// Fourier(pi): x -> -d/pi, d -> pi x on A1. InverseFourier(pi): x -> d/pi,
/// d -> -pi x. Inversion: x -> 1/x, theta -> -theta. KummerTwist(gamma):
/// theta -> theta - gamma, the annihilator transform of tensoring with x^gamma.
struct SubstitutionRule {
  SubstitutionKind kind;
  std::optional<PadicScalar> pi;
  std::optional<PadicParameter> gamma;
  /// Precision (pi-units) used to embed a digit-stream gamma into K.
  long precision = 0;

  static SubstitutionRule fourier(const PadicScalar& pi);
  static SubstitutionRule inverse_fourier(const PadicScalar& pi);
  static SubstitutionRule inversion();
  static SubstitutionRule kummer(const PadicParameter& gamma, long precision);

  std::string name() const;
};

/// Image of P under the rule. Fourier rules need flavor A1 and return A1;
/// Inversion and KummerTwist act through the theta-form and return B1.
WeylOperator apply_substitution(const WeylOperator& p, const SubstitutionRule& rule);

/// Inversion and KummerTwist on theta-forms directly.
ThetaForm apply_substitution(const ThetaForm& t, const SubstitutionRule& rule);

}  // namespace padhyp
