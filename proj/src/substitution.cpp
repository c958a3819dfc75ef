#include "padhyp/substitution.hpp"

#include <algorithm>

#include "padhyp/error.hpp"

namespace padhyp {

namespace {

Integer binomial(unsigned long n, unsigned long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

// x^l d^[k] -> (sign x-image)^l (sign d-image)^k / k!, expanded with
// d^[l] x^k = sum_j binom(k, j) x^{k-j} d^[l-j].
WeylOperator fourier_like(const WeylOperator& p, const PadicScalar& pi, bool inverse) {
  if (p.flavor() != Flavor::A1) fail(ErrorKind::FlavorMismatch, "Fourier substitution is defined on A1");
  if (&pi.field() != &p.field()) fail(ErrorKind::PreconditionViolated, "pi from a different field");
  WeylOperator out(p.field(), Flavor::A1, p.window());
  if (p.truncated()) out.mark_truncated();
  for (const auto& [key, a] : p.terms()) {
    const auto [l, k] = key;
    const int sign_exp = inverse ? k : l;
    Rational factor(factorial(static_cast<unsigned long>(l)), factorial(static_cast<unsigned long>(k)));
    factor.canonicalize();
    if (sign_exp % 2) factor = -factor;
    PadicScalar base = (a * pi.pow(k - l)).scaled(factor);
    for (int j = 0; j <= std::min(l, k); ++j) {
      Rational b(binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(j)));
      out.add_term(k - j, l - j, base.scaled(b));
    }
  }
  return out;
}

}  // namespace

SubstitutionRule SubstitutionRule::fourier(const PadicScalar& pi) {
  return {SubstitutionKind::Fourier, pi, std::nullopt, 0};
}

SubstitutionRule SubstitutionRule::inverse_fourier(const PadicScalar& pi) {
  return {SubstitutionKind::InverseFourier, pi, std::nullopt, 0};
}

SubstitutionRule SubstitutionRule::inversion() { return {SubstitutionKind::Inversion, std::nullopt, std::nullopt, 0}; }

SubstitutionRule SubstitutionRule::kummer(const PadicParameter& gamma, long precision) {
  return {SubstitutionKind::KummerTwist, std::nullopt, gamma, precision};
}

std::string SubstitutionRule::name() const {
  switch (kind) {
    case SubstitutionKind::Fourier: return "fourier";
    case SubstitutionKind::InverseFourier: return "inverse_fourier";
    case SubstitutionKind::Inversion: return "inversion";
    case SubstitutionKind::KummerTwist: return "kummer_twist";
  }
  return "unknown";
}

ThetaForm apply_substitution(const ThetaForm& t, const SubstitutionRule& rule) {
  ThetaForm out(t.field());
  switch (rule.kind) {
    case SubstitutionKind::Inversion:
      for (const auto& [b, f] : t.bands()) out.add_band(-b, f.negated_argument());
      return out;
    case SubstitutionKind::KummerTwist: {
      if (!rule.gamma) fail(ErrorKind::PreconditionViolated, "Kummer twist without gamma");
      PadicScalar g = rule.gamma->to_scalar(t.field(), rule.precision);
      for (const auto& [b, f] : t.bands()) out.add_band(b, f.shifted(-g));
      return out;
    }
    default:
      fail(ErrorKind::PreconditionViolated, "Fourier substitution acts on Weyl normal forms, not theta-forms");
  }
}

WeylOperator apply_substitution(const WeylOperator& p, const SubstitutionRule& rule) {
  switch (rule.kind) {
    case SubstitutionKind::Fourier:
    case SubstitutionKind::InverseFourier:
      if (!rule.pi) fail(ErrorKind::PreconditionViolated, "Fourier rule without pi");
      return fourier_like(p, *rule.pi, rule.kind == SubstitutionKind::InverseFourier);
    case SubstitutionKind::Inversion:
    case SubstitutionKind::KummerTwist: {
      WeylOperator out = from_theta(apply_substitution(to_theta(p), rule), Flavor::B1, p.window());
      if (p.truncated()) out.mark_truncated();
      return out;
    }
  }
  fail(ErrorKind::PreconditionViolated, "unknown substitution");
}

}  // namespace padhyp
