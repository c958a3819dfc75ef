#include "padhyp/parameter.hpp"

#include <algorithm>
#include <climits>

#include "padhyp/error.hpp"

namespace padhyp {

namespace {

Integer rational_residue(const Rational& r, unsigned long p, long digits) {
  Integer modulus = ipow(p, static_cast<unsigned long>(digits));
  Integer den(r.get_den());
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t()) == 0) {
    fail(ErrorKind::InvalidParameter, "denominator divisible by p");
  }
  Integer out = Integer(r.get_num()) * inv;
  mpz_mod(out.get_mpz_t(), out.get_mpz_t(), modulus.get_mpz_t());
  return out;
}

}  // namespace

PadicParameter PadicParameter::rational(const Rational& r, unsigned long p) {
  Rational c = r;
  c.canonicalize();
  Integer den(c.get_den());
  if (mpz_divisible_ui_p(den.get_mpz_t(), p)) {
    fail(ErrorKind::InvalidParameter, padhyp::to_string(c) + " is not in Z_" + std::to_string(p));
  }
  return PadicParameter(p, c);
}

PadicParameter PadicParameter::digit_stream(const std::function<unsigned long(long)>& digit, long horizon,
                                            unsigned long p) {
  if (horizon < 1) fail(ErrorKind::InvalidParameter, "digit stream horizon must be positive");
  Integer residue = 0;
  Integer place = 1;
  for (long n = 0; n < horizon; ++n) {
    unsigned long d = digit(n);
    if (d >= p) fail(ErrorKind::InvalidParameter, "digit out of range [0, p)");
    residue += place * d;
    place *= p;
  }
  return PadicParameter(p, Stream{residue, horizon});
}

PadicParameter PadicParameter::from_residue(Integer residue, long horizon, unsigned long p) {
  if (horizon < 1) fail(ErrorKind::InvalidParameter, "digit stream horizon must be positive");
  Integer modulus = ipow(p, static_cast<unsigned long>(horizon));
  mpz_mod(residue.get_mpz_t(), residue.get_mpz_t(), modulus.get_mpz_t());
  return PadicParameter(p, Stream{residue, horizon});
}

const Rational& PadicParameter::exact_value() const {
  if (!is_exact()) fail(ErrorKind::PreconditionViolated, "digit-stream parameter has no exact value");
  return std::get<Rational>(value_);
}

std::optional<long> PadicParameter::horizon() const {
  if (is_exact()) return std::nullopt;
  return std::get<Stream>(value_).horizon;
}

Integer PadicParameter::residue(long digits) const {
  if (digits < 0) fail(ErrorKind::PreconditionViolated, "negative digit count");
  if (is_exact()) return rational_residue(std::get<Rational>(value_), p_, digits);
  const Stream& s = std::get<Stream>(value_);
  if (digits > s.horizon) fail(ErrorKind::HorizonTooSmall, "requested digits beyond the stream horizon");
  Integer modulus = ipow(p_, static_cast<unsigned long>(digits));
  Integer out = s.residue;
  mpz_mod(out.get_mpz_t(), out.get_mpz_t(), modulus.get_mpz_t());
  return out;
}

unsigned long PadicParameter::digit(long n) const {
  Integer r = residue(n + 1);
  Integer place = ipow(p_, static_cast<unsigned long>(n));
  Integer d = r / place;
  return d.get_ui();
}

PadicParameter::Stream PadicParameter::as_stream(long horizon) const {
  if (!is_exact()) {
    const Stream& s = std::get<Stream>(value_);
    long h = std::min(horizon, s.horizon);
    return Stream{residue(h), h};
  }
  return Stream{residue(horizon), horizon};
}

ShiftValuation PadicParameter::shift_valuation(long k) const {
  if (is_exact()) {
    Rational d = std::get<Rational>(value_) - Rational(k);
    if (d == 0) return {0, true, true};
    return {vp(d, p_), true, false};
  }
  const Stream& s = std::get<Stream>(value_);
  Integer modulus = ipow(p_, static_cast<unsigned long>(s.horizon));
  Integer d = s.residue - k;
  mpz_mod(d.get_mpz_t(), d.get_mpz_t(), modulus.get_mpz_t());
  if (d == 0) return {s.horizon, false, false};
  return {vp(d, p_), true, false};
}

std::optional<bool> PadicParameter::is_integer() const {
  if (is_exact()) return std::get<Rational>(value_).get_den() == 1;
  return std::nullopt;
}

PadicParameter PadicParameter::operator-() const {
  if (is_exact()) return PadicParameter(p_, Rational(-std::get<Rational>(value_)));
  const Stream& s = std::get<Stream>(value_);
  return from_residue(-s.residue, s.horizon, p_);
}

PadicParameter PadicParameter::operator+(const PadicParameter& o) const {
  if (p_ != o.p_) fail(ErrorKind::PreconditionViolated, "parameters for different primes");
  if (is_exact() && o.is_exact()) {
    Rational r = std::get<Rational>(value_) + std::get<Rational>(o.value_);
    r.canonicalize();
    return PadicParameter(p_, r);
  }
  long h = std::min(horizon().value_or(LONG_MAX), o.horizon().value_or(LONG_MAX));
  Stream a = as_stream(h), b = o.as_stream(h);
  return from_residue(a.residue + b.residue, h, p_);
}

PadicParameter PadicParameter::plus(long n) const { return *this + integer(n, p_); }

PadicScalar PadicParameter::to_scalar(const DworkField& field, long precision_units) const {
  if (field.p() != p_) fail(ErrorKind::PreconditionViolated, "parameter and field use different primes");
  if (is_exact()) return PadicScalar::from_rational(field, std::get<Rational>(value_));
  const Stream& s = std::get<Stream>(value_);
  const long pm1 = field.units_per_valuation();
  long units = std::min(precision_units, s.horizon * pm1);
  long digits = std::min(s.horizon, ceil_div(units, pm1));
  return PadicScalar::from_coeffs(field, {Rational(residue(digits))}, units);
}

std::string PadicParameter::to_string() const {
  if (is_exact()) return padhyp::to_string(std::get<Rational>(value_));
  const Stream& s = std::get<Stream>(value_);
  // Least significant digit first, as a p-adic expansion is read.
  std::string out = "digits:";
  Integer r = s.residue;
  for (long n = 0; n < s.horizon; ++n) {
    Integer d = r % p_;
    r /= p_;
    if (n) out += ',';
    out += d.get_str();
  }
  return out;
}

bool PadicParameter::operator==(const PadicParameter& o) const { return p_ == o.p_ && value_ == o.value_; }

}  // namespace padhyp
