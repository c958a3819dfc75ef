#include "padhyp/rational.hpp"

#include <cmath>

#include "padhyp/error.hpp"

namespace padhyp {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::PrecisionLoss: return "PrecisionLoss";
    case ErrorKind::FlavorMismatch: return "FlavorMismatch";
    case ErrorKind::TruncationOverflow: return "TruncationOverflow";
    case ErrorKind::NotOverconvergentOnWindow: return "NotOverconvergentOnWindow";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::HypothesisViolation: return "HypothesisViolation";
    case ErrorKind::LiouvilleIndeterminate: return "LiouvilleIndeterminate";
    case ErrorKind::IsInteger: return "IsInteger";
    case ErrorKind::HorizonTooSmall: return "HorizonTooSmall";
    case ErrorKind::IntegerAlpha: return "IntegerAlpha";
    case ErrorKind::TailBoundTooWeak: return "TailBoundTooWeak";
    case ErrorKind::ResidualNonzero: return "ResidualNonzero";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

long vp(const Integer& n, unsigned long p) {
  if (n == 0) fail(ErrorKind::PreconditionViolated, "valuation of zero");
  Integer m = abs(n);
  Integer pz(p);
  long v = 0;
  // mpz_remove strips every factor of p in one call.
  mpz_t rest;
  mpz_init(rest);
  v = static_cast<long>(mpz_remove(rest, m.get_mpz_t(), pz.get_mpz_t()));
  mpz_clear(rest);
  return v;
}

long vp(const Rational& r, unsigned long p) {
  return vp(Integer(r.get_num()), p) - vp(Integer(r.get_den()), p);
}

Integer ipow(unsigned long base, unsigned long exp) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
  return out;
}

Rational unit_part(const Rational& r, unsigned long p) {
  if (r == 0) return r;
  long v = vp(r, p);
  Rational u = r;
  if (v > 0) u /= Rational(ipow(p, static_cast<unsigned long>(v)));
  if (v < 0) u *= Rational(ipow(p, static_cast<unsigned long>(-v)));
  u.canonicalize();
  return u;
}

Rational reduce_mod_pk(const Rational& r, unsigned long p, long k) {
  if (r == 0) return Rational(0);
  long v = vp(r, p);
  if (v >= k) return Rational(0);
  Rational u = unit_part(r, p);
  Integer modulus = ipow(p, static_cast<unsigned long>(k - v));
  Integer den_inv;
  Integer den(u.get_den());
  if (mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t()) == 0) {
    fail(ErrorKind::PreconditionViolated, "unit denominator not invertible");
  }
  Integer w = Integer(u.get_num()) * den_inv;
  mpz_mod(w.get_mpz_t(), w.get_mpz_t(), modulus.get_mpz_t());
  Rational out(w);
  if (v > 0) out *= Rational(ipow(p, static_cast<unsigned long>(v)));
  if (v < 0) out /= Rational(ipow(p, static_cast<unsigned long>(-v)));
  out.canonicalize();
  return out;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto strip = [](std::string& t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  };
  strip(s);
  if (s.empty()) fail(ErrorKind::ParseError, "empty rational");
  auto slash = s.find('/');
  Integer num, den(1);
  auto parse_int = [](const std::string& t, Integer& out) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (std::size_t j = i; j < t.size(); ++j) {
      if (!std::isdigit(static_cast<unsigned char>(t[j]))) return false;
    }
    return out.set_str(t[0] == '+' ? t.substr(1) : t, 10) == 0;
  };
  if (slash == std::string::npos) {
    if (!parse_int(s, num)) fail(ErrorKind::ParseError, "bad rational '" + s + "'");
  } else {
    std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    strip(a);
    strip(b);
    if (!parse_int(a, num) || !parse_int(b, den)) fail(ErrorKind::ParseError, "bad rational '" + s + "'");
    if (den == 0) fail(ErrorKind::ParseError, "zero denominator in '" + s + "'");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

double log_p(double x, unsigned long p) { return std::log(x) / std::log(static_cast<double>(p)); }

double log_p(const Integer& n, unsigned long p) {
  Integer a = abs(n);
  if (a == 0) return -HUGE_VAL;
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, a.get_mpz_t());
  return (std::log(mant) + static_cast<double>(exp) * std::log(2.0)) / std::log(static_cast<double>(p));
}

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

long floor_div(long n, long d) {
  long q = n / d;
  if ((n % d != 0) && (n < 0)) --q;
  return q;
}

long ceil_div(long n, long d) { return -floor_div(-n, d); }

}  // namespace padhyp
