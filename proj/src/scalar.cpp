#include "padhyp/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "padhyp/config.hpp"
#include "padhyp/error.hpp"

namespace padhyp {

namespace {

std::optional<long> add_opt(std::optional<long> a, std::optional<long> b) {
  if (!a || !b) return std::nullopt;
  return *a + *b;
}

std::optional<long> min_opt(std::optional<long> a, std::optional<long> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

}  // namespace

double Valuation::value(unsigned long p) const {
  if (infinite) return std::numeric_limits<double>::infinity();
  return static_cast<double>(units) / static_cast<double>(p - 1);
}

PadicScalar::PadicScalar(const DworkField* field, std::vector<Rational> coeffs, std::optional<long> precision)
    : field_(field), coeffs_(std::move(coeffs)), precision_(precision) {
  normalize();
}

PadicScalar PadicScalar::zero(const DworkField& field) {
  return PadicScalar(&field, std::vector<Rational>(static_cast<std::size_t>(field.degree())), std::nullopt);
}

PadicScalar PadicScalar::one(const DworkField& field) { return from_rational(field, Rational(1)); }

PadicScalar PadicScalar::from_rational(const DworkField& field, const Rational& r) {
  std::vector<Rational> c(static_cast<std::size_t>(field.degree()));
  c[0] = r;
  return PadicScalar(&field, std::move(c), std::nullopt);
}

PadicScalar PadicScalar::pi_power(const DworkField& field, long n) {
  const long e = field.degree();
  long q = floor_div(n, e);
  long r = n - q * e;
  Rational top_pow(1);
  for (long i = 0; i < std::labs(q); ++i) top_pow *= field.pi_top_power();
  if (q < 0) top_pow = Rational(1) / top_pow;
  std::vector<Rational> c(static_cast<std::size_t>(e));
  c[static_cast<std::size_t>(r)] = top_pow;
  return PadicScalar(&field, std::move(c), std::nullopt);
}

PadicScalar PadicScalar::from_coeffs(const DworkField& field, std::vector<Rational> coeffs,
                                     std::optional<long> precision) {
  if (coeffs.size() > static_cast<std::size_t>(field.degree())) {
    fail(ErrorKind::InvalidParameter, "too many pi-coefficients for the field degree");
  }
  coeffs.resize(static_cast<std::size_t>(field.degree()));
  return PadicScalar(&field, std::move(coeffs), precision);
}

PadicScalar dwork_pi(const DworkField& field) { return PadicScalar::pi_power(field, 1); }

PadicScalar dwork_pi(const PadicConfig& config) {
  config.validate();
  return dwork_pi(DworkField::get(config.p, config.q));
}

void PadicScalar::normalize() {
  for (auto& c : coeffs_) c.canonicalize();
  if (!precision_) return;
  const long pm1 = field_->units_per_valuation();
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    long k = ceil_div(*precision_ - static_cast<long>(i), pm1);
    coeffs_[i] = reduce_mod_pk(coeffs_[i], field_->p(), k);
  }
}

void PadicScalar::check_same_field(const PadicScalar& o) const {
  if (field_ != o.field_) fail(ErrorKind::PreconditionViolated, "scalars from different fields");
}

Valuation PadicScalar::valuation() const {
  const long pm1 = field_->units_per_valuation();
  bool any = false;
  long best = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    long u = pm1 * vp(coeffs_[i], field_->p()) + static_cast<long>(i);
    if (!any || u < best) best = u;
    any = true;
  }
  if (any) return {best, false, true};
  if (precision_) return {*precision_, false, false};
  return Valuation::infinity();
}

std::optional<long> PadicScalar::valuation_floor() const {
  Valuation v = valuation();
  if (v.infinite) return std::nullopt;
  return v.units;
}

ZeroStatus PadicScalar::zero_status() const {
  bool all_zero = std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
  if (!all_zero) return ZeroStatus::NonZero;
  return precision_ ? ZeroStatus::ZeroToPrecision : ZeroStatus::Zero;
}

bool PadicScalar::is_exact_zero() const { return zero_status() == ZeroStatus::Zero; }

double PadicScalar::log_norm() const {
  Valuation v = valuation();
  if (v.infinite) return -std::numeric_limits<double>::infinity();
  return -v.value(field_->p());
}

double PadicScalar::norm() const { return std::pow(static_cast<double>(field_->p()), log_norm()); }

PadicScalar PadicScalar::with_precision(long units) const {
  auto prec = min_opt(precision_, units);
  return PadicScalar(field_, coeffs_, prec);
}

PadicScalar PadicScalar::representative() const { return PadicScalar(field_, coeffs_, std::nullopt); }

PadicScalar PadicScalar::operator-() const {
  std::vector<Rational> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coeffs_[i];
  return PadicScalar(field_, std::move(c), precision_);
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
  check_same_field(o);
  std::vector<Rational> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeffs_[i] + o.coeffs_[i];
  return PadicScalar(field_, std::move(c), min_opt(precision_, o.precision_));
}

PadicScalar PadicScalar::operator-(const PadicScalar& o) const { return *this + (-o); }

PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
  check_same_field(o);
  const std::size_t e = coeffs_.size();
  std::vector<Rational> c(e);
  const Rational& top = field_->pi_top_power();
  for (std::size_t i = 0; i < e; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < e; ++j) {
      if (o.coeffs_[j] == 0) continue;
      Rational t = coeffs_[i] * o.coeffs_[j];
      std::size_t k = i + j;
      if (k >= e) {
        k -= e;
        t *= top;
      }
      c[k] += t;
    }
  }
  // Error terms: eps_a * b and a * eps_b.
  auto va = valuation_floor();
  auto vb = o.valuation_floor();
  std::optional<long> prec;
  if (precision_ || o.precision_) {
    auto t1 = precision_ ? add_opt(precision_, vb) : std::nullopt;
    auto t2 = o.precision_ ? add_opt(o.precision_, va) : std::nullopt;
    if (precision_ && !vb) t1 = std::nullopt;  // b exact zero kills the error
    if (o.precision_ && !va) t2 = std::nullopt;
    prec = min_opt(t1, t2);
  }
  return PadicScalar(field_, std::move(c), prec);
}

PadicScalar PadicScalar::scaled(const Rational& r) const {
  std::vector<Rational> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeffs_[i] * r;
  std::optional<long> prec = precision_;
  if (prec) {
    if (r == 0) {
      prec = std::nullopt;
    } else {
      *prec += field_->units_per_valuation() * vp(r, field_->p());
    }
  }
  return PadicScalar(field_, std::move(c), prec);
}

PadicScalar PadicScalar::inverse() const {
  ZeroStatus z = zero_status();
  if (z == ZeroStatus::Zero) fail(ErrorKind::DivisionByZero, "inverse of zero");
  if (z == ZeroStatus::ZeroToPrecision) {
    fail(ErrorKind::PrecisionLoss, "divisor is zero to precision " + std::to_string(*precision_));
  }
  const std::size_t e = coeffs_.size();
  std::vector<Rational> out(e);
  std::size_t nonzero = 0, idx = 0;
  for (std::size_t i = 0; i < e; ++i) {
    if (coeffs_[i] != 0) {
      ++nonzero;
      idx = i;
    }
  }
  if (nonzero == 1) {
    // (c pi^i)^{-1} = c^{-1} pi^{-i}
    PadicScalar inv_pi = pi_power(*field_, -static_cast<long>(idx));
    out = inv_pi.scaled(Rational(1) / coeffs_[idx]).coeffs_;
  } else {
    // Solve M x = e_0 where column j of M holds the coefficients of a * pi^j.
    std::vector<std::vector<Rational>> m(e, std::vector<Rational>(e + 1));
    for (std::size_t j = 0; j < e; ++j) {
      for (std::size_t i = 0; i < e; ++i) {
        std::size_t k = i + j;
        Rational t = coeffs_[i];
        if (k >= e) {
          k -= e;
          t *= field_->pi_top_power();
        }
        m[k][j] += t;
      }
    }
    m[0][e] = 1;
    for (std::size_t col = 0; col < e; ++col) {
      std::size_t piv = col;
      while (piv < e && m[piv][col] == 0) ++piv;
      if (piv == e) fail(ErrorKind::DivisionByZero, "scalar is a zero divisor in the formal quotient ring");
      std::swap(m[piv], m[col]);
      Rational inv = Rational(1) / m[col][col];
      for (std::size_t c = col; c <= e; ++c) m[col][c] *= inv;
      for (std::size_t r = 0; r < e; ++r) {
        if (r == col || m[r][col] == 0) continue;
        Rational f = m[r][col];
        for (std::size_t c = col; c <= e; ++c) m[r][c] -= f * m[col][c];
      }
    }
    for (std::size_t i = 0; i < e; ++i) out[i] = m[i][e];
  }
  std::optional<long> prec;
  if (precision_) prec = *precision_ - 2 * valuation().units;
  return PadicScalar(field_, std::move(out), prec);
}

PadicScalar PadicScalar::operator/(const PadicScalar& o) const {
  check_same_field(o);
  return *this * o.inverse();
}

PadicScalar PadicScalar::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  PadicScalar result = one(*field_);
  PadicScalar base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

bool PadicScalar::operator==(const PadicScalar& o) const {
  return field_ == o.field_ && precision_ == o.precision_ && coeffs_ == o.coeffs_;
}

std::string PadicScalar::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!out.empty()) out += " + ";
    std::string c = padhyp::to_string(coeffs_[i]);
    if (i == 0) {
      out += c;
    } else {
      if (coeffs_[i] != 1) out += (c.find('/') != std::string::npos || c[0] == '-') ? "(" + c + ")*" : c + "*";
      out += i == 1 ? "pi" : "pi^" + std::to_string(i);
    }
  }
  if (precision_) {
    if (!out.empty()) out += " + ";
    out += "O(pi^" + std::to_string(*precision_) + ")";
  }
  return out.empty() ? "0" : out;
}

}  // namespace padhyp
