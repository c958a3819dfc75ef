#include "padhyp/weyl.hpp"

#include <algorithm>

#include "padhyp/error.hpp"

namespace padhyp {

namespace {

Integer binomial(long n, unsigned long k) {
  Integer out;
  Integer nn(n);
  // GMP extends binom(n, k) to negative n.
  mpz_bin_ui(out.get_mpz_t(), nn.get_mpz_t(), k);
  return out;
}

Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

}  // namespace

const char* to_string(Flavor f) { return f == Flavor::A1 ? "A1" : "B1"; }

WeylOperator::WeylOperator(const DworkField& field, Flavor flavor, Window window)
    : field_(&field), flavor_(flavor), window_(window) {}

WeylOperator WeylOperator::constant(const DworkField& field, Flavor flavor, Window window, const PadicScalar& c) {
  return monomial(field, flavor, window, 0, 0, c);
}

WeylOperator WeylOperator::monomial(const DworkField& field, Flavor flavor, Window window, int l, int k,
                                    const PadicScalar& c) {
  WeylOperator out(field, flavor, window);
  out.add_term(l, k, c);
  return out;
}

WeylOperator WeylOperator::x(const DworkField& field, Flavor flavor, Window window) {
  return monomial(field, flavor, window, 1, 0, PadicScalar::one(field));
}

WeylOperator WeylOperator::d(const DworkField& field, Flavor flavor, Window window) {
  return monomial(field, flavor, window, 0, 1, PadicScalar::one(field));
}

WeylOperator WeylOperator::d_power(const DworkField& field, Flavor flavor, Window window, int k) {
  return monomial(field, flavor, window, 0, k,
                  PadicScalar::from_rational(field, Rational(factorial(static_cast<unsigned long>(k)))));
}

std::optional<PadicScalar> WeylOperator::coeff(int l, int k) const {
  auto it = terms_.find({l, k});
  if (it == terms_.end()) return std::nullopt;
  return it->second;
}

void WeylOperator::add_term(int l, int k, const PadicScalar& c) {
  if (&c.field() != field_) fail(ErrorKind::PreconditionViolated, "coefficient from a different field");
  if (k < 0) fail(ErrorKind::PreconditionViolated, "negative d-order");
  if (flavor_ == Flavor::A1 && l < 0) fail(ErrorKind::FlavorMismatch, "negative x-power in an A1 operator");
  if (c.is_exact_zero()) return;
  if (!window_.contains(l, k)) {
    truncated_ = true;
    return;
  }
  auto [it, inserted] = terms_.try_emplace({l, k}, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_exact_zero()) terms_.erase(it);
  }
}

WeylOperator WeylOperator::with_flavor(Flavor flavor) const {
  if (flavor == Flavor::A1) {
    for (const auto& [key, c] : terms_) {
      if (key.first < 0) fail(ErrorKind::FlavorMismatch, "operator has negative x-powers; not in A1");
    }
  }
  WeylOperator out = *this;
  out.flavor_ = flavor;
  return out;
}

WeylOperator WeylOperator::with_window(Window window) const {
  WeylOperator out(*field_, flavor_, window);
  out.truncated_ = truncated_;
  for (const auto& [key, c] : terms_) out.add_term(key.first, key.second, c);
  return out;
}

void WeylOperator::check_compatible(const WeylOperator& o) const {
  if (field_ != o.field_) fail(ErrorKind::PreconditionViolated, "operators over different fields");
  if (flavor_ != o.flavor_) fail(ErrorKind::FlavorMismatch, "A1 and B1 operators mixed");
  if (!(window_ == o.window_)) fail(ErrorKind::PreconditionViolated, "operators with different windows");
}

WeylOperator WeylOperator::operator+(const WeylOperator& o) const {
  check_compatible(o);
  WeylOperator out = *this;
  out.truncated_ = truncated_ || o.truncated_;
  for (const auto& [key, c] : o.terms_) out.add_term(key.first, key.second, c);
  return out;
}

WeylOperator WeylOperator::operator-() const {
  WeylOperator out(*field_, flavor_, window_);
  out.truncated_ = truncated_;
  for (const auto& [key, c] : terms_) out.terms_.emplace(key, -c);
  return out;
}

WeylOperator WeylOperator::operator-(const WeylOperator& o) const { return *this + (-o); }

WeylOperator WeylOperator::operator*(const WeylOperator& o) const { return op_mul(*this, o); }

WeylOperator WeylOperator::scaled(const PadicScalar& c) const {
  WeylOperator out(*field_, flavor_, window_);
  out.truncated_ = truncated_;
  for (const auto& [key, a] : terms_) out.add_term(key.first, key.second, c * a);
  return out;
}

WeylOperator WeylOperator::left_x_power(int d) const {
  WeylOperator out(*field_, flavor_, window_);
  out.truncated_ = truncated_;
  for (const auto& [key, a] : terms_) out.add_term(key.first + d, key.second, a);
  return out;
}

Valuation WeylOperator::min_valuation() const {
  Valuation best = Valuation::infinity();
  for (const auto& [key, c] : terms_) {
    Valuation v = c.valuation();
    if (best.infinite || v.units < best.units || (v.units == best.units && !v.exact)) best = v;
  }
  return best;
}

bool WeylOperator::operator==(const WeylOperator& o) const {
  return field_ == o.field_ && flavor_ == o.flavor_ && window_ == o.window_ && truncated_ == o.truncated_ &&
         terms_ == o.terms_;
}

bool WeylOperator::same_support(const WeylOperator& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  return std::equal(terms_.begin(), terms_.end(), o.terms_.begin(),
                    [](const auto& a, const auto& b) { return a.first == b.first; });
}

WeylOperator op_mul(const WeylOperator& p, const WeylOperator& q) {
  if (&p.field() != &q.field()) fail(ErrorKind::PreconditionViolated, "operators over different fields");
  if (p.flavor() != q.flavor()) fail(ErrorKind::FlavorMismatch, "A1 and B1 operators mixed");
  if (!(p.window() == q.window())) fail(ErrorKind::PreconditionViolated, "operators with different windows");
  WeylOperator out(p.field(), p.flavor(), p.window());
  if (p.truncated() || q.truncated()) out.mark_truncated();
  for (const auto& [pk, pc] : p.terms()) {
    const int a = pk.first, b = pk.second;
    for (const auto& [qk, qc] : q.terms()) {
      const int c = qk.first, d = qk.second;
      PadicScalar base = pc * qc;
      // x^a d^[b] x^c d^[d] = sum_j binom(c, j) binom(b-j+d, d) x^{a+c-j} d^[b-j+d]
      const int jmax = c >= 0 ? std::min(b, c) : b;
      for (int j = 0; j <= jmax; ++j) {
        Integer coeff = binomial(c, static_cast<unsigned long>(j)) *
                        binomial(b - j + d, static_cast<unsigned long>(d));
        if (coeff == 0) continue;
        out.add_term(a + c - j, b - j + d, base.scaled(Rational(coeff)));
      }
    }
  }
  return out;
}

std::vector<PadicScalar> reduce_mod_x(const WeylOperator& p) {
  if (p.flavor() != Flavor::A1) fail(ErrorKind::FlavorMismatch, "reduction mod x is defined on A1");
  int kmax = -1;
  for (const auto& [key, c] : p.terms()) {
    if (key.first == 0) kmax = std::max(kmax, key.second);
  }
  std::vector<PadicScalar> out(static_cast<std::size_t>(kmax + 1), PadicScalar::zero(p.field()));
  for (const auto& [key, c] : p.terms()) {
    if (key.first == 0) out[static_cast<std::size_t>(key.second)] = c;
  }
  return out;
}

}  // namespace padhyp
