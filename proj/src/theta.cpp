#include "padhyp/theta.hpp"

#include <algorithm>
#include <mutex>

#include "padhyp/error.hpp"

namespace padhyp {

namespace {

Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

// Coefficients of theta (theta - 1) ... (theta - k + 1) / k!.
std::vector<Rational> binom_theta(int k) {
  std::vector<Rational> c{Rational(1)};
  for (int i = 0; i < k; ++i) {
    std::vector<Rational> next(c.size() + 1);
    for (std::size_t j = 0; j < c.size(); ++j) {
      next[j + 1] += c[j];
      next[j] -= c[j] * i;
    }
    c = std::move(next);
  }
  Integer f = factorial(static_cast<unsigned long>(k));
  for (auto& r : c) {
    r /= f;
    r.canonicalize();
  }
  return c;
}

}  // namespace

const Integer& stirling2(int j, int k) {
  static std::mutex mu;
  static std::vector<std::vector<Integer>> table{{Integer(1)}};
  static const Integer zero(0);
  if (j < 0 || k < 0 || k > j) return zero;
  std::lock_guard lock(mu);
  while (static_cast<int>(table.size()) <= j) {
    const auto& prev = table.back();
    const std::size_t n = table.size();
    std::vector<Integer> row(n + 1, Integer(0));
    for (std::size_t i = 1; i <= n; ++i) {
      Integer a = i < prev.size() ? prev[i] * static_cast<unsigned long>(i) : Integer(0);
      row[i] = a + prev[i - 1];
    }
    table.push_back(std::move(row));
  }
  return table[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
}

ThetaPoly::ThetaPoly(const DworkField& field, std::vector<PadicScalar> coeffs)
    : field_(&field), coeffs_(std::move(coeffs)) {
  trim();
}

void ThetaPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_exact_zero()) coeffs_.pop_back();
}

ThetaPoly ThetaPoly::constant(const PadicScalar& c) { return ThetaPoly(c.field(), {c}); }

ThetaPoly ThetaPoly::linear(const PadicScalar& a) {
  return ThetaPoly(a.field(), {-a, PadicScalar::one(a.field())});
}

ThetaPoly ThetaPoly::from_roots(const DworkField& field, const std::vector<PadicScalar>& roots) {
  ThetaPoly out = constant(PadicScalar::one(field));
  for (const auto& r : roots) out = out * linear(r);
  return out;
}

PadicScalar ThetaPoly::coeff(int j) const {
  if (j < 0 || j >= static_cast<int>(coeffs_.size())) return PadicScalar::zero(*field_);
  return coeffs_[static_cast<std::size_t>(j)];
}

PadicScalar ThetaPoly::leading() const {
  if (coeffs_.empty()) return PadicScalar::zero(*field_);
  return coeffs_.back();
}

ThetaPoly ThetaPoly::operator+(const ThetaPoly& o) const {
  if (field_ != o.field_) fail(ErrorKind::PreconditionViolated, "theta polynomials over different fields");
  std::vector<PadicScalar> c(std::max(coeffs_.size(), o.coeffs_.size()), PadicScalar::zero(*field_));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] = coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] = c[i] + o.coeffs_[i];
  return ThetaPoly(*field_, std::move(c));
}

ThetaPoly ThetaPoly::operator-() const {
  std::vector<PadicScalar> c;
  c.reserve(coeffs_.size());
  for (const auto& a : coeffs_) c.push_back(-a);
  return ThetaPoly(*field_, std::move(c));
}

ThetaPoly ThetaPoly::operator-(const ThetaPoly& o) const { return *this + (-o); }

ThetaPoly ThetaPoly::operator*(const ThetaPoly& o) const {
  if (field_ != o.field_) fail(ErrorKind::PreconditionViolated, "theta polynomials over different fields");
  if (is_zero() || o.is_zero()) return ThetaPoly(*field_);
  std::vector<PadicScalar> c(coeffs_.size() + o.coeffs_.size() - 1, PadicScalar::zero(*field_));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return ThetaPoly(*field_, std::move(c));
}

ThetaPoly ThetaPoly::scaled(const PadicScalar& s) const {
  std::vector<PadicScalar> c;
  c.reserve(coeffs_.size());
  for (const auto& a : coeffs_) c.push_back(s * a);
  return ThetaPoly(*field_, std::move(c));
}

ThetaPoly ThetaPoly::shifted(const PadicScalar& s) const {
  // Horner in the shifted variable: f(t + s) = (...(a_n (t+s) + a_{n-1})(t+s) + ...).
  ThetaPoly out(*field_);
  ThetaPoly step(*field_, {s, PadicScalar::one(*field_)});
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) out = out * step + constant(*it);
  return out;
}

ThetaPoly ThetaPoly::negated_argument() const {
  std::vector<PadicScalar> c = coeffs_;
  for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
  return ThetaPoly(*field_, std::move(c));
}

PadicScalar ThetaPoly::eval(const PadicScalar& t) const {
  PadicScalar out = PadicScalar::zero(*field_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) out = out * t + *it;
  return out;
}

std::string ThetaPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j].is_exact_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + coeffs_[j].to_string() + ")";
    if (j == 1) out += "*t";
    if (j > 1) out += "*t^" + std::to_string(j);
  }
  return out;
}

ThetaPoly ThetaForm::band(int b) const {
  auto it = bands_.find(b);
  return it == bands_.end() ? ThetaPoly(*field_) : it->second;
}

int ThetaForm::min_band() const {
  if (bands_.empty()) fail(ErrorKind::PreconditionViolated, "zero theta-form has no bands");
  return bands_.begin()->first;
}

int ThetaForm::max_band() const {
  if (bands_.empty()) fail(ErrorKind::PreconditionViolated, "zero theta-form has no bands");
  return bands_.rbegin()->first;
}

void ThetaForm::add_band(int b, const ThetaPoly& f) {
  if (&f.field() != field_) fail(ErrorKind::PreconditionViolated, "band over a different field");
  if (f.is_zero()) return;
  auto it = bands_.find(b);
  if (it == bands_.end()) {
    bands_.emplace(b, f);
    return;
  }
  it->second = it->second + f;
  if (it->second.is_zero()) bands_.erase(it);
}

ThetaForm ThetaForm::operator+(const ThetaForm& o) const {
  ThetaForm out = *this;
  for (const auto& [b, f] : o.bands_) out.add_band(b, f);
  return out;
}

ThetaForm ThetaForm::operator-() const {
  ThetaForm out(*field_);
  for (const auto& [b, f] : bands_) out.bands_.emplace(b, -f);
  return out;
}

ThetaForm ThetaForm::operator-(const ThetaForm& o) const { return *this + (-o); }

ThetaForm ThetaForm::operator*(const ThetaForm& o) const {
  ThetaForm out(*field_);
  for (const auto& [a, f] : bands_) {
    for (const auto& [b, g] : o.bands_) {
      out.add_band(a + b, f.shifted(PadicScalar::from_integer(*field_, b)) * g);
    }
  }
  return out;
}

ThetaForm ThetaForm::scaled(const PadicScalar& c) const {
  ThetaForm out(*field_);
  for (const auto& [b, f] : bands_) out.add_band(b, f.scaled(c));
  return out;
}

ThetaForm ThetaForm::left_x_power(int d) const {
  ThetaForm out(*field_);
  for (const auto& [b, f] : bands_) out.bands_.emplace(b + d, f);
  return out;
}

std::string ThetaForm::to_string() const {
  if (bands_.empty()) return "0";
  std::string out;
  for (const auto& [b, f] : bands_) {
    if (!out.empty()) out += " + ";
    out += "x^" + std::to_string(b) + "*[" + f.to_string() + "]";
  }
  return out;
}

ThetaForm to_theta(const WeylOperator& p) {
  const DworkField& field = p.field();
  ThetaForm out(field);
  for (const auto& [key, c] : p.terms()) {
    const auto [l, k] = key;
    std::vector<Rational> bt = binom_theta(k);
    std::vector<PadicScalar> coeffs;
    coeffs.reserve(bt.size());
    for (const auto& r : bt) coeffs.push_back(c.scaled(r));
    out.add_band(l - k, ThetaPoly(field, std::move(coeffs)));
  }
  return out;
}

WeylOperator from_theta(const ThetaForm& t, Flavor flavor, Window window) {
  // Accumulate before clipping so that cancelling terms never raise the flag.
  std::map<TermKey, PadicScalar> acc;
  for (const auto& [b, f] : t.bands()) {
    for (int j = 0; j <= f.degree(); ++j) {
      const PadicScalar& a = f.coeffs()[static_cast<std::size_t>(j)];
      if (a.is_exact_zero()) continue;
      for (int k = 0; k <= j; ++k) {
        const Integer& s = stirling2(j, k);
        if (s == 0) continue;
        PadicScalar term = a.scaled(Rational(s * factorial(static_cast<unsigned long>(k))));
        auto [it, inserted] = acc.try_emplace({b + k, k}, term);
        if (!inserted) it->second += term;
      }
    }
  }
  WeylOperator out(t.field(), Flavor::B1, window);
  for (const auto& [key, c] : acc) out.add_term(key.first, key.second, c);
  return out.with_flavor(flavor);
}

}  // namespace padhyp
