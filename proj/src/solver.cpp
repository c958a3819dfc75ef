#include "padhyp/solver.hpp"

#include <algorithm>
#include <cmath>

#include "padhyp/error.hpp"
#include "padhyp/liouville.hpp"

namespace padhyp {

namespace {

// A polynomial is overconvergent for every eta < 1; when the window slope
// test rejects it, fall back to eta = 1/2 with C = 2 max |c_l| 2^l.
GrowthCertificate polynomial_growth(const CoefficientSeries& c) {
  const Window w{0, static_cast<int>(c.truncation_order)};
  const WeylOperator op = c.as_operator(w);
  try {
    return fit_growth(op, Flavor::A1);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotOverconvergentOnWindow) throw;
  }
  const unsigned long p = c.field->p();
  const double log_eta = log_p(0.5, p);
  double log_c = -INFINITY;
  for (long l = 0; l <= c.truncation_order; ++l) {
    const PadicScalar& a = c.coeffs[static_cast<std::size_t>(l)];
    if (!a.is_exact_zero()) log_c = std::max(log_c, a.log_norm() - log_eta * static_cast<double>(l));
  }
  return GrowthCertificate::from_logs(p, log_c + log_p(2.0, p), log_eta, Flavor::A1, w);
}

const DworkField& field_of(const PadicConfig& config) {
  config.validate();
  return DworkField::get(config.p, config.q);
}

void require_rational_alpha(const HypParams& params) {
  for (const auto& a : params.alpha) {
    if (!a.is_exact()) {
      fail(ErrorKind::PreconditionViolated, "digit-stream alpha cannot be certified non-Liouville");
    }
    if (a.exact_value().get_den() == 1) {
      fail(ErrorKind::IntegerAlpha, "alpha = " + a.to_string() + " is an integer");
    }
  }
}

// Coefficients of the three-term recurrence on the d^[l]-coefficients mod x:
// c_l + A(l) d_l - s pi^{m-n} B(l) d_{l+1} = 0.
class Recurrence {
 public:
  Recurrence(const HypParams& params, const DworkField& field, long precision)
      : params_(params), field_(field), precision_(precision), spi_(PadicScalar::one(field)) {
    const long m = static_cast<long>(params.m()), n = static_cast<long>(params.n());
    spi_ = pi_value(field, params.pi_variant).pow(m - n);
    if ((m + n * static_cast<long>(field.p())) % 2 != 0) spi_ = -spi_;
    for (const auto& b : params.beta) beta_.push_back(b.to_scalar(field, precision));
  }

  PadicScalar A(long u) const {
    Rational prod(1);
    for (const auto& a : params_.alpha) prod *= Rational(u) - a.exact_value();
    return PadicScalar::from_rational(field_, prod);
  }

  PadicScalar B(long u) const {
    PadicScalar prod = PadicScalar::one(field_);
    const PadicScalar uu = PadicScalar::from_integer(field_, u);
    for (const auto& b : beta_) prod *= uu - b;
    return prod;
  }

  const PadicScalar& spi() const { return spi_; }

  PadicScalar step(long l, const PadicScalar& c, const PadicScalar& d_next) const {
    return (spi_ * B(l) * d_next - c) / A(l);
  }

 private:
  const HypParams& params_;
  const DworkField& field_;
  long precision_;
  PadicScalar spi_;
  std::vector<PadicScalar> beta_;
};

// Lower bound (in valuation, a real) on v(d_l) when only c_t with t >= l
// contribute, from the certificate |c_t| < C eta^t and the block bounds
//   v(prod_{u=l}^{t-1} prod_j (u - beta_j)) >= n ((t-l)/(p-1) - 1 - log_p(t-l)),
//   v(prod_{u=l}^{t} (u - a/b)) <= (t-l+1)/(p-1) + log_p(b t + |a|).
double tail_valuation_bound(const HypParams& params, const GrowthCertificate& g, long l, unsigned long p) {
  const double lambda = -g.log_eta;
  const double pm1 = static_cast<double>(p - 1);
  const double m = static_cast<double>(params.m()), n = static_cast<double>(params.n());
  auto summand = [&](long t) {
    const long k = t - l;
    double v = lambda * static_cast<double>(t) - g.log_c - m / pm1;
    if (k >= 1) v -= n * (1.0 + log_p(static_cast<double>(k), p));
    for (const auto& a : params.alpha) {
      const Rational& r = a.exact_value();
      Integer cap = Integer(r.get_den()) * t + abs(Integer(r.get_num()));
      v -= log_p(cap, p);
    }
    return v;
  };
  // Increasing once lambda >= (n + m) / (k ln p).
  const double k_star = std::ceil((n + m) / (lambda * std::log(static_cast<double>(p)))) + 1.0;
  const long stop = l + static_cast<long>(std::min(k_star, 1e7));
  double best = summand(l);
  for (long t = l + 1; t <= stop; ++t) best = std::min(best, summand(t));
  return best - 1e-9;
}

long to_units_floor(double valuation, unsigned long p) {
  return static_cast<long>(std::floor(valuation * static_cast<double>(p - 1) - 1e-6));
}

struct BackwardResult {
  std::vector<PadicScalar> d;  // d_0 .. d_{top}
};

// d_l for l = 0..top from the cutoff lcut downward.
BackwardResult backward(const CoefficientSeries& c, const HypParams& params, const Recurrence& rec, long lcut,
                        long top) {
  const DworkField& field = *c.field;
  PadicScalar next = PadicScalar::zero(field);
  if (!c.exact_tail || lcut < c.truncation_order) {
    if (!c.growth) fail(ErrorKind::PreconditionViolated, "series needs a growth certificate");
    double g = tail_valuation_bound(params, *c.growth, lcut + 1, field.p());
    next = PadicScalar::from_coeffs(field, {}, to_units_floor(g, field.p()));
  }
  BackwardResult out;
  out.d.assign(static_cast<std::size_t>(top + 1), PadicScalar::zero(field));
  for (long l = lcut; l >= 0; --l) {
    next = rec.step(l, c.at(l), next);
    if (l <= top) out.d[static_cast<std::size_t>(l)] = next;
  }
  return out;
}

std::optional<long> min_precision(const std::vector<PadicScalar>& d) {
  std::optional<long> out;
  for (const auto& x : d) {
    if (!x.precision()) continue;
    if (!out || *x.precision() < *out) out = *x.precision();
  }
  return out;
}

}  // namespace

CoefficientSeries CoefficientSeries::make(const DworkField& field, std::vector<PadicScalar> coeffs, bool exact_tail,
                                          std::optional<GrowthCertificate> growth) {
  CoefficientSeries s;
  s.field = &field;
  s.truncation_order = static_cast<long>(coeffs.size()) - 1;
  s.coeffs = std::move(coeffs);
  s.exact_tail = exact_tail;
  s.growth = growth;
  for (const auto& c : s.coeffs) {
    if (&c.field() != &field) fail(ErrorKind::PreconditionViolated, "coefficient from a different field");
  }
  return s;
}

PadicScalar CoefficientSeries::at(long l) const {
  if (l < 0) fail(ErrorKind::PreconditionViolated, "negative coefficient index");
  if (l <= truncation_order) return coeffs[static_cast<std::size_t>(l)];
  if (exact_tail) return PadicScalar::zero(*field);
  if (!growth) fail(ErrorKind::PreconditionViolated, "series tail needs a growth certificate");
  const double v = -(growth->log_c + growth->log_eta * static_cast<double>(l));
  return PadicScalar::from_coeffs(*field, {}, to_units_floor(v, field->p()));
}

bool CoefficientSeries::is_zero() const {
  return exact_tail && std::all_of(coeffs.begin(), coeffs.end(), [](const PadicScalar& c) { return c.is_exact_zero(); });
}

WeylOperator CoefficientSeries::as_operator(Window window) const {
  WeylOperator out(*field, Flavor::A1, window);
  for (long l = 0; l <= truncation_order; ++l) out.add_term(0, static_cast<int>(l), coeffs[static_cast<std::size_t>(l)]);
  return out;
}

long compute_l0(const HypParams& params) {
  long best = 0;
  for (const auto& b : params.beta) {
    if (!b.is_integer().value_or(false)) continue;
    const long v = b.exact_value().get_num().get_si() + 1;
    if (v >= 0) best = std::max(best, v);
  }
  return best;
}

WeylOperator head_solve(const std::vector<PadicScalar>& c_head, const PadicScalar& d_l0, const HypParams& params,
                        const PadicConfig& config) {
  require_rational_alpha(params);
  const DworkField& field = field_of(config);
  const long l0 = compute_l0(params);
  if (static_cast<long>(c_head.size()) != l0) {
    fail(ErrorKind::PreconditionViolated, "head needs exactly l0 coefficients");
  }
  Recurrence rec(params, field, config.precision);
  Window w{std::max(config.lmax, 0), std::max<int>(config.kmax, static_cast<int>(l0))};
  WeylOperator out(field, Flavor::A1, w);
  PadicScalar next = d_l0;
  for (long l = l0 - 1; l >= 0; --l) {
    next = rec.step(l, c_head[static_cast<std::size_t>(l)], next);
    out.add_term(0, static_cast<int>(l), next);
  }
  return out;
}

TailCoefficient tail_coefficient(long s, const CoefficientSeries& c, const HypParams& params, long T,
                                 const PadicConfig& config) {
  require_rational_alpha(params);
  if (s < 0 || T < s) fail(ErrorKind::PreconditionViolated, "need 0 <= s <= T");
  if (!c.field) fail(ErrorKind::PreconditionViolated, "empty series");
  const DworkField& field = field_of(config);
  if (&field != c.field) fail(ErrorKind::PreconditionViolated, "series over a different field");
  const long l0 = compute_l0(params);
  Recurrence rec(params, field, config.precision);
  BackwardResult r = backward(c, params, rec, l0 + T, l0 + s);
  const PadicScalar& d = r.d[static_cast<std::size_t>(l0 + s)];
  if (d.precision() && *d.precision() < config.precision) {
    fail(ErrorKind::TailBoundTooWeak, "tail bound reaches only pi^" + std::to_string(*d.precision()) +
                                          " at truncation " + std::to_string(T));
  }
  return {d, d.precision()};
}

SolveReport solve_x_surjectivity(const CoefficientSeries& P, const HypParams& params, const PadicConfig& config,
                                 const SolveOptions& options) {
  require_rational_alpha(params);
  const DworkField& field = field_of(config);
  if (P.field != &field) fail(ErrorKind::PreconditionViolated, "series over a different field");
  for (const auto& a : params.alpha) {
    LiouvilleVerdict v = liouville_diagnose(a, 8);
    if (v.status != LiouvilleStatus::NonLiouvilleCertified) {
      fail(ErrorKind::PreconditionViolated, "alpha is not certified non-Liouville");
    }
  }
  CoefficientSeries c = P;
  if (!c.growth) {
    if (!c.exact_tail) fail(ErrorKind::PreconditionViolated, "series tail needs a growth certificate");
    if (!c.is_zero()) c.growth = polynomial_growth(c);
  }
  if (c.growth && !c.growth->holds_for(c.as_operator(Window{0, static_cast<int>(std::max(0L, c.truncation_order))}))) {
    fail(ErrorKind::PreconditionViolated, "growth certificate does not hold on the stored coefficients");
  }

  const long m = static_cast<long>(params.m()), n = static_cast<long>(params.n());
  const long l0 = compute_l0(params);
  const long top = std::max(c.truncation_order, l0);
  const long target = config.precision + std::max(0L, n - m);
  Recurrence rec(params, field, config.precision + 4 * (m + n + 1));

  long lcut = top;
  if (!c.exact_tail) lcut = top + 8;
  BackwardResult r;
  for (;;) {
    r = backward(c, params, rec, lcut, top);
    auto prec = min_precision(r.d);
    if (!prec || *prec >= target) break;
    if (lcut >= options.max_cutoff) {
      fail(ErrorKind::TailBoundTooWeak, "d known only to pi^" + std::to_string(*prec) + " at cutoff " +
                                            std::to_string(lcut) + "; need pi^" + std::to_string(target));
    }
    lcut = std::min(options.max_cutoff, top + 2 * (lcut - top));
  }

  // Residual P + R Hyp reduced mod x, through the general normal-form product.
  const int kwin = static_cast<int>(top + m + n + 2);
  Window w{std::max(config.lmax, static_cast<int>(n + 2)), kwin};
  CoefficientSeries R = CoefficientSeries::make(field, r.d, c.exact_tail || lcut == top, c.growth);
  if (!R.exact_tail) R.growth.reset();
  WeylOperator hyp = hyp_operator(params, config, Flavor::A1).with_window(w);
  WeylOperator rr = op_mul(R.as_operator(w), hyp);
  WeylOperator total = c.as_operator(w) + rr;
  if (total.truncated()) fail(ErrorKind::TruncationOverflow, "residual exceeds the working window");
  std::vector<PadicScalar> red = reduce_mod_x(total);
  // Index top needs d_{top+1}, which is only stored when the tail is exactly zero.
  const long checked = (c.exact_tail && lcut == top) ? top : top - 1;
  Valuation worst = Valuation::infinity();
  for (long k = 0; k <= checked && k < static_cast<long>(red.size()); ++k) {
    const PadicScalar& x = red[static_cast<std::size_t>(k)];
    const ZeroStatus z = x.zero_status();
    if (z == ZeroStatus::Zero) continue;
    if (z == ZeroStatus::NonZero) {
      fail(ErrorKind::ResidualNonzero, "residual coefficient " + std::to_string(k) + " = " + x.to_string());
    }
    Valuation v = x.valuation();
    if (worst.infinite || v.units < worst.units) worst = v;
  }
  if (!worst.infinite && worst.units < config.precision) {
    fail(ErrorKind::ResidualNonzero, "residual known only to pi^" + std::to_string(worst.units));
  }

  // Decay |d_{l0+s}| <= C2 eta^{s/4}: C2 is the envelope over the computed
  // range. An infinite input must not peak in the trailing quarter.
  DecayFit decay;
  const double log_eta = c.growth ? c.growth->log_eta : log_p(0.5, field.p());
  decay.eta_quarter = std::pow(static_cast<double>(field.p()), log_eta / 4.0);
  const long span = top - l0;
  double c2 = -INFINITY, early = -INFINITY, late = -INFINITY;
  for (long s = 0; s <= span; ++s) {
    const double y = r.d[static_cast<std::size_t>(l0 + s)].log_norm() - log_eta * static_cast<double>(s) / 4.0;
    c2 = std::max(c2, y);
    if (4 * s < 3 * span) {
      early = std::max(early, y);
    } else {
      late = std::max(late, y);
    }
  }
  decay.log_c2 = std::isfinite(c2) ? c2 : 0.0;
  decay.holds = R.exact_tail || span < 8 || !(late > early + 1e-9);

  WeylOperator head(field, Flavor::A1, w);
  for (long l = 0; l < l0; ++l) head.add_term(0, static_cast<int>(l), r.d[static_cast<std::size_t>(l)]);

  std::vector<std::optional<long>> tails;
  for (const auto& x : r.d) tails.push_back(x.precision());
  return SolveReport{R, head, l0, lcut, tails, worst, checked, decay};
}

InjectivityReport injectivity_witness(const HypParams& params, long l, const PadicScalar& c_l_trial, double eta,
                                      long kmax) {
  require_rational_alpha(params);
  if (!(eta > 0.0 && eta < 1.0)) fail(ErrorKind::PreconditionViolated, "eta must lie in (0, 1)");
  for (const auto& b : params.beta) {
    if (b.is_integer().value_or(false) && b.exact_value() >= Rational(l)) {
      fail(ErrorKind::PreconditionViolated, "l must exceed every integer beta_j");
    }
  }
  const DworkField& field = c_l_trial.field();
  const unsigned long p = field.p();
  const long pm1 = static_cast<long>(p - 1);
  const long m = static_cast<long>(params.m()), n = static_cast<long>(params.n());
  InjectivityReport out;
  if (c_l_trial.is_exact_zero()) {
    out.zero = true;
    out.log_sequence.assign(static_cast<std::size_t>(kmax + 1), -INFINITY);
    return out;
  }
  const double lambda = -log_p(eta, p);
  // Valuations in pi-units; beta shifts that are not determined give lower
  // bounds on v(B), hence lower bounds on the sequence.
  long v = c_l_trial.valuation().units;
  for (long k = 0; k <= kmax; ++k) {
    out.log_sequence.push_back(lambda * static_cast<double>(k) - static_cast<double>(v) / static_cast<double>(pm1));
    const long u = l + k;
    long va = 0, vb = 0;
    for (const auto& a : params.alpha) va += vp(Rational(Rational(u) - a.exact_value()), p);
    for (const auto& b : params.beta) {
      ShiftValuation s = b.shift_valuation(u);
      if (s.infinite) fail(ErrorKind::PreconditionViolated, "beta_j hit by the recurrence");
      vb += s.value;
    }
    v += pm1 * (va - vb) - (m - n);
  }
  out.diverges = trailing_divergence(out.log_sequence);
  return out;
}

}  // namespace padhyp
