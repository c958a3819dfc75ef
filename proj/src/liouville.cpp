#include "padhyp/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "padhyp/error.hpp"
#include "padhyp/hypergeom.hpp"

namespace padhyp {

namespace {

// v >= n/(p-1) - 1 - log_p n, decided without floating point.
bool lower_bound_holds(long v, long n, unsigned long p) {
  const long e = (v + 1) * static_cast<long>(p - 1) - n;
  if (e >= 0) return true;
  Integer lhs, rhs;
  mpz_ui_pow_ui(lhs.get_mpz_t(), static_cast<unsigned long>(n), p - 1);
  mpz_ui_pow_ui(rhs.get_mpz_t(), p, static_cast<unsigned long>(-e));
  return lhs >= rhs;
}

double hit_threshold(long k, unsigned long p) {
  return std::max(0.5 * static_cast<double>(k), 1.0 + log_p(static_cast<double>(k), p));
}

std::string shift_text(const ShiftValuation& s) {
  if (s.infinite) return "inf";
  if (!s.exact) return ">=" + std::to_string(s.value);
  return std::to_string(s.value);
}

Rational frac(const Rational& r) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  Rational out = r - Rational(fl);
  out.canonicalize();
  return out;
}

}  // namespace

PadicParameter liouville_exemplar(unsigned long p, long a0, long horizon) {
  if (a0 < 0) fail(ErrorKind::InvalidParameter, "exemplar exponent must be nonnegative");
  std::vector<long> exps;
  for (long a = a0; a < horizon;) {
    exps.push_back(a);
    const double next = std::pow(static_cast<double>(p), static_cast<double>(a));
    if (next >= static_cast<double>(horizon)) break;
    a = static_cast<long>(ipow(p, static_cast<unsigned long>(a)).get_si());
  }
  return PadicParameter::digit_stream(
      [&](long n) { return std::find(exps.begin(), exps.end(), n) != exps.end() ? 1UL : 0UL; }, horizon, p);
}

const char* to_string(LiouvilleStatus s) {
  switch (s) {
    case LiouvilleStatus::NonLiouvilleCertified: return "NonLiouvilleCertified";
    case LiouvilleStatus::LiouvilleWitnessed: return "LiouvilleWitnessed";
    case LiouvilleStatus::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

ShiftValuation param_shift_valuation(const PadicParameter& alpha, long k) { return alpha.shift_valuation(k); }

LiouvilleVerdict liouville_diagnose(const PadicParameter& alpha, long horizon) {
  if (horizon < 1) fail(ErrorKind::PreconditionViolated, "horizon must be positive");
  const unsigned long p = alpha.p();
  LiouvilleVerdict out;
  out.horizon = horizon;
  out.evidence.reserve(static_cast<std::size_t>(horizon));
  for (long k = 1; k <= horizon; ++k) {
    out.evidence.push_back({k, alpha.shift_valuation(k), alpha.shift_valuation(-k)});
  }

  if (alpha.is_exact()) {
    const Rational& a = alpha.exact_value();
    if (a.get_den() == 1) fail(ErrorKind::IsInteger, padhyp::to_string(a) + " is an integer");
    const Integer num = abs(Integer(a.get_num()));
    const Integer den(a.get_den());
    // alpha -+ k = (a -+ b k)/b with |a -+ b k| <= b k + |a|.
    for (const auto& s : out.evidence) {
      Integer cap = den * s.k + num;
      for (const auto* side : {&s.minus, &s.plus}) {
        if (side->infinite || !side->exact || Integer(ipow(p, static_cast<unsigned long>(side->value))) > cap) {
          fail(ErrorKind::PreconditionViolated, "rational certificate violated; arithmetic fault");
        }
      }
    }
    out.status = LiouvilleStatus::NonLiouvilleCertified;
    out.radius_lower = 1.0;
    out.radius_upper = 1.0;
    out.certificate = "v_" + std::to_string(p) + "(alpha -+ k) <= log_" + std::to_string(p) + "(" + den.get_str() +
                      "*k + " + num.get_str() + ") for all k, so |alpha -+ k|^(1/k) -> 1";
    return out;
  }

  std::vector<std::pair<long, long>> hits;
  bool undetermined = false;
  double max_ratio = 0.0;
  for (const auto& s : out.evidence) {
    const double need = hit_threshold(s.k, p);
    for (const auto* side : {&s.minus, &s.plus}) {
      const double v = static_cast<double>(side->value);
      if (v >= need) {
        hits.emplace_back(s.k, side->value);
      } else if (!side->exact) {
        undetermined = true;
      }
      if (side->exact) max_ratio = std::max(max_ratio, v / static_cast<double>(s.k));
    }
  }
  const double dp = static_cast<double>(p);
  out.radius_lower = std::pow(dp, -max_ratio);
  if (hits.size() >= 2) {
    const auto& last = hits.back();
    out.status = LiouvilleStatus::LiouvilleWitnessed;
    out.radius_upper = std::pow(dp, -static_cast<double>(last.second) / static_cast<double>(last.first));
    out.radius_lower = std::min(out.radius_lower, out.radius_upper);
    for (const auto& [k, v] : hits) {
      if (!out.certificate.empty()) out.certificate += "; ";
      out.certificate += "k=" + std::to_string(k) + " v=" + std::to_string(v);
    }
    return out;
  }
  if (undetermined) {
    fail(ErrorKind::HorizonTooSmall, "digit horizon " + std::to_string(*alpha.horizon()) +
                                         " leaves shifts undetermined and no Liouville witness was found");
  }
  out.status = LiouvilleStatus::Indeterminate;
  out.radius_upper = 1.0;
  return out;
}

std::string evidence_csv(const LiouvilleVerdict& verdict) {
  std::string out = "k,v_minus,v_plus\n";
  for (const auto& s : verdict.evidence) {
    out += std::to_string(s.k) + "," + shift_text(s.minus) + "," + shift_text(s.plus) + "\n";
  }
  return out;
}

RadiusReport radius_hypergeo_series(const PadicParameter& alpha, long horizon) {
  if (horizon < 4) fail(ErrorKind::PreconditionViolated, "radius estimate needs horizon >= 4");
  if (alpha.is_integer().value_or(false)) fail(ErrorKind::PreconditionViolated, "alpha is an integer");
  if (!alpha.is_exact()) {
    LiouvilleVerdict v = liouville_diagnose(alpha, horizon);
    if (v.status != LiouvilleStatus::NonLiouvilleCertified) {
      fail(ErrorKind::PreconditionViolated, "alpha is not certified non-Liouville");
    }
  }
  const unsigned long p = alpha.p();
  RadiusReport out;
  long acc = 0;
  for (long s = 0; s < horizon; ++s) {
    ShiftValuation v = alpha.shift_valuation(s);
    if (v.infinite || !v.exact) fail(ErrorKind::PreconditionViolated, "shift valuation undetermined");
    acc += v.value;
    out.partial_valuations.push_back(acc);
  }
  // Lower convex hull of (k, -V_k).
  std::vector<std::pair<double, double>> hull;
  for (long k = 0; k < horizon; ++k) {
    const std::pair<double, double> pt{static_cast<double>(k), -static_cast<double>(out.partial_valuations[k])};
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const double cross = (b.first - a.first) * (pt.second - a.second) - (b.second - a.second) * (pt.first - a.first);
      if (cross <= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(pt);
  }
  auto hull_at = [&](double w) {
    for (std::size_t i = 1; i < hull.size(); ++i) {
      if (w <= hull[i].first) {
        const auto& a = hull[i - 1];
        const auto& b = hull[i];
        return a.second + (b.second - a.second) * (w - a.first) / (b.first - a.first);
      }
    }
    return hull.back().second;
  };
  const double hi = static_cast<double>(horizon - 1);
  const double mid = std::floor(hi / 2.0);
  out.slope = (hull_at(hi) - hull_at(mid)) / (hi - mid);
  const double dp = static_cast<double>(p);
  out.estimate = std::pow(dp, out.slope);
  out.floor = std::pow(dp, -1.0 / static_cast<double>(p - 1));
  double size = static_cast<double>(horizon);
  if (alpha.is_exact()) {
    const Rational& a = alpha.exact_value();
    Integer cap = Integer(a.get_den()) * horizon + abs(Integer(a.get_num()));
    size = log_p(cap, p);
  } else {
    size = static_cast<double>(*alpha.horizon());
  }
  out.slack = 1.0 - std::pow(dp, -2.0 * (size + 1.0) / static_cast<double>(horizon));
  out.holds = out.estimate >= out.floor * (1.0 - out.slack);
  return out;
}

ProductBound product_valuation_bound(const PadicParameter& alpha, long l, long N) {
  if (l < 0 || N < l) fail(ErrorKind::PreconditionViolated, "need 0 <= l <= N");
  const unsigned long p = alpha.p();
  const long n = N - l + 1;
  ProductBound out;
  out.bound = static_cast<double>(n) / static_cast<double>(p - 1) - 1.0 - log_p(static_cast<double>(n), p);
  long v = 0;
  for (long s = l; s <= N; ++s) {
    ShiftValuation sv = alpha.shift_valuation(s);
    if (sv.infinite) {
      out.valuation = std::nullopt;
      out.holds = true;
      return out;
    }
    if (!sv.exact) out.valuation_exact = false;
    v += sv.value;
  }
  out.valuation = v;
  out.holds = lower_bound_holds(v, n, p);
  return out;
}

FactorialBound factorial_valuation_check(unsigned long M, unsigned long p) {
  if (M < 1) fail(ErrorKind::PreconditionViolated, "M must be positive");
  FactorialBound out;
  long v = 0;
  for (unsigned long q = p; q <= M; q *= p) {
    v += static_cast<long>(M / q);
    if (q > M / p) break;
  }
  out.valuation = v;
  out.bound = static_cast<double>(M) / static_cast<double>(p - 1) - log_p(static_cast<double>(M), p) - 1.0;
  out.holds = lower_bound_holds(v, static_cast<long>(M), p);
  return out;
}

bool trailing_divergence(const std::vector<double>& seq, double* first_half_max, double* trailing_max) {
  if (seq.size() < 8) return false;
  const std::size_t n = seq.size();
  const std::size_t half = n / 2;
  const std::size_t tail = n - n / 4;
  double fh = -INFINITY, tm = -INFINITY, all = -INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < half) fh = std::max(fh, seq[i]);
    if (i >= tail) tm = std::max(tm, seq[i]);
    all = std::max(all, seq[i]);
  }
  if (first_half_max) *first_half_max = fh;
  if (trailing_max) *trailing_max = tm;
  return std::isfinite(tm) && tm >= all && tm >= fh + 1.0;
}

DivergenceReport tail_divergence_witness(const PadicParameter& alpha, long l, double log_r, long kmax) {
  const unsigned long p = alpha.p();
  if (!(log_r < -1.0 / static_cast<double>(p - 1))) {
    fail(ErrorKind::PreconditionViolated, "r must be below p^(-1/(p-1))");
  }
  if (alpha.is_integer().value_or(false)) fail(ErrorKind::PreconditionViolated, "alpha is an integer");
  if (alpha.is_exact()) {
    // Certification of rationals is unconditional; this only checks non-integrality.
    (void)liouville_diagnose(alpha, 1);
  }
  DivergenceReport out;
  long v = 0;
  for (long k = 0; k <= kmax; ++k) {
    ShiftValuation sv = alpha.shift_valuation(l + k);
    if (sv.infinite) fail(ErrorKind::PreconditionViolated, "alpha hits the product range");
    v += sv.value;
    out.log_sequence.push_back(-static_cast<double>(v) - static_cast<double>(k) * log_r);
  }
  out.diverges = trailing_divergence(out.log_sequence, &out.first_half_max, &out.trailing_max);
  return out;
}

SigmaScanReport hypothesis_check(const HypParams& params, long horizon, long height_bound) {
  SigmaScanReport out;
  out.horizon = horizon;
  out.height_bound = height_bound;
  out.sigma_mode = height_bound > 0;
  auto merge = [&](LiouvilleStatus s) {
    if (s == LiouvilleStatus::LiouvilleWitnessed) out.status = s;
    if (s == LiouvilleStatus::Indeterminate && out.status == LiouvilleStatus::NonLiouvilleCertified) out.status = s;
  };
  auto diagnose = [&](const PadicParameter& d, double* radius) {
    try {
      LiouvilleVerdict v = liouville_diagnose(d, horizon);
      if (radius) *radius = v.radius_upper;
      return v.status;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::HorizonTooSmall) return LiouvilleStatus::Indeterminate;
      throw;
    }
  };
  for (std::size_t i = 0; i < params.alpha.size(); ++i) {
    for (std::size_t j = 0; j < params.beta.size(); ++j) {
      PairVerdict pv;
      pv.i = i;
      pv.j = j;
      PadicParameter d = params.alpha[i] - params.beta[j];
      pv.difference = d.to_string();
      if (d.is_integer().value_or(false)) {
        pv.integer = true;
        out.integer_difference = true;
      } else {
        pv.status = diagnose(d, nullptr);
        merge(pv.status);
      }
      out.pairs.push_back(pv);
    }
  }
  if (!out.sigma_mode) return out;

  std::vector<PadicParameter> gens = params.alpha;
  gens.insert(gens.end(), params.beta.begin(), params.beta.end());
  for (const auto& g : gens) out.generators.push_back(g.to_string());
  if (gens.empty()) return out;
  const unsigned long p = gens.front().p();
  std::set<std::string> seen;
  std::vector<long> coeff(gens.size(), -height_bound);
  for (;;) {
    PadicParameter combo = PadicParameter::integer(0, p);
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (coeff[g] == 0) continue;
      PadicParameter term = gens[g];
      if (coeff[g] < 0) term = -term;
      for (long c = 1; c < std::labs(coeff[g]); ++c) term = term + (coeff[g] < 0 ? -gens[g] : gens[g]);
      combo = combo + term;
    }
    if (combo.is_exact()) combo = PadicParameter::rational(frac(combo.exact_value()), p);
    const bool integral = combo.is_integer().value_or(false);
    const std::string key = combo.to_string();
    if (!integral && seen.insert(key).second) {
      ++out.scanned;
      double radius = 1.0;
      LiouvilleStatus s = diagnose(combo, &radius);
      merge(s);
      if (out.worst_element.empty() || radius < out.worst_radius) {
        out.worst_element = key;
        out.worst_radius = radius;
      }
    }
    std::size_t g = 0;
    while (g < coeff.size() && coeff[g] == height_bound) coeff[g++] = -height_bound;
    if (g == coeff.size()) break;
    ++coeff[g];
  }
  return out;
}

}  // namespace padhyp
