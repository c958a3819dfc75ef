#include <cmath>
#include <random>

#include "padhyp/cli.hpp"
#include "padhyp/error.hpp"
#include "padhyp/substitution.hpp"

namespace padhyp::cli {

namespace {

// Modulo mapping keeps generated cases identical across standard libraries.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  long below(long n) { return static_cast<long>(rng_() % static_cast<std::uint64_t>(n)); }
  long between(long lo, long hi) { return lo + below(hi - lo + 1); }
  template <typename T>
  const T& pick(const std::vector<T>& v) { return v[static_cast<std::size_t>(below(static_cast<long>(v.size())))]; }

  // Non-integral a/b in Z_p with |a| <= amax.
  Rational fraction(unsigned long p, long bmax, long amax) {
    for (;;) {
      const long b = between(2, bmax);
      if (b % static_cast<long>(p) == 0) continue;
      const long a = between(-amax, amax);
      Rational r(a, b);
      r.canonicalize();
      if (r.get_den() != 1) return r;
    }
  }

 private:
  std::mt19937_64 rng_;
};

std::string digest(const Json& j) { return sha256_hex(j.dump()).substr(0, 16); }

Json valuation_case(Gen& g) {
  const unsigned long p = g.pick<unsigned long>({2, 3, 5, 7, 11});
  const Rational a = g.fraction(p, 30, 200);
  const long l = g.below(60);
  const long N = l + g.below(300);
  const unsigned long M = static_cast<unsigned long>(g.between(1, 1000000));
  const ProductBound pb = product_valuation_bound(PadicParameter::rational(a, p), l, N);
  const FactorialBound fb = factorial_valuation_check(M, p);
  Json c{{"p", p}, {"alpha", padhyp::to_string(a)}, {"l", l}, {"N", N}, {"M", M}};
  c["product_valuation"] = pb.valuation ? Json(*pb.valuation) : Json("inf");
  c["factorial_valuation"] = fb.valuation;
  c["passed"] = pb.holds && fb.holds;
  return c;
}

WeylOperator random_polynomial(Gen& g, const DworkField& field, Window w) {
  WeylOperator op(field, Flavor::A1, w);
  const long terms = g.between(1, 4);
  for (long t = 0; t < terms; ++t) {
    const long num = g.between(-5, 5);
    const long den = g.between(1, 4);
    const int l = static_cast<int>(g.below(4));
    const int k = static_cast<int>(g.below(4));
    op.add_term(l, k, PadicScalar::from_rational(field, Rational(num, den)));
  }
  return op;
}

Json automorphism_case(Gen& g, const PadicConfig& config) {
  const unsigned long p = g.pick<unsigned long>({2, 3, 5});
  const DworkField& field = DworkField::get(p, p);
  const Window w{std::max(config.lmax, 12), std::max(config.kmax, 12)};
  const WeylOperator P = random_polynomial(g, field, w);
  const WeylOperator Q = random_polynomial(g, field, w);
  const PadicScalar pi = dwork_pi(field);
  const auto phi = SubstitutionRule::fourier(pi);
  const auto psi = SubstitutionRule::inverse_fourier(pi);
  const WeylOperator PQ = P * Q;
  const WeylOperator lhs = apply_substitution(PQ, phi);
  const WeylOperator rhs = apply_substitution(P, phi) * apply_substitution(Q, phi);
  const bool mult = lhs == rhs && !lhs.truncated() && !rhs.truncated() && !PQ.truncated();
  const bool inverse = apply_substitution(apply_substitution(P, phi), psi) == P;
  Json c{{"p", p}, {"P", digest(to_json(P))}, {"Q", digest(to_json(Q))}};
  c["multiplicative"] = mult;
  c["inverse"] = inverse;
  c["passed"] = mult && inverse;
  if (!(mult && inverse)) {
    c["P_operator"] = to_json(P);
    c["Q_operator"] = to_json(Q);
  }
  return c;
}

Json solver_case(Gen& g, const PadicConfig& base) {
  const unsigned long p = g.pick<unsigned long>({2, 3, 5});
  PadicConfig config = base;
  config.p = p;
  config.q = p;
  const DworkField& field = DworkField::get(p, p);
  HypParams params;
  const long m = g.below(3);
  const long n = g.below(3);
  for (long i = 0; i < m; ++i) params.alpha.push_back(PadicParameter::rational(g.fraction(p, 9, 9), p));
  for (long j = 0; j < n; ++j) params.beta.push_back(PadicParameter::rational(g.fraction(p, 9, 9), p));

  Json c{{"p", p}, {"params", to_json(params)}};
  std::vector<PadicScalar> coeffs;
  std::optional<GrowthCertificate> cert;
  const bool exact_tail = g.below(2) == 0;
  if (exact_tail) {
    const long len = g.between(1, 6);
    for (long l = 0; l < len; ++l) {
      const long num = g.between(-9, 9);
      const long den = g.between(1, 5);
      coeffs.push_back(PadicScalar::from_rational(field, Rational(num, den)));
    }
    c["kind"] = "polynomial";
  } else {
    const double lambda = 0.5 + 0.1 * static_cast<double>(g.below(6));
    const long T = static_cast<long>(
        std::ceil((static_cast<double>(config.precision) / static_cast<double>(p - 1) + 25.0) / lambda));
    for (long l = 0; l <= T; ++l) {
      const long e = static_cast<long>(std::ceil(lambda * static_cast<double>(l)));
      const Integer unit = 1 + static_cast<long>(p) * g.below(5);
      coeffs.push_back(PadicScalar::from_rational(field, Rational(ipow(p, static_cast<unsigned long>(e)) * unit)));
    }
    cert = GrowthCertificate::from_logs(p, 0.5, -lambda, Flavor::A1, Window{0, static_cast<int>(T)});
    c["kind"] = "series";
    c["lambda"] = lambda;
    c["truncation"] = T;
  }
  const CoefficientSeries P = CoefficientSeries::make(field, std::move(coeffs), exact_tail, cert);
  c["input"] = digest(to_json(P));
  try {
    const SolveReport r = solve_x_surjectivity(P, params, config);
    const bool resid_ok = r.residual_valuation.infinite || r.residual_valuation.units >= config.precision;
    c["l0"] = r.l0;
    c["cutoff"] = r.cutoff;
    c["residual_units"] = r.residual_valuation.infinite ? Json("inf") : Json(r.residual_valuation.units);
    c["decay_holds"] = r.decay.holds;
    c["solution"] = digest(to_json(r.R));
    c["passed"] = resid_ok && r.decay.holds;
  } catch (const Error& e) {
    c["error"] = e.what();
    c["passed"] = false;
  }
  return c;
}

}  // namespace

const char* to_string(FuzzSuite s) {
  switch (s) {
    case FuzzSuite::ValuationBounds: return "valuation-bounds";
    case FuzzSuite::SolverResidual: return "solver-residual";
    case FuzzSuite::Automorphism: return "automorphism";
  }
  return "valuation-bounds";
}

std::optional<FuzzSuite> parse_suite(const std::string& name) {
  for (FuzzSuite s : {FuzzSuite::ValuationBounds, FuzzSuite::SolverResidual, FuzzSuite::Automorphism}) {
    if (name == to_string(s)) return s;
  }
  return std::nullopt;
}

Json to_json(const FuzzSummary& s) {
  return Json{{"suite", to_string(s.suite)},     {"seed", s.seed},     {"count", s.count},
              {"passed", s.passed},              {"failed", s.failed}, {"counterexamples", s.counterexamples},
              {"cases", s.cases}};
}

FuzzSummary run_fuzz(FuzzSuite suite, std::uint64_t seed, long count, const PadicConfig& config) {
  if (count < 0) fail(ErrorKind::PreconditionViolated, "count must be nonnegative");
  FuzzSummary out;
  out.suite = suite;
  out.seed = seed;
  out.count = count;
  Gen g(seed);
  for (long i = 0; i < count; ++i) {
    Json c;
    switch (suite) {
      case FuzzSuite::ValuationBounds: c = valuation_case(g); break;
      case FuzzSuite::SolverResidual: c = solver_case(g, config); break;
      case FuzzSuite::Automorphism: c = automorphism_case(g, config); break;
    }
    c["index"] = i;
    if (c["passed"].get<bool>()) {
      ++out.passed;
    } else {
      ++out.failed;
      out.counterexamples.push_back(c);
    }
    out.cases.push_back(std::move(c));
  }
  return out;
}

}  // namespace padhyp::cli
