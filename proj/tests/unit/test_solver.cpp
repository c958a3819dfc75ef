#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "padhyp/error.hpp"
#include "padhyp/json_io.hpp"
#include "padhyp/solver.hpp"
#include "support/oracle.hpp"

using namespace padhyp;
using oracle::params;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidConfig;
}

PadicScalar rat(const DworkField& f, const Rational& r) { return PadicScalar::from_rational(f, r); }

// s piv^{m-n} with s = (-1)^{m+np}.
PadicScalar spi(const HypParams& h, const DworkField& f) {
  const long m = static_cast<long>(h.m()), n = static_cast<long>(h.n());
  PadicScalar out = pi_value(f, h.pi_variant).pow(m - n);
  if ((m + n * static_cast<long>(f.p())) % 2 != 0) out = -out;
  return out;
}

PadicScalar prod_shift(const std::vector<PadicParameter>& ps, long u, const DworkField& f) {
  PadicScalar out = PadicScalar::one(f);
  for (const auto& a : ps) out = out * rat(f, Rational(u) - a.exact_value());
  return out;
}

// [x^0] (P + R Hyp)(x^j) through composed actions: Hyp acts as its theta-form.
PadicScalar residual_at(const CoefficientSeries& P, const CoefficientSeries& R, const HypParams& h,
                        const PadicConfig& cfg, long j) {
  const DworkField& f = *P.field;
  const Window w{4, static_cast<int>(std::max(P.truncation_order, R.truncation_order) + 4)};
  const oracle::Laurent xj = oracle::monomial(f, Rational(j));
  oracle::Laurent total = oracle::act(P.as_operator(w), xj);
  for (const auto& [e, c] : oracle::act(R.as_operator(w), oracle::act(hyp_theta(h, cfg), xj))) {
    oracle::accumulate(total, e, c);
  }
  auto it = total.find(Rational(0));
  return it == total.end() ? PadicScalar::zero(f) : it->second;
}

CoefficientSeries random_poly(std::mt19937_64& rng, const DworkField& f, int len) {
  std::vector<PadicScalar> c;
  for (int i = 0; i < len; ++i) {
    const long a = static_cast<long>(rng() % 19) - 9;
    c.push_back(PadicScalar::from_integer(f, a));
  }
  return CoefficientSeries::make(f, c);
}

std::vector<HypParams> param_sets(unsigned long p) {
  return {params({"1/2"}, {}, p),          params({"1/2"}, {"0"}, p),
          params({"1/3", "2/5"}, {"1/4"}, p), params({}, {"1/2"}, p),
          params({"1/4"}, {"2", "1/3"}, p),  params({"-1/3", "1/2"}, {}, p, PiVariant::SignedPi),
          params({}, {}, p)};
}

}  // namespace

TEST_CASE("compute_l0 examples") {
  CHECK(compute_l0(params({}, {"1/2"}, 5)) == 0);
  CHECK(compute_l0(params({}, {"3", "1/2"}, 5)) == 4);
  CHECK(compute_l0(params({}, {}, 5)) == 0);
  CHECK(compute_l0(params({}, {"-4", "1"}, 5)) == 2);
  CHECK(compute_l0(params({}, {"-4"}, 5)) == 0);
}

TEST_CASE("head_solve examples") {
  const PadicConfig cfg = oracle::config(3);
  const DworkField& f = DworkField::get(3, 3);
  const HypParams h = params({"1/2"}, {"0"}, 3);
  const WeylOperator r = head_solve({PadicScalar::one(f)}, rat(f, 5), h, cfg);
  REQUIRE(r.coeff(0, 0));
  // prod(0 - beta) = 0 kills d_1, so d_0 = -c_0 / (0 - 1/2).
  CHECK(*r.coeff(0, 0) == rat(f, 2));
  CHECK(head_solve({}, rat(f, 5), params({"1/2"}, {}, 3), cfg).terms().empty());
  CHECK(kind_of([&] { head_solve({PadicScalar::one(f)}, rat(f, 1), params({"2"}, {"0"}, 3), cfg); }) ==
        ErrorKind::IntegerAlpha);
}

TEST_CASE("head_solve residual vanishes on random heads") {
  std::mt19937_64 rng(21);
  const PadicConfig cfg = oracle::config(7);
  const DworkField& f = DworkField::get(7, 7);
  const HypParams h = params({"1/3", "-2/5"}, {"3", "1/2"}, 7);
  for (int it = 0; it < 20; ++it) {
    const CoefficientSeries head = random_poly(rng, f, 4);
    const PadicScalar d4 = PadicScalar::from_integer(f, static_cast<long>(rng() % 7));
    const WeylOperator r = head_solve(head.coeffs, d4, h, cfg);
    std::vector<PadicScalar> d;
    for (int l = 0; l < 4; ++l) d.push_back(r.coeff(0, l).value_or(PadicScalar::zero(f)));
    d.push_back(d4);
    for (long l = 0; l < 4; ++l) {
      const PadicScalar res = head.coeffs[l] + d[l] * prod_shift(h.alpha, l, f) -
                              spi(h, f) * prod_shift(h.beta, l, f) * d[l + 1];
      CHECK(res.is_exact_zero());
    }
  }
}

TEST_CASE("tail_coefficient examples") {
  const PadicConfig cfg = oracle::config(3);
  const DworkField& f = DworkField::get(3, 3);
  const HypParams h = params({"1/2"}, {}, 3);
  std::vector<PadicScalar> c(4, PadicScalar::zero(f));
  c[3] = rat(f, 7);
  const CoefficientSeries single = CoefficientSeries::make(f, c);
  const TailCoefficient t = tail_coefficient(3, single, h, 3, cfg);
  CHECK(t.value == rat(f, Rational(-7) / (Rational(3) - Rational(1, 2))));
  CHECK_FALSE(t.tail_bound_units);

  const CoefficientSeries zero = CoefficientSeries::make(f, {PadicScalar::zero(f)});
  CHECK(tail_coefficient(0, zero, h, 0, cfg).value.is_exact_zero());
}

TEST_CASE("tail_coefficient stabilizes on a geometric series") {
  const PadicConfig cfg = oracle::config(3);
  const DworkField& f = DworkField::get(3, 3);
  const HypParams h = params({"1/2"}, {}, 3);
  const long stored = 40;
  std::vector<PadicScalar> c;
  for (long l = 0; l < stored; ++l) c.push_back(rat(f, Rational(ipow(3, static_cast<unsigned long>(l)))));
  const auto cert = GrowthCertificate::from_logs(3, 0.5, -1.0, Flavor::A1, Window{0, static_cast<int>(stored)});
  const CoefficientSeries series = CoefficientSeries::make(f, c, false, cert);

  // d_0 = -sum_t spi^t c_t / prod_{u<=t} A(u), summed exactly.
  std::vector<PadicScalar> partial;
  PadicScalar acc = PadicScalar::zero(f), weight = PadicScalar::one(f);
  for (long t = 0; t <= 80; ++t) {
    weight = weight / prod_shift(h.alpha, t, f);
    acc = acc - weight * rat(f, Rational(ipow(3, static_cast<unsigned long>(t))));
    partial.push_back(acc);
    weight = weight * spi(h, f);
  }
  long stabilized = -1;
  for (long T = 0; T <= 60 && stabilized < 0; ++T) {
    bool stable = true;
    for (long U = T + 1; U <= 80; ++U) {
      const Valuation v = (partial[U] - partial[T]).valuation();
      if (!v.infinite && v.units < cfg.precision) stable = false;
    }
    if (stable) stabilized = T;
  }
  REQUIRE(stabilized >= 0);
  MESSAGE("partial sums stable to precision from T = " << stabilized);

  CHECK(kind_of([&] { tail_coefficient(0, series, h, 0, cfg); }) == ErrorKind::TailBoundTooWeak);
  // The certified bound lags the true stabilization by a few terms only.
  long certified = -1;
  for (long T = 0; T < stored && certified < 0; ++T) {
    try {
      tail_coefficient(0, series, h, T, cfg);
      certified = T;
    } catch (const Error& e) {
      REQUIRE(e.kind() == ErrorKind::TailBoundTooWeak);
    }
  }
  REQUIRE(certified >= 0);
  CHECK(certified <= stabilized + 10);
  for (long T : {certified, certified + 4, stored - 1}) {
    const TailCoefficient t = tail_coefficient(0, series, h, T, cfg);
    REQUIRE(t.tail_bound_units);
    CHECK(*t.tail_bound_units >= cfg.precision);
    // The omitted tail really is smaller than the reported bound.
    const Valuation gap = (t.value - partial[80]).with_precision(1000).valuation();
    CHECK((gap.infinite || gap.units >= *t.tail_bound_units));
  }
}

TEST_CASE("solve trivial inputs") {
  const PadicConfig cfg = oracle::config(3);
  const DworkField& f = DworkField::get(3, 3);
  const SolveReport z = solve_x_surjectivity(CoefficientSeries::make(f, {PadicScalar::zero(f)}), params({"1/2"}, {}, 3), cfg);
  CHECK(z.R.is_zero());
  CHECK(z.residual_valuation.infinite);

  const SolveReport one = solve_x_surjectivity(CoefficientSeries::make(f, {PadicScalar::one(f)}), params({"1/2"}, {}, 3), cfg);
  REQUIRE(one.R.coeffs.size() == 1);
  CHECK(one.R.coeffs[0] == rat(f, 2));
  CHECK(one.residual_valuation.infinite);
  CHECK(one.decay.holds);
}

TEST_CASE("solve residual against the action oracle") {
  std::mt19937_64 rng(8);
  for (unsigned long p : {7UL, 11UL}) {
    const PadicConfig cfg = oracle::config(p);
    const DworkField& f = DworkField::get(p, p);
    for (const HypParams& h : param_sets(p)) {
      for (int it = 0; it < 4; ++it) {
        const CoefficientSeries P = random_poly(rng, f, 1 + static_cast<int>(rng() % 6));
        const SolveReport r = solve_x_surjectivity(P, h, cfg);
        CHECK(r.l0 == compute_l0(h));
        for (long j = 0; j <= r.residual_checked_through; ++j) {
          CHECK(residual_at(P, r.R, h, cfg, j).is_exact_zero());
        }
        // Same thing through the recurrence written out.
        for (long j = 0; j + 1 < static_cast<long>(r.R.coeffs.size()); ++j) {
          const PadicScalar res = P.at(j) + r.R.at(j) * prod_shift(h.alpha, j, f) -
                                  spi(h, f) * prod_shift(h.beta, j, f) * r.R.at(j + 1);
          CHECK(res.is_exact_zero());
        }
      }
    }
  }
}

TEST_CASE("solve with an infinite series input") {
  const PadicConfig cfg = oracle::config(5);
  const DworkField& f = DworkField::get(5, 5);
  for (const HypParams& h : {params({"1/2"}, {}, 5), params({"1/3"}, {"1/4"}, 5), params({}, {"1/2"}, 5)}) {
    std::vector<PadicScalar> c;
    for (long l = 0; l < 60; ++l) c.push_back(rat(f, Rational(ipow(5, static_cast<unsigned long>((l + 1) / 2)))));
    const auto cert = GrowthCertificate::from_logs(5, 0.5, -0.5, Flavor::A1, Window{0, 60});
    const CoefficientSeries P = CoefficientSeries::make(f, c, false, cert);
    const SolveReport r = solve_x_surjectivity(P, h, cfg);
    CHECK(r.decay.holds);
    CHECK((r.residual_valuation.infinite || r.residual_valuation.units >= cfg.precision));
    for (long j = 0; j <= r.residual_checked_through; ++j) {
      const PadicScalar x = residual_at(P, r.R, h, cfg, j);
      CHECK(x.zero_status() != ZeroStatus::NonZero);
      CHECK((x.is_exact_zero() || x.valuation().units >= cfg.precision));
    }
  }
}

TEST_CASE("solve is linear") {
  std::mt19937_64 rng(4);
  const PadicConfig cfg = oracle::config(7);
  const DworkField& f = DworkField::get(7, 7);
  const HypParams h = params({"1/3", "2/5"}, {"1/4"}, 7);
  for (int it = 0; it < 10; ++it) {
    const CoefficientSeries a = random_poly(rng, f, 5), b = random_poly(rng, f, 5);
    std::vector<PadicScalar> mix;
    for (int l = 0; l < 5; ++l) mix.push_back(a.coeffs[l].scaled(2) + b.coeffs[l].scaled(-3));
    const SolveReport ra = solve_x_surjectivity(a, h, cfg), rb = solve_x_surjectivity(b, h, cfg);
    const SolveReport rm = solve_x_surjectivity(CoefficientSeries::make(f, mix), h, cfg);
    for (long l = 0; l < 5; ++l) CHECK(rm.R.at(l) == ra.R.at(l).scaled(2) + rb.R.at(l).scaled(-3));
  }
}

TEST_CASE("solve preconditions") {
  const PadicConfig cfg = oracle::config(3);
  const DworkField& f = DworkField::get(3, 3);
  const CoefficientSeries one = CoefficientSeries::make(f, {PadicScalar::one(f)});
  CHECK(kind_of([&] { solve_x_surjectivity(one, params({"1"}, {}, 3), cfg); }) == ErrorKind::IntegerAlpha);
  HypParams stream;
  stream.alpha.push_back(liouville_exemplar(3, 1, 64));
  CHECK(kind_of([&] { solve_x_surjectivity(one, stream, cfg); }) == ErrorKind::PreconditionViolated);
  const CoefficientSeries open = CoefficientSeries::make(f, {PadicScalar::one(f)}, false);
  CHECK(kind_of([&] { solve_x_surjectivity(open, params({"1/2"}, {}, 3), cfg); }) == ErrorKind::PreconditionViolated);
}

TEST_CASE("injectivity witness") {
  const DworkField& f = DworkField::get(3, 3);
  const InjectivityReport z = injectivity_witness(params({"1/2"}, {}, 3), 0, PadicScalar::zero(f), 0.5, 300);
  CHECK(z.zero);
  CHECK_FALSE(z.diverges);
  CHECK(z.log_sequence.size() == 301);
  for (double x : z.log_sequence) CHECK(std::isinf(x));

  const InjectivityReport d = injectivity_witness(params({"1/2"}, {}, 3), 0, PadicScalar::one(f), 0.5, 300);
  CHECK(d.diverges);
  // Exact forward recurrence as the oracle for the first terms.
  PadicScalar c = PadicScalar::one(f);
  const HypParams h = params({"1/2"}, {}, 3);
  for (long k = 0; k < 30; ++k) {
    const double want = -std::log(0.5) / std::log(3.0) * double(k) + c.log_norm();
    CHECK(d.log_sequence[k] == doctest::Approx(want));
    c = c * prod_shift(h.alpha, k, f) / spi(h, f);
  }

  const InjectivityReport mn = injectivity_witness(params({}, {"1/2"}, 3), 0, PadicScalar::one(f), 0.5, 300);
  CHECK(mn.diverges);
  CHECK(kind_of([&] { injectivity_witness(params({"1/2"}, {"4"}, 3), 2, PadicScalar::one(f), 0.5, 10); }) ==
        ErrorKind::PreconditionViolated);
}

TEST_CASE("series json round trip") {
  const DworkField& f = DworkField::get(5, 5);
  const auto cert = GrowthCertificate::from_logs(5, 0.5, -0.5, Flavor::A1, Window{0, 3});
  const CoefficientSeries s =
      CoefficientSeries::make(f, {rat(f, 1), rat(f, Rational(2, 3)), PadicScalar::zero(f), rat(f, 25)}, false, cert);
  const Json j = to_json(s);
  const CoefficientSeries back = series_from_json(j, f);
  CHECK(to_json(back).dump() == j.dump());
  CHECK(back.coeffs == s.coeffs);
  CHECK(back.exact_tail == false);
  REQUIRE(back.growth);
  CHECK(back.growth->log_eta == doctest::Approx(-0.5));
  const CoefficientSeries strs = series_from_json(Json::parse(R"({"coeffs": ["1", "-2/3"]})"), f);
  CHECK(strs.coeffs[1] == rat(f, Rational(-2, 3)));
  CHECK(strs.exact_tail);
}
