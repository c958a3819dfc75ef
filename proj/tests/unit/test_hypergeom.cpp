#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padhyp/chain.hpp"
#include "padhyp/error.hpp"
#include "padhyp/json_io.hpp"
#include "padhyp/substitution.hpp"
#include "support/oracle.hpp"

using namespace padhyp;
using oracle::params;

namespace {

PadicScalar rat(const DworkField& f, const Rational& r) { return PadicScalar::from_rational(f, r); }

// Hyp(x^e) = prod(e - alpha) x^e - s piv^{m-n} prod(e - beta) x^{e+1}, straight from the definition.
oracle::Laurent hyp_on_monomial(const HypParams& h, const DworkField& f, const Rational& e) {
  PadicScalar a = PadicScalar::one(f), b = PadicScalar::one(f);
  for (const auto& x : h.alpha) a = a * rat(f, e - x.exact_value());
  for (const auto& x : h.beta) b = b * rat(f, e - x.exact_value());
  const long m = static_cast<long>(h.m()), n = static_cast<long>(h.n());
  const bool s_neg = ((m + n * static_cast<long>(f.p())) % 2) != 0;
  const PadicScalar piv = pi_value(f, h.pi_variant);
  PadicScalar c = piv.pow(m - n) * b;
  if (!s_neg) c = -c;
  oracle::Laurent out;
  oracle::accumulate(out, e, a);
  oracle::accumulate(out, e + 1, c);
  return out;
}

oracle::Laurent scaled_shift(const oracle::Laurent& f, const PadicScalar& c, int d) {
  oracle::Laurent out;
  for (const auto& [e, v] : f) oracle::accumulate(out, e + d, c * v);
  return out;
}

// rhs acts as unit * x^d * lhs on every probe.
bool relation_holds(const IdentityReport& r, const DworkField& f) {
  for (const Rational& e : oracle::probes(true)) {
    const auto m = oracle::monomial(f, e);
    if (oracle::act(r.rhs, m) != scaled_shift(oracle::act(r.lhs, m), r.unit_used, r.x_power)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("hyp_operator examples") {
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    const PadicConfig cfg = oracle::config(p, 8, 8);
    const DworkField& f = DworkField::get(p, p);
    const Window w{8, 8};
    const WeylOperator one = WeylOperator::constant(f, Flavor::A1, w, PadicScalar::one(f));
    const WeylOperator x = WeylOperator::x(f, Flavor::A1, w);
    const WeylOperator theta = x * WeylOperator::d(f, Flavor::A1, w);
    const PadicScalar pi = dwork_pi(f);

    CHECK(hyp_operator(params({}, {}, p), cfg, Flavor::A1) == one - x);

    const Rational a(1, 7);
    CHECK(hyp_operator(params({"1/7"}, {}, p), cfg, Flavor::A1) == theta - one.scaled(rat(f, a)) + x.scaled(pi));

    const Rational b(3, 7);
    const WeylOperator band0 = theta - one.scaled(rat(f, a));
    const WeylOperator band1 = x * (theta - one.scaled(rat(f, b)));
    const PadicScalar sign = rat(f, (1 + p) % 2 ? -1 : 1);
    CHECK(hyp_operator(params({"1/7"}, {"3/7"}, p), cfg, Flavor::A1) == band0 - band1.scaled(sign));
  }
}

TEST_CASE("hyp_operator matches the definition on monomials") {
  for (unsigned long p : {2UL, 3UL, 5UL, 7UL}) {
    const PadicConfig cfg = oracle::config(p, 12, 12);
    const DworkField& f = DworkField::get(p, p);
    for (PiVariant v : {PiVariant::Pi, PiVariant::SignedPi}) {
      for (const HypParams& h : {params({"1/11"}, {}, p, v), params({}, {"2/11"}, p, v),
                                 params({"1/11", "4/11"}, {"-5/11"}, p, v), params({"0"}, {"1/11", "2/11"}, p, v)}) {
        const WeylOperator op = hyp_operator(h, cfg);
        CHECK(oracle::same_action(op, hyp_theta(h, cfg), f, true));
        for (const Rational& e : oracle::probes(true)) {
          CHECK(oracle::act(op, oracle::monomial(f, e)) == hyp_on_monomial(h, f, e));
        }
      }
    }
  }
}

TEST_CASE("inversion identity: delta base") {
  const PadicConfig cfg = oracle::config(3);
  const DworkField& f = DworkField::get(3, 3);
  const IdentityReport r = inversion_identity_check(params({}, {}, 3), cfg);
  CHECK(r.status == IdentityStatus::Verified);
  CHECK(r.x_power == 1);
  CHECK(r.unit_used == rat(f, -1));
  CHECK(relation_holds(r, f));
}

TEST_CASE("inversion identity: rank one with alpha = 0") {
  for (unsigned long p : {3UL, 5UL}) {
    const PadicConfig cfg = oracle::config(p);
    const DworkField& f = DworkField::get(p, p);
    const IdentityReport r = inversion_identity_check(params({"0"}, {}, p), cfg);
    CHECK(r.status == IdentityStatus::Verified);
    CHECK(r.x_power == 1);
    CHECK(r.unit_used == dwork_pi(f).inverse());
    CHECK(relation_holds(r, f));
  }
}

TEST_CASE("inversion identity: unit formula over a grid") {
  const std::vector<const char*> vals{"0", "1/2", "-1/2", "1/3", "-1/3", "1/5"};
  for (unsigned long p : {3UL, 5UL, 7UL}) {
    const PadicConfig cfg = oracle::config(p);
    const DworkField& f = DworkField::get(p, p);
    for (PiVariant v : {PiVariant::Pi, PiVariant::SignedPi}) {
      for (const char* a : vals) {
        for (const char* b : vals) {
          if (p == 3 && (std::string(a).find('3') != std::string::npos || std::string(b).find('3') != std::string::npos)) continue;
          if (p == 5 && (std::string(a).find('5') != std::string::npos || std::string(b).find('5') != std::string::npos)) continue;
          const HypParams h = params({a}, {b}, p, v);
          const IdentityReport r = inversion_identity_check(h, cfg);
          CHECK(r.status == IdentityStatus::Verified);
          // -s (-1)^n piv^{n-m} with m = n = 1: -(-1)^{1+p} * (-1).
          const PadicScalar expect = rat(f, (1 + p) % 2 ? -1 : 1);
          CHECK(r.unit_used == expect);
          CHECK(r.x_power == 1);
          CHECK(relation_holds(r, f));
        }
      }
    }
  }
}

TEST_CASE("inversion applied twice restores the operator") {
  const PadicConfig cfg = oracle::config(5);
  const HypParams h = params({"1/2", "1/3"}, {"-1/4"}, 5);
  const ThetaForm t = hyp_theta(h, cfg);
  const auto inv = SubstitutionRule::inversion();
  CHECK(apply_substitution(apply_substitution(t, inv), inv) == t);
}

TEST_CASE("kummer identity") {
  const PadicConfig cfg = oracle::config(5);
  const DworkField& f = DworkField::get(5, 5);
  const HypParams h = params({"1/3"}, {"1/2"}, 5);
  const IdentityReport zero = kummer_identity_check(h, PadicParameter::integer(0, 5), cfg);
  CHECK(zero.status == IdentityStatus::Verified);
  CHECK(zero.unit_used == PadicScalar::one(f));
  CHECK(zero.x_power == 0);

  for (const char* g : {"1/4", "-2/3", "1", "7/2"}) {
    const IdentityReport r = kummer_identity_check(params({"1/3"}, {}, 5), oracle::q(g, 5), cfg);
    CHECK(r.status == IdentityStatus::Verified);
    CHECK(r.unit_used == PadicScalar::one(f));
    CHECK(relation_holds(r, f));
    // lhs is theta - 1/3 - gamma + pi x
    const Rational shift = Rational(1, 3) + parse_rational(g);
    CHECK(r.lhs == hyp_operator(HypParams{{PadicParameter::rational(shift, 5)}, {}, PiVariant::Pi}, cfg));
  }
  CHECK(kummer_identity_check(h, PadicParameter::integer(1, 5), cfg).status == IdentityStatus::Verified);
}

TEST_CASE("fourier identity: rank one") {
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    const PadicConfig cfg = oracle::config(p);
    const DworkField& f = DworkField::get(p, p);
    const IdentityReport r = fourier_identity_check(params({"0"}, {}, p), cfg);
    CHECK(r.status == IdentityStatus::Verified);
    CHECK(r.unit_used == dwork_pi(f));
    CHECK(r.x_power == 1);
    // lhs is the Fourier image of 1 - x, that is 1 + d/pi.
    const Window w = window_of(cfg);
    const WeylOperator one_minus_x = WeylOperator::constant(f, Flavor::A1, w, PadicScalar::one(f)) -
                                     WeylOperator::x(f, Flavor::A1, w);
    CHECK(r.lhs == oracle::fourier_by_generators(one_minus_x, dwork_pi(f)).with_flavor(Flavor::B1));
    CHECK(relation_holds(r, f));
  }
}

TEST_CASE("fourier identity: higher rank against the generator oracle") {
  for (unsigned long p : {3UL, 5UL, 7UL}) {
    const PadicConfig cfg = oracle::config(p);
    const DworkField& f = DworkField::get(p, p);
    for (PiVariant v : {PiVariant::Pi, PiVariant::SignedPi}) {
      for (const HypParams& h : {params({"0", "1/4"}, {}, p, v), params({"0"}, {"1/2"}, p, v),
                                 params({"0", "-1/4"}, {"1/2"}, p, v), params({"0"}, {"1/4", "-1/2"}, p, v)}) {
        const IdentityReport r = fourier_identity_check(h, cfg);
        CHECK(r.status == IdentityStatus::Verified);
        CHECK(relation_holds(r, f));
        // H' = Hyp_{flipped}(-beta - 1; -alpha' - 1), transformed through generator images.
        HypParams src;
        for (const auto& b : h.beta) src.alpha.push_back((-b).plus(-1));
        for (std::size_t i = 1; i < h.m(); ++i) src.beta.push_back((-h.alpha[i]).plus(-1));
        src.pi_variant = flipped(v);
        const WeylOperator image =
            oracle::fourier_by_generators(hyp_operator(src, cfg, Flavor::A1), pi_value(f, v)).with_flavor(Flavor::B1);
        CHECK(r.lhs == image);
        CHECK(r.rhs == hyp_operator(h, cfg));
      }
    }
  }
}

TEST_CASE("fourier identity preconditions") {
  const PadicConfig cfg = oracle::config(3);
  CHECK_THROWS_AS(fourier_identity_check(params({}, {"1/2"}, 3), cfg), Error);
  CHECK_THROWS_AS(fourier_identity_check(params({"1/2"}, {}, 3), cfg), Error);
  CHECK_THROWS_AS(fourier_identity_check(params({"0"}, {"2"}, 3), cfg), Error);
  // Without preconditions a nonzero alpha_1 simply fails.
  CHECK(fourier_identity_raw(params({"1/2"}, {}, 3), cfg).status == IdentityStatus::Failed);
}

TEST_CASE("identity comparison reports discrepancies") {
  const PadicConfig cfg = oracle::config(3);
  const IdentityReport r =
      compare_up_to_unit("mismatch", hyp_theta(params({"1/2"}, {}, 3), cfg), hyp_theta(params({"1/4"}, {}, 3), cfg), cfg);
  CHECK(r.status == IdentityStatus::Failed);
  CHECK_FALSE(r.discrepancy.infinite);
}

TEST_CASE("decompose examples") {
  const DecompositionChain c0 = decompose(params({}, {}, 5));
  CHECK(c0.steps.size() == 1);
  CHECK(c0.length() == 0);
  CHECK(c0.steps[0].kind == StepKind::DeltaBase);

  const DecompositionChain c1 = decompose(params({"1/2"}, {}, 5));
  CHECK(c1.length() == 1);
  CHECK(c1.steps[1].kind == StepKind::AlphaPeel);
  CHECK(*c1.steps[1].gamma == oracle::q("1/2", 5));
  CHECK(replay(c1) == params({"1/2"}, {}, 5));

  const HypParams h = params({"1/3", "2/3"}, {"0"}, 5);
  const DecompositionChain c3 = decompose(h);
  CHECK(c3.length() == 3);
  CHECK(replay(c3) == h);
  CHECK(c3.degree_shift == -3);

  CHECK_THROWS_AS(decompose(params({"1/2"}, {"3/2"}, 5)), Error);
  try {
    decompose(params({"1/2"}, {"3/2"}, 5));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::HypothesisViolation);
  }
}

TEST_CASE("chain verification") {
  const PadicConfig cfg = oracle::config(5);
  CHECK(chain_verify(decompose(params({}, {}, 5)), cfg).status == IdentityStatus::Verified);
  CHECK(chain_verify(decompose(params({"1/2"}, {}, 5)), cfg).status == IdentityStatus::Verified);
  CHECK(chain_verify(decompose(params({}, {"1/2"}, 5)), cfg).status == IdentityStatus::Verified);
  CHECK(chain_verify(decompose(params({"1/3"}, {"1/2"}, 5)), cfg).status == IdentityStatus::Verified);
  CHECK(chain_verify(decompose(params({"1/3", "2/3"}, {"1/4"}, 5)), cfg).status == IdentityStatus::Verified);

  DecompositionChain bad = decompose(params({"1/3", "2/3"}, {"1/4"}, 5));
  bad.steps[2].gamma = oracle::q("1/7", 5);
  const IdentityReport r = chain_verify(bad, cfg);
  CHECK(r.status == IdentityStatus::Failed);
  REQUIRE(r.failed_step);
  CHECK(*r.failed_step == 2);
}

TEST_CASE("params and chain json round trip") {
  const HypParams h = params({"1/3", "-2/3"}, {"1/4"}, 5, PiVariant::SignedPi);
  CHECK(params_from_json(to_json(h), 5) == h);
  const DecompositionChain c = decompose(h);
  const DecompositionChain back = chain_from_json(to_json(c), 5);
  CHECK(to_json(back).dump() == to_json(c).dump());
  CHECK(replay(back) == h);
  const Json j = to_json(c);
  CHECK(j.contains("target"));
  CHECK(j["degree_shift"] == -3);
  CHECK(j["steps"].size() == 4);
}
