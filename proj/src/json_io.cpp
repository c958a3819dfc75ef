#include "padhyp/json_io.hpp"

#include <cmath>

#include "padhyp/error.hpp"

namespace padhyp {

namespace {

template <typename F>
auto parsing(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    fail(ErrorKind::ParseError, std::string(what) + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    fail(ErrorKind::ParseError, std::string(what) + ": " + e.what());
  }
}

Json real(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return nullptr;
  return x > 0 ? "inf" : "-inf";
}

Json shift_json(const ShiftValuation& s) {
  if (s.infinite) return "inf";
  if (!s.exact) return Json{{"at_least", s.value}};
  return s.value;
}

Json opt_units(const std::optional<long>& u) { return u ? Json(*u) : Json(nullptr); }

}  // namespace

Json to_json(const PadicConfig& c) {
  return Json{{"p", c.p}, {"q", c.q}, {"precision", c.precision}, {"lmax", c.lmax}, {"kmax", c.kmax}};
}

PadicConfig config_from_json(const Json& j) {
  return parsing("config", [&] {
    PadicConfig c;
    c.p = j.at("p").get<unsigned long>();
    c.q = j.at("q").get<unsigned long>();
    c.precision = j.at("precision").get<long>();
    c.lmax = j.at("lmax").get<int>();
    c.kmax = j.at("kmax").get<int>();
    c.validate();
    return c;
  });
}

Json to_json(const PadicScalar& s) {
  Json coeffs = Json::array();
  const unsigned long p = s.field().p();
  for (const auto& c : s.coeffs()) {
    if (c == 0) {
      coeffs.push_back(Json::array({"0", nullptr}));
    } else {
      coeffs.push_back(Json::array({to_string(unit_part(c, p)), vp(c, p)}));
    }
  }
  Json out{{"pi_coeffs", coeffs}};
  out["precision"] = s.precision() ? Json(*s.precision()) : Json(nullptr);
  return out;
}

PadicScalar scalar_from_json(const Json& j, const DworkField& field) {
  return parsing("scalar", [&] {
    std::vector<Rational> coeffs;
    for (const auto& e : j.at("pi_coeffs")) {
      Rational mant = parse_rational(e.at(0).get<std::string>());
      if (e.at(1).is_null()) {
        if (mant != 0) fail(ErrorKind::ParseError, "nonzero mantissa without valuation");
        coeffs.emplace_back(0);
        continue;
      }
      const long v = e.at(1).get<long>();
      Rational scale = Rational(ipow(field.p(), static_cast<unsigned long>(std::labs(v))));
      coeffs.push_back(v >= 0 ? Rational(mant * scale) : Rational(mant / scale));
    }
    std::optional<long> prec;
    if (j.contains("precision") && !j.at("precision").is_null()) prec = j.at("precision").get<long>();
    return PadicScalar::from_coeffs(field, std::move(coeffs), prec);
  });
}

Json to_json(const PadicParameter& a) {
  if (a.is_exact()) return to_string(a.exact_value());
  const long h = *a.horizon();
  Json digits = Json::array();
  for (long i = 0; i < h; ++i) digits.push_back(a.digit(i));
  return Json{{"digits", digits}, {"horizon", h}};
}

PadicParameter parameter_from_json(const Json& j, unsigned long p) {
  return parsing("parameter", [&] {
    if (j.is_string()) return PadicParameter::rational(parse_rational(j.get<std::string>()), p);
    if (j.is_number_integer()) return PadicParameter::integer(j.get<long>(), p);
    const auto digits = j.at("digits").get<std::vector<unsigned long>>();
    const long h = j.value("horizon", static_cast<long>(digits.size()));
    if (static_cast<long>(digits.size()) < h) fail(ErrorKind::ParseError, "fewer digits than the horizon");
    return PadicParameter::digit_stream([&](long n) { return digits[static_cast<std::size_t>(n)]; }, h, p);
  });
}

Json to_json(const WeylOperator& op) {
  Json terms = Json::array();
  for (const auto& [key, c] : op.terms()) terms.push_back(Json{{"l", key.first}, {"k", key.second}, {"coeff", to_json(c)}});
  return Json{{"flavor", to_string(op.flavor())}, {"truncated", op.truncated()}, {"terms", terms}};
}

WeylOperator operator_from_json(const Json& j, const DworkField& field, Window window) {
  return parsing("operator", [&] {
    const std::string fl = j.at("flavor").get<std::string>();
    if (fl != "A1" && fl != "B1") fail(ErrorKind::ParseError, "flavor must be A1 or B1");
    WeylOperator op(field, fl == "A1" ? Flavor::A1 : Flavor::B1, window);
    for (const auto& t : j.at("terms")) {
      op.add_term(t.at("l").get<int>(), t.at("k").get<int>(), scalar_from_json(t.at("coeff"), field));
    }
    if (j.value("truncated", false)) op.mark_truncated();
    return op;
  });
}

Json to_json(const ThetaForm& t) {
  Json bands = Json::array();
  for (const auto& [b, f] : t.bands()) {
    Json poly = Json::array();
    for (const auto& c : f.coeffs()) poly.push_back(to_json(c));
    bands.push_back(Json{{"l", b}, {"poly", poly}});
  }
  return Json{{"bands", bands}};
}

ThetaForm theta_from_json(const Json& j, const DworkField& field) {
  return parsing("theta-form", [&] {
    ThetaForm t(field);
    for (const auto& b : j.at("bands")) {
      std::vector<PadicScalar> coeffs;
      for (const auto& c : b.at("poly")) coeffs.push_back(scalar_from_json(c, field));
      t.add_band(b.at("l").get<int>(), ThetaPoly(field, std::move(coeffs)));
    }
    return t;
  });
}

Json to_json(const HypParams& h) {
  Json a = Json::array(), b = Json::array();
  for (const auto& x : h.alpha) a.push_back(to_json(x));
  for (const auto& x : h.beta) b.push_back(to_json(x));
  return Json{{"alpha", a}, {"beta", b}, {"pi_variant", to_string(h.pi_variant)}};
}

HypParams params_from_json(const Json& j, unsigned long p) {
  return parsing("params", [&] {
    HypParams h;
    for (const auto& x : j.at("alpha")) h.alpha.push_back(parameter_from_json(x, p));
    for (const auto& x : j.at("beta")) h.beta.push_back(parameter_from_json(x, p));
    const std::string v = j.value("pi_variant", std::string("pi"));
    if (v != "pi" && v != "signed_pi") fail(ErrorKind::ParseError, "pi_variant must be pi or signed_pi");
    h.pi_variant = v == "pi" ? PiVariant::Pi : PiVariant::SignedPi;
    return h;
  });
}

Json to_json(const GrowthCertificate& g) {
  return Json{{"p", g.p},
              {"log_p_C", g.log_c},
              {"log_p_eta", g.log_eta},
              {"C", real(g.C())},
              {"eta", real(g.eta())},
              {"flavor", to_string(g.flavor)},
              {"verified_range", Json{{"lmax", g.verified_range.lmax}, {"kmax", g.verified_range.kmax}}}};
}

GrowthCertificate growth_from_json(const Json& j) {
  return parsing("growth certificate", [&] {
    const unsigned long p = j.at("p").get<unsigned long>();
    const Flavor fl = j.value("flavor", std::string("A1")) == "B1" ? Flavor::B1 : Flavor::A1;
    Window w;
    if (j.contains("verified_range")) {
      w.lmax = j.at("verified_range").at("lmax").get<int>();
      w.kmax = j.at("verified_range").at("kmax").get<int>();
    }
    if (j.contains("log_p_C")) {
      return GrowthCertificate::from_logs(p, j.at("log_p_C").get<double>(), j.at("log_p_eta").get<double>(), fl, w);
    }
    return GrowthCertificate::from_values(p, j.at("C").get<double>(), j.at("eta").get<double>(), fl, w);
  });
}

Json to_json(const CoefficientSeries& s) {
  Json coeffs = Json::array();
  for (const auto& c : s.coeffs) coeffs.push_back(to_json(c));
  Json out{{"coeffs", coeffs}, {"truncation_order", s.truncation_order}, {"exact_tail", s.exact_tail}};
  out["growth"] = s.growth ? to_json(*s.growth) : Json(nullptr);
  return out;
}

CoefficientSeries series_from_json(const Json& j, const DworkField& field) {
  return parsing("series", [&] {
    std::vector<PadicScalar> coeffs;
    for (const auto& c : j.at("coeffs")) {
      coeffs.push_back(c.is_string() ? PadicScalar::from_rational(field, parse_rational(c.get<std::string>()))
                                     : scalar_from_json(c, field));
    }
    std::optional<GrowthCertificate> g;
    if (j.contains("growth") && !j.at("growth").is_null()) g = growth_from_json(j.at("growth"));
    return CoefficientSeries::make(field, std::move(coeffs), j.value("exact_tail", true), g);
  });
}

Json to_json(const DecompositionChain& c) {
  Json steps = Json::array();
  for (const auto& s : c.steps) {
    Json step{{"kind", to_string(s.kind)}};
    step["gamma"] = s.gamma ? to_json(*s.gamma) : Json(nullptr);
    step["result"] = to_json(s.result);
    step["factor"] = to_json(s.factor);
    steps.push_back(step);
  }
  return Json{{"target", to_json(c.target)}, {"steps", steps}, {"degree_shift", c.degree_shift}};
}

DecompositionChain chain_from_json(const Json& j, unsigned long p) {
  return parsing("chain", [&] {
    DecompositionChain c;
    c.target = params_from_json(j.at("target"), p);
    c.degree_shift = j.at("degree_shift").get<long>();
    for (const auto& s : j.at("steps")) {
      ChainStep step;
      const std::string kind = s.at("kind").get<std::string>();
      if (kind == "delta_base") {
        step.kind = StepKind::DeltaBase;
      } else if (kind == "alpha_peel") {
        step.kind = StepKind::AlphaPeel;
      } else if (kind == "beta_peel") {
        step.kind = StepKind::BetaPeel;
      } else {
        fail(ErrorKind::ParseError, "unknown step kind " + kind);
      }
      if (!s.at("gamma").is_null()) step.gamma = parameter_from_json(s.at("gamma"), p);
      step.result = params_from_json(s.at("result"), p);
      step.factor = params_from_json(s.at("factor"), p);
      c.steps.push_back(std::move(step));
    }
    return c;
  });
}

Json to_json(const Valuation& v, unsigned long p) {
  if (v.infinite) return Json{{"units", nullptr}, {"value", "inf"}, {"exact", true}};
  return Json{{"units", v.units}, {"value", to_string(Rational(v.units, static_cast<long>(p - 1)))}, {"exact", v.exact}};
}

Json to_json(const IdentityReport& r) {
  const unsigned long p = r.lhs.field().p();
  Json out{{"identity", r.identity},
           {"status", to_string(r.status)},
           {"unit_used", to_json(r.unit_used)},
           {"x_power", r.x_power},
           {"discrepancy_valuation", to_json(r.discrepancy, p)},
           {"discrepancy_norm", real(r.discrepancy_norm)},
           {"lhs", to_json(r.lhs)},
           {"rhs", to_json(r.rhs)}};
  out["failed_step"] = r.failed_step ? Json(*r.failed_step) : Json(nullptr);
  out["notes"] = r.notes;
  return out;
}

Json to_json(const LiouvilleVerdict& v) {
  Json ev = Json::array();
  for (const auto& s : v.evidence) ev.push_back(Json{{"k", s.k}, {"v_minus", shift_json(s.minus)}, {"v_plus", shift_json(s.plus)}});
  return Json{{"status", to_string(v.status)},
              {"radius_lower", real(v.radius_lower)},
              {"radius_upper", real(v.radius_upper)},
              {"horizon", v.horizon},
              {"certificate", v.certificate},
              {"evidence", ev}};
}

Json to_json(const SigmaScanReport& r) {
  Json pairs = Json::array();
  for (const auto& pv : r.pairs) {
    pairs.push_back(Json{{"i", pv.i},
                         {"j", pv.j},
                         {"difference", pv.difference},
                         {"integer", pv.integer},
                         {"status", pv.integer ? "HypothesisViolation" : to_string(pv.status)}});
  }
  return Json{{"status", to_string(r.status)},
              {"integer_difference", r.integer_difference},
              {"pairs", pairs},
              {"sigma_mode", r.sigma_mode},
              {"generators", r.generators},
              {"height_bound", r.height_bound},
              {"horizon", r.horizon},
              {"scanned", r.scanned},
              {"worst_element", r.worst_element},
              {"worst_radius", real(r.worst_radius)}};
}

Json to_json(const RadiusReport& r) {
  return Json{{"slope", real(r.slope)},      {"estimate", real(r.estimate)}, {"floor", real(r.floor)},
              {"slack", real(r.slack)},      {"holds", r.holds},             {"horizon", r.partial_valuations.size()},
              {"partial_valuations", r.partial_valuations}};
}

Json to_json(const SolveReport& r) {
  Json tails = Json::array();
  for (const auto& t : r.tail_error_units) tails.push_back(opt_units(t));
  const unsigned long p = r.head_part.field().p();
  return Json{{"R", to_json(r.R)},
              {"head_part", to_json(r.head_part)},
              {"l0", r.l0},
              {"cutoff", r.cutoff},
              {"tail_error_units", tails},
              {"residual_valuation", to_json(r.residual_valuation, p)},
              {"residual_checked_through", r.residual_checked_through},
              {"decay_fit", Json{{"log_p_C2", real(r.decay.log_c2)}, {"eta_quarter", real(r.decay.eta_quarter)}, {"holds", r.decay.holds}}}};
}

Json to_json(const InjectivityReport& r) {
  Json seq = Json::array();
  for (double x : r.log_sequence) seq.push_back(real(x));
  return Json{{"zero", r.zero}, {"diverges", r.diverges}, {"log_sequence", seq}};
}

}  // namespace padhyp
