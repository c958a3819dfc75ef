#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "padhyp/cli.hpp"
#include "padhyp/error.hpp"

namespace padhyp::cli {

namespace {

struct Options {
  unsigned long p = 3;
  unsigned long q = 0;
  long precision = 20;
  int lmax = 32;
  int kmax = 32;
  long horizon = 256;
  long height = 0;
  std::uint64_t seed = 1;
  std::string out;
  std::vector<std::string> alpha;
  std::vector<std::string> beta;
  std::string gamma;
  bool signed_pi = false;
  std::string params_file;
  std::string input;
  long truncation = -1;
  long m = -1;
  long n = -1;
  std::string flavor = "A1";
  std::string suite;
  long count = 100;
  bool csv = false;
  bool assume_non_liouville = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Stopwatch {
 public:
  void lap(const std::string& stage) {
    const auto now = std::chrono::steady_clock::now();
    timings[stage] = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
  }
  std::map<std::string, double> timings;

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

// What a command produced: the JSON artifact, optional extra files and the exit code.
struct Outcome {
  Json artifact;
  std::map<std::string, std::string> extra;
  int code = kOk;
  std::string stdout_override;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json read_json(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::ParseError, path + ": " + e.what());
  }
}

PadicConfig make_config(const Options& o) {
  PadicConfig c;
  c.p = o.p;
  c.q = o.q ? o.q : o.p;
  c.precision = o.precision;
  c.lmax = o.lmax;
  c.kmax = o.kmax;
  c.validate();
  return c;
}

HypParams params_from_options(const Options& o, const PadicConfig& config, RunManifest& manifest) {
  if (!o.params_file.empty()) {
    manifest.inputs[o.params_file] = file_sha256(o.params_file);
    return params_from_json(read_json(o.params_file), config.p);
  }
  HypParams h;
  for (const auto& a : o.alpha) h.alpha.push_back(parse_parameter_arg(a, config.p, o.horizon));
  for (const auto& b : o.beta) h.beta.push_back(parse_parameter_arg(b, config.p, o.horizon));
  if (o.m >= 0 && static_cast<std::size_t>(o.m) != h.m()) {
    throw UsageError("--m " + std::to_string(o.m) + " but " + std::to_string(h.m()) + " alpha values given");
  }
  if (o.n >= 0 && static_cast<std::size_t>(o.n) != h.n()) {
    throw UsageError("--n " + std::to_string(o.n) + " but " + std::to_string(h.n()) + " beta values given");
  }
  h.pi_variant = o.signed_pi ? PiVariant::SignedPi : PiVariant::Pi;
  return h;
}

int identity_code(IdentityStatus s) {
  switch (s) {
    case IdentityStatus::Verified:
    case IdentityStatus::VerifiedToPrecision: return kOk;
    case IdentityStatus::Failed: return kFailed;
    case IdentityStatus::Indeterminate: return kIndeterminate;
  }
  return kIndeterminate;
}

Json base_artifact(const char* kind, const PadicConfig& config) {
  return Json{{"kind", kind}, {"config", to_json(config)}};
}

Outcome identity_outcome(const PadicConfig& config, const HypParams& params, const IdentityReport& r,
                         const Options& o) {
  Outcome out;
  out.artifact = base_artifact("identity", config);
  out.artifact["params"] = to_json(params);
  out.artifact["hypothesis"] = to_json(hypothesis_check(params, o.horizon, o.height));
  out.artifact["result"] = to_json(r);
  out.code = identity_code(r.status);
  return out;
}

Outcome cmd_hyp(const std::string& sub, const Options& o, RunManifest& manifest) {
  const PadicConfig config = make_config(o);
  manifest.config = config;
  if (sub == "verify-chain" && !o.input.empty()) {
    manifest.inputs[o.input] = file_sha256(o.input);
    const DecompositionChain chain = chain_from_json(read_json(o.input), config.p);
    return identity_outcome(config, chain.target, chain_verify(chain, config), o);
  }
  const HypParams params = params_from_options(o, config, manifest);
  if (sub == "build") {
    if (o.flavor != "A1" && o.flavor != "B1") throw UsageError("--flavor must be A1 or B1");
    Outcome out;
    out.artifact = base_artifact("operator", config);
    out.artifact["params"] = to_json(params);
    out.artifact["result"] = to_json(hyp_operator(params, config, o.flavor == "A1" ? Flavor::A1 : Flavor::B1));
    return out;
  }
  if (sub == "check-inv") return identity_outcome(config, params, inversion_identity_check(params, config), o);
  if (sub == "check-kummer") {
    if (o.gamma.empty()) throw UsageError("check-kummer needs --gamma");
    const PadicParameter gamma = parse_parameter_arg(o.gamma, config.p, o.horizon);
    Outcome out = identity_outcome(config, params, kummer_identity_check(params, gamma, config), o);
    out.artifact["gamma"] = to_json(gamma);
    return out;
  }
  if (sub == "check-fourier") return identity_outcome(config, params, fourier_identity_check(params, config), o);
  DecomposeOptions dopt;
  dopt.horizon = o.horizon;
  dopt.assume_non_liouville = o.assume_non_liouville;
  const DecompositionChain chain = decompose(params, dopt);
  if (sub == "decompose") {
    Outcome out;
    out.artifact = base_artifact("chain", config);
    out.artifact["hypothesis"] = to_json(hypothesis_check(params, o.horizon, o.height));
    out.artifact["result"] = to_json(chain);
    return out;
  }
  return identity_outcome(config, params, chain_verify(chain, config), o);
}

Outcome cmd_liouville(const std::string& sub, const Options& o, RunManifest& manifest) {
  const PadicConfig config = make_config(o);
  manifest.config = config;
  if (sub == "sigma-scan") {
    const HypParams params = params_from_options(o, config, manifest);
    const SigmaScanReport r = hypothesis_check(params, o.horizon, o.height);
    Outcome out;
    out.artifact = base_artifact("sigma_scan", config);
    out.artifact["params"] = to_json(params);
    out.artifact["result"] = to_json(r);
    const bool ok = !r.integer_difference && r.status == LiouvilleStatus::NonLiouvilleCertified;
    out.code = ok ? kOk : kIndeterminate;
    return out;
  }
  if (o.alpha.size() != 1) throw UsageError("liouville " + sub + " needs exactly one --alpha");
  const PadicParameter alpha = parse_parameter_arg(o.alpha.front(), config.p, o.horizon);
  if (sub == "radius") {
    const RadiusReport r = radius_hypergeo_series(alpha, o.horizon);
    Outcome out;
    out.artifact = base_artifact("radius", config);
    out.artifact["alpha"] = to_json(alpha);
    out.artifact["result"] = to_json(r);
    out.code = r.holds ? kOk : kFailed;
    return out;
  }
  const LiouvilleVerdict v = liouville_diagnose(alpha, o.horizon);
  Outcome out;
  out.artifact = base_artifact("liouville", config);
  out.artifact["alpha"] = to_json(alpha);
  out.artifact["result"] = to_json(v);
  out.extra["evidence.csv"] = evidence_csv(v);
  if (o.csv) out.stdout_override = out.extra["evidence.csv"];
  out.code = v.status == LiouvilleStatus::Indeterminate ? kIndeterminate : kOk;
  return out;
}

Outcome cmd_solve(const Options& o, RunManifest& manifest) {
  const PadicConfig config = make_config(o);
  manifest.config = config;
  if (o.input.empty()) throw UsageError("solve x-inverse needs --input");
  const HypParams params = params_from_options(o, config, manifest);
  manifest.inputs[o.input] = file_sha256(o.input);
  const DworkField& field = DworkField::get(config.p, config.q);
  CoefficientSeries P = series_from_json(read_json(o.input), field);
  if (o.truncation >= 0 && static_cast<long>(P.coeffs.size()) > o.truncation + 1) {
    bool dropped = false;
    for (std::size_t l = static_cast<std::size_t>(o.truncation) + 1; l < P.coeffs.size(); ++l) {
      dropped = dropped || !P.coeffs[l].is_exact_zero();
    }
    if (dropped && !P.growth) {
      const Window w{0, static_cast<int>(P.coeffs.size())};
      P.growth = fit_growth(P.as_operator(w), Flavor::A1);
    }
    P.coeffs.erase(P.coeffs.begin() + o.truncation + 1, P.coeffs.end());
    P = CoefficientSeries::make(field, P.coeffs, P.exact_tail && !dropped, P.growth);
  }
  std::vector<Json> verdicts;
  for (const auto& a : params.alpha) {
    Json v = to_json(liouville_diagnose(a, o.horizon));
    v.erase("evidence");
    verdicts.push_back(v);
  }
  const SolveReport r = solve_x_surjectivity(P, params, config);
  Outcome out;
  out.artifact = base_artifact("solve", config);
  out.artifact["params"] = to_json(params);
  out.artifact["alpha_verdicts"] = verdicts;
  out.artifact["input"] = to_json(P);
  out.artifact["result"] = to_json(r);
  out.code = r.decay.holds ? kOk : kFailed;
  return out;
}

Outcome cmd_fuzz(const Options& o, RunManifest& manifest) {
  const PadicConfig config = make_config(o);
  manifest.config = config;
  manifest.seed = o.seed;
  const auto suite = parse_suite(o.suite);
  if (!suite) throw UsageError("unknown fuzz suite '" + o.suite + "'");
  const FuzzSummary s = run_fuzz(*suite, o.seed, o.count, config);
  Outcome out;
  out.artifact = base_artifact("fuzz", config);
  out.artifact["result"] = to_json(s);
  out.code = s.failed == 0 ? kOk : kFailed;
  return out;
}

Outcome cmd_report(const Options& o, RunManifest& manifest) {
  if (o.input.empty()) throw UsageError("report needs --input");
  manifest.inputs[o.input] = file_sha256(o.input);
  const Json artifact = read_json(o.input);
  Outcome out;
  out.artifact = artifact;
  out.stdout_override = render_report(artifact);
  return out;
}

void render_value(std::ostringstream& os, const std::string& key, const Json& v, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  if (v.is_object()) {
    if (v.contains("pi_coeffs")) {
      os << pad << key << ": scalar with " << v["pi_coeffs"].size() << " pi-coefficients\n";
      return;
    }
    os << pad << key << ":\n";
    for (const auto& [k, x] : v.items()) render_value(os, k, x, depth + 1);
  } else if (v.is_array()) {
    const bool flat = std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); });
    if (flat && v.size() <= 12) {
      os << pad << key << ": " << v.dump() << "\n";
    } else {
      os << pad << key << ": " << v.size() << " entries\n";
    }
  } else if (v.is_string()) {
    os << pad << key << ": " << v.get<std::string>() << "\n";
  } else {
    os << pad << key << ": " << v.dump() << "\n";
  }
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidConfig:
    case ErrorKind::InvalidParameter:
    case ErrorKind::ParseError: return kUsage;
    case ErrorKind::ResidualNonzero: return kFailed;
    default: return kIndeterminate;
  }
}

PadicParameter parse_parameter_arg(const std::string& text, unsigned long p, long horizon) {
  if (text.rfind("liouville:", 0) == 0) {
    return liouville_exemplar(p, std::stol(text.substr(10)), horizon);
  }
  if (text.rfind("digits:", 0) == 0) {
    std::vector<unsigned long> digits;
    const std::string body = text.substr(7);
    if (body.find_first_of(".,") != std::string::npos) {
      std::string tok;
      std::istringstream in(body);
      while (std::getline(in, tok, body.find('.') != std::string::npos ? '.' : ',')) digits.push_back(std::stoul(tok));
    } else {
      for (char ch : body) {
        if (ch < '0' || ch > '9') fail(ErrorKind::ParseError, "bad digit in " + text);
        digits.push_back(static_cast<unsigned long>(ch - '0'));
      }
    }
    if (digits.empty()) fail(ErrorKind::ParseError, "empty digit stream");
    for (unsigned long d : digits) {
      if (d >= p) fail(ErrorKind::InvalidParameter, "digit " + std::to_string(d) + " >= p");
    }
    const long h = static_cast<long>(digits.size());
    return PadicParameter::digit_stream([&](long i) { return digits[static_cast<std::size_t>(i)]; }, h, p);
  }
  try {
    return PadicParameter::rational(parse_rational(text), p);
  } catch (const std::invalid_argument&) {
    fail(ErrorKind::ParseError, "cannot parse parameter '" + text + "'");
  }
}

std::string render_report(const Json& artifact) {
  std::ostringstream os;
  const std::string kind = artifact.value("kind", std::string("artifact"));
  os << kind << " report\n";
  if (artifact.contains("config")) {
    const Json& c = artifact["config"];
    os << "  p=" << c.value("p", 0) << " q=" << c.value("q", 0) << " precision=" << c.value("precision", 0)
       << " window=(" << c.value("lmax", 0) << "," << c.value("kmax", 0) << ")\n";
  }
  for (const auto& [k, v] : artifact.items()) {
    if (k == "kind" || k == "config") continue;
    render_value(os, k, v, 1);
  }
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"p-adic hypergeometric operator toolkit", "padhyp"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--p", o.p, "residue characteristic");
  app.add_option("--q", o.q, "residue field size (default p)");
  app.add_option("--precision", o.precision, "scalar precision in pi-adic digits");
  app.add_option("--lmax", o.lmax, "x-degree window");
  app.add_option("--kmax", o.kmax, "d-order window");
  app.add_option("--horizon", o.horizon, "digit horizon for streams and Liouville scans");
  app.add_option("--height", o.height, "coefficient height for the sigma scan");
  app.add_option("--seed", o.seed, "fuzz seed");
  app.add_option("--out", o.out, "artifact directory");
  app.add_option("--alpha", o.alpha, "alpha parameters")->delimiter(',');
  app.add_option("--beta", o.beta, "beta parameters")->delimiter(',');
  app.add_option("--gamma", o.gamma, "Kummer twist");
  app.add_flag("--signed-pi", o.signed_pi, "use (-1)^p pi");
  app.add_option("--params", o.params_file, "parameter JSON file");
  app.add_option("--input", o.input, "input JSON file");
  app.add_option("--truncation", o.truncation, "keep input coefficients 0..T");
  app.add_option("--m", o.m, "number of alpha parameters");
  app.add_option("--n", o.n, "number of beta parameters");

  auto* hyp = app.add_subcommand("hyp", "hypergeometric operators and identities");
  hyp->require_subcommand(1);
  std::string leaf;
  for (const char* name : {"build", "check-inv", "check-kummer", "check-fourier", "decompose", "verify-chain"}) {
    auto* s = hyp->add_subcommand(name);
    s->callback([&leaf, name] { leaf = name; });
    if (std::string(name) == "build") s->add_option("--flavor", o.flavor, "A1 or B1");
    if (std::string(name) == "decompose" || std::string(name) == "verify-chain") {
      s->add_flag("--assume-non-liouville", o.assume_non_liouville, "proceed when the scan is indeterminate");
    }
  }
  auto* liou = app.add_subcommand("liouville", "Liouville diagnostics");
  liou->require_subcommand(1);
  for (const char* name : {"diagnose", "sigma-scan", "radius"}) {
    auto* s = liou->add_subcommand(name);
    s->callback([&leaf, name] { leaf = name; });
    if (std::string(name) == "diagnose") s->add_flag("--csv", o.csv, "print the evidence table");
  }
  auto* solve = app.add_subcommand("solve", "x-surjectivity solver");
  solve->require_subcommand(1);
  solve->add_subcommand("x-inverse")->callback([&leaf] { leaf = "x-inverse"; });
  auto* fuzz = app.add_subcommand("fuzz", "seeded property suites");
  fuzz->add_option("--suite", o.suite, "valuation-bounds, solver-residual or automorphism")->required();
  fuzz->add_option("--count", o.count, "number of cases");
  app.add_subcommand("report", "render an artifact");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage: " << e.what() << "\n";
    return kUsage;
  }

  RunManifest manifest;
  for (const auto& a : args) manifest.command += (manifest.command.empty() ? "" : " ") + a;
  Stopwatch clock;
  try {
    Outcome res;
    if (hyp->parsed()) {
      res = cmd_hyp(leaf, o, manifest);
    } else if (liou->parsed()) {
      res = cmd_liouville(leaf, o, manifest);
    } else if (solve->parsed()) {
      res = cmd_solve(o, manifest);
    } else if (fuzz->parsed()) {
      res = cmd_fuzz(o, manifest);
    } else {
      res = cmd_report(o, manifest);
    }
    clock.lap("compute");
    const std::string body = res.artifact.dump(2) + "\n";
    out << (res.stdout_override.empty() ? body : res.stdout_override);
    if (!o.out.empty() && !app.got_subcommand("report")) {
      std::map<std::string, std::string> files = res.extra;
      files["result.json"] = body;
      files["report.txt"] = render_report(res.artifact);
      manifest.timings_ms = clock.timings;
      write_artifacts(o.out, files, manifest);
    }
    return res.code;
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::ios_base::failure& e) {
    err << "io: " << e.what() << "\n";
    return kIoError;
  }
}

int run(const std::vector<std::string>& args) { return run(args, std::cout, std::cerr); }

}  // namespace padhyp::cli
