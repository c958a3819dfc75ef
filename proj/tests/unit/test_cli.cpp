#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>
#include <unistd.h>

#include "padhyp/cli.hpp"
#include "support/oracle.hpp"

using namespace padhyp;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("padhyp_cli_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir.parent_path());
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

}  // namespace

TEST_CASE("hyp build of the delta base") {
  const Result r = run({"hyp", "build", "--m", "0", "--n", "0", "--p", "3", "--q", "3"});
  CHECK(r.code == cli::kOk);
  const Json j = r.json();
  CHECK(j["kind"] == "operator");
  const Json& terms = j["result"]["terms"];
  REQUIRE(terms.size() == 2);
  CHECK(terms[0]["l"] == 0);
  CHECK(terms[0]["coeff"]["pi_coeffs"][0][0] == "1");
  CHECK(terms[1]["l"] == 1);
  CHECK(terms[1]["k"] == 0);
  CHECK(terms[1]["coeff"]["pi_coeffs"][0][0] == "-1");
}

TEST_CASE("hyp check-fourier verifies") {
  const Result r = run({"hyp", "check-fourier", "--alpha", "0", "--beta", "1/2", "--p", "3", "--q", "3"});
  CHECK(r.code == cli::kOk);
  const Json j = r.json();
  CHECK(j["result"]["status"] == "Verified");
  CHECK(j["hypothesis"]["status"] == "NonLiouvilleCertified");
  CHECK(j["config"]["p"] == 3);
  const IdentityReport direct = fourier_identity_check(oracle::params({"0"}, {"1/2"}, 3), oracle::config(3));
  CHECK(j["result"]["unit_used"] == to_json(direct.unit_used));
  CHECK(j["result"]["x_power"] == direct.x_power);
}

TEST_CASE("liouville diagnose certifies a rational") {
  const Result r = run({"liouville", "diagnose", "--alpha", "1/2", "--p", "5", "--horizon", "256"});
  CHECK(r.code == cli::kOk);
  CHECK(r.json()["result"]["status"] == "NonLiouvilleCertified");
  const Result csv = run({"liouville", "diagnose", "--alpha", "1/2", "--p", "5", "--horizon", "4", "--csv"});
  CHECK(csv.code == cli::kOk);
  CHECK(csv.out.rfind("k,v_minus,v_plus\n", 0) == 0);
  const Result w = run({"liouville", "diagnose", "--alpha", "liouville:1", "--p", "2", "--horizon", "512"});
  CHECK(w.code == cli::kOk);
  CHECK(w.json()["result"]["status"] == "LiouvilleWitnessed");
}

TEST_CASE("exit codes") {
  CHECK(run({"bogus"}).code == cli::kUsage);
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"hyp", "check-inv", "--alpha", "1/3", "--p", "3"}).code == cli::kUsage);
  CHECK(run({"hyp", "check-fourier", "--alpha", "1/2", "--p", "3"}).code == cli::kIndeterminate);
  CHECK(run({"hyp", "check-inv", "--alpha", "1/2", "--beta", "1/4", "--p", "3"}).code == cli::kOk);
  CHECK(run({"hyp", "check-kummer", "--alpha", "1/2", "--gamma", "1/4", "--p", "3"}).code == cli::kOk);
  CHECK(run({"hyp", "decompose", "--alpha", "1/2", "--beta", "3/2", "--p", "5"}).code == cli::kIndeterminate);
  CHECK(run({"liouville", "sigma-scan", "--alpha", "1/2", "--beta", "3/2", "--p", "5"}).code == cli::kIndeterminate);
  CHECK(run({"liouville", "sigma-scan", "--alpha", "1/2", "--beta", "1/3", "--p", "5", "--height", "1"}).code ==
        cli::kOk);
  CHECK(run({"liouville", "radius", "--alpha", "1/3", "--p", "2", "--horizon", "512"}).code == cli::kOk);
  CHECK(run({"solve", "x-inverse", "--alpha", "1/2", "--p", "3", "--input", "/nonexistent/series.json"}).code ==
        cli::kIoError);
  CHECK(run({"hyp", "build", "--m", "0", "--n", "0", "--p", "3", "--out", "/proc/padhyp/denied"}).code ==
        cli::kIoError);
  CHECK(cli::exit_code_for(ErrorKind::ResidualNonzero) == cli::kFailed);
  CHECK(cli::exit_code_for(ErrorKind::ParseError) == cli::kUsage);
  CHECK(cli::exit_code_for(ErrorKind::LiouvilleIndeterminate) == cli::kIndeterminate);
}

TEST_CASE("decompose and verify-chain") {
  const fs::path dir = scratch("chain");
  const Result d = run({"hyp", "decompose", "--alpha", "1/3,2/3", "--beta", "1/4", "--p", "5", "--out", dir.string()});
  CHECK(d.code == cli::kOk);
  REQUIRE(fs::exists(dir / "result.json"));
  const Json chain = Json::parse(slurp(dir / "result.json"))["result"];
  spit(dir / "chain.json", chain.dump());
  const Result v = run({"hyp", "verify-chain", "--p", "5", "--input", (dir / "chain.json").string()});
  CHECK(v.code == cli::kOk);
  CHECK(v.json()["result"]["status"] == "Verified");
}

TEST_CASE("solve from a series file") {
  const fs::path dir = scratch("solve");
  spit(dir / "series.json", R"({"coeffs": ["1"]})");
  const Result r = run({"solve", "x-inverse", "--alpha", "1/2", "--p", "3", "--input", (dir / "series.json").string()});
  CHECK(r.code == cli::kOk);
  const Json j = r.json();
  CHECK(j["result"]["R"]["coeffs"].size() == 1);
  CHECK(j["result"]["decay_fit"]["holds"] == true);
}

TEST_CASE("fuzz runs are deterministic") {
  for (const char* suite : {"valuation-bounds", "automorphism", "solver-residual"}) {
    const fs::path a = scratch(std::string(suite) + "_a"), b = scratch(std::string(suite) + "_b");
    const Result ra = run({"fuzz", "--suite", suite, "--seed", "17", "--count", "20", "--out", a.string()});
    const Result rb = run({"fuzz", "--suite", suite, "--seed", "17", "--count", "20", "--out", b.string()});
    CHECK(ra.code == cli::kOk);
    CHECK(rb.code == cli::kOk);
    CHECK(ra.out == rb.out);
    CHECK(slurp(a / "result.json") == slurp(b / "result.json"));
    const Json ma = Json::parse(slurp(a / "manifest.json")), mb = Json::parse(slurp(b / "manifest.json"));
    CHECK(ma["outputs"] == mb["outputs"]);
    CHECK(ma["seed"] == 17);
    // Manifest digests are recomputable from the files.
    for (const auto& [name, digest] : ma["outputs"].items()) CHECK(cli::file_sha256(a / name) == digest);
    const Json summary = ra.json()["result"];
    CHECK(summary["passed"] == 20);
    CHECK(summary["failed"] == 0);
  }
  const Result other = run({"fuzz", "--suite", "automorphism", "--seed", "18", "--count", "20"});
  const Result base = run({"fuzz", "--suite", "automorphism", "--seed", "17", "--count", "20"});
  CHECK(other.out != base.out);
  CHECK(run({"fuzz", "--suite", "nope"}).code == cli::kUsage);
}

TEST_CASE("sha256 known answer") {
  CHECK(cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(cli::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("report rendering") {
  const fs::path dir = scratch("report");
  CHECK(run({"hyp", "check-inv", "--alpha", "1/2", "--p", "5", "--out", dir.string()}).code == cli::kOk);
  const std::string txt = slurp(dir / "report.txt");
  CHECK(txt.find("Verified") != std::string::npos);
  const Result r = run({"report", "--input", (dir / "result.json").string()});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == cli::render_report(Json::parse(slurp(dir / "result.json"))));
  CHECK(r.out == txt);
  CHECK(run({"report"}).code == cli::kUsage);
}

TEST_CASE("parameter arguments") {
  CHECK(cli::parse_parameter_arg("1/2", 3, 64) == oracle::q("1/2", 3));
  CHECK(cli::parse_parameter_arg("-4", 3, 64) == PadicParameter::integer(-4, 3));
  const PadicParameter d = cli::parse_parameter_arg("digits:1,0,2", 3, 64);
  CHECK_FALSE(d.is_exact());
  CHECK(d.residue(3) == 1 + 2 * 9);
  CHECK(cli::parse_parameter_arg("digits:102", 3, 64).residue(3) == 1 + 2 * 9);
  const PadicParameter l = cli::parse_parameter_arg("liouville:1", 2, 64);
  CHECK(l.residue(20) == 2 + 4 + 16 + 65536);
  CHECK_THROWS_AS(cli::parse_parameter_arg("1/3", 3, 64), Error);
  CHECK_THROWS_AS(cli::parse_parameter_arg("digits:5", 3, 64), Error);
  CHECK_THROWS_AS(cli::parse_parameter_arg("x", 3, 64), Error);
}
