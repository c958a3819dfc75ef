#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "padhyp/error.hpp"
#include "padhyp/json_io.hpp"

namespace padhyp::cli {

enum ExitCode : int {
  kOk = 0,
  kFailed = 2,
  kIndeterminate = 3,
  kUsage = 64,
  kIoError = 74,
};

/// Runs one command line (without the program name). JSON goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args);

/// Maps a library error onto the exit-code contract.
int exit_code_for(ErrorKind kind);

/// "a/b", an integer, "digits:d0,d1,..." (least significant first) or
/// "liouville:a0" for the exemplar stream.
PadicParameter parse_parameter_arg(const std::string& text, unsigned long p, long horizon);

std::string sha256_hex(const std::string& data);
std::string file_sha256(const std::filesystem::path& path);

struct RunManifest {
  PadicConfig config;
  std::string command;
  std::map<std::string, std::string> inputs;
  std::map<std::string, std::string> outputs;
  std::map<std::string, double> timings_ms;
  std::optional<std::uint64_t> seed;
};

Json to_json(const RunManifest& m);

/// Writes each artifact under dir, recording its digest in the manifest, then
/// writes manifest.json. Throws std::ios_base::failure.
void write_artifacts(const std::filesystem::path& dir, const std::map<std::string, std::string>& artifacts,
                     RunManifest& manifest);

enum class FuzzSuite { ValuationBounds, SolverResidual, Automorphism };

const char* to_string(FuzzSuite s);
std::optional<FuzzSuite> parse_suite(const std::string& name);

struct FuzzSummary {
  FuzzSuite suite = FuzzSuite::ValuationBounds;
  std::uint64_t seed = 0;
  long count = 0;
  long passed = 0;
  long failed = 0;
  Json counterexamples = Json::array();
  /// Per-case digests of the generated inputs and outcomes.
  Json cases = Json::array();
};

Json to_json(const FuzzSummary& s);

FuzzSummary run_fuzz(FuzzSuite suite, std::uint64_t seed, long count, const PadicConfig& config);

/// Human-readable rendering of any artifact written by run().
std::string render_report(const Json& artifact);

}  // namespace padhyp::cli
