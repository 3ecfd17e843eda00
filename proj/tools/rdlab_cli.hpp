#pragma once

// Command line front end: argument parsing, config rendering and the
// subcommand dispatcher behind the `rdlab` binary.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rdlab/errors.hpp"

namespace rdlab::cli {

// Malformed command line; the message names the offending flag.
class UsageError : public Error {
 public:
  using Error::Error;
};

// --help was given; what() holds the help text.
class HelpRequested : public Error {
 public:
  using Error::Error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolation = 2;

struct RunConfig {
  std::string command;  // sphere-count, propj, nsolutions, action-check, norm, verify, probe
  std::string target;   // inequality or probe id for verify/probe
  std::string group = "free:2";
  std::string action = "trivial:1";
  std::vector<std::string> element_files;

  // Unset values are derived per command ("auto" on the command line).
  std::optional<int> radius;
  int k = 1;
  int l = 1;
  std::optional<int> m;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  std::optional<double> s;
  std::optional<double> C;
  std::optional<double> M;
  std::optional<double> N;
  double lambda = 0.5;

  double tol = 1e-6;
  int max_iter = 2000;
  bool dense = false;
  int extra_radius = 6;
  std::size_t budget = 200'000;

  int trials = 50;
  std::uint64_t seed = 1;
  std::string sampler = "gaussian";
  std::string support = "auto";
  int support_size = 0;
  double scale = 1.0;

  std::string out;
  std::string csv;
  bool quiet = false;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// argv without the program name. Throws UsageError or HelpRequested.
RunConfig parse_args(const std::vector<std::string>& args);
RunConfig parse_args(int argc, const char* const* argv);

// Arguments that parse back to the same config; every field is explicit.
std::vector<std::string> render(const RunConfig& config);

// Executes the command; normal output goes to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// parse + run with error handling and exit codes.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rdlab::cli
