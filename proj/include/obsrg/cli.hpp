#ifndef OBSRG_CLI_HPP
#define OBSRG_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "obsrg/rgflow.hpp"

namespace obsrg::cli {

// Fully resolved invocation: command name plus every tunable, after merging
// the optional flat-JSON config file (flags win) and applying defaults.
// Optional fields model per-command required flags; the rest carry defaults.
struct RunConfig {
  std::string command;

  int l = 4;
  double m0sq = 1.0;
  std::optional<double> m0sq_init;     // mass-flow initial condition
  std::optional<double> lambda0;       // coupling for beta0 / mass-flow
  std::optional<double> lambda_s;      // reference coupling (coupling-flow, validity)
  double mu = 1.0;
  double mu_s = 1.0;
  std::optional<double> mu_start;
  std::optional<double> mu_end;
  int points = 50;
  SampleScale scale = SampleScale::log;
  double tol = 1e-10;

  std::optional<double> chan_s, chan_t, chan_u;  // vertex kinematic channels

  double gauge = 1.0;
  std::optional<double> beta_m2, beta_m1, beta_0;  // factorize inputs

  bool as_distance = false;

  std::string format = "json";
  std::optional<std::string> out_path;
};

// Parses an argv-style vector: args[0] is the command, the rest are
// --flag value pairs (--as-distance stands alone).  When --config names a
// file its flat JSON object is merged first and explicit flags override it;
// `config_content` substitutes for reading that file from disk (testing).
// Throws UsageError on unknown flags/keys, malformed values, missing
// required fields, or violated static invariants (l parity, points >= 2,
// tol > 0, sweep start < end, format/scale enums, csv outside sweeps).
RunConfig parse_config(const std::vector<std::string>& args,
                       const std::optional<std::string>& config_content =
                           std::nullopt);

// Executes a parsed command and writes the result document to `out` (or the
// --out path).  Library errors propagate to the caller.
void run(const RunConfig& config, std::ostream& out);

// Full front end: parse + run + error rendering.  Never throws.  Returns 0
// on success, 2 on usage errors, 3 on numerical/kinematic/capability/other
// runtime errors; failures emit {"error": {...}} on `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace obsrg::cli

#endif  // OBSRG_CLI_HPP
