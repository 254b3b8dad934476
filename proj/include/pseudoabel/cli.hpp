#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pseudoabel/sweep.hpp"

namespace pseudoabel {

enum class Command {
  EvalSeries,
  MellinTable,
  InvertMellin,
  Petrov,
  Reduce,
  CountZeros,
  VerifyPetrov,
  TraceOval,
  Integrate,
  Sweep,
};

std::string_view to_string(Command c);
std::optional<Command> parse_command(std::string_view name);

struct RunConfig {
  Command command = Command::EvalSeries;
  // Path, or "random" / "random-real" for a generated series.
  std::string input;
  std::string output;  // empty: write to the output stream
  std::string t_grid = "geometric:0.01:0.99:33";
  std::optional<double> t;
  std::optional<double> kappa;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  int threads = 0;  // 0: PSEUDOABEL_THREADS or the OpenMP default
  bool schema_check = false;
  std::string method = "scan";  // count-zeros: scan, argument, both
  std::vector<SweepAxis> sweep_axes;
};

// Checks the invariants of a config; throws Config.
void validate_config(const RunConfig& cfg);

// Exit status: 0 ok, 1 invalid config, 2 numerical failure.  Error reports
// are JSON on `err`.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// "exponent:i:lo:hi:n" or "coef:k:lo:hi:n".
SweepAxis parse_sweep_axis(std::string_view spec);

}  // namespace pseudoabel
