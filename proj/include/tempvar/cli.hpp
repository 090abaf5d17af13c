#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tempvar/grid.hpp"

namespace tempvar::cli {

enum class Command { ops_verify, ops_table, bvp_solve, bvp_converge, minimize, noether_check, mountain_pass, coherence };

std::string to_string(Command c);

struct RunConfig {
  Command command = Command::ops_verify;
  TemperedParams params;
  std::size_t n = 256;
  std::string lagrangian = "dirichlet";
  std::string symmetry = "tempered-translation";
  std::string xi, eta;          ///< custom symmetry (both or neither)
  std::string f;                ///< forcing: CSV path or expression in t
  std::string u;                ///< trajectory: CSV path or expression in t
  std::string exact;            ///< manufactured solution for bvp-converge
  std::string op = "left-caputo";  ///< ops-table operator
  double order = 0.5;           ///< ops-table integral order
  double p = 4.0;               ///< exponent of the "power" Lagrangian
  std::size_t knots = 17;
  std::string out;              ///< CSV output path
  std::string json;             ///< JSON output path (stdout if empty)
  double tol = 1e-8;            ///< 1e-4 for mountain-pass unless given
  std::size_t max_iter = 1000;
  std::uint64_t seed = 42;
};

/// Usage errors carry the message shown to the user; run_main maps them to exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// argv without the program name. Throws UsageError.
RunConfig parse_args(const std::vector<std::string>& args);

/// Executes a validated config. 0 success, 1 computation failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with exit codes 0/1/2.
int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tempvar::cli
