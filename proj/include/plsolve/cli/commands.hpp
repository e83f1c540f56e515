#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace plsolve::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNoSolution = 2;
inline constexpr int kExitUsage = 64;

/// Flags shared by the commands that run the iteration.
struct SolverFlags {
  double krylov_tol = 1e-12;
  double sign_tol = 0.0;
  bool no_monotone_mask = false;
  bool dense = false;
  /// "auto" (Jacobi for time-stepping runs only), "none" or "jacobi".
  std::string precond = "auto";
};

struct SolveArgs {
  std::string problem;
  int n = 0;
  std::optional<double> c;
  /// Both set: implicit Euler run instead of the stationary problem.
  std::optional<double> tau;
  std::optional<int> nu;
  std::string corner = "average";
  std::string out;
  SolverFlags solver;
};

struct BenchArgs {
  std::string table;
  std::string corner = "average";
  std::string out;
  bool timing = false;
  bool serial = false;
  SolverFlags solver;
};

struct CheckArgs {
  std::string problem;
  int n = 0;
  std::optional<double> c;
  std::string mm;
  std::string rhs;
};

struct OracleArgs {
  /// "t1" or "t2" generator, ignored when mm is set.
  std::string sample = "t1";
  int n = 2;
  unsigned seed = 1;
  /// Sign of v^T b for the t2 generator: "neg", "zero" or "pos".
  std::string vtb = "zero";
  bool parabolic = false;
  std::string mm;
  std::string rhs;
};

// Each command prints key=value lines on `out`, diagnostics on `err`, and
// returns the process exit code.
int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err);
int cmd_check(const CheckArgs& args, std::ostream& out, std::ostream& err);
int cmd_oracle(const OracleArgs& args, std::ostream& out, std::ostream& err);

}  // namespace plsolve::cli
