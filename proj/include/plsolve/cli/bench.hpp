#pragma once

#include <cstdlib>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plsolve/obstacle/obstacle.hpp"

namespace plsolve::cli {

/// Benchmark sweeps. TorsionNeumann is the Neumann variant of the torsion
/// sweep, compared against the Dirichlet reference counts.
enum class TableId { Tent, Torsion, TorsionNeumann, ParabolicTent, ParabolicTorsion };

/// "1", "2", "2n", "3", "4".
std::optional<TableId> parse_table(std::string_view s);
const char* to_string(TableId t);

inline constexpr int kGridSizes[4] = {25, 50, 75, 100};
inline constexpr double kTorsionC[4] = {-5.0, -10.0, -15.0, -20.0};

struct BenchRow {
  obstacle::ProblemName problem = obstacle::ProblemName::Tent;
  int n = 0;
  std::optional<double> c;
  /// Time step (1-based) for the parabolic tables.
  std::optional<int> step;
  int k = -1;
  int k_ref = 0;
  /// Allowed |k - k_ref| for `match`.
  int tolerance = 1;
  /// Unknowns of the run, the bound on k.
  std::size_t unknowns = 0;
  /// active_counts never decreased during the solve.
  bool monotone = true;
  /// The LCP check at 1e-8 passed (for time-stepping rows, every step of the run).
  bool lcp_ok = true;
  /// Empty when the run succeeded.
  std::string error;

  bool ok() const { return error.empty(); }
  bool match() const { return ok() && std::abs(k - k_ref) <= tolerance; }
};

struct BenchOptions {
  SolverOptions solver;
  /// Replaces solver.krylov.preconditioner in the time-stepping sweeps, where
  /// the step operators are scaled by dt / h^2.
  std::optional<krylov::Preconditioner> parabolic_preconditioner = krylov::Preconditioner::Jacobi;
  obstacle::CornerRule corner = obstacle::CornerRule::Average;
  /// Parabolic sweeps; zero selects the table's own horizon and step count.
  double tau = 0.0;
  int nu = 0;
  bool parallel = true;
};

struct BenchTable {
  TableId id = TableId::Tent;
  /// Ordered by parameters (problem, C, N, step), independent of scheduling.
  std::vector<BenchRow> rows;
  /// One entry per run cell, in the order the cells were listed.
  std::vector<double> wall_times_ms;

  bool all_ok() const;
  bool all_match() const;
};

BenchTable run_bench(TableId id, const BenchOptions& opts = {});

/// Columns: table,problem,N,C,step,k,k_ref,delta,match
void write_bench_csv(std::ostream& out, const BenchTable& t);
/// Aligned text in the layout of the printed table; wall times only when asked.
void write_bench_text(std::ostream& out, const BenchTable& t, bool with_timing = false);

}  // namespace plsolve::cli
