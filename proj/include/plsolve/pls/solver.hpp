#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "plsolve/krylov/qmr.hpp"
#include "plsolve/numkit/masked_operator.hpp"
#include "plsolve/numkit/sparse_matrix.hpp"
#include "plsolve/pls/active_mask.hpp"

namespace plsolve {

/// min{xi,x} + T max{xi,x} = b  or  max{xi,x} + T min{xi,x} = b.
enum class ShiftForm { MinPlusTMax, MaxPlusTMin };

struct Shift {
  Vector xi;
  ShiftForm form = ShiftForm::MinPlusTMax;
};

/// Left/right null vectors of a singular (T2) matrix.
struct T2Data {
  Vector v;
  Vector w;
};

/// One piecewise linear system.
///   Elliptic:  min{0,x} + T max{0,x} = b
///   Parabolic: x + T max{0,x} = b
struct PlsProblem {
  SparseMatrix t;
  Vector b;
  PlsKind kind = PlsKind::Elliptic;
  std::optional<Shift> shift;
  std::optional<T2Data> t2_data;

  void validate() const;
};

enum class InnerSolver { Qmr, Dense };

struct SolverOptions {
  /// Component i is active when x_i >= sign_threshold.
  double sign_threshold = 0.0;
  /// Final check: nonsmooth residual <= res_tol * ||b||_inf.
  double res_tol = 1e-8;
  /// P^{k+1} := P^k OR P(x^{k+1}).
  bool enforce_monotone_mask = true;
  /// 0 selects n + 1.
  std::size_t max_outer = 0;
  krylov::KrylovOptions krylov;
  /// Dense LU instead of QMR; meant for small verification problems.
  InnerSolver inner = InnerSolver::Qmr;
  /// Warm-start guess for the first inner solve; zero when empty.
  Vector initial_guess;

  void validate() const;
};

enum class SolveStatus { Converged, NoSolutionCertified, MaxOuterExceeded, ResidualCheckFailed };

const char* to_string(SolveStatus s);

struct IterationReport {
  /// Number of linear solves (K).
  std::size_t outer_iterations = 0;
  /// popcount of the mask produced by each solve.
  std::vector<std::size_t> active_counts;
  /// popcount of P(x^{k+1}) before any monotone join.
  std::vector<std::size_t> raw_active_counts;
  /// Components of P^k that P(x^{k+1}) dropped, summed over the run.
  std::size_t mask_regressions = 0;
  std::vector<krylov::KrylovStats> inner_stats;
  /// Nonsmooth residual ||.||_inf after each solve.
  std::vector<double> residual_history;
  /// Set when t2_data was supplied.
  std::optional<double> vtb;
  /// v^T b = 0 under T2: x + alpha w, alpha >= 0, are all solutions.
  bool family_along_w = false;
  std::optional<Vector> family_direction;

  std::size_t total_inner_iterations() const;
};

struct PlsSolution {
  Vector x;
  /// max{0,x} (or max{xi,x} - xi for shifted problems).
  Vector y;
  SolveStatus status = SolveStatus::Converged;
  IterationReport report;
  ActiveMask mask;
};

/// Picard iteration P^0 = O, (I - P^k + T P^k) x^{k+1} = b.
///
/// Terminates when the mask repeats, then verifies the nonsmooth residual.
/// With t2_data, v^T b > 0 returns NoSolutionCertified without iterating,
/// and v^T b = 0 flags the solution family along w. Inner
/// krylov::NotConverged / krylov::Breakdown propagate to the caller.
PlsSolution solve_elliptic_pls(const PlsProblem& p, const SolverOptions& opts = {});

/// Picard iteration P^0 = O, (I + T P^k) x^{k+1} = b.
PlsSolution solve_parabolic_pls(const PlsProblem& p, const SolverOptions& opts = {});

/// Shifted forms through the substitution z = x - xi and rhs b - (I + T) xi.
/// MaxPlusTMin uses the complementary mask I - P_xi, realised as the
/// elliptic iteration on -z. Returns x in the original variable.
PlsSolution solve_shifted(const SparseMatrix& t, std::span<const double> b,
                          std::span<const double> xi, ShiftForm form,
                          const SolverOptions& opts = {});

/// Dispatches on kind and shift.
PlsSolution solve(const PlsProblem& p, const SolverOptions& opts = {});

/// ||lhs(x) - b||_inf for the given form:
///   Elliptic   min{0,x} + T max{0,x}
///   Parabolic  x + T max{0,x}
///   shifted    min{xi,x} + T max{xi,x}  or  max{xi,x} + T min{xi,x}
double residual_nonsmooth(const SparseMatrix& t, std::span<const double> b,
                          std::span<const double> x, PlsKind kind,
                          const std::optional<Shift>& shift = std::nullopt);

struct CheckReport {
  /// max(0, -min_i y_i)
  double worst_negativity = 0.0;
  /// max(0, -min_i (M y - b)_i), M = T (elliptic) or I + T (parabolic)
  double worst_infeasibility = 0.0;
  /// |y^T (M y - b)|
  double complementarity = 0.0;
  bool nonnegativity_ok = false;
  bool feasibility_ok = false;
  bool complementarity_ok = false;
  bool passed() const { return nonnegativity_ok && feasibility_ok && complementarity_ok; }
};

/// Verifies the LCP  y >= 0,  M y >= b,  y^T (M y - b) = 0.
/// Sign conditions are tested against -tol * (1 + ||.||_inf) of the quantity
/// they bound; complementarity against tol * ||y||_2 * ||b||_2.
CheckReport lcp_check(const SparseMatrix& t, std::span<const double> b,
                      std::span<const double> y, PlsKind kind, double tol);

}  // namespace plsolve
