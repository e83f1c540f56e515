#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "plsolve/error.hpp"
#include "plsolve/numkit/linear_operator.hpp"

namespace plsolve::krylov {

enum class Preconditioner { None, Jacobi };

struct KrylovOptions {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  /// 0 selects the default of 10 * n.
  std::size_t max_iters = 0;
  Preconditioner preconditioner = Preconditioner::None;

  void validate() const;
};

struct KrylovStats {
  std::size_t iterations = 0;
  /// True residual ||b - A x||_2 of the returned iterate.
  double final_residual_norm = 0.0;
  bool converged = false;
  bool breakdown = false;
};

struct KrylovResult {
  Vector x;
  KrylovStats stats;
};

/// max_iters exhausted; carries the iterate with the smallest observed true residual.
class NotConverged : public Error {
 public:
  NotConverged(const std::string& what, Vector best, KrylovStats stats)
      : Error(what), best_(std::move(best)), stats_(stats) {}
  const Vector& best_iterate() const noexcept { return best_; }
  const KrylovStats& stats() const noexcept { return stats_; }

 private:
  Vector best_;
  KrylovStats stats_;
};

/// Serious Lanczos breakdown (a pivot below 1e-300 without convergence).
class Breakdown : public Error {
 public:
  Breakdown(const std::string& what, Vector best, KrylovStats stats)
      : Error(what), best_(std::move(best)), stats_(stats) {}
  const Vector& best_iterate() const noexcept { return best_; }
  const KrylovStats& stats() const noexcept { return stats_; }

 private:
  Vector best_;
  KrylovStats stats_;
};

/// Quasi-minimal residual method (Lanczos biorthogonalization, no look-ahead).
///
/// Convergence is declared on the true residual ||b - A x||_2 <=
/// rel_tol * ||b||_2 + abs_tol, recomputed every 10 iterations and whenever
/// the recurrence residual reaches the target. A recurrence that claims
/// convergence the true residual does not confirm restarts the Lanczos
/// process from the current iterate.
KrylovResult qmr_solve(const LinearOperator& op, std::span<const double> b,
                       std::span<const double> x0, const KrylovOptions& opts = {});

}  // namespace plsolve::krylov
