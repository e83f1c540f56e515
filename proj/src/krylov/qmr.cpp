#include "plsolve/krylov/qmr.hpp"

#include <cmath>
#include <limits>

namespace plsolve::krylov {
namespace {

constexpr double kPivotFloor = 1e-300;
constexpr std::size_t kTrueResidualEvery = 10;
constexpr std::size_t kStagnationChecks = 5;
constexpr double kStagnationRatio = 0.99;

void residual(const LinearOperator& op, std::span<const double> b,
              std::span<const double> x, std::span<double> r) {
  op.apply(x, r);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
}

// Outcome of one Lanczos cycle.
enum class Cycle { Converged, Restart, Breakdown, Exhausted };

}  // namespace

void KrylovOptions::validate() const {
  if (!(rel_tol >= 0.0)) throw InvalidArgument("krylov: rel_tol must be >= 0");
  if (!(abs_tol >= 0.0)) throw InvalidArgument("krylov: abs_tol must be >= 0");
}

KrylovResult qmr_solve(const LinearOperator& op, std::span<const double> b,
                       std::span<const double> x0, const KrylovOptions& opts) {
  opts.validate();
  const std::size_t n = op.size();
  require_same_size(b.size(), n, "qmr rhs");
  require_same_size(x0.size(), n, "qmr initial guess");
  const std::size_t max_iters = opts.max_iters == 0 ? 10 * std::max<std::size_t>(n, 1)
                                                    : opts.max_iters;

  Vector minv(n, 1.0);
  if (opts.preconditioner == Preconditioner::Jacobi) {
    const Vector d = op.diagonal();
    for (std::size_t i = 0; i < n; ++i) minv[i] = d[i] != 0.0 ? 1.0 / d[i] : 1.0;
  }

  const double target = opts.rel_tol * norm2(b) + opts.abs_tol;

  KrylovResult out;
  out.x.assign(x0.begin(), x0.end());
  Vector r(n);
  residual(op, b, out.x, r);
  double true_res = norm2(r);

  Vector best = out.x;
  double best_res = true_res;
  std::size_t iters = 0;

  auto note_true = [&](double res) {
    true_res = res;
    if (res < best_res) {
      best_res = res;
      best = out.x;
    }
  };

  if (true_res <= target) {
    out.stats = {0, true_res, true, false};
    return out;
  }

  Vector v(n), w(n), y(n), z(n), vt(n), wt(n), p(n), q(n), pt(n), d(n), s(n), tmp(n);
  std::size_t consecutive_breakdowns = 0;

  // Each pass of this loop is one Lanczos cycle started from the current x.
  while (true) {
    residual(op, b, out.x, r);
    vt = r;
    for (std::size_t i = 0; i < n; ++i) y[i] = minv[i] * vt[i];
    double rho = norm2(y);
    wt = r;
    z = wt;  // M2 = I
    double xi = norm2(z);
    double gamma_prev = 1.0, eta = -1.0, theta_prev = 0.0, eps_prev = 1.0;
    const std::size_t cycle_start = iters;
    double window_start_res = true_res;
    std::size_t window_checks = 0;
    // The recurrences can settle on a residual the true one does not follow
    // (roundoff in a badly scaled or preconditioned system); a fresh
    // Lanczos start from the current iterate re-synchronizes them.
    auto stagnating = [&](double res) {
      if (++window_checks < kStagnationChecks) return false;
      const bool stalled = res > kStagnationRatio * window_start_res;
      window_start_res = res;
      window_checks = 0;
      return stalled;
    };

    Cycle outcome = Cycle::Exhausted;
    for (std::size_t i = 1; iters < max_iters; ++i) {
      if (rho < kPivotFloor || xi < kPivotFloor) {
        outcome = Cycle::Breakdown;
        break;
      }
      for (std::size_t k = 0; k < n; ++k) {
        v[k] = vt[k] / rho;
        y[k] /= rho;
        w[k] = wt[k] / xi;
        z[k] /= xi;
      }
      const double delta = dot(z, y);
      if (std::fabs(delta) < kPivotFloor) {
        outcome = Cycle::Breakdown;
        break;
      }
      // ytilde = M2^{-1} y = y ; ztilde = M1^{-T} z
      if (i == 1) {
        p = y;
        for (std::size_t k = 0; k < n; ++k) q[k] = minv[k] * z[k];
      } else {
        const double cp = xi * delta / eps_prev;
        const double cq = rho * delta / eps_prev;
        for (std::size_t k = 0; k < n; ++k) {
          p[k] = y[k] - cp * p[k];
          q[k] = minv[k] * z[k] - cq * q[k];
        }
      }
      op.apply(p, pt);
      const double eps = dot(q, pt);
      if (std::fabs(eps) < kPivotFloor) {
        outcome = Cycle::Breakdown;
        break;
      }
      const double beta = eps / delta;
      if (std::fabs(beta) < kPivotFloor) {
        outcome = Cycle::Breakdown;
        break;
      }
      for (std::size_t k = 0; k < n; ++k) vt[k] = pt[k] - beta * v[k];
      for (std::size_t k = 0; k < n; ++k) y[k] = minv[k] * vt[k];
      const double rho_next = norm2(y);
      op.apply_transpose(q, tmp);
      for (std::size_t k = 0; k < n; ++k) wt[k] = tmp[k] - beta * w[k];
      z = wt;
      const double xi_next = norm2(z);

      const double theta = rho_next / (gamma_prev * std::fabs(beta));
      const double gamma = 1.0 / std::sqrt(1.0 + theta * theta);
      if (gamma < kPivotFloor) {
        outcome = Cycle::Breakdown;
        break;
      }
      eta = -eta * rho * gamma * gamma / (beta * gamma_prev * gamma_prev);
      if (i == 1) {
        for (std::size_t k = 0; k < n; ++k) {
          d[k] = eta * p[k];
          s[k] = eta * pt[k];
        }
      } else {
        const double c = (theta_prev * gamma) * (theta_prev * gamma);
        for (std::size_t k = 0; k < n; ++k) {
          d[k] = eta * p[k] + c * d[k];
          s[k] = eta * pt[k] + c * s[k];
        }
      }
      for (std::size_t k = 0; k < n; ++k) {
        out.x[k] += d[k];
        r[k] -= s[k];
      }
      ++iters;
      consecutive_breakdowns = 0;

      const double rec_res = norm2(r);
      const bool claims = rec_res <= target;
      if (claims || (iters - cycle_start) % kTrueResidualEvery == 0) {
        residual(op, b, out.x, tmp);
        note_true(norm2(tmp));
        if (true_res <= target) {
          outcome = Cycle::Converged;
          break;
        }
        if (claims || stagnating(true_res)) {
          outcome = Cycle::Restart;
          break;
        }
      }

      rho = rho_next;
      xi = xi_next;
      gamma_prev = gamma;
      theta_prev = theta;
      eps_prev = eps;
    }

    if (outcome == Cycle::Converged) {
      out.stats = {iters, true_res, true, false};
      return out;
    }
    if (outcome == Cycle::Breakdown || outcome == Cycle::Restart) {
      // An exhausted Krylov space may still carry the solution.
      residual(op, b, out.x, tmp);
      note_true(norm2(tmp));
      if (true_res <= target) {
        out.stats = {iters, true_res, true, outcome == Cycle::Breakdown};
        return out;
      }
      if (outcome == Cycle::Breakdown && ++consecutive_breakdowns >= 2) {
        KrylovStats st{iters, best_res, false, true};
        throw Breakdown("qmr: serious Lanczos breakdown", best, st);
      }
      if (iters < max_iters) continue;
    }
    // The budget ran out between true-residual checks; the last iterate may
    // still be the best one.
    residual(op, b, out.x, tmp);
    note_true(norm2(tmp));
    KrylovStats st{iters, best_res, false, false};
    throw NotConverged("qmr: no convergence within " + std::to_string(max_iters) +
                           " iterations (residual " + std::to_string(best_res) + ")",
                       best, st);
  }
}

}  // namespace plsolve::krylov
