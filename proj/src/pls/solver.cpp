#include "plsolve/pls/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "plsolve/matprops/matprops.hpp"

namespace plsolve {
namespace {


krylov::KrylovStats dense_solve(const MaskedOperator& op, std::span<const double> b,
                                Vector& x) {
  const SparseMatrix m = op.assemble();
  const auto n = static_cast<Eigen::Index>(m.n_rows());
  const auto dense = m.to_dense();
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      a(i, j) = dense[static_cast<std::size_t>(i * n + j)];
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) rhs(i) = b[static_cast<std::size_t>(i)];
  const Eigen::VectorXd sol = a.partialPivLu().solve(rhs);
  x.assign(sol.data(), sol.data() + n);
  Vector r = op.apply(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  const double res = norm2(r);
  return {1, res, std::isfinite(res), false};
}

// Shared outer loop of the elliptic and parabolic iterations.
PlsSolution picard(const PlsProblem& p, const SolverOptions& opts) {
  p.validate();
  opts.validate();
  const std::size_t n = p.b.size();
  const std::size_t max_outer = opts.max_outer == 0 ? n + 1 : opts.max_outer;
  const double b_inf = norm_inf(p.b);
  const double res_bound = opts.res_tol * b_inf;

  PlsSolution sol;
  sol.mask = ActiveMask(n);
  auto& rep = sol.report;

  if (p.t2_data && p.kind == PlsKind::Elliptic) {
    const auto cls = matprops::classify_solvability(p.t2_data->v, p.b);
    rep.vtb = cls.vtb;
    if (cls.verdict == matprops::SolvabilityVerdict::NoSolution) {
      sol.status = SolveStatus::NoSolutionCertified;
      sol.x.assign(n, 0.0);
      sol.y.assign(n, 0.0);
      return sol;
    }
    if (cls.verdict == matprops::SolvabilityVerdict::FamilyAlongW) {
      rep.family_along_w = true;
      rep.family_direction = p.t2_data->w;
    }
  }

  const SparseMatrix tt = p.t.transpose();
  ActiveMask mask(n);  // P^0 = O
  Vector x = opts.initial_guess.empty() ? Vector(n, 0.0) : opts.initial_guess;
  require_same_size(x.size(), n, "initial guess");

  while (true) {
    if (rep.outer_iterations >= max_outer) {
      sol.status = SolveStatus::MaxOuterExceeded;
      break;
    }
    const MaskedOperator op(p.t, tt, mask, p.kind);
    krylov::KrylovStats st;
    if (opts.inner == InnerSolver::Dense) {
      st = dense_solve(op, p.b, x);
    } else {
      // Warm start from x^k unless it is worse than zero. Components of x^k
      // that just became active meet the (possibly large) columns of T for
      // the first time, and the cancellation in b - M x^k then caps the
      // accuracy the Krylov recurrences can reach.
      if (rep.outer_iterations > 0 && norm2(subtract(p.b, op.apply(x))) > norm2(p.b))
        std::fill(x.begin(), x.end(), 0.0);
      auto r = krylov::qmr_solve(op, p.b, x, opts.krylov);
      x = std::move(r.x);
      st = r.stats;
    }
    ++rep.outer_iterations;
    rep.inner_stats.push_back(st);
    rep.residual_history.push_back(residual_nonsmooth(p.t, p.b, x, p.kind));

    const ActiveMask raw = active_mask(x, opts.sign_threshold);
    rep.raw_active_counts.push_back(raw.popcount());
    std::size_t dropped = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask[i] && !raw[i]) ++dropped;
    rep.mask_regressions += dropped;

    ActiveMask next = raw;
    if (opts.enforce_monotone_mask) next.join(mask);
    rep.active_counts.push_back(next.popcount());

    if (next == mask) {
      sol.status = SolveStatus::Converged;
      break;
    }
    // Singular T (T2): the all-active operator is T itself. The iteration
    // only gets here when (P^{k+1} - P^k) x^{k+1} = 0, i.e. x^{k+1} solves.
    if (p.t2_data && next.all() && p.kind == PlsKind::Elliptic &&
        rep.residual_history.back() <= res_bound) {
      mask = std::move(next);
      sol.status = SolveStatus::Converged;
      break;
    }
    mask = std::move(next);
  }

  sol.mask = mask;
  sol.y = positive_part(x);
  sol.x = std::move(x);
  if (sol.status == SolveStatus::Converged && !rep.residual_history.empty() &&
      rep.residual_history.back() > res_bound)
    sol.status = SolveStatus::ResidualCheckFailed;
  return sol;
}

}  // namespace

void PlsProblem::validate() const {
  if (!t.is_square()) throw DimensionError("PlsProblem: T not square");
  require_same_size(b.size(), static_cast<std::size_t>(t.n_rows()), "PlsProblem rhs");
  require_finite(b, "PlsProblem rhs");
  if (shift) require_same_size(shift->xi.size(), b.size(), "PlsProblem shift");
  if (t2_data) {
    require_same_size(t2_data->v.size(), b.size(), "PlsProblem v");
    require_same_size(t2_data->w.size(), b.size(), "PlsProblem w");
  }
}

void SolverOptions::validate() const {
  if (!(res_tol >= 0.0)) throw InvalidArgument("SolverOptions: res_tol must be >= 0");
  krylov.validate();
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::NoSolutionCertified: return "NoSolutionCertified";
    case SolveStatus::MaxOuterExceeded: return "MaxOuterExceeded";
    case SolveStatus::ResidualCheckFailed: return "ResidualCheckFailed";
  }
  return "?";
}

std::size_t IterationReport::total_inner_iterations() const {
  std::size_t s = 0;
  for (const auto& st : inner_stats) s += st.iterations;
  return s;
}

PlsSolution solve_elliptic_pls(const PlsProblem& p, const SolverOptions& opts) {
  if (p.kind != PlsKind::Elliptic) throw InvalidArgument("solve_elliptic_pls: problem is parabolic");
  if (p.shift) throw InvalidArgument("solve_elliptic_pls: use solve_shifted for shifted problems");
  return picard(p, opts);
}

PlsSolution solve_parabolic_pls(const PlsProblem& p, const SolverOptions& opts) {
  if (p.kind != PlsKind::Parabolic) throw InvalidArgument("solve_parabolic_pls: problem is elliptic");
  if (p.shift) throw InvalidArgument("solve_parabolic_pls: shifted parabolic systems are not supported");
  return picard(p, opts);
}

PlsSolution solve_shifted(const SparseMatrix& t, std::span<const double> b,
                          std::span<const double> xi, ShiftForm form,
                          const SolverOptions& opts) {
  if (!t.is_square()) throw DimensionError("solve_shifted: T not square");
  const std::size_t n = b.size();
  require_same_size(n, static_cast<std::size_t>(t.n_rows()), "solve_shifted rhs");
  require_same_size(xi.size(), n, "solve_shifted shift");

  // b - (I + T) xi
  Vector rhs = t.multiply(xi);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = b[i] - xi[i] - rhs[i];
  const double sign = form == ShiftForm::MinPlusTMax ? 1.0 : -1.0;
  if (sign < 0.0)
    for (auto& r : rhs) r = -r;

  PlsProblem reduced{t, std::move(rhs), PlsKind::Elliptic, std::nullopt, std::nullopt};
  SolverOptions inner = opts;
  if (!opts.initial_guess.empty()) {
    require_same_size(opts.initial_guess.size(), n, "initial guess");
    for (std::size_t i = 0; i < n; ++i) inner.initial_guess[i] = sign * (opts.initial_guess[i] - xi[i]);
  }
  PlsSolution sol = picard(reduced, inner);

  // z = sign * solution, x = xi + z, y = max{xi,x} - xi = max{0,z}
  for (std::size_t i = 0; i < n; ++i) {
    const double z = sign * sol.x[i];
    sol.x[i] = xi[i] + z;
    sol.y[i] = std::max(0.0, z);
  }
  return sol;
}

PlsSolution solve(const PlsProblem& p, const SolverOptions& opts) {
  if (p.shift) {
    if (p.kind != PlsKind::Elliptic)
      throw InvalidArgument("solve: shifted parabolic systems are not supported");
    return solve_shifted(p.t, p.b, p.shift->xi, p.shift->form, opts);
  }
  return p.kind == PlsKind::Elliptic ? solve_elliptic_pls(p, opts) : solve_parabolic_pls(p, opts);
}

double residual_nonsmooth(const SparseMatrix& t, std::span<const double> b,
                          std::span<const double> x, PlsKind kind,
                          const std::optional<Shift>& shift) {
  const std::size_t n = x.size();
  require_same_size(b.size(), n, "residual_nonsmooth rhs");
  require_same_size(static_cast<std::size_t>(t.n_cols()), n, "residual_nonsmooth T");
  Vector lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = shift ? shift->xi[i] : 0.0;
    lo[i] = std::min(s, x[i]);
    hi[i] = std::max(s, x[i]);
  }
  Vector r;
  if (shift && shift->form == ShiftForm::MaxPlusTMin) {
    require_same_size(shift->xi.size(), n, "residual_nonsmooth shift");
    r = t.multiply(lo);
    for (std::size_t i = 0; i < n; ++i) r[i] += hi[i] - b[i];
  } else {
    r = t.multiply(hi);
    const bool parabolic = kind == PlsKind::Parabolic && !shift;
    for (std::size_t i = 0; i < n; ++i) r[i] += (parabolic ? x[i] : lo[i]) - b[i];
  }
  return norm_inf(r);
}

CheckReport lcp_check(const SparseMatrix& t, std::span<const double> b,
                      std::span<const double> y, PlsKind kind, double tol) {
  const std::size_t n = y.size();
  require_same_size(b.size(), n, "lcp_check rhs");
  Vector slack = t.multiply(y);
  for (std::size_t i = 0; i < n; ++i) slack[i] += (kind == PlsKind::Parabolic ? y[i] : 0.0) - b[i];

  CheckReport rep;
  for (std::size_t i = 0; i < n; ++i) {
    rep.worst_negativity = std::max(rep.worst_negativity, -y[i]);
    rep.worst_infeasibility = std::max(rep.worst_infeasibility, -slack[i]);
  }
  rep.complementarity = std::fabs(dot(y, slack));
  rep.nonnegativity_ok = rep.worst_negativity <= tol * (1.0 + norm_inf(y));
  rep.feasibility_ok = rep.worst_infeasibility <= tol * (1.0 + norm_inf(b));
  rep.complementarity_ok = rep.complementarity <= tol * norm2(y) * norm2(b);
  return rep;
}

}  // namespace plsolve
