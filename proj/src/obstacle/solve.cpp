#include <algorithm>

#include "plsolve/obstacle/obstacle.hpp"

namespace plsolve::obstacle {

std::vector<bool> coincidence_set(std::span<const double> u, std::span<const double> psi,
                                  double coin_tol) {
  require_same_size(u.size(), psi.size(), "coincidence_set");
  const double tol = coin_tol * (1.0 + norm_inf(u));
  std::vector<bool> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] - psi[i] <= tol;
  return out;
}

ObstacleSolution solve_obstacle(const ObstacleSpec& spec, int n, const SolverOptions& opts) {
  ObstacleSolution out;
  out.problem = assemble_elliptic(spec, n);
  const DiscreteObstacle& d = out.problem;
  PlsProblem p{d.t, d.b, PlsKind::Elliptic, std::nullopt, d.t2_data};
  out.pls = solve(p, opts);
  out.u.resize(d.psi_vec.size());
  for (std::size_t i = 0; i < out.u.size(); ++i) out.u[i] = out.pls.y[i] + d.psi_vec[i];
  out.coincidence = coincidence_set(out.u, d.psi_vec);
  return out;
}

Vector initial_condition(const DiscreteObstacle& d, InitialCondition ic) {
  if (ic == InitialCondition::ProblemDefault) {
    const bool torsion = d.spec.name == ProblemName::Torsion || d.spec.name == ProblemName::TorsionNeumann;
    ic = torsion ? InitialCondition::Obstacle : InitialCondition::Prescribed;
  }
  Vector u = d.psi_vec;
  if (ic == InitialCondition::Prescribed && d.spec.bc == BoundaryKind::Dirichlet) {
    const Grid2D& g = d.grid;
    for (int j = 1; j <= g.ny; ++j)
      for (int i = 1; i <= g.nx; ++i) {
        const std::size_t k = g.index(i, j);
        u[k] = std::max(u[k], d.spec.boundary_value(g.x(i), g.y(j)));
      }
  }
  return u;
}

ParabolicRun run_parabolic(const ObstacleSpec& spec, int n, double tau, int nu,
                           const SolverOptions& opts, InitialCondition ic, double lcp_tol) {
  if (!(tau > 0.0)) throw InvalidArgument("run_parabolic: tau must be positive");
  if (nu < 1) throw InvalidArgument("run_parabolic: nu must be at least 1");
  ParabolicRun run;
  run.tau = tau;
  run.nu = nu;
  run.dt = tau / nu;
  run.problem = assemble_elliptic(spec, n);
  const DiscreteObstacle& d = run.problem;
  const std::size_t size = d.psi_vec.size();

  // Undo the row scaling so that the time step multiplies the plain
  // discrete operator: dt A = diag(dt / row_scale) T.
  Vector step_scale(size);
  for (std::size_t k = 0; k < size; ++k) step_scale[k] = run.dt / d.row_scale[k];
  const SparseMatrix t_step = d.t.row_scaled(step_scale);

  Vector u = initial_condition(d, ic);
  run.snapshots.push_back(u);
  PlsProblem p{t_step, Vector(size), PlsKind::Parabolic, std::nullopt, std::nullopt};
  for (int s = 0; s < nu; ++s) {
    for (std::size_t k = 0; k < size; ++k)
      p.b[k] = (u[k] - d.psi_vec[k]) + step_scale[k] * d.b[k];
    PlsSolution sol = solve_parabolic_pls(p, opts);
    if (!lcp_check(t_step, p.b, sol.y, PlsKind::Parabolic, lcp_tol).passed()) run.lcp_ok = false;
    for (std::size_t k = 0; k < size; ++k) u[k] = sol.y[k] + d.psi_vec[k];
    run.snapshots.push_back(u);
    run.per_step_reports.push_back(std::move(sol.report));
    run.per_step_status.push_back(sol.status);
  }
  return run;
}

}  // namespace plsolve::obstacle
