#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "plsolve/error.hpp"
#include "plsolve/matprops/matprops.hpp"
#include "plsolve/obstacle/obstacle.hpp"

using namespace plsolve;
using namespace plsolve::obstacle;

TEST_CASE("grid sizes and steps") {
  const auto d = assemble_elliptic(make_spec(ProblemName::Tent), 25);
  CHECK(d.psi_vec.size() == 625);
  CHECK(d.grid.dx == doctest::Approx(2.0 / 26.0));
  CHECK(d.grid.dy == doctest::Approx(4.0 / 26.0));
  const auto e = assemble_elliptic(make_spec(ProblemName::Torsion, -5.0), 10);
  CHECK(e.grid.dx == doctest::Approx(1.0 / 11.0));
  CHECK(e.grid.dy == doctest::Approx(1.0 / 11.0));
  CHECK_THROWS_AS(assemble_elliptic(make_spec(ProblemName::Tent), 1), GridError);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(make_spec(ProblemName::Torsion), InvalidArgument);
  CHECK_THROWS_AS(make_spec(ProblemName::Torsion, 1.0), InvalidArgument);
  CHECK(parse_problem("torsion-neumann") == ProblemName::TorsionNeumann);
  CHECK_FALSE(parse_problem("tents"));
  CHECK(parse_corner("yedge") == CornerRule::YEdge);
  CHECK_FALSE(parse_corner("corner"));
}

TEST_CASE("right-hand side is f - T psi") {
  for (auto name : {ProblemName::Tent, ProblemName::TentNeumann, ProblemName::Torsion, ProblemName::TorsionNeumann}) {
    const auto d = assemble_elliptic(make_spec(name, -10.0), 12);
    const auto tpsi = d.t.multiply(d.psi_vec);
    for (std::size_t i = 0; i < d.b.size(); ++i) CHECK(d.b[i] == d.f_vec[i] - tpsi[i]);
  }
}

TEST_CASE("Neumann tent right-hand side has negative sum") {
  const auto d = assemble_elliptic(make_spec(ProblemName::TentNeumann), 5);
  CHECK(std::accumulate(d.b.begin(), d.b.end(), 0.0) < 0.0);
  REQUIRE(d.t2_data);
  CHECK(d.bc_kind == MatrixClass::T2);
}

TEST_CASE("Neumann matrices are symmetric with zero row sums") {
  for (auto name : {ProblemName::TentNeumann, ProblemName::TorsionNeumann}) {
    const auto d = assemble_elliptic(make_spec(name, -5.0), 7);
    const auto ones = d.t.multiply(Vector(d.psi_vec.size(), 1.0));
    CHECK(norm_inf(ones) <= 1e-13);
    const auto tt = d.t.transpose();
    for (Index i = 0; i < d.t.n_rows(); ++i)
      for (Index j = 0; j < d.t.n_cols(); ++j) CHECK(d.t.at(i, j) == tt.at(i, j));
  }
}

TEST_CASE("matrix classes of the assemblies") {
  for (int n : {5, 10, 25}) {
    CHECK(matprops::check_t1(assemble_elliptic(make_spec(ProblemName::Tent), n).t).t1_verdict ==
          matprops::Verdict::Proven);
    CHECK(matprops::check_t1(assemble_elliptic(make_spec(ProblemName::Torsion, -5.0), n).t).t1_verdict ==
          matprops::Verdict::Proven);
  }
  CHECK(matprops::check_t2(assemble_elliptic(make_spec(ProblemName::TentNeumann), 10).t).t2_verdict ==
        matprops::Verdict::Proven);
}

TEST_CASE("implicit Euler step operators are M-matrices") {
  const auto d = assemble_elliptic(make_spec(ProblemName::Tent), 10);
  const double dt = 500.0;
  Vector s(d.row_scale.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = dt / d.row_scale[i];
  const auto step = d.t.row_scaled(s).plus_diagonal(Vector(s.size(), 1.0));
  CHECK(matprops::check_t1(step).t1_verdict == matprops::Verdict::Proven);
}

TEST_CASE("stationary iteration counts") {
  CHECK(solve_obstacle(make_spec(ProblemName::Tent), 25).report().outer_iterations == 6);
  CHECK(solve_obstacle(make_spec(ProblemName::Torsion, -20.0), 50).report().outer_iterations == 5);
  CHECK(solve_obstacle(make_spec(ProblemName::TentNeumann), 25).report().outer_iterations == 12);
}

TEST_CASE("tent solution shape") {
  const auto s = solve_obstacle(make_spec(ProblemName::Tent), 25);
  const double h2 = s.problem.grid.dx * s.problem.grid.dx;
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    CHECK(s.u[i] >= s.problem.psi_vec[i] - 1e-12);
    CHECK(s.u[i] >= 0.5 - 1e-12);
  }
  CHECK(*std::max_element(s.u.begin(), s.u.end()) == doctest::Approx(1.0).epsilon(2 * h2));
  CHECK(lcp_check(s.problem.t, s.problem.b, s.pls.y, PlsKind::Elliptic, 1e-8).passed());
}

TEST_CASE("coincidence sets") {
  const Vector psi{0.1, -2, 3};
  CHECK(coincidence_set(psi, psi) == std::vector<bool>{true, true, true});
  Vector above = psi;
  for (auto& x : above) x += 1.0;
  CHECK(coincidence_set(above, psi) == std::vector<bool>{false, false, false});

  const auto weak = solve_obstacle(make_spec(ProblemName::Torsion, -5.0), 50);
  const auto strong = solve_obstacle(make_spec(ProblemName::Torsion, -20.0), 50);
  std::size_t weak_count = 0, strong_count = 0;
  for (std::size_t i = 0; i < weak.coincidence.size(); ++i) {
    if (weak.coincidence[i]) {
      ++weak_count;
      CHECK(strong.coincidence[i]);
    }
    if (strong.coincidence[i]) ++strong_count;
  }
  CHECK(strong_count > weak_count);
}

TEST_CASE("parabolic runs") {
  SolverOptions o;
  o.krylov.preconditioner = krylov::Preconditioner::Jacobi;
  const auto tent = run_parabolic(make_spec(ProblemName::Tent), 25, 1e4, 20, o);
  CHECK(tent.dt == doctest::Approx(500.0));
  CHECK(tent.snapshots.size() == 21);
  CHECK(tent.lcp_ok);
  for (const auto& r : tent.per_step_reports) CHECK(r.outer_iterations == 5);

  const auto torsion = run_parabolic(make_spec(ProblemName::Torsion, -5.0), 25, 5.0, 20, o);
  for (const auto& r : torsion.per_step_reports) CHECK(r.outer_iterations == 9);
  CHECK(torsion.lcp_ok);

  CHECK_THROWS_AS(run_parabolic(make_spec(ProblemName::Tent), 5, 0.0, 20), InvalidArgument);
  CHECK_THROWS_AS(run_parabolic(make_spec(ProblemName::Tent), 5, 1.0, 0), InvalidArgument);
}

TEST_CASE("one huge implicit step approximates the stationary solution") {
  SolverOptions o;
  o.krylov.preconditioner = krylov::Preconditioner::Jacobi;
  for (auto name : {ProblemName::Tent, ProblemName::Torsion}) {
    const auto spec = make_spec(name, -10.0);
    const auto run = run_parabolic(spec, 15, 1e8, 1, o);
    const auto stat = solve_obstacle(spec, 15);
    const auto& u = run.snapshots.back();
    CHECK(norm_inf(subtract(u, stat.u)) <= 1e-4);
  }
}

TEST_CASE("initial conditions") {
  const auto tent = assemble_elliptic(make_spec(ProblemName::Tent), 9);
  const auto u0 = initial_condition(tent, InitialCondition::ProblemDefault);
  for (std::size_t i = 0; i < u0.size(); ++i) CHECK(u0[i] == std::max(tent.psi_vec[i], 0.5));
  const auto torsion = assemble_elliptic(make_spec(ProblemName::Torsion, -5.0), 9);
  CHECK(initial_condition(torsion, InitialCondition::ProblemDefault) == torsion.psi_vec);
  const auto zero = initial_condition(torsion, InitialCondition::Prescribed);
  for (double x : zero) CHECK(x == 0.0);
}

TEST_CASE("grid refinement is second order") {
  // Torsion solutions on nested grids N = 9, 19, 39 share the nodes of the
  // coarsest grid; differences should shrink roughly fourfold.
  auto at_coarse = [](int n) {
    const auto s = solve_obstacle(make_spec(ProblemName::Torsion, -5.0), n);
    const int stride = (n + 1) / 10;
    Vector out;
    for (int j = 1; j <= 9; ++j)
      for (int i = 1; i <= 9; ++i) out.push_back(s.u[s.problem.grid.index(i * stride, j * stride)]);
    return out;
  };
  const auto u10 = at_coarse(9), u20 = at_coarse(19), u40 = at_coarse(39);
  const double e1 = norm_inf(subtract(u10, u20));
  const double e2 = norm_inf(subtract(u20, u40));
  CHECK(e1 >= 3.0 * e2);
}

TEST_CASE("field reconstruction and CSV") {
  const auto s = solve_obstacle(make_spec(ProblemName::Tent), 6);
  const auto f = reconstruct_field(s.problem, s.u);
  CHECK(f.u.size() == 64);
  CHECK(f.u.front() == 0.5);
  std::ostringstream out;
  write_field_csv(out, f);
  const std::string text = out.str();
  CHECK(text.rfind("x,y,u,psi,active\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 65);
}

TEST_CASE("Neumann edges follow the one-sided flux rule; corners depend on the rule only") {
  FullField fields[3];
  const CornerRule rules[3] = {CornerRule::Average, CornerRule::XEdge, CornerRule::YEdge};
  std::size_t k[3];
  for (int r = 0; r < 3; ++r) {
    const auto s = solve_obstacle(make_spec(ProblemName::TorsionNeumann, -5.0, rules[r]), 8);
    k[r] = s.report().outer_iterations;
    fields[r] = reconstruct_field(s.problem, s.u);
    const auto& g = s.problem.grid;
    const int m = g.nx + 2;
    // left edge, j = 3: (-3 u0 + 4 u1 - u2) / (2 dx) = -du/dn = -dpsi/dn
    const auto at = [&](int i, int j) { return fields[r].u[static_cast<std::size_t>(j * m + i)]; };
    const double g_left = s.problem.spec.boundary_flux(g.x(0), g.y(3), -1.0, 0.0);
    CHECK((-3 * at(0, 3) + 4 * at(1, 3) - at(2, 3)) / (2 * g.dx) == doctest::Approx(-g_left));
  }
  CHECK(k[0] == k[1]);
  CHECK(k[1] == k[2]);
  const int m = 10;
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) {
      const bool corner = (i == 0 || i == m - 1) && (j == 0 || j == m - 1);
      const auto idx = static_cast<std::size_t>(j * m + i);
      if (!corner) {
        CHECK(fields[0].u[idx] == fields[1].u[idx]);
        CHECK(fields[0].u[idx] == fields[2].u[idx]);
      } else {
        CHECK(fields[0].u[idx] == doctest::Approx(0.5 * (fields[1].u[idx] + fields[2].u[idx])));
      }
    }
}
