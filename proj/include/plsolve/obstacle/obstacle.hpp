#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plsolve/numkit/sparse_matrix.hpp"
#include "plsolve/pls/solver.hpp"

namespace plsolve::obstacle {

/// Uniform cartesian grid; interior nodes are i = 1..nx, j = 1..ny and the
/// boundary sits at i = 0, nx + 1 and j = 0, ny + 1.
struct Grid2D {
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;
  int nx = 0, ny = 0;
  double dx = 0.0, dy = 0.0;

  double x(int i) const { return x_min + i * dx; }
  double y(int j) const { return y_min + j * dy; }
  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  /// Row-major interior index, x fastest; i, j are 1-based interior labels.
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j - 1) * static_cast<std::size_t>(nx) +
           static_cast<std::size_t>(i - 1);
  }
};

/// Throws GridError when n < 2 or the ranges are empty.
Grid2D make_grid(double x_min, double x_max, double y_min, double y_max, int n);

enum class ProblemName { Tent, TentNeumann, Torsion, TorsionNeumann };

const char* to_string(ProblemName p);
std::optional<ProblemName> parse_problem(std::string_view s);

/// How the normal derivative is extended to the four domain corners when
/// eliminated boundary values are reconstructed for output.
enum class CornerRule { Average, XEdge, YEdge };

const char* to_string(CornerRule c);
std::optional<CornerRule> parse_corner(std::string_view s);

/// Time-stepping start state.
enum class InitialCondition {
  /// Tent: Prescribed. Torsion: Obstacle.
  ProblemDefault,
  /// u0 = max(psi, boundary value); psi alone for Neumann problems.
  Prescribed,
  /// u0 = psi.
  Obstacle,
};

using ScalarField = std::function<double(double, double)>;
/// Outward normal derivative at a boundary point with outward normal (nx, ny).
using FluxField = std::function<double(double, double, double, double)>;

enum class BoundaryKind { Dirichlet, Neumann };

struct ObstacleSpec {
  ProblemName name = ProblemName::Tent;
  std::optional<double> c;
  BoundaryKind bc = BoundaryKind::Dirichlet;
  /// Dirichlet boundary value g(x, y).
  ScalarField boundary_value;
  /// Neumann flux du/dn.
  FluxField boundary_flux;
  ScalarField source;
  ScalarField psi;
  CornerRule corner = CornerRule::Average;
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;

  void validate() const;
};

/// Benchmark problems on their domains:
///   Tent            (-1,1)x(-2,2), psi = min(1-|x|, 2-|y|), f = 0, u = 1/2 on the boundary
///   TentNeumann     same obstacle, f = -1, homogeneous Neumann
///   Torsion         (0,1)^2, psi = -min(x,1-x,y,1-y), f = C < 0, u = 0 on the boundary
///   TorsionNeumann  same, du/dn = dpsi/dn on the boundary
/// Throws InvalidArgument when C is missing or not negative for torsion.
ObstacleSpec make_spec(ProblemName name, std::optional<double> c = std::nullopt,
                       CornerRule corner = CornerRule::Average);

enum class MatrixClass { T1, T2 };

struct DiscreteObstacle {
  Grid2D grid;
  /// Scaled negative Laplacian; for Neumann problems symmetric with
  /// T 1 = 0 and 1^T T = 0.
  SparseMatrix t;
  Vector f_vec;
  Vector psi_vec;
  /// f_vec - T psi_vec
  Vector b;
  /// T = diag(row_scale) * A with A the eliminated discrete -Laplacian.
  Vector row_scale;
  MatrixClass bc_kind = MatrixClass::T1;
  std::optional<T2Data> t2_data;
  ObstacleSpec spec;
};

/// Five-point scheme on an n x n interior grid (n^2 unknowns, row-major,
/// x fastest). Dirichlet data are folded into f_vec. Neumann boundary values
/// are eliminated with the one-sided rule (-3u0 + 4u1 - u2)/(2h) = -g and the
/// affected rows are scaled so that T stays symmetric. Throws GridError for n < 2.
DiscreteObstacle assemble_elliptic(const ObstacleSpec& spec, int n);

struct ObstacleSolution {
  DiscreteObstacle problem;
  /// max{0,x} + psi at the interior nodes.
  Vector u;
  std::vector<bool> coincidence;
  PlsSolution pls;
  const IterationReport& report() const { return pls.report; }
};

ObstacleSolution solve_obstacle(const ObstacleSpec& spec, int n, const SolverOptions& opts = {});

struct ParabolicRun {
  double tau = 0.0;
  int nu = 0;
  double dt = 0.0;
  std::vector<IterationReport> per_step_reports;
  std::vector<SolveStatus> per_step_status;
  /// nu + 1 interior fields, the initial condition first.
  std::vector<Vector> snapshots;
  DiscreteObstacle problem;
  /// Worst lcp_check over the steps (all true when every step passed).
  bool lcp_ok = true;
};

/// Implicit Euler: each step solves x + dt A max{0,x} = (u^n - psi) + dt (f - A psi)
/// for the shift x = u^{n+1} - psi, starting from P^0 = O.
ParabolicRun run_parabolic(const ObstacleSpec& spec, int n, double tau, int nu,
                           const SolverOptions& opts = {},
                           InitialCondition ic = InitialCondition::ProblemDefault,
                           double lcp_tol = 1e-8);

Vector initial_condition(const DiscreteObstacle& d, InitialCondition ic);

/// Bit i set when u_i - psi_i <= coin_tol * (1 + ||u||_inf).
std::vector<bool> coincidence_set(std::span<const double> u, std::span<const double> psi,
                                  double coin_tol = 1e-8);

/// Full (n+2) x (n+2) field including boundary nodes, row-major, x fastest.
struct FullField {
  std::vector<double> x, y, u, psi;
  std::vector<bool> active;
};

/// Adds boundary nodes: Dirichlet values, or the one-sided reconstruction for
/// Neumann problems (corners per spec.corner).
FullField reconstruct_field(const DiscreteObstacle& d, std::span<const double> u_interior,
                            double coin_tol = 1e-8);

/// CSV with header `x,y,u,psi,active`, 17 significant digits; `active` marks
/// the coincidence set u = psi.
void write_field_csv(std::ostream& out, const FullField& field);

}  // namespace plsolve::obstacle
