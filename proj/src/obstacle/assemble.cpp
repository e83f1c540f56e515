#include "plsolve/obstacle/obstacle.hpp"

namespace plsolve::obstacle {

DiscreteObstacle assemble_elliptic(const ObstacleSpec& spec, int n) {
  spec.validate();
  DiscreteObstacle d;
  d.spec = spec;
  d.grid = make_grid(spec.x_min, spec.x_max, spec.y_min, spec.y_max, n);
  const Grid2D& g = d.grid;
  const bool neumann = spec.bc == BoundaryKind::Neumann;
  const double dx = g.dx, dy = g.dy;
  // everything is multiplied through by dx^2: x-stencil (-1, 2, -1), y weight r
  const double r = (dx / dy) * (dx / dy);
  const std::size_t size = g.size();

  // Neumann elimination turns an edge row of the 1D stencil into
  // (2/3)(u1 - u2); the factor 3/2 restores symmetry.
  auto edge_scale = [&](int k, int last) { return neumann && (k == 1 || k == last) ? 1.5 : 1.0; };
  auto stencil_diag = [&](int k, int last) { return neumann && (k == 1 || k == last) ? 1.0 : 2.0; };

  std::vector<Triplet> trip;
  trip.reserve(5 * size);
  d.f_vec.assign(size, 0.0);
  d.psi_vec.assign(size, 0.0);
  d.row_scale.assign(size, 0.0);

  for (int j = 1; j <= g.ny; ++j) {
    for (int i = 1; i <= g.nx; ++i) {
      const auto row = static_cast<Index>(g.index(i, j));
      const double sx = edge_scale(i, g.nx);
      const double sy = edge_scale(j, g.ny);
      const double x = g.x(i), y = g.y(j);

      trip.push_back({row, row, sy * stencil_diag(i, g.nx) + r * sx * stencil_diag(j, g.ny)});
      if (i > 1) trip.push_back({row, static_cast<Index>(g.index(i - 1, j)), -sy});
      if (i < g.nx) trip.push_back({row, static_cast<Index>(g.index(i + 1, j)), -sy});
      if (j > 1) trip.push_back({row, static_cast<Index>(g.index(i, j - 1)), -r * sx});
      if (j < g.ny) trip.push_back({row, static_cast<Index>(g.index(i, j + 1)), -r * sx});

      const double scale = (dx * dx) * (sx * sy);
      double rhs = scale * spec.source(x, y);
      if (!neumann) {
        if (i == 1) rhs += spec.boundary_value(g.x(0), y);
        if (i == g.nx) rhs += spec.boundary_value(g.x(g.nx + 1), y);
        if (j == 1) rhs += r * spec.boundary_value(x, g.y(0));
        if (j == g.ny) rhs += r * spec.boundary_value(x, g.y(g.ny + 1));
      } else {
        if (i == 1) rhs += sy * dx * spec.boundary_flux(g.x(0), y, -1.0, 0.0);
        if (i == g.nx) rhs += sy * dx * spec.boundary_flux(g.x(g.nx + 1), y, 1.0, 0.0);
        if (j == 1) rhs += sx * (dx * dx / dy) * spec.boundary_flux(x, g.y(0), 0.0, -1.0);
        if (j == g.ny) rhs += sx * (dx * dx / dy) * spec.boundary_flux(x, g.y(g.ny + 1), 0.0, 1.0);
      }
      d.f_vec[row] = rhs;
      d.psi_vec[row] = spec.psi(x, y);
      d.row_scale[row] = scale;
    }
  }
  const auto ni = static_cast<Index>(size);
  d.t = SparseMatrix::from_triplets(trip, ni, ni);

  d.b = d.t.multiply(d.psi_vec);
  for (std::size_t k = 0; k < size; ++k) d.b[k] = d.f_vec[k] - d.b[k];

  if (neumann) {
    d.bc_kind = MatrixClass::T2;
    d.t2_data = T2Data{Vector(size, 1.0), Vector(size, 1.0)};
  } else {
    d.bc_kind = MatrixClass::T1;
  }
  return d;
}

}  // namespace plsolve::obstacle
