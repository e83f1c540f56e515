#include <iomanip>
#include <ostream>

#include "plsolve/obstacle/obstacle.hpp"

namespace plsolve::obstacle {
namespace {

// Second-order one-sided elimination: (-3u0 + 4u1 - u2) / (2h) = -g.
double extrapolate(double u1, double u2, double h, double g) { return (4.0 * u1 - u2 + 2.0 * h * g) / 3.0; }

}  // namespace

FullField reconstruct_field(const DiscreteObstacle& d, std::span<const double> u_interior,
                            double coin_tol) {
  const Grid2D& g = d.grid;
  require_same_size(u_interior.size(), g.size(), "reconstruct_field");
  const int mx = g.nx + 2, my = g.ny + 2;
  const auto full = static_cast<std::size_t>(mx) * static_cast<std::size_t>(my);
  FullField f;
  f.x.resize(full);
  f.y.resize(full);
  f.u.assign(full, 0.0);
  f.psi.resize(full);
  auto at = [mx](int i, int j) { return static_cast<std::size_t>(j) * static_cast<std::size_t>(mx) + static_cast<std::size_t>(i); };

  for (int j = 0; j < my; ++j)
    for (int i = 0; i < mx; ++i) {
      const std::size_t k = at(i, j);
      f.x[k] = g.x(i);
      f.y[k] = g.y(j);
      f.psi[k] = d.spec.psi(f.x[k], f.y[k]);
    }
  for (int j = 1; j <= g.ny; ++j)
    for (int i = 1; i <= g.nx; ++i) f.u[at(i, j)] = u_interior[g.index(i, j)];

  const int ex = g.nx + 1, ey = g.ny + 1;
  if (d.spec.bc == BoundaryKind::Dirichlet) {
    for (int j = 0; j < my; ++j)
      for (int i = 0; i < mx; ++i)
        if (i == 0 || j == 0 || i == ex || j == ey) f.u[at(i, j)] = d.spec.boundary_value(f.x[at(i, j)], f.y[at(i, j)]);
  } else {
    const auto& flux = d.spec.boundary_flux;
    for (int j = 1; j <= g.ny; ++j) {
      f.u[at(0, j)] = extrapolate(f.u[at(1, j)], f.u[at(2, j)], g.dx, flux(g.x(0), g.y(j), -1.0, 0.0));
      f.u[at(ex, j)] = extrapolate(f.u[at(ex - 1, j)], f.u[at(ex - 2, j)], g.dx, flux(g.x(ex), g.y(j), 1.0, 0.0));
    }
    for (int i = 1; i <= g.nx; ++i) {
      f.u[at(i, 0)] = extrapolate(f.u[at(i, 1)], f.u[at(i, 2)], g.dy, flux(g.x(i), g.y(0), 0.0, -1.0));
      f.u[at(i, ey)] = extrapolate(f.u[at(i, ey - 1)], f.u[at(i, ey - 2)], g.dy, flux(g.x(i), g.y(ey), 0.0, 1.0));
    }
    // Corners: continue along the x-edge row or the y-edge column, with the
    // flux taken at the neighbouring edge node.
    for (int ci : {0, ex})
      for (int cj : {0, ey}) {
        const int si = ci == 0 ? 1 : -1, sj = cj == 0 ? 1 : -1;
        const double nx = ci == 0 ? -1.0 : 1.0, ny = cj == 0 ? -1.0 : 1.0;
        const double along_row = extrapolate(f.u[at(ci + si, cj)], f.u[at(ci + 2 * si, cj)], g.dx,
                                             flux(g.x(ci), g.y(cj + sj), nx, 0.0));
        const double along_col = extrapolate(f.u[at(ci, cj + sj)], f.u[at(ci, cj + 2 * sj)], g.dy,
                                             flux(g.x(ci + si), g.y(cj), 0.0, ny));
        double v = 0.5 * (along_row + along_col);
        if (d.spec.corner == CornerRule::XEdge) v = along_row;
        if (d.spec.corner == CornerRule::YEdge) v = along_col;
        f.u[at(ci, cj)] = v;
      }
  }
  f.active = coincidence_set(f.u, f.psi, coin_tol);
  return f;
}

void write_field_csv(std::ostream& out, const FullField& field) {
  const auto old_flags = out.flags();
  const auto old_prec = out.precision();
  out << "x,y,u,psi,active\n" << std::setprecision(17);
  for (std::size_t k = 0; k < field.u.size(); ++k)
    out << field.x[k] << ',' << field.y[k] << ',' << field.u[k] << ',' << field.psi[k] << ','
        << (field.active[k] ? 1 : 0) << '\n';
  out.flags(old_flags);
  out.precision(old_prec);
}

}  // namespace plsolve::obstacle
