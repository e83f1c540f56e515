#include <algorithm>
#include <cmath>

#include "plsolve/obstacle/obstacle.hpp"

namespace plsolve::obstacle {

Grid2D make_grid(double x_min, double x_max, double y_min, double y_max, int n) {
  if (n < 2) throw GridError("grid needs at least 2 interior points per direction, got " + std::to_string(n));
  if (!(x_max > x_min) || !(y_max > y_min)) throw GridError("empty domain");
  Grid2D g;
  g.x_min = x_min;
  g.x_max = x_max;
  g.y_min = y_min;
  g.y_max = y_max;
  g.nx = n;
  g.ny = n;
  g.dx = (x_max - x_min) / (n + 1);
  g.dy = (y_max - y_min) / (n + 1);
  return g;
}

const char* to_string(ProblemName p) {
  switch (p) {
    case ProblemName::Tent: return "tent";
    case ProblemName::TentNeumann: return "tent-neumann";
    case ProblemName::Torsion: return "torsion";
    case ProblemName::TorsionNeumann: return "torsion-neumann";
  }
  return "?";
}

std::optional<ProblemName> parse_problem(std::string_view s) {
  if (s == "tent") return ProblemName::Tent;
  if (s == "tent-neumann") return ProblemName::TentNeumann;
  if (s == "torsion") return ProblemName::Torsion;
  if (s == "torsion-neumann") return ProblemName::TorsionNeumann;
  return std::nullopt;
}

const char* to_string(CornerRule c) {
  switch (c) {
    case CornerRule::Average: return "average";
    case CornerRule::XEdge: return "xedge";
    case CornerRule::YEdge: return "yedge";
  }
  return "?";
}

std::optional<CornerRule> parse_corner(std::string_view s) {
  if (s == "average") return CornerRule::Average;
  if (s == "xedge") return CornerRule::XEdge;
  if (s == "yedge") return CornerRule::YEdge;
  return std::nullopt;
}

void ObstacleSpec::validate() const {
  if (!psi || !source) throw InvalidArgument("obstacle spec: missing psi or source");
  if (bc == BoundaryKind::Dirichlet && !boundary_value)
    throw InvalidArgument("obstacle spec: Dirichlet problem without boundary value");
  if (bc == BoundaryKind::Neumann && !boundary_flux)
    throw InvalidArgument("obstacle spec: Neumann problem without boundary flux");
  const bool torsion = name == ProblemName::Torsion || name == ProblemName::TorsionNeumann;
  if (torsion && !(c && *c < 0.0)) throw InvalidArgument("torsion problem requires C < 0");
}

ObstacleSpec make_spec(ProblemName name, std::optional<double> c, CornerRule corner) {
  ObstacleSpec s;
  s.name = name;
  s.corner = corner;
  switch (name) {
    case ProblemName::Tent:
    case ProblemName::TentNeumann: {
      s.x_min = -1.0;
      s.x_max = 1.0;
      s.y_min = -2.0;
      s.y_max = 2.0;
      s.psi = [](double x, double y) { return std::min(1.0 - std::fabs(x), 2.0 - std::fabs(y)); };
      if (name == ProblemName::Tent) {
        s.bc = BoundaryKind::Dirichlet;
        s.boundary_value = [](double, double) { return 0.5; };
        s.source = [](double, double) { return 0.0; };
      } else {
        s.bc = BoundaryKind::Neumann;
        s.boundary_flux = [](double, double, double, double) { return 0.0; };
        s.source = [](double, double) { return -1.0; };
      }
      break;
    }
    case ProblemName::Torsion:
    case ProblemName::TorsionNeumann: {
      if (!(c && *c < 0.0)) throw InvalidArgument("torsion problem requires C < 0");
      s.c = c;
      s.x_min = s.y_min = 0.0;
      s.x_max = s.y_max = 1.0;
      s.psi = [](double x, double y) {
        return -std::min(std::min(x, 1.0 - x), std::min(y, 1.0 - y));
      };
      const double cv = *c;
      s.source = [cv](double, double) { return cv; };
      if (name == ProblemName::Torsion) {
        s.bc = BoundaryKind::Dirichlet;
        s.boundary_value = [](double, double) { return 0.0; };
      } else {
        s.bc = BoundaryKind::Neumann;
        // dpsi/dn: on every edge the distance-to-that-edge branch is the
        // minimiser, so psi = -dist and its outward derivative is 1.
        s.boundary_flux = [](double, double, double, double) { return 1.0; };
      }
      break;
    }
  }
  return s;
}

}  // namespace plsolve::obstacle
