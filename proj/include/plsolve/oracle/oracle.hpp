#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "plsolve/numkit/masked_operator.hpp"
#include "plsolve/numkit/sparse_matrix.hpp"

namespace plsolve::oracle {

inline constexpr std::size_t kMaxEnumerationSize = 20;

/// Ray of solutions base + alpha * direction, alpha in [0, alpha_max].
/// alpha_max is +inf for an unbounded ray; when `upper_open` the endpoint
/// alpha_max itself is excluded (an inactive component reaches zero there).
struct SolutionFamily {
  Vector base;
  Vector direction;
  double alpha_max = std::numeric_limits<double>::infinity();
  bool upper_open = false;
};

struct OracleResult {
  std::vector<Vector> point_solutions;
  std::vector<SolutionFamily> families;
  std::size_t patterns_tested = 0;
};

/// Reference solver: tries every mask P in {0,1}^n, solves the masked system
/// densely, and keeps sign-consistent solutions. Singular but consistent
/// pattern systems with a one-dimensional null space yield families.
/// Throws TooLarge for n > 20.
OracleResult enumerate_solutions(const SparseMatrix& t, std::span<const double> b, PlsKind kind);

/// Diagonal W with P(x) x - P(y) y = W (x - y), entries in [0, 1].
struct WDiagonal {
  Vector omegas;
};

WDiagonal w_matrix(std::span<const double> x, std::span<const double> y);

}  // namespace plsolve::oracle
