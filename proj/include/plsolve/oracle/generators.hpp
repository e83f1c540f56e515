#pragma once

#include <cstdint>
#include <random>

#include "plsolve/numkit/sparse_matrix.hpp"

namespace plsolve::oracle {

/// Random nonsingular M-matrix of order n. Even draws are strictly diagonally
/// dominant; odd draws are s I - B with B >= 0 dense-ish and s slightly above
/// rho(B), so dominance does not hold in general.
SparseMatrix random_t1_matrix(std::size_t n, std::mt19937_64& rng);

/// Right-hand side with entries uniform in [-1, 1] and both signs present.
Vector random_mixed_rhs(std::size_t n, std::mt19937_64& rng);

/// Graph Laplacian of the path on n nodes; singular with v = w = 1.
SparseMatrix path_laplacian(std::size_t n);

/// Right-hand side whose sum has the sign of `sign` (-1, 0, +1); the
/// zero-sum case is exact up to rounding.
Vector rhs_with_sum_sign(std::size_t n, int sign, std::mt19937_64& rng);

}  // namespace plsolve::oracle
