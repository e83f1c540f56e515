#pragma once

#include <random>
#include <vector>

#include "plsolve/numkit/sparse_matrix.hpp"

namespace testing {

inline plsolve::SparseMatrix dense_to_sparse(const std::vector<std::vector<double>>& rows) {
  std::vector<plsolve::Triplet> trip;
  const auto n = static_cast<plsolve::Index>(rows.size());
  const auto m = rows.empty() ? 0 : static_cast<plsolve::Index>(rows[0].size());
  for (plsolve::Index i = 0; i < n; ++i)
    for (plsolve::Index j = 0; j < m; ++j) trip.push_back({i, j, rows[i][j]});
  return plsolve::SparseMatrix::from_triplets(trip, n, m);
}

inline plsolve::Vector random_vector(std::size_t n, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  plsolve::Vector v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace testing
