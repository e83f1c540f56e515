#include "plsolve/oracle/generators.hpp"

#include <Eigen/Eigenvalues>

#include <numeric>

namespace plsolve::oracle {

SparseMatrix random_t1_matrix(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const bool dominant = std::uniform_int_distribution<int>(0, 1)(rng) == 0;
  const auto m = static_cast<Index>(n);
  std::vector<Triplet> trip;
  if (dominant) {
    for (Index i = 0; i < m; ++i) {
      double off = 0.0;
      for (Index j = 0; j < m; ++j) {
        if (i == j || unit(rng) < 0.5) continue;
        const double v = unit(rng);
        trip.push_back({i, j, -v});
        off += v;
      }
      trip.push_back({i, i, off + 0.05 + unit(rng)});
    }
    return SparseMatrix::from_triplets(trip, m, m);
  }
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      if (unit(rng) < 0.6) b(i, j) = unit(rng);
  const double rho = b.eigenvalues().cwiseAbs().maxCoeff();
  const double s = rho * (1.0 + 0.02 + 0.5 * unit(rng)) + 1e-3;
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) {
      const double v = (i == j ? s : 0.0) - b(i, j);
      if (v != 0.0) trip.push_back({i, j, v});
    }
  return SparseMatrix::from_triplets(trip, m, m);
}

Vector random_mixed_rhs(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  Vector b(n);
  for (auto& v : b) v = sym(rng);
  if (n >= 2) {
    b[0] = std::fabs(b[0]) + 0.1;
    b[1] = -std::fabs(b[1]) - 0.1;
  }
  return b;
}

SparseMatrix path_laplacian(std::size_t n) {
  const auto m = static_cast<Index>(n);
  std::vector<Triplet> trip;
  for (Index i = 0; i + 1 < m; ++i) {
    trip.push_back({i, i, 1.0});
    trip.push_back({i + 1, i + 1, 1.0});
    trip.push_back({i, i + 1, -1.0});
    trip.push_back({i + 1, i, -1.0});
  }
  return SparseMatrix::from_triplets(trip, m, m);
}

Vector rhs_with_sum_sign(std::size_t n, int sign, std::mt19937_64& rng) {
  Vector b = random_mixed_rhs(n, rng);
  const double mean = std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(n);
  for (auto& v : b) v -= mean;
  if (sign != 0) {
    const double shift = (sign > 0 ? 1.0 : -1.0) * (0.1 + std::uniform_real_distribution<double>(0.0, 0.5)(rng));
    for (auto& v : b) v += shift;
  }
  return b;
}

}  // namespace plsolve::oracle
