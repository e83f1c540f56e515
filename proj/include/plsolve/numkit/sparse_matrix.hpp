#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "plsolve/numkit/vector.hpp"

namespace plsolve {

using Index = std::int32_t;

struct Triplet {
  Index row;
  Index col;
  double value;
};

/// Compressed-row real matrix. Immutable once built: column indices are
/// strictly increasing within each row and no explicit zeros are stored.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  /// Sums duplicate (row, col) entries, sorts rows, drops zeros.
  /// Throws IndexError for out-of-range indices.
  static SparseMatrix from_triplets(std::span<const Triplet> triplets,
                                    Index n_rows, Index n_cols);

  static SparseMatrix identity(Index n);
  static SparseMatrix diagonal(std::span<const double> d);

  Index n_rows() const noexcept { return n_rows_; }
  Index n_cols() const noexcept { return n_cols_; }
  bool is_square() const noexcept { return n_rows_ == n_cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  std::span<const std::size_t> row_offsets() const noexcept { return row_offsets_; }
  std::span<const Index> col_indices() const noexcept { return col_indices_; }
  std::span<const double> values() const noexcept { return values_; }

  /// Entry (i, j), zero when not stored.
  double at(Index i, Index j) const;

  Vector diagonal_entries() const;

  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;
  Vector multiply(std::span<const double> x) const;

  SparseMatrix transpose() const;
  SparseMatrix scaled(double alpha) const;
  /// diag(d) * A
  SparseMatrix row_scaled(std::span<const double> d) const;
  /// A + diag(d)
  SparseMatrix plus_diagonal(std::span<const double> d) const;

  /// Maximum absolute row sum.
  double norm_inf() const;

  /// Row-major dense copy; intended for small matrices in tests and oracles.
  std::vector<double> to_dense() const;

 private:
  Index n_rows_ = 0;
  Index n_cols_ = 0;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<Index> col_indices_;
  std::vector<double> values_;
};

Vector spmv(const SparseMatrix& a, std::span<const double> x);

}  // namespace plsolve
