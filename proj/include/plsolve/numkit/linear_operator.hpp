#pragma once

#include <cstddef>
#include <span>

#include "plsolve/numkit/sparse_matrix.hpp"

namespace plsolve {

/// Square operator exposing the products a Lanczos-type Krylov solver needs.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual std::size_t size() const = 0;
  /// y = A x
  virtual void apply(std::span<const double> x, std::span<double> y) const = 0;
  /// y = A^T x
  virtual void apply_transpose(std::span<const double> x, std::span<double> y) const = 0;
  /// diag(A), used by the Jacobi preconditioner.
  virtual Vector diagonal() const = 0;
};

/// Wraps an assembled square SparseMatrix; the transpose is built once.
class MatrixOperator final : public LinearOperator {
 public:
  explicit MatrixOperator(SparseMatrix a);

  std::size_t size() const override { return static_cast<std::size_t>(a_.n_rows()); }
  void apply(std::span<const double> x, std::span<double> y) const override {
    a_.multiply(x, y);
  }
  void apply_transpose(std::span<const double> x, std::span<double> y) const override {
    at_.multiply(x, y);
  }
  Vector diagonal() const override { return a_.diagonal_entries(); }

  const SparseMatrix& matrix() const noexcept { return a_; }

 private:
  SparseMatrix a_;
  SparseMatrix at_;
};

inline MatrixOperator::MatrixOperator(SparseMatrix a) : a_(std::move(a)) {
  if (!a_.is_square()) throw DimensionError("MatrixOperator: matrix not square");
  at_ = a_.transpose();
}

}  // namespace plsolve
