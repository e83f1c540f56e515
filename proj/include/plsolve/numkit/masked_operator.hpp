#pragma once

#include "plsolve/numkit/linear_operator.hpp"
#include "plsolve/pls/active_mask.hpp"

namespace plsolve {

enum class PlsKind { Elliptic, Parabolic };

const char* to_string(PlsKind kind);

/// Matrix-free I - P + T P (Elliptic) or I + T P (Parabolic).
///
/// The column mask is applied at product time so T is never reassembled
/// when P changes. The transposed product uses a T^T supplied by the caller:
/// (I - P + T P)^T z = (I - P) z + P T^T z. All three references must
/// outlive the operator.
class MaskedOperator final : public LinearOperator {
 public:
  MaskedOperator(const SparseMatrix& t, const SparseMatrix& t_transpose,
                 const ActiveMask& mask, PlsKind kind);

  std::size_t size() const override { return mask_.size(); }
  void apply(std::span<const double> z, std::span<double> y) const override;
  void apply_transpose(std::span<const double> z, std::span<double> y) const override;
  Vector diagonal() const override;

  Vector apply(std::span<const double> z) const;

  /// Explicit CSR form, for verification on small instances.
  SparseMatrix assemble() const;

  PlsKind kind() const noexcept { return kind_; }

 private:
  const SparseMatrix& t_;
  const SparseMatrix& tt_;
  const ActiveMask& mask_;
  PlsKind kind_;
};

/// Free-function form of MaskedOperator::apply.
Vector masked_matvec(const MaskedOperator& op, std::span<const double> z);

}  // namespace plsolve
