#include "plsolve/numkit/masked_operator.hpp"

namespace plsolve {

const char* to_string(PlsKind kind) {
  return kind == PlsKind::Elliptic ? "elliptic" : "parabolic";
}

MaskedOperator::MaskedOperator(const SparseMatrix& t, const SparseMatrix& t_transpose,
                               const ActiveMask& mask, PlsKind kind)
    : t_(t), tt_(t_transpose), mask_(mask), kind_(kind) {
  if (!t.is_square()) throw DimensionError("MaskedOperator: T not square");
  require_same_size(static_cast<std::size_t>(t.n_rows()), mask.size(), "MaskedOperator mask");
  if (t_transpose.n_rows() != t.n_cols() || t_transpose.n_cols() != t.n_rows())
    throw DimensionError("MaskedOperator: transpose has wrong shape");
}

void MaskedOperator::apply(std::span<const double> z, std::span<double> y) const {
  const std::size_t n = size();
  require_same_size(z.size(), n, "masked_matvec input");
  require_same_size(y.size(), n, "masked_matvec output");
  Vector pz(n);
  for (std::size_t i = 0; i < n; ++i) pz[i] = mask_[i] ? z[i] : 0.0;
  t_.multiply(pz, y);
  if (kind_ == PlsKind::Elliptic) {
    for (std::size_t i = 0; i < n; ++i)
      if (!mask_[i]) y[i] += z[i];
  } else {
    for (std::size_t i = 0; i < n; ++i) y[i] += z[i];
  }
}

void MaskedOperator::apply_transpose(std::span<const double> z, std::span<double> y) const {
  const std::size_t n = size();
  require_same_size(z.size(), n, "masked_matvec input");
  require_same_size(y.size(), n, "masked_matvec output");
  tt_.multiply(z, y);
  if (kind_ == PlsKind::Elliptic) {
    for (std::size_t i = 0; i < n; ++i) y[i] = mask_[i] ? y[i] : z[i];
  } else {
    for (std::size_t i = 0; i < n; ++i) y[i] = (mask_[i] ? y[i] : 0.0) + z[i];
  }
}

Vector MaskedOperator::diagonal() const {
  Vector d = t_.diagonal_entries();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (kind_ == PlsKind::Elliptic)
      d[i] = mask_[i] ? d[i] : 1.0;
    else
      d[i] = 1.0 + (mask_[i] ? d[i] : 0.0);
  }
  return d;
}

Vector MaskedOperator::apply(std::span<const double> z) const {
  Vector y(size());
  apply(z, y);
  return y;
}

SparseMatrix MaskedOperator::assemble() const {
  const auto n = static_cast<Index>(size());
  std::vector<Triplet> trip;
  auto offs = t_.row_offsets();
  auto cols = t_.col_indices();
  auto vals = t_.values();
  for (Index i = 0; i < n; ++i) {
    for (std::size_t k = offs[i]; k < offs[i + 1]; ++k)
      if (mask_[static_cast<std::size_t>(cols[k])]) trip.push_back({i, cols[k], vals[k]});
    if (kind_ == PlsKind::Parabolic || !mask_[static_cast<std::size_t>(i)])
      trip.push_back({i, i, 1.0});
  }
  return SparseMatrix::from_triplets(trip, n, n);
}

Vector masked_matvec(const MaskedOperator& op, std::span<const double> z) {
  return op.apply(z);
}

}  // namespace plsolve
