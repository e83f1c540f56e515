#include "plsolve/numkit/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace plsolve {

SparseMatrix SparseMatrix::from_triplets(std::span<const Triplet> triplets,
                                         Index n_rows, Index n_cols) {
  if (n_rows < 0 || n_cols < 0) throw DimensionError("negative matrix dimension");
  for (const auto& t : triplets) {
    if (t.row < 0 || t.row >= n_rows || t.col < 0 || t.col >= n_cols)
      throw IndexError("triplet (" + std::to_string(t.row) + "," +
                       std::to_string(t.col) + ") outside " +
                       std::to_string(n_rows) + "x" + std::to_string(n_cols));
  }

  // bucket by row, then sort each row by column and merge duplicates
  std::vector<std::size_t> count(static_cast<std::size_t>(n_rows) + 1, 0);
  for (const auto& t : triplets) ++count[static_cast<std::size_t>(t.row) + 1];
  for (std::size_t i = 1; i < count.size(); ++i) count[i] += count[i - 1];

  std::vector<std::pair<Index, double>> entries(triplets.size());
  std::vector<std::size_t> next(count.begin(), count.end() - 1);
  for (const auto& t : triplets) entries[next[t.row]++] = {t.col, t.value};

  SparseMatrix m;
  m.n_rows_ = n_rows;
  m.n_cols_ = n_cols;
  m.row_offsets_.assign(static_cast<std::size_t>(n_rows) + 1, 0);
  m.col_indices_.reserve(triplets.size());
  m.values_.reserve(triplets.size());
  for (Index i = 0; i < n_rows; ++i) {
    auto first = entries.begin() + static_cast<std::ptrdiff_t>(count[i]);
    auto last = entries.begin() + static_cast<std::ptrdiff_t>(count[i + 1]);
    std::stable_sort(first, last,
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto it = first; it != last;) {
      const Index col = it->first;
      double sum = 0.0;
      for (; it != last && it->first == col; ++it) sum += it->second;
      if (sum != 0.0) {
        m.col_indices_.push_back(col);
        m.values_.push_back(sum);
      }
    }
    m.row_offsets_[i + 1] = m.values_.size();
  }
  return m;
}

SparseMatrix SparseMatrix::identity(Index n) {
  Vector ones(static_cast<std::size_t>(n), 1.0);
  return diagonal(ones);
}

SparseMatrix SparseMatrix::diagonal(std::span<const double> d) {
  std::vector<Triplet> t;
  t.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    t.push_back({static_cast<Index>(i), static_cast<Index>(i), d[i]});
  const auto n = static_cast<Index>(d.size());
  return from_triplets(t, n, n);
}

double SparseMatrix::at(Index i, Index j) const {
  if (i < 0 || i >= n_rows_ || j < 0 || j >= n_cols_)
    throw IndexError("entry index out of range");
  const auto first = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i]);
  const auto last = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - col_indices_.begin())];
}

Vector SparseMatrix::diagonal_entries() const {
  const Index n = std::min(n_rows_, n_cols_);
  Vector d(static_cast<std::size_t>(n), 0.0);
  for (Index i = 0; i < n; ++i) d[i] = at(i, i);
  return d;
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  require_same_size(x.size(), static_cast<std::size_t>(n_cols_), "spmv input");
  require_same_size(y.size(), static_cast<std::size_t>(n_rows_), "spmv output");
  for (Index i = 0; i < n_rows_; ++i) {
    double s = 0.0;
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      s += values_[k] * x[static_cast<std::size_t>(col_indices_[k])];
    y[i] = s;
  }
}

Vector SparseMatrix::multiply(std::span<const double> x) const {
  Vector y(static_cast<std::size_t>(n_rows_));
  multiply(x, y);
  return y;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t;
  t.n_rows_ = n_cols_;
  t.n_cols_ = n_rows_;
  t.row_offsets_.assign(static_cast<std::size_t>(n_cols_) + 1, 0);
  for (Index c : col_indices_) ++t.row_offsets_[static_cast<std::size_t>(c) + 1];
  for (std::size_t i = 1; i < t.row_offsets_.size(); ++i)
    t.row_offsets_[i] += t.row_offsets_[i - 1];
  t.col_indices_.resize(values_.size());
  t.values_.resize(values_.size());
  std::vector<std::size_t> next(t.row_offsets_.begin(), t.row_offsets_.end() - 1);
  // rows visited in increasing order keep the transposed rows sorted
  for (Index i = 0; i < n_rows_; ++i) {
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      const std::size_t dst = next[col_indices_[k]]++;
      t.col_indices_[dst] = i;
      t.values_[dst] = values_[k];
    }
  }
  return t;
}

SparseMatrix SparseMatrix::scaled(double alpha) const {
  Vector d(static_cast<std::size_t>(n_rows_), alpha);
  return row_scaled(d);
}

SparseMatrix SparseMatrix::row_scaled(std::span<const double> d) const {
  require_same_size(d.size(), static_cast<std::size_t>(n_rows_), "row_scaled");
  std::vector<Triplet> t;
  t.reserve(values_.size());
  for (Index i = 0; i < n_rows_; ++i)
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      t.push_back({i, col_indices_[k], d[i] * values_[k]});
  return from_triplets(t, n_rows_, n_cols_);
}

SparseMatrix SparseMatrix::plus_diagonal(std::span<const double> d) const {
  if (!is_square()) throw DimensionError("plus_diagonal: matrix not square");
  require_same_size(d.size(), static_cast<std::size_t>(n_rows_), "plus_diagonal");
  std::vector<Triplet> t;
  t.reserve(values_.size() + d.size());
  for (Index i = 0; i < n_rows_; ++i) {
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      t.push_back({i, col_indices_[k], values_[k]});
    t.push_back({i, i, d[i]});
  }
  return from_triplets(t, n_rows_, n_cols_);
}

double SparseMatrix::norm_inf() const {
  double m = 0.0;
  for (Index i = 0; i < n_rows_; ++i) {
    double s = 0.0;
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      s += std::fabs(values_[k]);
    m = std::max(m, s);
  }
  return m;
}

std::vector<double> SparseMatrix::to_dense() const {
  std::vector<double> d(static_cast<std::size_t>(n_rows_) * n_cols_, 0.0);
  for (Index i = 0; i < n_rows_; ++i)
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      d[static_cast<std::size_t>(i) * n_cols_ + col_indices_[k]] = values_[k];
  return d;
}

Vector spmv(const SparseMatrix& a, std::span<const double> x) { return a.multiply(x); }

}  // namespace plsolve
