#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "plsolve/error.hpp"

namespace plsolve {

using Vector = std::vector<double>;

inline void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b)
    throw DimensionError(std::string(what) + ": size " + std::to_string(a) +
                         " != " + std::to_string(b));
}

/// Throws InvalidArgument if any entry is NaN or infinite.
inline void require_finite(std::span<const double> x, const char* what) {
  for (double v : x)
    if (!std::isfinite(v))
      throw InvalidArgument(std::string(what) + ": non-finite entry");
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) {
  // scaled accumulation, avoids overflow for very large entries
  double scale = 0.0, ssq = 1.0;
  for (double v : a) {
    if (v == 0.0) continue;
    const double av = std::fabs(v);
    if (scale < av) {
      ssq = 1.0 + ssq * (scale / av) * (scale / av);
      scale = av;
    } else {
      ssq += (av / scale) * (av / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

inline double norm_inf(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::fabs(v));
  return m;
}

/// y += alpha * x
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  require_same_size(x.size(), y.size(), "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline Vector subtract(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size(), "subtract");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vector positive_part(std::span<const double> x) {
  Vector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = std::max(0.0, x[i]);
  return r;
}

inline Vector negative_part(std::span<const double> x) {
  Vector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = std::min(0.0, x[i]);
  return r;
}

}  // namespace plsolve
