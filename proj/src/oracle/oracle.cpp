#include "plsolve/oracle/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "plsolve/pls/solver.hpp"

namespace plsolve::oracle {
namespace {

using Dense = Eigen::MatrixXd;

Dense masked_dense(const Dense& t, std::uint32_t pattern, PlsKind kind) {
  const Eigen::Index n = t.rows();
  Dense m = Dense::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const bool active = (pattern >> j) & 1u;
    if (active) m.col(j) = t.col(j);
    if (kind == PlsKind::Parabolic || !active) m(j, j) += 1.0;
  }
  return m;
}

// LU with partial pivoting; false when a pivot falls below `threshold`.
bool lu_solve(Dense a, Eigen::VectorXd rhs, double threshold, Eigen::VectorXd& x) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = k;
    for (Eigen::Index i = k + 1; i < n; ++i)
      if (std::fabs(a(i, k)) > std::fabs(a(piv, k))) piv = i;
    if (std::fabs(a(piv, k)) < threshold) return false;
    if (piv != k) {
      a.row(k).swap(a.row(piv));
      std::swap(rhs(k), rhs(piv));
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      a.row(i).tail(n - k) -= f * a.row(k).tail(n - k);
      rhs(i) -= f * rhs(k);
    }
  }
  x.resize(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    double s = rhs(i);
    for (Eigen::Index j = i + 1; j < n; ++j) s -= a(i, j) * x(j);
    x(i) = s / a(i, i);
  }
  return true;
}

double point_to_family(const Vector& p, const SolutionFamily& f) {
  double dd = 0.0, dp = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    dd += f.direction[i] * f.direction[i];
    dp += f.direction[i] * (p[i] - f.base[i]);
  }
  const double alpha = std::clamp(dp / dd, 0.0, f.alpha_max);
  double dist = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    dist = std::max(dist, std::fabs(p[i] - f.base[i] - alpha * f.direction[i]));
  return dist;
}

}  // namespace

OracleResult enumerate_solutions(const SparseMatrix& t, std::span<const double> b, PlsKind kind) {
  if (!t.is_square()) throw DimensionError("enumerate_solutions: T not square");
  const auto n = static_cast<std::size_t>(t.n_rows());
  require_same_size(b.size(), n, "enumerate_solutions rhs");
  if (n > kMaxEnumerationSize)
    throw TooLarge("enumerate_solutions: n = " + std::to_string(n) + " exceeds " +
                   std::to_string(kMaxEnumerationSize));

  const auto ni = static_cast<Eigen::Index>(n);
  Dense td(ni, ni);
  {
    const auto d = t.to_dense();
    for (Eigen::Index i = 0; i < ni; ++i)
      for (Eigen::Index j = 0; j < ni; ++j) td(i, j) = d[static_cast<std::size_t>(i * ni + j)];
  }
  Eigen::VectorXd bd(ni);
  for (Eigen::Index i = 0; i < ni; ++i) bd(i) = b[static_cast<std::size_t>(i)];

  const double b_inf = norm_inf(b);
  const double accept = 1e-10 * (1.0 + b_inf);

  OracleResult out;
  std::vector<Vector> candidates;
  const std::uint32_t patterns = n == 0 ? 1u : (1u << n);
  for (std::uint32_t pat = 0; pat < patterns; ++pat) {
    ++out.patterns_tested;
    const Dense m = masked_dense(td, pat, kind);
    const double m_inf = m.cwiseAbs().rowwise().sum().maxCoeff();
    Eigen::VectorXd x;
    if (lu_solve(m, bd, 1e-12 * m_inf, x)) {
      Vector xv(x.data(), x.data() + ni);
      if (residual_nonsmooth(t, b, xv, kind) <= accept) candidates.push_back(std::move(xv));
      continue;
    }

    // singular pattern system: look for a consistent one-parameter family
    Eigen::FullPivLU<Dense> lu(m);
    lu.setThreshold(1e-12);
    if (lu.rank() != ni - 1) continue;
    const Eigen::VectorXd xp = lu.solve(bd);
    if ((m * xp - bd).lpNorm<Eigen::Infinity>() > accept) continue;
    Eigen::VectorXd d = lu.kernel().col(0);
    d /= d.cwiseAbs().maxCoeff();
    if (d.sum() < 0.0) d = -d;

    // x(a) = xp + a d must keep the generating sign pattern
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool hi_open = false, feasible = true;
    const double ztol = 1e-12 * (1.0 + xp.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < ni && feasible; ++i) {
      const bool active = (pat >> i) & 1u;
      const double di = std::fabs(d(i)) < 1e-14 ? 0.0 : d(i);
      const double bound = -xp(i) / (di == 0.0 ? 1.0 : di);
      if (active) {  // xp_i + a d_i >= 0
        if (di > 0.0) lo = std::max(lo, bound);
        else if (di < 0.0) hi = std::min(hi, bound);
        else if (xp(i) < -ztol) feasible = false;
      } else {  // xp_i + a d_i < 0
        if (di > 0.0) {
          if (bound <= hi) {
            hi = bound;
            hi_open = true;
          }
        } else if (di < 0.0) {
          lo = std::max(lo, bound);
        } else if (xp(i) >= ztol) {
          feasible = false;
        }
      }
    }
    if (!feasible || hi < lo) continue;
    if (!std::isfinite(lo)) {
      // unbounded in both directions never happens for the T1/T2 classes;
      // report from the smallest sign-consistent point available
      if (!std::isfinite(hi)) continue;
      d = -d;
      lo = -hi;
      hi = std::numeric_limits<double>::infinity();
      hi_open = false;
    }
    SolutionFamily fam;
    const Eigen::VectorXd base = xp + lo * d;
    fam.base.assign(base.data(), base.data() + ni);
    fam.direction.assign(d.data(), d.data() + ni);
    fam.alpha_max = hi - lo;
    fam.upper_open = hi_open;
    for (auto& v : fam.base)
      if (std::fabs(v) < ztol) v = 0.0;
    out.families.push_back(std::move(fam));
  }

  // dedupe points against each other and against families
  const double same = 1e-9 * (1.0 + b_inf);
  for (auto& c : candidates) {
    bool dup = false;
    for (const auto& f : out.families)
      if (point_to_family(c, f) <= same * (1.0 + norm_inf(c))) dup = true;
    for (const auto& p : out.point_solutions) {
      double dist = 0.0;
      for (std::size_t i = 0; i < n; ++i) dist = std::max(dist, std::fabs(p[i] - c[i]));
      if (dist <= same * (1.0 + norm_inf(c))) dup = true;
    }
    if (!dup) out.point_solutions.push_back(std::move(c));
  }
  return out;
}

WDiagonal w_matrix(std::span<const double> x, std::span<const double> y) {
  require_same_size(x.size(), y.size(), "w_matrix");
  WDiagonal w;
  w.omegas.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const bool px = x[i] >= 0.0, py = y[i] >= 0.0;
    if (px && py)
      w.omegas[i] = 1.0;
    else if (!px && !py)
      w.omegas[i] = 0.0;
    else if (px)  // x_i >= 0 > y_i
      w.omegas[i] = x[i] / (x[i] - y[i]);
    else  // x_i < 0 <= y_i
      w.omegas[i] = y[i] / (y[i] - x[i]);
  }
  return w;
}

}  // namespace plsolve::oracle
