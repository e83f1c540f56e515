#include "plsolve/matprops/matprops.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>

namespace plsolve::matprops {
namespace {

constexpr double kSeparation = 1e-10;
constexpr int kPowerIterationsProof = 20000;
constexpr int kPowerIterationsEstimate = 200;
constexpr int kInverseIterations = 6;

void require_square(const SparseMatrix& t, const char* who) {
  if (!t.is_square())
    throw DimensionError(std::string(who) + ": matrix is " + std::to_string(t.n_rows()) +
                         "x" + std::to_string(t.n_cols()) + ", expected square");
}

bool reaches_all(const SparseMatrix& a) {
  const auto n = static_cast<std::size_t>(a.n_rows());
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::deque<Index> queue{0};
  seen[0] = 1;
  std::size_t count = 1;
  auto offs = a.row_offsets();
  auto cols = a.col_indices();
  while (!queue.empty()) {
    const Index i = queue.front();
    queue.pop_front();
    for (std::size_t k = offs[i]; k < offs[i + 1]; ++k) {
      const auto j = static_cast<std::size_t>(cols[k]);
      if (!seen[j]) {
        seen[j] = 1;
        ++count;
        queue.push_back(cols[k]);
      }
    }
  }
  return count == n;
}

// Weakly diagonally dominant in every row and strictly in at least one.
// Returns {weak_all, strict_any, strict_all}.
struct Dominance {
  bool weak_all = true;
  bool strict_any = false;
  bool strict_all = true;
};

Dominance diagonal_dominance(const SparseMatrix& t) {
  Dominance d;
  auto offs = t.row_offsets();
  auto cols = t.col_indices();
  auto vals = t.values();
  for (Index i = 0; i < t.n_rows(); ++i) {
    double diag = 0.0, off = 0.0;
    for (std::size_t k = offs[i]; k < offs[i + 1]; ++k) {
      if (cols[k] == i)
        diag = vals[k];
      else
        off += std::fabs(vals[k]);
    }
    if (diag < off) d.weak_all = false;
    if (diag > off)
      d.strict_any = true;
    else
      d.strict_all = false;
  }
  return d;
}

struct SpectralBounds {
  double lower;
  double upper;
};

// Power iteration on B + I (B = alpha I - T >= 0) from the all-ones vector.
// The iterate stays strictly positive, so Collatz-Wielandt min/max ratios of
// B bracket rho(B). `decide` returns true to stop early.
template <class Decide>
SpectralBounds power_bounds(const SparseMatrix& t, double alpha, int max_iters, Decide decide) {
  const auto n = static_cast<std::size_t>(t.n_rows());
  Vector x(n, 1.0), tx(n), bx(n);
  SpectralBounds sb{0.0, std::numeric_limits<double>::infinity()};
  for (int it = 0; it < max_iters; ++it) {
    t.multiply(x, tx);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      bx[i] = alpha * x[i] - tx[i];
      const double ratio = bx[i] / x[i];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    sb.lower = std::max(sb.lower, lo);
    sb.upper = std::min(sb.upper, hi);
    if (decide(sb)) break;
    double mx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = bx[i] + x[i];
      mx = std::max(mx, x[i]);
    }
    if (!(mx > 0.0) || !std::isfinite(mx)) break;
    for (auto& xi : x) xi = std::max(xi / mx, std::numeric_limits<double>::min());
  }
  return sb;
}

Eigen::SparseMatrix<double> to_eigen(const SparseMatrix& a, double shift) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(a.nnz() + static_cast<std::size_t>(a.n_rows()));
  auto offs = a.row_offsets();
  auto cols = a.col_indices();
  auto vals = a.values();
  for (Index i = 0; i < a.n_rows(); ++i) {
    for (std::size_t k = offs[i]; k < offs[i + 1]; ++k) trip.emplace_back(i, cols[k], vals[k]);
    if (shift != 0.0) trip.emplace_back(i, i, shift);
  }
  Eigen::SparseMatrix<double> m(a.n_rows(), a.n_cols());
  m.setFromTriplets(trip.begin(), trip.end());
  m.makeCompressed();
  return m;
}

// Inverse iteration for the eigenvector of `a` closest to zero.
// Returns a unit vector with nonnegative sum; empty on factorization failure.
Vector inverse_iteration(const SparseMatrix& a, double sigma) {
  const auto n = static_cast<std::size_t>(a.n_rows());
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(to_eigen(a, sigma));
  if (lu.info() != Eigen::Success) return {};
  Eigen::VectorXd v = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n),
                                                1.0 / std::sqrt(static_cast<double>(n)));
  for (int it = 0; it < kInverseIterations; ++it) {
    Eigen::VectorXd next = lu.solve(v);
    if (lu.info() != Eigen::Success || !next.allFinite()) return {};
    const double nrm = next.norm();
    if (!(nrm > 0.0)) return {};
    v = next / nrm;
  }
  if (v.sum() < 0.0) v = -v;
  return Vector(v.data(), v.data() + v.size());
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Proven: return "Proven";
    case Verdict::Disproven: return "Disproven";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

const char* to_string(SolvabilityVerdict v) {
  switch (v) {
    case SolvabilityVerdict::Unique: return "Unique";
    case SolvabilityVerdict::FamilyAlongW: return "FamilyAlongW";
    case SolvabilityVerdict::NoSolution: return "NoSolution";
  }
  return "?";
}

bool is_z_matrix(const SparseMatrix& t) {
  auto offs = t.row_offsets();
  auto cols = t.col_indices();
  auto vals = t.values();
  for (Index i = 0; i < t.n_rows(); ++i)
    for (std::size_t k = offs[i]; k < offs[i + 1]; ++k)
      if (cols[k] != i && vals[k] > 0.0) return false;
  return true;
}

bool is_irreducible(const SparseMatrix& t) {
  require_square(t, "is_irreducible");
  return reaches_all(t) && reaches_all(t.transpose());
}

MatrixClassReport check_t1(const SparseMatrix& t) {
  require_square(t, "check_t1");
  MatrixClassReport rep;
  rep.is_z_matrix = is_z_matrix(t);
  rep.is_irreducible = is_irreducible(t);
  rep.t2_verdict = Verdict::Inconclusive;
  if (t.n_rows() == 0) {
    rep.notes.emplace_back("empty matrix");
    return rep;
  }
  const Vector diag = t.diagonal_entries();
  const double alpha = *std::max_element(diag.begin(), diag.end());
  rep.alpha = alpha;

  if (!rep.is_z_matrix) {
    rep.t1_verdict = Verdict::Disproven;
    rep.notes.emplace_back("positive off-diagonal entry: not a Z-matrix");
    return rep;
  }
  if (*std::min_element(diag.begin(), diag.end()) <= 0.0) {
    rep.t1_verdict = Verdict::Disproven;
    rep.notes.emplace_back("nonpositive diagonal entry");
    return rep;
  }

  const Dominance dom = diagonal_dominance(t);
  const bool dominance_proof = dom.strict_all || (dom.weak_all && dom.strict_any && rep.is_irreducible);
  const double edge = alpha * (1.0 - kSeparation);

  if (dominance_proof) {
    const auto sb = power_bounds(t, alpha, kPowerIterationsEstimate,
                                 [](const SpectralBounds&) { return false; });
    rep.spectral_radius_estimate = sb.lower;
    rep.t1_verdict = Verdict::Proven;
    rep.notes.emplace_back(dom.strict_all ? "strictly diagonally dominant Z-matrix"
                                          : "irreducibly diagonally dominant Z-matrix");
    return rep;
  }

  const auto sb = power_bounds(t, alpha, kPowerIterationsProof, [&](const SpectralBounds& b) {
    return b.upper < edge || b.lower >= edge;
  });
  rep.spectral_radius_estimate = sb.lower;
  if (sb.upper < edge) {
    rep.t1_verdict = Verdict::Proven;
    rep.notes.emplace_back("power iteration: rho(B) < alpha");
  } else if (sb.lower >= edge) {
    rep.t1_verdict = Verdict::Disproven;
    rep.notes.emplace_back("power iteration: rho(B) >= alpha (singular or not an M-matrix)");
  } else {
    rep.t1_verdict = Verdict::Inconclusive;
    rep.notes.emplace_back("power iteration could not separate rho(B) from alpha");
  }
  return rep;
}

MatrixClassReport check_t2(const SparseMatrix& t) {
  require_square(t, "check_t2");
  MatrixClassReport rep;
  rep.is_z_matrix = is_z_matrix(t);
  rep.is_irreducible = is_irreducible(t);
  rep.t1_verdict = Verdict::Inconclusive;
  if (t.n_rows() == 0) {
    rep.notes.emplace_back("empty matrix");
    return rep;
  }
  const Vector diag = t.diagonal_entries();
  rep.alpha = *std::max_element(diag.begin(), diag.end());

  if (!rep.is_z_matrix) {
    rep.t2_verdict = Verdict::Disproven;
    rep.notes.emplace_back("positive off-diagonal entry: not a Z-matrix");
    return rep;
  }
  if (!rep.is_irreducible) {
    rep.t2_verdict = Verdict::Disproven;
    rep.notes.emplace_back("sparsity graph not strongly connected");
    return rep;
  }

  const double tnorm = t.norm_inf();
  const double sigma = 1e-8 * tnorm;
  const SparseMatrix tt = t.transpose();
  Vector w = inverse_iteration(t, sigma);
  Vector v = inverse_iteration(tt, sigma);
  if (w.empty() || v.empty()) {
    rep.t2_verdict = Verdict::Inconclusive;
    rep.notes.emplace_back("inverse iteration failed");
    return rep;
  }
  const double w_res = norm_inf(t.multiply(w));
  const double v_res = norm_inf(tt.multiply(v));
  const bool w_null = w_res <= 1e-10 * tnorm * norm_inf(w);
  const bool v_null = v_res <= 1e-10 * tnorm * norm_inf(v);
  if (!w_null || !v_null) {
    rep.t2_verdict = Verdict::Disproven;
    rep.notes.emplace_back("no null space: matrix is nonsingular");
    return rep;
  }
  rep.right_null = w;
  rep.left_null = v;
  const bool positive = *std::min_element(w.begin(), w.end()) > 0.0 &&
                        *std::min_element(v.begin(), v.end()) > 0.0;
  if (!positive) {
    rep.t2_verdict = Verdict::Disproven;
    rep.notes.emplace_back("null vector is not strictly positive");
    return rep;
  }

  // Perron-Frobenius: an irreducible Z-matrix with a positive null vector has
  // a simple zero eigenvalue and every T + D, D >= 0, D != 0, is a
  // nonsingular M-matrix. The bump below checks that numerically.
  Vector bump(static_cast<std::size_t>(t.n_rows()), 0.0);
  bump[0] = std::max(rep.alpha.value_or(1.0), 1e-300);
  const auto bumped = check_t1(t.plus_diagonal(bump));
  rep.spectral_radius_estimate = bumped.spectral_radius_estimate;
  if (bumped.t1_verdict == Verdict::Proven) {
    rep.t2_verdict = Verdict::Proven;
    rep.notes.emplace_back("positive simple null vectors; T + e1 e1^T is an M-matrix");
  } else if (bumped.t1_verdict == Verdict::Disproven) {
    rep.t2_verdict = Verdict::Disproven;
    rep.notes.emplace_back("diagonal perturbation is not an M-matrix");
  } else {
    rep.t2_verdict = Verdict::Inconclusive;
    rep.notes.emplace_back("diagonal perturbation check inconclusive");
  }
  rep.notes.emplace_back(
      "T + D M-matrix property for all D is checked by sampling only (falsifier, not prover)");
  return rep;
}

bool sample_t2_perturbations(const SparseMatrix& t, int samples, unsigned seed) {
  require_square(t, "sample_t2_perturbations");
  const auto n = static_cast<std::size_t>(t.n_rows());
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> mag(0.05, 1.0);
  std::bernoulli_distribution on(0.3);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  const double scale = std::max(t.norm_inf(), 1e-300);
  for (int s = 0; s < samples; ++s) {
    Vector d(n, 0.0);
    for (auto& di : d)
      if (on(gen)) di = mag(gen) * scale;
    d[pick(gen)] = mag(gen) * scale;  // D != 0
    if (check_t1(t.plus_diagonal(d)).t1_verdict == Verdict::Disproven) return false;
  }
  return true;
}

double default_class_tol(std::span<const double> v, std::span<const double> b) {
  return 1e-10 * norm2(v) * norm2(b);
}

Solvability classify_solvability(std::span<const double> v, std::span<const double> b,
                                 double class_tol) {
  require_same_size(v.size(), b.size(), "classify_solvability");
  for (double vi : v)
    if (!(vi > 0.0)) throw InvalidNullVector("classify_solvability: v must be strictly positive");
  const double vtb = dot(v, b);
  if (std::fabs(vtb) <= class_tol) return {SolvabilityVerdict::FamilyAlongW, vtb};
  return {vtb < 0.0 ? SolvabilityVerdict::Unique : SolvabilityVerdict::NoSolution, vtb};
}

Solvability classify_solvability(std::span<const double> v, std::span<const double> b) {
  return classify_solvability(v, b, default_class_tol(v, b));
}

}  // namespace plsolve::matprops
