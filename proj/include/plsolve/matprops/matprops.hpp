#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plsolve/numkit/sparse_matrix.hpp"

namespace plsolve::matprops {

enum class Verdict { Proven, Disproven, Inconclusive };

const char* to_string(Verdict v);

struct MatrixClassReport {
  bool is_z_matrix = false;
  bool is_irreducible = false;
  Verdict t1_verdict = Verdict::Inconclusive;
  Verdict t2_verdict = Verdict::Inconclusive;
  /// Left null vector (null(T^T)), unit 2-norm, sign-normalized.
  std::optional<Vector> left_null;
  /// Right null vector (null(T)), unit 2-norm, sign-normalized.
  std::optional<Vector> right_null;
  /// alpha in T = alpha I - B (the largest diagonal entry).
  std::optional<double> alpha;
  /// Lower Collatz-Wielandt bound on rho(B) from power iteration.
  std::optional<double> spectral_radius_estimate;
  std::vector<std::string> notes;
};

/// Is T a nonsingular M-matrix?
///
/// Checks the Z sign pattern, irreducibility of the directed sparsity
/// graph, and then certifies rho(B) < alpha for B = alpha I - T: first by
/// irreducible diagonal dominance, otherwise by power iteration on B + I
/// bracketing rho(B) with Collatz-Wielandt bounds. Inconclusive when the
/// bounds cannot separate rho(B) from alpha by 1e-10 relative.
MatrixClassReport check_t1(const SparseMatrix& t);

/// Is T singular irreducible with positive one-dimensional left/right null
/// spaces whose diagonal perturbations are M-matrices?
///
/// Null vectors come from inverse iteration on T + sigma I,
/// sigma = 1e-8 ||T||_inf. For an irreducible Z-matrix, a strictly positive
/// right null vector makes the null space simple (Perron-Frobenius), and the
/// perturbation T + e_1 e_1^T is run through check_t1.
MatrixClassReport check_t2(const SparseMatrix& t);

/// Tries to falsify "T + D is an M-matrix for every diagonal D >= 0, D != 0"
/// on `samples` random diagonals. Returns false on the first counterexample.
bool sample_t2_perturbations(const SparseMatrix& t, int samples, unsigned seed);

enum class SolvabilityVerdict { Unique, FamilyAlongW, NoSolution };

const char* to_string(SolvabilityVerdict v);

struct Solvability {
  SolvabilityVerdict verdict;
  double vtb;
};

/// Default zero band for v^T b: 1e-10 ||v||_2 ||b||_2.
double default_class_tol(std::span<const double> v, std::span<const double> b);

/// Existence/uniqueness of a T2 system from the sign of v^T b:
/// negative -> Unique, |v^T b| <= class_tol -> FamilyAlongW, positive -> NoSolution.
/// Throws InvalidNullVector when some v_i <= 0.
Solvability classify_solvability(std::span<const double> v, std::span<const double> b,
                                 double class_tol);
Solvability classify_solvability(std::span<const double> v, std::span<const double> b);

// Lower-level pieces, exposed for tests.
bool is_z_matrix(const SparseMatrix& t);
/// Strong connectivity of the directed sparsity graph (edge i -> j for t_ij != 0).
bool is_irreducible(const SparseMatrix& t);

}  // namespace plsolve::matprops
