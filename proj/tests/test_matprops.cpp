#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "plsolve/error.hpp"
#include "plsolve/matprops/matprops.hpp"
#include "plsolve/obstacle/obstacle.hpp"
#include "plsolve/oracle/generators.hpp"

using namespace plsolve;
using namespace plsolve::matprops;
using testing::dense_to_sparse;

TEST_CASE("check_t1 on small matrices") {
  CHECK(check_t1(dense_to_sparse({{2, -1}, {-1, 2}})).t1_verdict == Verdict::Proven);
  CHECK(check_t1(dense_to_sparse({{1, -1}, {-1, 1}})).t1_verdict == Verdict::Disproven);
  CHECK(check_t1(dense_to_sparse({{2, 1}, {-1, 2}})).t1_verdict == Verdict::Disproven);
  CHECK_THROWS_AS(check_t1(dense_to_sparse({{1, 2, 3}})), DimensionError);
}

TEST_CASE("check_t1 on a Dirichlet 5-point Laplacian") {
  const auto d = obstacle::assemble_elliptic(obstacle::make_spec(obstacle::ProblemName::Tent), 5);
  const auto rep = check_t1(d.t);
  CHECK(rep.is_z_matrix);
  CHECK(rep.is_irreducible);
  CHECK(rep.t1_verdict == Verdict::Proven);
}

TEST_CASE("power iteration certifies matrices without diagonal dominance") {
  // T = 3 I - B with B the all-ones 3x3 matrix has rho(B) = 3: singular.
  CHECK(check_t1(dense_to_sparse({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}})).t1_verdict == Verdict::Disproven);
  // Not diagonally dominant in any row, but rho(B) = 2 sqrt(0.5 * 1.5) < 2.
  const auto t = dense_to_sparse({{2, -1.5}, {-0.5, 2}});
  CHECK(check_t1(t).t1_verdict == Verdict::Proven);
  // rho(B) = sqrt(3 * 1.5) > 2.
  CHECK(check_t1(dense_to_sparse({{2, -3}, {-1.5, 2}})).t1_verdict == Verdict::Disproven);
}

TEST_CASE("check_t2 examples") {
  const auto rep = check_t2(dense_to_sparse({{1, -1}, {-1, 1}}));
  CHECK(rep.t2_verdict == Verdict::Proven);
  REQUIRE(rep.left_null);
  REQUIRE(rep.right_null);
  for (double x : *rep.left_null) CHECK(x == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
  for (double x : *rep.right_null) CHECK(x == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
  CHECK(check_t2(dense_to_sparse({{2, -1}, {-1, 2}})).t2_verdict == Verdict::Disproven);
  // Reducible singular matrix: two disconnected blocks.
  CHECK(check_t2(dense_to_sparse({{1, -1, 0, 0}, {-1, 1, 0, 0}, {0, 0, 1, -1}, {0, 0, -1, 1}})).t2_verdict ==
        Verdict::Disproven);
}

TEST_CASE("Neumann assemblies have unit null vectors") {
  for (auto name : {obstacle::ProblemName::TentNeumann, obstacle::ProblemName::TorsionNeumann}) {
    const auto d = obstacle::assemble_elliptic(obstacle::make_spec(name, -5.0), 5);
    const auto rep = check_t2(d.t);
    CHECK(rep.t2_verdict == Verdict::Proven);
    REQUIRE(rep.left_null);
    const double scale = (*rep.left_null)[0];
    for (double x : *rep.left_null) CHECK(x / scale == doctest::Approx(1.0).epsilon(1e-9));
    for (double x : *rep.right_null) CHECK(x / scale == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("irreducibility follows edge direction") {
  // 0 -> 1 -> 2 with no way back is reducible although its symmetrized
  // pattern is connected.
  const auto chain = dense_to_sparse({{1, -1, 0}, {0, 1, -1}, {0, 0, 1}});
  CHECK_FALSE(is_irreducible(chain));
  const auto cycle = dense_to_sparse({{1, -1, 0}, {0, 1, -1}, {-1, 0, 1}});
  CHECK(is_irreducible(cycle));
  CHECK(is_z_matrix(cycle));
  CHECK_FALSE(is_z_matrix(dense_to_sparse({{1, 0.1}, {0, 1}})));
}

TEST_CASE("inverses of certified M-matrices are nonnegative") {
  std::mt19937_64 rng(21);
  int proven = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 11);
    const auto t = oracle::random_t1_matrix(n, rng);
    const auto rep = check_t1(t);
    if (rep.t1_verdict != Verdict::Proven) continue;
    ++proven;
    const auto dense = t.to_dense();
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = dense[i * n + j];
    const Eigen::MatrixXd inv = m.inverse();
    CHECK(inv.minCoeff() >= -1e-10);
  }
  // The generator only draws M-matrices; the checker should certify them all.
  CHECK(proven == 200);
}

TEST_CASE("diagonal perturbations of T2 matrices are M-matrices") {
  for (std::size_t n = 2; n <= 12; ++n) {
    const auto t = oracle::path_laplacian(n);
    REQUIRE(check_t2(t).t2_verdict == Verdict::Proven);
    CHECK(sample_t2_perturbations(t, 25, static_cast<unsigned>(n)));
  }
  const auto d = obstacle::assemble_elliptic(obstacle::make_spec(obstacle::ProblemName::TentNeumann), 3);
  CHECK(sample_t2_perturbations(d.t, 25, 5));
}

TEST_CASE("solvability classification") {
  const Vector v{1, 1};
  CHECK(classify_solvability(v, Vector{-1, -1}).verdict == SolvabilityVerdict::Unique);
  CHECK(classify_solvability(v, Vector{-1, -1}).vtb == -2.0);
  CHECK(classify_solvability(v, Vector{1, -1}).verdict == SolvabilityVerdict::FamilyAlongW);
  CHECK(classify_solvability(v, Vector{1, 1}).verdict == SolvabilityVerdict::NoSolution);
  CHECK_THROWS_AS(classify_solvability(Vector{1, 0}, Vector{1, 1}), InvalidNullVector);
  CHECK_THROWS_AS(classify_solvability(Vector{1, -1}, Vector{1, 1}), InvalidNullVector);
  CHECK(default_class_tol(v, Vector{3, 4}) == doctest::Approx(1e-10 * std::sqrt(2.0) * 5.0));
}

TEST_CASE("classification is invariant under positive scaling of v") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto b = testing::random_vector(6, rng);
    const auto v = testing::random_vector(6, rng, 0.1, 2.0);
    const auto base = classify_solvability(v, b).verdict;
    for (double s : {1e-6, 0.5, 3.0, 1e6}) {
      Vector vs = v;
      for (auto& x : vs) x *= s;
      CHECK(classify_solvability(vs, b).verdict == base);
    }
  }
}
