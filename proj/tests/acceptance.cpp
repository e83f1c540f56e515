// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "plsolve/cli/bench.hpp"
#include "plsolve/matprops/matprops.hpp"
#include "plsolve/obstacle/obstacle.hpp"
#include "plsolve/oracle/generators.hpp"
#include "plsolve/oracle/oracle.hpp"
#include "plsolve/pls/solver.hpp"

using namespace plsolve;
using cli::BenchRow;
using cli::BenchTable;
using cli::TableId;
using obstacle::ProblemName;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
}

std::string cell_name(const BenchRow& r) {
  std::ostringstream s;
  s << obstacle::to_string(r.problem) << " N=" << r.n;
  if (r.c) s << " C=" << *r.c;
  if (r.step) s << " step " << *r.step;
  return s.str();
}

// "m/n cells within tolerance" plus the first few misses.
std::string match_summary(const std::vector<BenchRow>& rows) {
  std::size_t hits = 0;
  std::ostringstream misses;
  int shown = 0;
  for (const auto& r : rows) {
    if (r.match()) {
      ++hits;
    } else if (shown++ < 6) {
      misses << "; " << cell_name(r) << (r.ok() ? " K=" + std::to_string(r.k) : " " + r.error)
             << " (ref " << r.k_ref << ")";
    }
  }
  std::ostringstream s;
  s << hits << "/" << rows.size() << " cells within tolerance" << misses.str();
  return s.str();
}

std::vector<BenchRow> rows_of(const BenchTable& t, ProblemName p) {
  std::vector<BenchRow> out;
  for (const auto& r : t.rows)
    if (r.problem == p) out.push_back(r);
  return out;
}

bool all_match(const std::vector<BenchRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.match(); });
}

struct RandomStats {
  std::size_t runs = 0;
  std::size_t monotone = 0;
  std::size_t within_n = 0;
  std::size_t within_n1 = 0;
  std::size_t converged = 0;
  std::size_t lcp_ok = 0;
};

}  // namespace

int main() {
  std::cout << std::setprecision(6);
  const auto t_total = Clock::now();
  std::vector<BenchRow> all_rows;

  // Stationary tent, Dirichlet and Neumann.
  auto t0 = Clock::now();
  const BenchTable tent = cli::run_bench(TableId::Tent);
  const double tent_s = seconds_since(t0);
  all_rows.insert(all_rows.end(), tent.rows.begin(), tent.rows.end());
  {
    const auto rows = rows_of(tent, ProblemName::Tent);
    std::ostringstream d;
    d << match_summary(rows) << ", sweep " << tent_s << " s";
    report("tent Dirichlet K = (6,10,10,12) +-1 within 5 min", all_match(rows) && tent_s <= 300.0, d.str());
  }
  {
    const auto rows = rows_of(tent, ProblemName::TentNeumann);
    const bool monotone = std::all_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.monotone; });
    report("tent Neumann K_V = (12,25,37,49) +-2, monotone active sets", all_match(rows) && monotone,
           match_summary(rows) + (monotone ? ", active counts nondecreasing" : ", active counts regressed"));
  }

  // Stationary torsion.
  const BenchTable torsion = cli::run_bench(TableId::Torsion);
  all_rows.insert(all_rows.end(), torsion.rows.begin(), torsion.rows.end());
  {
    std::map<std::pair<int, double>, int> k;
    for (const auto& r : torsion.rows) k[{r.n, *r.c}] = r.k;
    bool trend = torsion.all_ok();
    std::string where;
    for (int n : cli::kGridSizes)
      for (int c = 1; c < 4; ++c)
        if (k[{n, cli::kTorsionC[c]}] > k[{n, cli::kTorsionC[c - 1]}]) {
          trend = false;
          where += " N=" + std::to_string(n);
        }
    report("torsion K(C,N) +-1", torsion.all_match(), match_summary(torsion.rows));
    report("torsion K nonincreasing in |C| at every N", trend,
           trend ? "holds for N = 25, 50, 75, 100" : "violated at" + where);
  }

  // Neumann torsion against the Dirichlet counts.
  const BenchTable torsion_n = cli::run_bench(TableId::TorsionNeumann);
  all_rows.insert(all_rows.end(), torsion_n.rows.begin(), torsion_n.rows.end());
  {
    bool same = torsion_n.all_ok() && torsion.all_ok();
    int worst = 0;
    for (std::size_t i = 0; i < torsion_n.rows.size() && same; ++i) {
      const int diff = std::abs(torsion_n.rows[i].k - torsion.rows[i].k);
      worst = std::max(worst, diff);
    }
    same = same && worst <= 1 && torsion_n.all_match();
    std::ostringstream d;
    d << match_summary(torsion_n.rows) << ", max |K_neumann - K_dirichlet| = " << worst;
    report("Neumann torsion counts match Dirichlet +-1", same, d.str());
  }

  // Time stepping.
  const BenchTable ptent = cli::run_bench(TableId::ParabolicTent);
  all_rows.insert(all_rows.end(), ptent.rows.begin(), ptent.rows.end());
  report("parabolic tent per-step K +-1 (step 1: 5,6,8,8; later: 5,6,6,6)", ptent.all_match(),
         match_summary(ptent.rows));

  const BenchTable ptorsion = cli::run_bench(TableId::ParabolicTorsion);
  all_rows.insert(all_rows.end(), ptorsion.rows.begin(), ptorsion.rows.end());
  report("parabolic torsion per-step K = stationary K +-1", ptorsion.all_match(), match_summary(ptorsion.rows));

  // Oracle agreement on random nonsingular M-matrix systems.
  RandomStats rs;
  {
    t0 = Clock::now();
    std::mt19937_64 rng(20240607);
    std::size_t agree = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 1 + static_cast<std::size_t>(trial % 10);
      const auto t = oracle::random_t1_matrix(n, rng);
      const auto b = oracle::random_mixed_rhs(n, rng);
      const PlsKind kind = trial % 2 == 0 ? PlsKind::Elliptic : PlsKind::Parabolic;
      const auto ref = oracle::enumerate_solutions(t, b, kind);
      const auto sol = solve({t, b, kind});
      ++rs.runs;
      rs.monotone += std::is_sorted(sol.report.raw_active_counts.begin(), sol.report.raw_active_counts.end());
      rs.within_n += sol.report.outer_iterations <= n;
      rs.within_n1 += sol.report.outer_iterations <= n + 1;
      if (sol.status == SolveStatus::Converged) {
        ++rs.converged;
        rs.lcp_ok += lcp_check(t, b, sol.y, kind, 1e-8).passed();
      }
      if (ref.point_solutions.size() != 1 || !ref.families.empty()) continue;
      const auto& x = ref.point_solutions[0];
      const double rel = norm_inf(subtract(sol.x, x)) / std::max(1.0, norm_inf(x));
      worst = std::max(worst, rel);
      agree += rel <= 1e-9;
    }
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << agree << "/200 agree, worst relative error " << worst << ", " << secs << " s";
    report("oracle equivalence on 200 random T1 systems (1e-9, < 30 s)", agree == 200 && secs < 30.0, d.str());
  }

  // Solvability trichotomy on path Laplacians.
  {
    std::mt19937_64 rng(777);
    int correct = 0;
    int family_members = 0, family_ok = 0;
    for (int i = 0; i < 60; ++i) {
      const std::size_t n = 2 + static_cast<std::size_t>(i % 9);
      const int sign = i % 3 - 1;
      const auto t = oracle::path_laplacian(n);
      const auto b = oracle::rhs_with_sum_sign(n, sign, rng);
      const Vector ones(n, 1.0);
      const auto cls = matprops::classify_solvability(ones, b);
      const auto sol = solve({t, b, PlsKind::Elliptic, std::nullopt, T2Data{ones, ones}});
      bool ok = false;
      switch (sign) {
        case -1:
          ok = cls.verdict == matprops::SolvabilityVerdict::Unique && sol.status == SolveStatus::Converged &&
               !sol.report.family_along_w;
          break;
        case 0:
          ok = cls.verdict == matprops::SolvabilityVerdict::FamilyAlongW &&
               sol.status == SolveStatus::Converged && sol.report.family_along_w;
          break;
        default:
          ok = cls.verdict == matprops::SolvabilityVerdict::NoSolution &&
               sol.status == SolveStatus::NoSolutionCertified;
          break;
      }
      if (sol.status != SolveStatus::NoSolutionCertified) {
        ++rs.runs;
        rs.monotone += std::is_sorted(sol.report.active_counts.begin(), sol.report.active_counts.end());
        rs.within_n += sol.report.outer_iterations <= n;
        rs.within_n1 += sol.report.outer_iterations <= n + 1;
      }
      if (sol.status == SolveStatus::Converged) {
        ++rs.converged;
        rs.lcp_ok += lcp_check(t, b, sol.y, PlsKind::Elliptic, 1e-8).passed();
      }
      if (ok && sign == 0) {
        for (double alpha : {0.5, 1.0, 2.0}) {
          Vector x = sol.x;
          axpy(alpha, ones, x);
          ++family_members;
          family_ok += residual_nonsmooth(t, b, x, PlsKind::Elliptic) <= 1e-8;
        }
      }
      correct += ok;
    }
    std::ostringstream d;
    d << correct << "/60 classified, " << family_ok << "/" << family_members
      << " family members x + alpha w within 1e-8";
    report("T2 trichotomy Unique / FamilyAlongW / NoSolution", correct == 60 && family_ok == family_members,
           d.str());
  }

  // Monotone masks and the n-step bound, benchmarks plus random suites.
  {
    std::size_t bench_ok = 0;
    for (const auto& r : all_rows)
      bench_ok += r.ok() && r.monotone && static_cast<std::size_t>(r.k) <= r.unknowns;
    // K counts solves, including the one that confirms the final mask, so a
    // run whose mask grows one component at a time from O to I takes n + 1.
    std::ostringstream d;
    d << "benchmarks " << bench_ok << "/" << all_rows.size() << "; random monotone " << rs.monotone << "/"
      << rs.runs << ", K <= n " << rs.within_n << "/" << rs.runs << ", K <= n + 1 " << rs.within_n1 << "/"
      << rs.runs;
    report("active counts nondecreasing and K <= n", bench_ok == all_rows.size() && rs.monotone == rs.runs &&
                                                         rs.within_n == rs.runs,
           d.str());
  }

  // Complementarity on every converged run.
  {
    std::size_t bench_conv = 0, bench_lcp = 0;
    for (const auto& r : all_rows) {
      if (!r.ok()) continue;
      ++bench_conv;
      bench_lcp += r.lcp_ok;
    }
    std::ostringstream d;
    d << "benchmarks " << bench_lcp << "/" << bench_conv << ", random " << rs.lcp_ok << "/" << rs.converged;
    report("LCP check at 1e-8 on converged runs", bench_lcp == bench_conv && rs.lcp_ok == rs.converged, d.str());
  }

  // Solution shapes. The ridge x = 0 is a grid line only for odd N.
  {
    bool pass = true;
    std::ostringstream d;
    for (int n : {25, 75}) {
      const auto s = obstacle::solve_obstacle(obstacle::make_spec(ProblemName::Tent), n);
      const double h = s.problem.grid.dx;
      double min_gap = 1e300, min_u = 1e300;
      for (std::size_t i = 0; i < s.u.size(); ++i) {
        min_gap = std::min(min_gap, s.u[i] - s.problem.psi_vec[i]);
        min_u = std::min(min_u, s.u[i]);
      }
      const double u_max = *std::max_element(s.u.begin(), s.u.end());
      pass = pass && min_gap >= -1e-12 && min_u >= 0.5 - 1e-12 && std::fabs(u_max - 1.0) <= 2 * h * h;
      d << (n == 25 ? "" : "; ") << "N=" << n << ": min(u - psi) = " << min_gap << ", min u = " << min_u
        << ", |max u - 1| = " << std::fabs(u_max - 1.0) << " (2h^2 = " << 2 * h * h << ")";
    }
    report("tent solution u >= psi, u >= 1/2, max u = 1", pass, d.str());
  }
  {
    std::vector<std::size_t> area;
    for (double c : cli::kTorsionC) {
      const auto s = obstacle::solve_obstacle(obstacle::make_spec(ProblemName::Torsion, c), 50);
      area.push_back(static_cast<std::size_t>(std::count(s.coincidence.begin(), s.coincidence.end(), true)));
    }
    bool increasing = true;
    for (std::size_t i = 1; i < area.size(); ++i) increasing = increasing && area[i] > area[i - 1];
    std::ostringstream d;
    d << "N=50 coincidence nodes for C = -5, -10, -15, -20:";
    for (auto a : area) d << ' ' << a;
    report("torsion coincidence area increasing in |C|", increasing, d.str());
  }

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " criteria failed") << " ("
            << seconds_since(t_total) << " s)" << std::endl;
  return failures == 0 ? 0 : 1;
}
