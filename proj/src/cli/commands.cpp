#include "plsolve/cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "plsolve/cli/bench.hpp"
#include "plsolve/matprops/matprops.hpp"
#include "plsolve/numkit/matrix_market.hpp"
#include "plsolve/obstacle/obstacle.hpp"
#include "plsolve/oracle/generators.hpp"
#include "plsolve/oracle/oracle.hpp"

namespace plsolve::cli {
namespace {

// Thrown for flag values that parse but make no sense; mapped to kExitUsage.
struct UsageError : Error {
  using Error::Error;
};

krylov::Preconditioner preconditioner_for(const SolverFlags& f, bool parabolic) {
  if (f.precond == "none") return krylov::Preconditioner::None;
  if (f.precond == "jacobi") return krylov::Preconditioner::Jacobi;
  if (f.precond == "auto") return parabolic ? krylov::Preconditioner::Jacobi : krylov::Preconditioner::None;
  throw UsageError("unknown preconditioner '" + f.precond + "' (auto, none, jacobi)");
}

SolverOptions solver_options(const SolverFlags& f, bool parabolic = false) {
  SolverOptions o;
  o.krylov.preconditioner = preconditioner_for(f, parabolic);
  o.krylov.rel_tol = f.krylov_tol;
  o.sign_threshold = f.sign_tol;
  o.enforce_monotone_mask = !f.no_monotone_mask;
  if (f.dense) o.inner = InnerSolver::Dense;
  return o;
}

obstacle::ProblemName problem_or_throw(const std::string& s) {
  auto p = obstacle::parse_problem(s);
  if (!p) throw UsageError("unknown problem '" + s + "' (tent, tent-neumann, torsion, torsion-neumann)");
  return *p;
}

obstacle::CornerRule corner_or_throw(const std::string& s) {
  auto c = obstacle::parse_corner(s);
  if (!c) throw UsageError("unknown corner rule '" + s + "' (average, xedge, yedge)");
  return *c;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string inner_counts(const IterationReport& r) {
  std::vector<std::size_t> it;
  for (const auto& st : r.inner_stats) it.push_back(st.iterations);
  return join(it);
}

std::string vec_text(std::span<const double> v) {
  std::ostringstream s;
  s << std::setprecision(17);
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  return s.str();
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int exit_for(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return kExitOk;
    case SolveStatus::NoSolutionCertified: return kExitNoSolution;
    default: return kExitError;
  }
}

void write_csv_file(const std::string& path, const obstacle::DiscreteObstacle& d, std::span<const double> u) {
  std::ofstream f(path);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  obstacle::write_field_csv(f, obstacle::reconstruct_field(d, u));
  if (!f) throw Error("write to '" + path + "' failed");
}

void print_matrix_report(std::ostream& out, const matprops::MatrixClassReport& t1,
                         const matprops::MatrixClassReport& t2) {
  out << std::setprecision(17);
  out << "is_z_matrix=" << (t1.is_z_matrix ? 1 : 0) << '\n';
  out << "is_irreducible=" << (t1.is_irreducible ? 1 : 0) << '\n';
  out << "t1_verdict=" << matprops::to_string(t1.t1_verdict) << '\n';
  out << "t2_verdict=" << matprops::to_string(t2.t2_verdict) << '\n';
  if (t1.alpha) out << "alpha=" << *t1.alpha << '\n';
  if (t1.spectral_radius_estimate) out << "spectral_radius_estimate=" << *t1.spectral_radius_estimate << '\n';
  // Null vectors are printed scaled to unit max norm so that v = 1 reads as 1.
  auto scaled = [](const Vector& v) {
    Vector s = v;
    const double m = norm_inf(s);
    for (auto& x : s) x /= m;
    return s;
  };
  for (const auto& [key, vec] : {std::pair{"v", t2.left_null}, std::pair{"w", t2.right_null}}) {
    if (!vec) continue;
    const Vector s = scaled(*vec);
    const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
    out << key << "_min=" << *lo << '\n' << key << "_max=" << *hi << '\n';
    if (s.size() <= 20) out << key << '=' << vec_text(s) << '\n';
  }
  for (const auto& note : t1.notes) out << "note=" << note << '\n';
  for (const auto& note : t2.notes) out << "note=" << note << '\n';
}

}  // namespace

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto name = problem_or_throw(args.problem);
    const auto corner = corner_or_throw(args.corner);
    if (args.tau.has_value() != args.nu.has_value()) throw UsageError("--tau and --nu go together");
    const auto spec = obstacle::make_spec(name, args.c, corner);
    const SolverOptions opts = solver_options(args.solver, args.tau.has_value());
    out << std::setprecision(17);
    out << "problem=" << obstacle::to_string(name) << '\n' << "N=" << args.n << '\n';
    if (args.c) out << "C=" << *args.c << '\n';

    if (args.tau) {
      const auto run = obstacle::run_parabolic(spec, args.n, *args.tau, *args.nu, opts);
      out << "unknowns=" << run.problem.psi_vec.size() << '\n'
          << "tau=" << run.tau << '\n' << "nu=" << run.nu << '\n' << "dt=" << run.dt << '\n';
      SolveStatus worst = SolveStatus::Converged;
      for (std::size_t s = 0; s < run.per_step_reports.size(); ++s) {
        const auto& r = run.per_step_reports[s];
        out << "step." << s + 1 << ".status=" << to_string(run.per_step_status[s]) << '\n'
            << "step." << s + 1 << ".K=" << r.outer_iterations << '\n'
            << "step." << s + 1 << ".inner_iterations=" << inner_counts(r) << '\n'
            << "step." << s + 1 << ".residual=" << (r.residual_history.empty() ? 0.0 : r.residual_history.back()) << '\n';
        if (run.per_step_status[s] != SolveStatus::Converged) worst = run.per_step_status[s];
      }
      out << "lcp_ok=" << (run.lcp_ok ? 1 : 0) << '\n' << "status=" << to_string(worst) << '\n';
      if (!args.out.empty()) {
        write_csv_file(args.out, run.problem, run.snapshots.back());
        out << "field_csv=" << args.out << '\n';
      }
      return exit_for(worst);
    }

    const auto sol = obstacle::solve_obstacle(spec, args.n, opts);
    const auto& r = sol.report();
    const auto& d = sol.problem;
    out << "unknowns=" << d.psi_vec.size() << '\n'
        << "status=" << to_string(sol.pls.status) << '\n'
        << "K=" << r.outer_iterations << '\n'
        << "inner_iterations=" << inner_counts(r) << '\n'
        << "inner_total=" << r.total_inner_iterations() << '\n'
        << "active_counts=" << join(r.active_counts) << '\n'
        << "mask_regressions=" << r.mask_regressions << '\n'
        << "residual=" << (r.residual_history.empty() ? 0.0 : r.residual_history.back()) << '\n';
    if (r.vtb) out << "vtb=" << *r.vtb << '\n';
    if (r.family_along_w) out << "family_along_w=1\n";
    if (sol.pls.status != SolveStatus::NoSolutionCertified) {
      const auto chk = lcp_check(d.t, d.b, sol.pls.y, PlsKind::Elliptic, 1e-8);
      out << "lcp_ok=" << (chk.passed() ? 1 : 0) << '\n';
      out << "coincidence_nodes=" << std::count(sol.coincidence.begin(), sol.coincidence.end(), true) << '\n';
      out << "u_max=" << *std::max_element(sol.u.begin(), sol.u.end()) << '\n';
      if (!args.out.empty()) {
        write_csv_file(args.out, d, sol.u);
        out << "field_csv=" << args.out << '\n';
      }
    }
    return exit_for(sol.pls.status);
  });
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto id = parse_table(args.table);
    if (!id) throw UsageError("unknown table '" + args.table + "' (1, 2, 2n, 3, 4)");
    BenchOptions opts;
    opts.solver = solver_options(args.solver);
    opts.parabolic_preconditioner = preconditioner_for(args.solver, true);
    opts.corner = corner_or_throw(args.corner);
    opts.parallel = !args.serial;
    const BenchTable table = run_bench(*id, opts);
    write_bench_text(out, table, args.timing);
    if (args.out.empty()) {
      out << '\n';
      write_bench_csv(out, table);
    } else {
      std::ofstream f(args.out);
      if (!f) throw Error("cannot open '" + args.out + "' for writing");
      write_bench_csv(f, table);
    }
    return table.all_ok() ? kExitOk : kExitError;
  });
}

int cmd_check(const CheckArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    SparseMatrix t;
    std::optional<Vector> b;
    if (!args.mm.empty()) {
      t = read_matrix_market_file(args.mm);
      if (!args.rhs.empty()) b = read_matrix_market_vector_file(args.rhs);
    } else if (!args.problem.empty()) {
      const auto d = obstacle::assemble_elliptic(obstacle::make_spec(problem_or_throw(args.problem), args.c), args.n);
      t = d.t;
      b = d.b;
    } else {
      throw UsageError("check needs --problem or --mm");
    }
    const auto t1 = matprops::check_t1(t);
    const auto t2 = t1.t1_verdict == matprops::Verdict::Proven ? [&] {
      matprops::MatrixClassReport r;
      r.t2_verdict = matprops::Verdict::Disproven;
      r.notes.emplace_back("nonsingular: not T2");
      return r;
    }() : matprops::check_t2(t);
    out << "n=" << t.n_rows() << '\n';
    print_matrix_report(out, t1, t2);
    if (b && t2.t2_verdict == matprops::Verdict::Proven) {
      const auto cls = matprops::classify_solvability(*t2.left_null, *b);
      out << "vtb=" << cls.vtb << '\n' << "solvability=" << matprops::to_string(cls.verdict) << '\n';
    }
    return kExitOk;
  });
}

int cmd_oracle(const OracleArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    SparseMatrix t;
    Vector b;
    std::optional<T2Data> t2;
    std::mt19937_64 rng(args.seed);
    if (!args.mm.empty()) {
      t = read_matrix_market_file(args.mm);
      if (args.rhs.empty()) throw UsageError("--mm needs --rhs for the oracle");
      b = read_matrix_market_vector_file(args.rhs);
    } else {
      if (args.n < 1) throw UsageError("--n must be positive");
      const auto n = static_cast<std::size_t>(args.n);
      if (args.sample == "t1") {
        t = oracle::random_t1_matrix(n, rng);
        b = oracle::random_mixed_rhs(n, rng);
      } else if (args.sample == "t2") {
        const int sign = args.vtb == "neg" ? -1 : args.vtb == "pos" ? 1 : args.vtb == "zero" ? 0 : 2;
        if (sign == 2) throw UsageError("--vtb must be neg, zero or pos");
        t = oracle::path_laplacian(n);
        b = oracle::rhs_with_sum_sign(n, sign, rng);
        t2 = T2Data{Vector(n, 1.0), Vector(n, 1.0)};
      } else {
        throw UsageError("--sample must be t1 or t2");
      }
    }
    const PlsKind kind = args.parabolic ? PlsKind::Parabolic : PlsKind::Elliptic;
    const auto res = oracle::enumerate_solutions(t, b, kind);
    out << std::setprecision(17);
    out << "n=" << t.n_rows() << '\n' << "kind=" << to_string(kind) << '\n'
        << "patterns_tested=" << res.patterns_tested << '\n'
        << "point_solutions=" << res.point_solutions.size() << '\n'
        << "families=" << res.families.size() << '\n';
    for (std::size_t i = 0; i < res.point_solutions.size(); ++i)
      out << "solution." << i << '=' << vec_text(res.point_solutions[i]) << '\n';
    for (std::size_t i = 0; i < res.families.size(); ++i) {
      const auto& f = res.families[i];
      out << "family." << i << ".base=" << vec_text(f.base) << '\n'
          << "family." << i << ".direction=" << vec_text(f.direction) << '\n'
          << "family." << i << ".alpha_min=0\n"
          << "family." << i << ".alpha_max=" << f.alpha_max << (f.upper_open ? " (open)" : "") << '\n';
    }

    PlsProblem p{t, b, kind, std::nullopt, kind == PlsKind::Elliptic ? t2 : std::nullopt};
    SolverOptions opts;
    opts.inner = InnerSolver::Dense;
    const auto sol = solve(p, opts);
    out << "solver_status=" << to_string(sol.status) << '\n';
    if (sol.status == SolveStatus::NoSolutionCertified) {
      const bool agree = res.point_solutions.empty() && res.families.empty();
      out << "agree=" << (agree ? 1 : 0) << '\n';
      return agree ? kExitNoSolution : kExitError;
    }
    out << "solver_x=" << vec_text(sol.x) << '\n';
    // The iterate must be one of the enumerated points or lie on a family.
    auto close = [&](std::span<const double> a, std::span<const double> c) {
      return norm_inf(subtract(a, c)) <= 1e-9 * std::max(1.0, norm_inf(c));
    };
    bool agree = false;
    for (const auto& x : res.point_solutions) agree = agree || close(sol.x, x);
    for (const auto& f : res.families) {
      // alpha from the largest direction component, then compare.
      std::size_t j = 0;
      for (std::size_t i = 1; i < f.direction.size(); ++i)
        if (std::fabs(f.direction[i]) > std::fabs(f.direction[j])) j = i;
      const double alpha = (sol.x[j] - f.base[j]) / f.direction[j];
      Vector on = f.base;
      axpy(alpha, f.direction, on);
      agree = agree || (alpha >= -1e-9 && alpha <= f.alpha_max * (1.0 + 1e-9) + 1e-9 && close(sol.x, on));
    }
    out << "agree=" << (agree ? 1 : 0) << '\n';
    return sol.status == SolveStatus::Converged && agree ? kExitOk : kExitError;
  });
}

}  // namespace plsolve::cli
