#include <iostream>

#include "CLI11.hpp"
#include "plsolve/cli/commands.hpp"

namespace {

void add_solver_flags(CLI::App* cmd, plsolve::cli::SolverFlags& f) {
  cmd->add_option("--krylov-tol", f.krylov_tol, "relative QMR tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--sign-tol", f.sign_tol, "component is active when x_i >= sign-tol");
  cmd->add_flag("--no-monotone-mask", f.no_monotone_mask, "do not join the new mask with the previous one");
  cmd->add_flag("--dense", f.dense, "dense LU inner solves instead of QMR");
  cmd->add_option("--precond", f.precond, "auto | none | jacobi (auto: Jacobi for time stepping only)");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace plsolve::cli;
  CLI::App app{"Piecewise linear system solver for obstacle problems"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "solve one benchmark problem");
  s->add_option("--problem", solve.problem, "tent | tent-neumann | torsion | torsion-neumann")->required();
  s->add_option("--n", solve.n, "interior points per direction")->required();
  s->add_option("--c", solve.c, "torsion load C < 0");
  s->add_option("--tau", solve.tau, "time horizon (parabolic run)");
  s->add_option("--nu", solve.nu, "number of time steps (parabolic run)");
  s->add_option("--corner", solve.corner, "Neumann corner rule: average | xedge | yedge");
  s->add_option("--out", solve.out, "field CSV output path");
  add_solver_flags(s, solve.solver);

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "run a benchmark table sweep");
  b->add_option("--table", bench.table, "1 | 2 | 2n | 3 | 4")->required();
  b->add_option("--corner", bench.corner, "Neumann corner rule");
  b->add_option("--out", bench.out, "CSV output path (default: after the text table)");
  b->add_flag("--timing", bench.timing, "append wall times to the text table");
  b->add_flag("--serial", bench.serial, "run cells one after another");
  add_solver_flags(b, bench.solver);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "classify a matrix (T1 / T2)");
  c->add_option("--problem", check.problem, "benchmark assembly");
  c->add_option("--n", check.n, "interior points per direction")->default_val(10);
  c->add_option("--c", check.c, "torsion load C < 0")->default_val(-5.0);
  c->add_option("--mm", check.mm, "Matrix Market file");
  c->add_option("--rhs", check.rhs, "Matrix Market right-hand side (array format)");

  OracleArgs oracle;
  auto* o = app.add_subcommand("oracle", "enumerate all sign patterns of a small system");
  o->add_option("--sample", oracle.sample, "generator: t1 | t2");
  o->add_option("--n", oracle.n, "system size (at most 20)");
  o->add_option("--seed", oracle.seed, "generator seed");
  o->add_option("--vtb", oracle.vtb, "t2 generator: sign of v^T b (neg | zero | pos)");
  o->add_flag("--parabolic", oracle.parabolic, "x + T max{0,x} = b instead of the elliptic form");
  o->add_option("--mm", oracle.mm, "Matrix Market matrix");
  o->add_option("--rhs", oracle.rhs, "Matrix Market right-hand side");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (s->parsed()) return cmd_solve(solve, std::cout, std::cerr);
  if (b->parsed()) return cmd_bench(bench, std::cout, std::cerr);
  if (c->parsed()) return cmd_check(check, std::cout, std::cerr);
  return cmd_oracle(oracle, std::cout, std::cerr);
}
