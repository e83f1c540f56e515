#include "plsolve/cli/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace plsolve::cli {
namespace {

using obstacle::ProblemName;

constexpr int kTentK[4] = {6, 10, 10, 12};
constexpr int kTentNeumannK[4] = {12, 25, 37, 49};
constexpr int kTorsionK[4][4] = {{9, 17, 25, 32}, {5, 10, 13, 16}, {4, 7, 9, 11}, {4, 5, 7, 9}};
constexpr int kParabolicTentFirst[4] = {5, 6, 8, 8};
constexpr int kParabolicTentLater[4] = {5, 6, 6, 6};
constexpr double kTentTau = 1e4;
constexpr double kTorsionTau = 5.0;
constexpr int kSteps = 20;
constexpr double kLcpTol = 1e-8;

bool nondecreasing(const std::vector<std::size_t>& v) {
  return std::is_sorted(v.begin(), v.end());
}

// One unit of work: a stationary solve or a whole time-stepping run.
struct Cell {
  ProblemName problem;
  int n_index;
  int c_index;  // -1 when C does not apply
  bool parabolic;
};

std::vector<Cell> cells_for(TableId id) {
  std::vector<Cell> out;
  switch (id) {
    case TableId::Tent:
      for (ProblemName p : {ProblemName::Tent, ProblemName::TentNeumann})
        for (int i = 0; i < 4; ++i) out.push_back({p, i, -1, false});
      break;
    case TableId::Torsion:
    case TableId::TorsionNeumann: {
      const ProblemName p = id == TableId::Torsion ? ProblemName::Torsion : ProblemName::TorsionNeumann;
      for (int c = 0; c < 4; ++c)
        for (int i = 0; i < 4; ++i) out.push_back({p, i, c, false});
      break;
    }
    case TableId::ParabolicTent:
      for (int i = 0; i < 4; ++i) out.push_back({ProblemName::Tent, i, -1, true});
      break;
    case TableId::ParabolicTorsion:
      for (int c = 0; c < 4; ++c)
        for (int i = 0; i < 4; ++i) out.push_back({ProblemName::Torsion, i, c, true});
      break;
  }
  return out;
}

int reference(const Cell& cell, int step) {
  const int i = cell.n_index;
  switch (cell.problem) {
    case ProblemName::Tent:
      if (!cell.parabolic) return kTentK[i];
      return step == 1 ? kParabolicTentFirst[i] : kParabolicTentLater[i];
    case ProblemName::TentNeumann: return kTentNeumannK[i];
    case ProblemName::Torsion:
    case ProblemName::TorsionNeumann: return kTorsionK[cell.c_index][i];
  }
  return 0;
}

struct CellResult {
  std::vector<BenchRow> rows;
  double wall_ms = 0.0;
};

CellResult run_cell(const Cell& cell, const BenchOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  CellResult res;
  const int n = kGridSizes[cell.n_index];
  const std::optional<double> c =
      cell.c_index >= 0 ? std::optional<double>(kTorsionC[cell.c_index]) : std::nullopt;
  BenchRow proto;
  proto.problem = cell.problem;
  proto.n = n;
  proto.c = c;
  proto.tolerance = cell.problem == ProblemName::TentNeumann ? 2 : 1;
  const int steps = cell.parabolic ? (opts.nu > 0 ? opts.nu : kSteps) : 1;

  auto fill_error = [&](const std::string& msg) {
    for (int s = static_cast<int>(res.rows.size()); s < steps; ++s) {
      BenchRow r = proto;
      if (cell.parabolic) r.step = s + 1;
      r.k_ref = reference(cell, s + 1);
      r.error = msg;
      res.rows.push_back(r);
    }
  };

  try {
    const auto spec = obstacle::make_spec(cell.problem, c, opts.corner);
    if (!cell.parabolic) {
      const auto sol = obstacle::solve_obstacle(spec, n, opts.solver);
      BenchRow r = proto;
      r.k = static_cast<int>(sol.report().outer_iterations);
      r.k_ref = reference(cell, 1);
      r.unknowns = sol.u.size();
      r.monotone = nondecreasing(sol.report().active_counts);
      r.lcp_ok = lcp_check(sol.problem.t, sol.problem.b, sol.pls.y, PlsKind::Elliptic, kLcpTol).passed();
      if (sol.pls.status != SolveStatus::Converged) r.error = to_string(sol.pls.status);
      res.rows.push_back(r);
    } else {
      const double tau = opts.tau > 0.0 ? opts.tau
                         : cell.problem == ProblemName::Tent ? kTentTau
                                                             : kTorsionTau;
      SolverOptions so = opts.solver;
      if (opts.parabolic_preconditioner) so.krylov.preconditioner = *opts.parabolic_preconditioner;
      const auto run = obstacle::run_parabolic(spec, n, tau, steps, so, obstacle::InitialCondition::ProblemDefault,
                                               kLcpTol);
      for (int s = 0; s < steps; ++s) {
        BenchRow r = proto;
        r.step = s + 1;
        r.k = static_cast<int>(run.per_step_reports[static_cast<std::size_t>(s)].outer_iterations);
        r.k_ref = reference(cell, s + 1);
        r.unknowns = run.problem.psi_vec.size();
        r.monotone = nondecreasing(run.per_step_reports[static_cast<std::size_t>(s)].active_counts);
        r.lcp_ok = run.lcp_ok;
        const SolveStatus st = run.per_step_status[static_cast<std::size_t>(s)];
        if (st != SolveStatus::Converged) r.error = to_string(st);
        res.rows.push_back(r);
      }
    }
  } catch (const std::exception& e) {
    fill_error(e.what());
  }
  res.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return res;
}

std::string format_c(const std::optional<double>& c) {
  if (!c) return "";
  std::ostringstream s;
  s << *c;
  return s.str();
}

std::string cell_text(const BenchRow& r) {
  if (!r.ok()) return "ERR";
  std::string s = std::to_string(r.k);
  if (!r.match()) s += "*";
  return s;
}

// Prints a labelled grid with right-aligned columns.
void print_grid(std::ostream& out, const std::vector<std::vector<std::string>>& grid) {
  std::vector<std::size_t> width;
  for (const auto& line : grid) {
    if (width.size() < line.size()) width.resize(line.size(), 0);
    for (std::size_t j = 0; j < line.size(); ++j) width[j] = std::max(width[j], line[j].size());
  }
  for (const auto& line : grid) {
    std::string text;
    for (std::size_t j = 0; j < line.size(); ++j) {
      if (j == 0) {
        text += line[j] + std::string(width[j] - line[j].size(), ' ');
      } else {
        text += "  " + std::string(width[j] - line[j].size(), ' ') + line[j];
      }
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out << text << '\n';
  }
}

std::vector<std::string> size_header(const char* label) {
  std::vector<std::string> h{label};
  for (int n : kGridSizes) h.push_back(std::to_string(n * n));
  return h;
}

std::vector<std::string> n_header() {
  std::vector<std::string> h{"N"};
  for (int n : kGridSizes) h.push_back(std::to_string(n));
  return h;
}

const BenchRow* find(const BenchTable& t, ProblemName p, int n, std::optional<double> c,
                     std::optional<int> step) {
  for (const auto& r : t.rows)
    if (r.problem == p && r.n == n && r.c == c && r.step == step) return &r;
  return nullptr;
}

std::string lookup(const BenchTable& t, ProblemName p, int n, std::optional<double> c,
                   std::optional<int> step, bool ref) {
  const BenchRow* r = find(t, p, n, c, step);
  if (!r) return "-";
  return ref ? std::to_string(r->k_ref) : cell_text(*r);
}

}  // namespace

std::optional<TableId> parse_table(std::string_view s) {
  if (s == "1") return TableId::Tent;
  if (s == "2") return TableId::Torsion;
  if (s == "2n") return TableId::TorsionNeumann;
  if (s == "3") return TableId::ParabolicTent;
  if (s == "4") return TableId::ParabolicTorsion;
  return std::nullopt;
}

const char* to_string(TableId t) {
  switch (t) {
    case TableId::Tent: return "1";
    case TableId::Torsion: return "2";
    case TableId::TorsionNeumann: return "2n";
    case TableId::ParabolicTent: return "3";
    case TableId::ParabolicTorsion: return "4";
  }
  return "?";
}

bool BenchTable::all_ok() const {
  for (const auto& r : rows)
    if (!r.ok()) return false;
  return true;
}

bool BenchTable::all_match() const {
  for (const auto& r : rows)
    if (!r.match()) return false;
  return true;
}

BenchTable run_bench(TableId id, const BenchOptions& opts) {
  BenchTable table;
  table.id = id;
  const auto cells = cells_for(id);
  std::vector<CellResult> results;
  if (opts.parallel) {
    std::vector<std::future<CellResult>> futures;
    futures.reserve(cells.size());
    for (const auto& cell : cells)
      futures.push_back(std::async(std::launch::async, run_cell, cell, std::cref(opts)));
    for (auto& f : futures) results.push_back(f.get());
  } else {
    for (const auto& cell : cells) results.push_back(run_cell(cell, opts));
  }
  for (auto& r : results) {
    table.wall_times_ms.push_back(r.wall_ms);
    for (auto& row : r.rows) table.rows.push_back(std::move(row));
  }
  return table;
}

void write_bench_csv(std::ostream& out, const BenchTable& t) {
  out << "table,problem,N,C,step,k,k_ref,delta,match\n";
  for (const auto& r : t.rows) {
    out << to_string(t.id) << ',' << obstacle::to_string(r.problem) << ',' << r.n << ','
        << format_c(r.c) << ',' << (r.step ? std::to_string(*r.step) : "") << ',';
    if (r.ok())
      out << r.k << ',' << r.k_ref << ',' << (r.k - r.k_ref) << ',' << (r.match() ? 1 : 0) << '\n';
    else
      out << "ERR," << r.k_ref << ",,0\n";
  }
}

void write_bench_text(std::ostream& out, const BenchTable& t, bool with_timing) {
  std::vector<std::vector<std::string>> grid;
  switch (t.id) {
    case TableId::Tent: {
      out << "Table 1: tent problem, K (Dirichlet) and K_V (Neumann)\n";
      grid.push_back(n_header());
      grid.push_back(size_header("n"));
      const std::pair<const char*, ProblemName> lines[] = {{"K", ProblemName::Tent},
                                                            {"K_V", ProblemName::TentNeumann}};
      for (bool ref : {false, true})
        for (const auto& [label, p] : lines) {
          std::vector<std::string> line{std::string(label) + (ref ? " ref" : "")};
          for (int n : kGridSizes) line.push_back(lookup(t, p, n, std::nullopt, std::nullopt, ref));
          grid.push_back(line);
        }
      break;
    }
    case TableId::Torsion:
    case TableId::TorsionNeumann: {
      const ProblemName p = t.id == TableId::Torsion ? ProblemName::Torsion : ProblemName::TorsionNeumann;
      out << (t.id == TableId::Torsion ? "Table 2: elastic-plastic torsion, Dirichlet, K(C)\n"
                                       : "Table 2: elastic-plastic torsion, Neumann variant, K(C)\n");
      grid.push_back(n_header());
      grid.push_back(size_header("n"));
      for (bool ref : {false, true})
        for (double c : kTorsionC) {
          std::vector<std::string> line{"K(C=" + format_c(c) + ")" + (ref ? " ref" : "")};
          for (int n : kGridSizes) line.push_back(lookup(t, p, n, c, std::nullopt, ref));
          grid.push_back(line);
        }
      break;
    }
    case TableId::ParabolicTent: {
      out << "Table 3: parabolic tent problem, iterations per time step\n";
      grid.push_back(n_header());
      grid.push_back(size_header("i\\n"));
      int steps = 0;
      for (const auto& r : t.rows) steps = std::max(steps, r.step.value_or(0));
      for (int s = 1; s <= steps; ++s) {
        std::vector<std::string> line{std::to_string(s)};
        for (int n : kGridSizes) line.push_back(lookup(t, ProblemName::Tent, n, std::nullopt, s, false));
        grid.push_back(line);
      }
      std::vector<std::string> ref1{"ref 1"}, ref2{"ref 2.."};
      for (int n : kGridSizes) {
        ref1.push_back(lookup(t, ProblemName::Tent, n, std::nullopt, 1, true));
        ref2.push_back(lookup(t, ProblemName::Tent, n, std::nullopt, std::min(2, steps), true));
      }
      grid.push_back(ref1);
      grid.push_back(ref2);
      break;
    }
    case TableId::ParabolicTorsion: {
      out << "Table 4: parabolic torsion problem, iterations per time step\n";
      std::vector<std::string> h1{"N"}, h2{"n"}, h3{"i\\C"};
      for (int n : kGridSizes)
        for (double c : kTorsionC) {
          h1.push_back(std::to_string(n));
          h2.push_back(std::to_string(n * n));
          h3.push_back(format_c(c));
        }
      grid.push_back(h1);
      grid.push_back(h2);
      grid.push_back(h3);
      int steps = 0;
      for (const auto& r : t.rows) steps = std::max(steps, r.step.value_or(0));
      for (int s = 1; s <= steps; ++s) {
        std::vector<std::string> line{std::to_string(s)};
        for (int n : kGridSizes)
          for (double c : kTorsionC) line.push_back(lookup(t, ProblemName::Torsion, n, c, s, false));
        grid.push_back(line);
      }
      std::vector<std::string> ref{"ref"};
      for (int n : kGridSizes)
        for (double c : kTorsionC) ref.push_back(lookup(t, ProblemName::Torsion, n, c, 1, true));
      grid.push_back(ref);
      break;
    }
  }
  print_grid(out, grid);
  std::size_t matched = 0, failed = 0;
  for (const auto& r : t.rows) {
    if (r.match()) ++matched;
    if (!r.ok()) ++failed;
  }
  out << "cells within tolerance: " << matched << "/" << t.rows.size() << " (* = outside, ERR = run failed)\n";
  if (failed > 0)
    for (const auto& r : t.rows)
      if (!r.ok()) {
        out << "error: " << obstacle::to_string(r.problem) << " N=" << r.n;
        if (r.c) out << " C=" << format_c(r.c);
        if (r.step) out << " step=" << *r.step;
        out << ": " << r.error << '\n';
      }
  if (with_timing) {
    out << "wall time per cell [ms]:";
    for (double ms : t.wall_times_ms) out << ' ' << std::fixed << std::setprecision(1) << ms;
    out << std::defaultfloat << '\n';
  }
}

}  // namespace plsolve::cli
