#include "shiftk/cli/run.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>

#include "shiftk/cli/log_files.hpp"
#include "shiftk/core/matrix_market.hpp"
#include "shiftk/core/text_format.hpp"
#include "shiftk/core/vector_ops.hpp"
#include "shiftk/models/green.hpp"
#include "shiftk/models/spin_chain.hpp"
#include "shiftk/solvers/recalc.hpp"

namespace shiftk::cli {
namespace fs = std::filesystem;

namespace {

struct Paths {
  fs::path residual, dir, green, tridiag, resvec, restart;
  explicit Paths(const fs::path& outdir)
      : residual(outdir / "residual.dat"),
        dir(outdir / "output"),
        green(dir / "dynamicalG.dat"),
        tridiag(dir / "TriDiagComp.dat"),
        resvec(dir / "ResVec.dat"),
        restart(dir / "Restart.dat") {}
};

struct Problem {
  SparseMatrix h;
  SparseMatrix h_adjoint;  // only for non-Hermitian BiCG
  bool separate_adjoint = false;
  DenseVector b;
  Method method = Method::bicg;
};

Problem load_problem(const InputConfig& cfg, const RunOptions& opts) {
  Problem p;
  if (cfg.inham) {
    p.h = mm_read_matrix(*cfg.inham);
  } else {
    p.h = build_hamiltonian(*cfg.ham);
  }
  if (cfg.invec) {
    p.b = mm_read_vector(*cfg.invec);
    if (p.b.size() != p.h.dimension())
      throw DimensionError("invec has length " + std::to_string(p.b.size()) + " but H has dimension " +
                           std::to_string(p.h.dimension()));
  } else {
    p.b = random_unit_vector(p.h.dimension(), opts.seed);
    if (opts.out) *opts.out << "invec: random unit vector, seed " << opts.seed << '\n';
  }
  p.method = select_method(p.h);
  if (p.method == Method::bicg && !p.h.is_self_adjoint()) {
    p.h_adjoint = p.h.adjoint();
    p.separate_adjoint = true;
  }
  return p;
}

void multiply(const Problem& p, ShiftedSolver& s) {
  spmv(p.h, s.vector(), s.product());
  if (needs_shadow(s.method())) spmv(p.separate_adjoint ? p.h_adjoint : p.h, s.shadow_vector(), s.shadow_product());
}

void write_residual_row(std::ostream& out, const StepOutcome& step) {
  out << step.iteration << ' ' << text::format_double(step.max_residual) << ' ' << step.seed_index << '\n';
}

void warn_unconverged(const RunOptions& opts, const RunReport& r) {
  if (opts.err && !r.converged)
    *opts.err << "warning: not converged after " << r.iterations << " iterations (max residual "
              << text::format_double(r.max_residual) << "); results are partial\n";
}

void summary(const RunOptions& opts, const RunReport& r) {
  if (!opts.out) return;
  *opts.out << "mode " << to_string(r.mode) << ", method " << to_string(r.method) << ", dimension " << r.dim
            << ", iterations " << r.iterations << ", " << (r.converged ? "converged" : "not converged")
            << ", max residual " << text::format_double(r.max_residual) << ", SpMV calls " << r.spmv_calls << '\n';
}

// Iterates to completion, streaming residual.dat; writes every output file.
RunReport iterate(ShiftedSolver& s, const Problem& p, const InputConfig& cfg, const Paths& paths,
                  std::ofstream& residual, RunReport report) {
  const auto spmv0 = spmv_count();
  while (s.status() == StepStatus::iterating) {
    multiply(p, s);
    const auto step = s.update();
    if (step.status == StepStatus::breakdown) {
      residual.flush();
      throw BreakdownError("shifted " + std::string(to_string(s.method())) + " breakdown at iteration " +
                               std::to_string(step.iteration) + ": " + step.breakdown_reason,
                           step.iteration, step.breakdown_shift);
    }
    write_residual_row(residual, step);
  }
  residual.flush();
  if (!residual) throw InputError("write failure on '" + paths.residual.string() + "'");
  report.status = s.status();
  if (cfg.outrestart) write_checkpoint(s.checkpoint(), paths.restart);
  auto res = s.finalize();
  report.spmv_calls = spmv_count() - spmv0;
  report.iterations = res.iterations;
  report.converged = std::all_of(res.converged.begin(), res.converged.end(), [](bool c) { return c; });
  report.max_residual = *std::max_element(res.residuals.begin(), res.residuals.end());
  write_green(res.shifts, res.solutions, paths.green);
  write_tridiag(res.log, paths.tridiag);
  write_resvec(res.log, paths.resvec);
  return report;
}

}  // namespace

RunReport run(const InputConfig& cfg, const RunOptions& opts) {
  const Paths paths(opts.outdir);
  fs::create_directories(paths.dir);
  const auto grid = frequency_grid(cfg.omegamin, cfg.omegamax, cfg.nomega);
  RunReport report;
  report.mode = cfg.calctype;

  if (cfg.calctype == CalcType::recalc) {
    const auto spmv0 = spmv_count();
    const auto log = read_log(paths.tridiag, paths.resvec);
    const auto res = recalc(log, grid);
    report.method = log.method;
    report.dim = log.dim;
    report.iterations = res.iterations;
    report.status = StepStatus::converged;
    report.converged = std::all_of(res.converged.begin(), res.converged.end(), [](bool c) { return c; });
    report.max_residual = *std::max_element(res.residuals.begin(), res.residuals.end());
    write_green(res.shifts, res.solutions, paths.green);
    report.spmv_calls = spmv_count() - spmv0;
    warn_unconverged(opts, report);
    summary(opts, report);
    return report;
  }

  const Problem p = load_problem(cfg, opts);
  report.method = p.method;
  report.dim = p.h.dimension();
  SolverOptions so;
  so.max_iter = cfg.maxloops.value_or(p.h.dimension());
  so.threshold = cfg.threshold();
  so.keep_log = true;

  if (cfg.calctype == CalcType::normal) {
    std::ofstream residual(paths.residual);
    if (!residual) throw InputError("cannot open '" + paths.residual.string() + "' for writing");
    residual << "# n max_residual seed_index\n";
    ShiftedSolver s(p.method, p.b, grid, Projection::single(p.b), so);
    report = iterate(s, p, cfg, paths, residual, report);
  } else {
    const auto log = read_log(paths.tridiag, paths.resvec);
    const auto cp = read_checkpoint(paths.restart);
    if (log.method != p.method)
      throw InputError("restart: the stored run used " + std::string(to_string(log.method)) + " but H selects " +
                       std::string(to_string(p.method)));
    if (log.dim != p.h.dimension()) throw DimensionError("restart: stored run has a different dimension");
    if (opts.err && log.threshold != so.threshold)
      *opts.err << "note: restart keeps the stored threshold " << text::format_double(log.threshold) << '\n';
    auto s = ShiftedSolver::resume(log, cp, grid, Projection::single(p.b), so);
    std::ofstream residual(paths.residual, std::ios::app);
    if (!residual) throw InputError("cannot open '" + paths.residual.string() + "' for appending");
    report = iterate(s, p, cfg, paths, residual, report);
  }
  warn_unconverged(opts, report);
  summary(opts, report);
  return report;
}

}  // namespace shiftk::cli
