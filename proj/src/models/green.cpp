#include "shiftk/models/green.hpp"

namespace shiftk {

Method select_method(const SparseMatrix& h) {
  const bool real = h.value_kind() == ValueKind::real;
  const bool symmetric = h.symmetry() != Symmetry::general || h.is_symmetric();
  return real && symmetric ? Method::cocg : Method::bicg;
}

SpectrumResult green_diagonal(Method method, const Operator& apply, std::span<const cplx> a,
                              std::vector<cplx> z_grid, const GreenOptions& opts, const Operator& adjoint) {
  if (method == Method::cg_r) throw InputError("green_diagonal: complex grids need cg_c, cocg or bicg");
  SolverOptions so;
  so.max_iter = opts.max_iter;
  so.threshold = opts.threshold;
  so.relative = opts.relative;
  so.keep_log = opts.keep_log;
  so.verify_switch = opts.verify_switch;
  auto out = solve_convenience(method, apply, a, z_grid, Projection::single(a), so, adjoint);

  SpectrumResult r;
  r.frequencies = std::move(z_grid);
  r.values = std::move(out.solutions);
  r.residuals = std::move(out.residuals);
  r.converged = std::move(out.converged);
  r.iterations = out.iterations;
  r.method = method;
  r.status = out.status;
  r.operator_calls = out.operator_calls;
  r.residual_history = std::move(out.residual_history);
  r.seed_history = std::move(out.seed_history);
  r.switches = std::move(out.switches);
  r.log = std::move(out.log);
  return r;
}

SpectrumResult green_diagonal(const SparseMatrix& h, std::span<const cplx> a, std::vector<cplx> z_grid,
                              const GreenOptions& opts) {
  if (a.size() != h.dimension()) throw DimensionError("green_diagonal: vector length does not match H");
  const Method m = opts.method.value_or(select_method(h));
  const Operator apply = [&h](std::span<const cplx> x, std::span<cplx> y) { spmv(h, x, y); };
  if (m == Method::bicg && !h.is_self_adjoint()) {
    const SparseMatrix hd = h.adjoint();
    const Operator adj = [&hd](std::span<const cplx> x, std::span<cplx> y) { spmv(hd, x, y); };
    return green_diagonal(m, apply, a, std::move(z_grid), opts, adj);
  }
  return green_diagonal(m, apply, a, std::move(z_grid), opts);
}

cplx green_offdiagonal(cplx g_aa, cplx g_bb, cplx g_cc, cplx g_dd) noexcept {
  const cplx i{0.0, 1.0};
  return ((g_cc - g_aa - g_bb) + i * (g_dd - g_aa - g_bb)) / 2.0;
}

}  // namespace shiftk
