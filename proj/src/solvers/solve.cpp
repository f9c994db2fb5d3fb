#include "shiftk/solvers/solve.hpp"

namespace shiftk {
namespace {

template <class T, class Step>
SpectrumOutcome drive(BasicShiftedSolver<T>& s, Step&& multiply) {
  SpectrumOutcome out;
  while (s.status() == StepStatus::iterating) {
    out.operator_calls += multiply(s);
    const auto step = s.update();
    if (step.status == StepStatus::breakdown)
      throw BreakdownError("shifted " + std::string(to_string(s.method())) + " breakdown at iteration " +
                               std::to_string(step.iteration) + ": " + step.breakdown_reason,
                           step.iteration, step.breakdown_shift);
    out.residual_history.push_back(step.max_residual);
    out.seed_history.push_back(step.seed_index);
  }
  out.status = s.status();
  out.switches = s.switches();
  static_cast<FinalResult&>(out) = s.finalize();
  return out;
}

}  // namespace

SpectrumOutcome solve_convenience(Method method, const Operator& apply, std::span<const cplx> b,
                                  std::vector<cplx> shifts, Projection proj, SolverOptions opts,
                                  const Operator& adjoint) {
  if (!apply) throw InputError("solve: operator callback is empty");
  ShiftedSolver s(method, b, std::move(shifts), std::move(proj), opts);
  const Operator& adj = adjoint ? adjoint : apply;
  return drive(s, [&](ShiftedSolver& st) -> std::uint64_t {
    apply(st.vector(), st.product());
    if (needs_shadow(method)) {
      adj(st.shadow_vector(), st.shadow_product());
      return 2;
    }
    return 1;
  });
}

SpectrumOutcome solve_convenience(const RealOperator& apply, std::span<const double> b, std::vector<cplx> shifts,
                                  Projection proj, SolverOptions opts) {
  if (!apply) throw InputError("solve: operator callback is empty");
  RealShiftedSolver s(Method::cg_r, b, std::move(shifts), std::move(proj), opts);
  return drive(s, [&](RealShiftedSolver& st) -> std::uint64_t {
    apply(st.vector(), st.product());
    return 1;
  });
}

}  // namespace shiftk
