#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "shiftk/solvers/shifted_solver.hpp"

namespace shiftk {

/// y = Op x
using Operator = std::function<void(std::span<const cplx>, std::span<cplx>)>;
using RealOperator = std::function<void(std::span<const double>, std::span<double>)>;

struct SpectrumOutcome : FinalResult {
  StepStatus status = StepStatus::iterating;
  /// Max residual over shifts after each iteration.
  std::vector<double> residual_history;
  /// Seed index after each iteration.
  std::vector<std::size_t> seed_history;
  std::vector<SwitchRecord> switches;
  std::uint64_t operator_calls = 0;
};

/// Drives the reverse-communication loop to completion. For BiCG `adjoint`
/// applies H^dagger; when empty, H is assumed Hermitian and `apply` is reused.
/// Throws BreakdownError on breakdown; max_iter is reported, not thrown.
SpectrumOutcome solve_convenience(Method method, const Operator& apply, std::span<const cplx> b,
                                  std::vector<cplx> shifts, Projection proj, SolverOptions opts,
                                  const Operator& adjoint = {});

/// cg_r on real data.
SpectrumOutcome solve_convenience(const RealOperator& apply, std::span<const double> b,
                                  std::vector<cplx> shifts, Projection proj, SolverOptions opts);

}  // namespace shiftk
