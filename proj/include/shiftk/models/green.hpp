#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "shiftk/core/sparse_matrix.hpp"
#include "shiftk/solvers/solve.hpp"

namespace shiftk {

struct GreenOptions {
  std::size_t max_iter = 1000;
  double threshold = 1e-8;
  bool relative = true;
  bool keep_log = false;
  bool verify_switch = false;
  /// Overrides the automatic choice.
  std::optional<Method> method;
};

struct SpectrumResult {
  std::vector<cplx> frequencies;
  std::vector<cplx> values;
  std::vector<double> residuals;
  std::vector<bool> converged;
  std::size_t iterations = 0;
  Method method = Method::bicg;
  StepStatus status = StepStatus::iterating;
  std::uint64_t operator_calls = 0;
  std::vector<double> residual_history;
  std::vector<std::size_t> seed_history;
  std::vector<SwitchRecord> switches;
  CoefficientLog log;
};

/// COCG when H is real symmetric (z - H is then complex symmetric), BiCG otherwise.
Method select_method(const SparseMatrix& h);

/// G_aa(z) = a^dagger (z - H)^{-1} a on every grid point, using P = a^dagger.
/// `adjoint` applies H^dagger for BiCG; empty means H is Hermitian.
SpectrumResult green_diagonal(Method method, const Operator& apply, std::span<const cplx> a,
                              std::vector<cplx> z_grid, const GreenOptions& opts, const Operator& adjoint = {});
SpectrumResult green_diagonal(const SparseMatrix& h, std::span<const cplx> a, std::vector<cplx> z_grid,
                              const GreenOptions& opts = {});

/// Off-diagonal element from four diagonal ones, c = a + b and d = a + i b:
/// [(G_cc - G_aa - G_bb) + i (G_dd - G_aa - G_bb)] / 2. With
/// G_xx = x^dagger (z - H)^{-1} x this evaluates to b^dagger (z - H)^{-1} a.
cplx green_offdiagonal(cplx g_aa, cplx g_bb, cplx g_cc, cplx g_dd) noexcept;

}  // namespace shiftk
