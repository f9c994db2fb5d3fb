#pragma once

// Reverse-communication shifted Krylov solver.
//
//   BasicShiftedSolver<cplx> s(Method::bicg, b, shifts, Projection::single(a), opts);
//   while (s.status() == StepStatus::iterating) {
//     spmv(H, s.vector(), s.product());
//     spmv(H_adjoint, s.shadow_vector(), s.shadow_product());  // BiCG only
//     s.update();
//   }
//   auto result = s.finalize();
//
// The state never sees H. It owns exactly three M-length vectors (r_n, r_{n-1}
// and the product buffer), six for BiCG; everything else is O(M_left * N_eq).

#include <span>
#include <string>
#include <vector>

#include "shiftk/core/types.hpp"
#include "shiftk/solvers/coefficient_log.hpp"
#include "shiftk/solvers/method.hpp"
#include "shiftk/solvers/projection.hpp"
#include "shiftk/solvers/shift_bank.hpp"

namespace shiftk {

struct SolverOptions {
  /// Updates this state object may perform (a resumed state counts afresh).
  std::size_t max_iter = 1000;
  double threshold = 1e-8;
  /// Interpret threshold relative to |b|.
  bool relative = false;
  /// Record coefficients and P r_n every iteration (needed for recalc/restart).
  bool keep_log = false;
  /// After every seed switch, compare the recurrence norm with an explicit one.
  bool verify_switch = false;
};

enum class StepStatus { iterating, converged, max_iter, breakdown };
std::string_view to_string(StepStatus s) noexcept;

struct StepOutcome {
  StepStatus status = StepStatus::iterating;
  std::size_t iteration = 0;
  std::size_t seed_index = 0;
  bool seed_switched = false;
  double max_residual = 0.0;
  std::string breakdown_reason;
  std::ptrdiff_t breakdown_shift = -1;
};

struct SwitchRecord {
  std::size_t iteration;
  std::size_t from;
  std::size_t to;
  /// Largest relative change of any reported residual norm across the switch.
  double residual_jump;
  /// |explicit |r_cur| - recurrence norm| / norm; only with verify_switch.
  double norm_discrepancy;
};

/// Seed state needed to continue a run; vectors stored complex for all methods.
struct Checkpoint {
  Method method = Method::bicg;
  std::size_t dim = 0;
  std::size_t iteration = 0;
  cplx z_seed;
  cplx alpha_prev;
  cplx rho_prev;
  double rnorm = 0.0;
  DenseVector r_cur, r_prev, shadow_cur, shadow_prev;
};

struct FinalResult {
  std::vector<cplx> shifts;
  std::size_t m_left = 0;
  /// Shift-major: solution(k) = solutions[k*m_left .. (k+1)*m_left).
  std::vector<cplx> solutions;
  std::vector<double> residuals;
  std::vector<bool> converged;
  std::size_t iterations = 0;
  CoefficientLog log;

  std::span<const cplx> solution(std::size_t k) const {
    return std::span<const cplx>(solutions).subspan(k * m_left, m_left);
  }
};

/// T = double for cg_r, cplx for the other methods.
template <class T>
class BasicShiftedSolver {
 public:
  BasicShiftedSolver(Method method, std::span<const T> b, std::vector<cplx> shifts, Projection proj,
                     SolverOptions opts);

  /// Continue from a checkpoint. The log must cover all checkpointed
  /// iterations; `shifts` may differ from the original run.
  static BasicShiftedSolver resume(const CoefficientLog& log, const Checkpoint& cp, std::vector<cplx> shifts,
                                   Projection proj, SolverOptions opts);

  /// Vector to multiply by H, and the buffer the product goes into.
  std::span<const T> vector() const;
  std::span<T> product();
  /// BiCG only: multiply by H^dagger.
  std::span<const T> shadow_vector() const;
  std::span<T> shadow_product();

  StepOutcome update();

  StepStatus status() const noexcept { return status_; }
  Method method() const noexcept { return method_; }
  std::size_t dimension() const noexcept { return dim_; }
  std::size_t iteration() const noexcept { return iteration_; }
  std::size_t seed_index() const noexcept { return seed_index_; }
  cplx seed() const noexcept { return z_seed_; }
  double seed_residual_norm() const noexcept { return rnorm_; }
  double threshold() const noexcept { return bank_.threshold(); }
  std::size_t shift_count() const noexcept { return bank_.size(); }

  /// |r_n| / |pi_n^sigma| per shift; the value at freezing for converged shifts.
  std::vector<double> get_residual() const;
  std::vector<bool> converged() const { return bank_.converged(); }
  std::span<const cplx> solution(std::size_t k) const { return bank_.solution(k); }
  const std::vector<SwitchRecord>& switches() const noexcept { return switches_; }
  const CoefficientLog& log() const noexcept { return log_; }

  Checkpoint checkpoint() const;

  /// Releases the vectors; the state is unusable afterwards.
  FinalResult finalize();
  bool finalized() const noexcept { return finalized_; }

 private:
  BasicShiftedSolver(Method method, std::size_t dim, std::vector<cplx> shifts, Projection proj,
                     SolverOptions opts, double threshold);
  void require_live(const char* what) const;
  void seed_switch(StepOutcome& out);

  Method method_;
  std::size_t dim_;
  Projection proj_;
  SolverOptions opts_;
  ShiftBank bank_;
  std::vector<T> r_cur_, r_prev_, q_;
  std::vector<T> rt_cur_, rt_prev_, qt_;  // BiCG shadow sequence
  std::vector<cplx> pr_;                  // P r_n
  cplx z_seed_;
  cplx alpha_prev_{};
  cplx rho_prev_{};
  double rnorm_ = 0.0;
  std::size_t iteration_ = 0;
  std::size_t updates_ = 0;
  std::size_t seed_index_ = 0;
  StepStatus status_ = StepStatus::iterating;
  bool finalized_ = false;
  CoefficientLog log_;
  std::vector<SwitchRecord> switches_;
};

using ShiftedSolver = BasicShiftedSolver<cplx>;
using RealShiftedSolver = BasicShiftedSolver<double>;

extern template class BasicShiftedSolver<double>;
extern template class BasicShiftedSolver<cplx>;

}  // namespace shiftk
