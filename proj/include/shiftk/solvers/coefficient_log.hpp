#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "shiftk/core/types.hpp"
#include "shiftk/solvers/method.hpp"

namespace shiftk {

/// Seed-recurrence record of one iteration. alpha, beta and alpha_prev are the
/// coefficients in the frame of the seed that was active when the iteration
/// ran; the switch fields describe the seed switch performed right after it.
struct LogEntry {
  cplx alpha;
  cplx beta;        // beta_{n-1}; zero at n = 0
  cplx alpha_prev;  // alpha_{n-1}; zero at n = 0
  cplx rho;
  double rnorm_next = 0.0;  // |r_{n+1}| before the switch
  std::int64_t switch_to = -1;
  cplx pi_prev_s{1.0, 0.0};
  cplx pi_cur_s{1.0, 0.0};
  cplx z_seed_after;
};

/// Everything needed to replay the per-shift recurrences for arbitrary shifts
/// without touching H: the seed coefficients and P r_n of every iteration.
struct CoefficientLog {
  Method method = Method::bicg;
  std::size_t dim = 0;
  std::size_t m_left = 0;
  cplx z_initial;
  double threshold = 0.0;  // absolute
  std::vector<cplx> shifts;
  std::vector<LogEntry> entries;
  std::vector<cplx> projected_residuals;  // m_left values per entry

  std::size_t size() const noexcept { return entries.size(); }
  bool empty() const noexcept { return entries.empty(); }
  std::span<const cplx> projected_residual(std::size_t n) const {
    return std::span<const cplx>(projected_residuals).subspan(n * m_left, m_left);
  }
};

}  // namespace shiftk
