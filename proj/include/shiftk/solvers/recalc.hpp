#pragma once

#include <span>
#include <vector>

#include "shiftk/core/types.hpp"
#include "shiftk/solvers/coefficient_log.hpp"

namespace shiftk {

struct RecalcResult {
  std::vector<cplx> shifts;
  std::size_t m_left = 0;
  std::vector<cplx> solutions;  // shift-major, m_left values per shift
  /// Replayed |r^sigma| at the end of the log (or at freezing).
  std::vector<double> residuals;
  std::vector<bool> converged;
  std::size_t iterations = 0;

  std::span<const cplx> solution(std::size_t k) const {
    return std::span<const cplx>(solutions).subspan(k * m_left, m_left);
  }
};

/// Projected solutions at arbitrary shift values (absolute z, not offsets)
/// from a stored log. Never applies H. Shifts the log cannot resolve come back
/// unconverged rather than as an error.
RecalcResult recalc(const CoefficientLog& log, std::vector<cplx> new_shifts);

}  // namespace shiftk
