#pragma once

// Per-shift recurrences shared by the live solver, recalc and restart. Running
// the same code on the same inputs is what makes a replayed log reproduce the
// original projected solutions bit for bit.

#include <optional>
#include <span>
#include <vector>

#include "shiftk/core/types.hpp"
#include "shiftk/solvers/coefficient_log.hpp"

namespace shiftk {

struct SeedCoefficients {
  cplx alpha;
  cplx beta;
  cplx alpha_prev;
  double rnorm_next;
};

/// alpha_n beta_{n-1} / alpha_{n-1}, zero on the first iteration.
inline cplx coupling(const SeedCoefficients& c) noexcept {
  return c.alpha_prev == cplx{} ? cplx{} : c.alpha * c.beta / c.alpha_prev;
}

class ShiftBank {
 public:
  ShiftBank(std::vector<cplx> shifts, std::size_t m_left, double threshold);

  std::size_t size() const noexcept { return z_.size(); }
  std::size_t m_left() const noexcept { return m_left_; }
  double threshold() const noexcept { return threshold_; }

  /// Directions start at P b (cosmetic: the first advance overwrites them).
  void init_directions(std::span<const cplx> proj_b);
  void set_residuals(double rnorm);

  /// One iteration for every active shift. proj_r = P r_n in the current
  /// seed frame. Throws BreakdownError when a collinearity factor vanishes.
  void advance(const SeedCoefficients& c, cplx z_seed, std::span<const cplx> proj_r, std::size_t iteration);

  /// Active shift with the smallest |pi_cur| (lowest index on ties).
  std::optional<std::size_t> weakest() const;

  /// Re-express the active pi pairs relative to a new seed with pair
  /// (pi_prev_s, pi_cur_s) and seed value z_new. rnorm is the rescaled seed
  /// residual norm. Returns the largest relative change of any reported
  /// residual across the switch (zero in exact arithmetic).
  double rebase(cplx pi_prev_s, cplx pi_cur_s, cplx z_new, double rnorm);

  cplx shift(std::size_t k) const { return z_[k]; }
  cplx pi_cur(std::size_t k) const { return pi_cur_[k]; }
  cplx pi_prev(std::size_t k) const { return pi_prev_[k]; }
  bool frozen(std::size_t k) const { return frozen_[k] != 0; }
  double residual(std::size_t k) const { return residual_[k]; }
  std::span<const double> residuals() const noexcept { return residual_; }
  std::span<const cplx> solution(std::size_t k) const {
    return std::span<const cplx>(y_).subspan(k * m_left_, m_left_);
  }
  std::span<const cplx> solutions() const noexcept { return y_; }
  std::vector<bool> converged() const;
  bool all_frozen() const;
  double max_residual() const;

 private:
  std::vector<cplx> z_;
  std::size_t m_left_;
  double threshold_;
  std::vector<cplx> pi_cur_, pi_prev_;
  std::vector<char> frozen_;
  std::vector<char> diverged_;  // frozen by the overflow guard, not by convergence
  std::vector<double> residual_;
  std::vector<cplx> u_, y_;
};

/// Runs every logged iteration (including seed switches) through `bank`.
/// Returns the seed value in effect after the last entry.
cplx replay(const CoefficientLog& log, ShiftBank& bank);

}  // namespace shiftk
