#include "shiftk/solvers/shift_bank.hpp"

#include <algorithm>
#include <cmath>

#include "shiftk/core/vector_ops.hpp"

namespace shiftk {
namespace {

// Beyond this |pi| the shift's residual is negligible and further growth would
// overflow; the shift is frozen instead of rescaled.
constexpr double kPiOverflow = 1e150;

}  // namespace

ShiftBank::ShiftBank(std::vector<cplx> shifts, std::size_t m_left, double threshold)
    : z_(std::move(shifts)),
      m_left_(m_left),
      threshold_(threshold),
      pi_cur_(z_.size(), cplx{1.0, 0.0}),
      pi_prev_(z_.size(), cplx{1.0, 0.0}),
      frozen_(z_.size(), 0),
      diverged_(z_.size(), 0),
      residual_(z_.size(), 0.0),
      u_(z_.size() * m_left),
      y_(z_.size() * m_left) {
  if (z_.empty()) throw InputError("at least one shift is required");
  if (m_left == 0) throw DimensionError("projection must have at least one row");
  if (!(threshold > 0.0)) throw InputError("convergence threshold must be positive");
  for (const auto& z : z_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw InputError("non-finite shift value");
}

void ShiftBank::init_directions(std::span<const cplx> proj_b) {
  if (proj_b.size() != m_left_) throw DimensionError("projected right-hand side has the wrong length");
  for (std::size_t k = 0; k < size(); ++k) std::copy(proj_b.begin(), proj_b.end(), u_.begin() + k * m_left_);
}

void ShiftBank::set_residuals(double rnorm) {
  for (std::size_t k = 0; k < size(); ++k)
    if (!frozen_[k]) residual_[k] = rnorm / std::abs(pi_cur_[k]);
}

void ShiftBank::advance(const SeedCoefficients& c, cplx z_seed, std::span<const cplx> proj_r,
                        std::size_t iteration) {
  if (proj_r.size() != m_left_) throw DimensionError("projected residual has the wrong length");
  const cplx kk = coupling(c);
  for (std::size_t k = 0; k < size(); ++k) {
    if (frozen_[k]) continue;
    std::span<cplx> u(u_.data() + k * m_left_, m_left_);
    std::span<cplx> y(y_.data() + k * m_left_, m_left_);
    const cplx sigma = z_[k] - z_seed;
    cplx pi_next, beta_s, alpha_s;
    if (sigma == cplx{}) {
      pi_cur_[k] = pi_prev_[k] = pi_next = cplx{1.0, 0.0};
      beta_s = c.beta;
      alpha_s = c.alpha;
      axpby(cplx{1.0, 0.0}, proj_r, beta_s, u);
    } else {
      const cplx ratio = pi_prev_[k] / pi_cur_[k];
      beta_s = ratio * ratio * c.beta;
      axpby(cplx{1.0, 0.0} / pi_cur_[k], proj_r, beta_s, u);
      pi_next = (cplx{1.0, 0.0} + kk + c.alpha * sigma) * pi_cur_[k] - kk * pi_prev_[k];
      if (std::abs(pi_next) < kBreakdownTolerance)
        throw BreakdownError("collinearity factor vanished", iteration, static_cast<std::ptrdiff_t>(k));
      alpha_s = (pi_cur_[k] / pi_next) * c.alpha;
    }
    axpy(alpha_s, u, y);
    pi_prev_[k] = pi_cur_[k];
    pi_cur_[k] = pi_next;
    const double mag = std::abs(pi_next);
    residual_[k] = c.rnorm_next / mag;
    if (residual_[k] < threshold_) {
      frozen_[k] = 1;
    } else if (mag > kPiOverflow) {
      frozen_[k] = 1;
      diverged_[k] = 1;
    }
  }
}

std::optional<std::size_t> ShiftBank::weakest() const {
  std::optional<std::size_t> best;
  double best_mag = 0.0;
  for (std::size_t k = 0; k < size(); ++k) {
    if (frozen_[k]) continue;
    const double m = std::abs(pi_cur_[k]);
    if (!best || m < best_mag) {
      best = k;
      best_mag = m;
    }
  }
  return best;
}

double ShiftBank::rebase(cplx pi_prev_s, cplx pi_cur_s, cplx z_new, double rnorm) {
  double jump = 0.0;
  for (std::size_t k = 0; k < size(); ++k) {
    if (frozen_[k]) continue;
    const double before = residual_[k];
    if (z_[k] == z_new) {
      pi_cur_[k] = pi_prev_[k] = cplx{1.0, 0.0};
    } else {
      pi_cur_[k] /= pi_cur_s;
      pi_prev_[k] /= pi_prev_s;
    }
    residual_[k] = rnorm / std::abs(pi_cur_[k]);
    if (before > 0.0) jump = std::max(jump, std::abs(residual_[k] - before) / before);
  }
  return jump;
}

std::vector<bool> ShiftBank::converged() const {
  std::vector<bool> out(size());
  for (std::size_t k = 0; k < size(); ++k) out[k] = frozen_[k] && !diverged_[k];
  return out;
}

bool ShiftBank::all_frozen() const {
  return std::all_of(frozen_.begin(), frozen_.end(), [](char f) { return f != 0; });
}

double ShiftBank::max_residual() const {
  return *std::max_element(residual_.begin(), residual_.end());
}

cplx replay(const CoefficientLog& log, ShiftBank& bank) {
  if (log.m_left != bank.m_left()) throw DimensionError("log projection size does not match");
  if (log.projected_residuals.size() != log.entries.size() * log.m_left)
    throw InputError("coefficient log: projected residual count does not match the iteration count");
  cplx z_seed = log.z_initial;
  for (std::size_t n = 0; n < log.entries.size(); ++n) {
    const auto& e = log.entries[n];
    bank.advance({e.alpha, e.beta, e.alpha_prev, e.rnorm_next}, z_seed, log.projected_residual(n), n);
    if (e.switch_to >= 0) {
      bank.rebase(e.pi_prev_s, e.pi_cur_s, e.z_seed_after, e.rnorm_next / std::abs(e.pi_cur_s));
      z_seed = e.z_seed_after;
    }
  }
  return z_seed;
}

}  // namespace shiftk
