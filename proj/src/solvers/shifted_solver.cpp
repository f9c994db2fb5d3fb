#include "shiftk/solvers/shifted_solver.hpp"

#include <cmath>
#include <utility>

#include "shiftk/core/vector_ops.hpp"

namespace shiftk {
namespace {

cplx inner(Method m, std::span<const cplx> x, std::span<const cplx> y) {
  return m == Method::cocg ? dot_unconjugated(x, y) : dot(x, y);
}
cplx inner(Method, std::span<const double> x, std::span<const double> y) { return {dot(x, y), 0.0}; }

template <class T>
T narrow(cplx v);
template <>
double narrow<double>(cplx v) {
  return v.real();
}
template <>
cplx narrow<cplx>(cplx v) {
  return v;
}

template <class T>
std::vector<T> from_complex(const DenseVector& v, std::size_t dim, const char* what) {
  if (v.size() != dim) throw DimensionError(std::string("checkpoint: ") + what + " has the wrong length");
  std::vector<T> out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if constexpr (std::is_same_v<T, double>) {
      if (v[i].imag() != 0.0) throw InputError(std::string("checkpoint: complex entry in real ") + what);
      out[i] = v[i].real();
    } else {
      out[i] = v[i];
    }
  }
  return out;
}

template <class T>
DenseVector to_complex(const std::vector<T>& v) {
  return DenseVector(v.begin(), v.end());
}

template <class T>
void release(std::vector<T>& v) {
  std::vector<T>().swap(v);
}

}  // namespace

std::string_view to_string(StepStatus s) noexcept {
  switch (s) {
    case StepStatus::iterating:
      return "iterating";
    case StepStatus::converged:
      return "converged";
    case StepStatus::max_iter:
      return "max_iter";
    case StepStatus::breakdown:
      return "breakdown";
  }
  return "iterating";
}

template <class T>
BasicShiftedSolver<T>::BasicShiftedSolver(Method method, std::size_t dim, std::vector<cplx> shifts,
                                          Projection proj, SolverOptions opts, double threshold)
    : method_(method),
      dim_(dim),
      proj_(std::move(proj)),
      opts_(opts),
      bank_(std::move(shifts), proj_.rows(), threshold) {
  constexpr bool real = std::is_same_v<T, double>;
  if (real != (method == Method::cg_r))
    throw InputError(real ? "the real-valued solver only implements cg_r"
                          : "cg_r requires the real-valued solver");
  if (dim == 0) throw DimensionError("right-hand side must not be empty");
  if (proj_.cols() != dim) throw DimensionError("projection width does not match the dimension");
  if (opts_.max_iter == 0) throw InputError("max_iter must be at least 1");
  if constexpr (real) {
    for (std::size_t k = 0; k < bank_.size(); ++k)
      if (bank_.shift(k).imag() != 0.0) throw InputError("cg_r requires real shifts");
  }
  r_cur_.assign(dim, T{});
  r_prev_.assign(dim, T{});
  q_.assign(dim, T{});
  if (needs_shadow(method)) {
    rt_cur_.assign(dim, T{});
    rt_prev_.assign(dim, T{});
    qt_.assign(dim, T{});
  }
  pr_.assign(proj_.rows(), cplx{});
  z_seed_ = bank_.shift(0);

  log_.method = method;
  log_.dim = dim;
  log_.m_left = proj_.rows();
  log_.z_initial = z_seed_;
  log_.threshold = threshold;
  for (std::size_t k = 0; k < bank_.size(); ++k) log_.shifts.push_back(bank_.shift(k));
}

template <class T>
BasicShiftedSolver<T>::BasicShiftedSolver(Method method, std::span<const T> b, std::vector<cplx> shifts,
                                          Projection proj, SolverOptions opts)
    : BasicShiftedSolver(method, b.size(), std::move(shifts), std::move(proj), opts,
                         [&] {
                           if (!(opts.threshold > 0.0)) throw InputError("convergence threshold must be positive");
                           const double nb = norm2(b);
                           if (!(nb > 0.0) || !std::isfinite(nb))
                             throw InputError("right-hand side must be a nonzero finite vector");
                           return opts.relative ? opts.threshold * nb : opts.threshold;
                         }()) {
  std::copy(b.begin(), b.end(), r_cur_.begin());
  if constexpr (!std::is_same_v<T, double>) {
    if (needs_shadow(method))
      for (std::size_t i = 0; i < dim_; ++i) rt_cur_[i] = std::conj(b[i]);
  }
  rnorm_ = norm2(b);
  proj_.apply(std::span<const T>(r_cur_), std::span<cplx>(pr_));
  bank_.init_directions(pr_);
  bank_.set_residuals(rnorm_);
}

template <class T>
BasicShiftedSolver<T> BasicShiftedSolver<T>::resume(const CoefficientLog& log, const Checkpoint& cp,
                                                    std::vector<cplx> shifts, Projection proj,
                                                    SolverOptions opts) {
  if (cp.method != log.method) throw InputError("restart: checkpoint and log use different methods");
  if (cp.dim != log.dim) throw DimensionError("restart: checkpoint and log dimensions differ");
  if (cp.iteration != log.size()) throw InputError("restart: log does not cover the checkpointed iterations");
  if (proj.rows() != log.m_left) throw DimensionError("restart: projection size differs from the log");

  BasicShiftedSolver s(cp.method, cp.dim, std::move(shifts), std::move(proj), opts, log.threshold);
  s.bank_.set_residuals(cp.rnorm);
  const cplx z = replay(log, s.bank_);
  if (z != cp.z_seed) throw InputError("restart: checkpoint seed does not match the log");

  s.r_cur_ = from_complex<T>(cp.r_cur, cp.dim, "r_cur");
  s.r_prev_ = from_complex<T>(cp.r_prev, cp.dim, "r_prev");
  if (needs_shadow(cp.method)) {
    s.rt_cur_ = from_complex<T>(cp.shadow_cur, cp.dim, "shadow_cur");
    s.rt_prev_ = from_complex<T>(cp.shadow_prev, cp.dim, "shadow_prev");
  }
  s.z_seed_ = cp.z_seed;
  s.alpha_prev_ = cp.alpha_prev;
  s.rho_prev_ = cp.rho_prev;
  s.rnorm_ = cp.rnorm;
  s.iteration_ = cp.iteration;
  if (opts.keep_log) {
    s.log_ = log;
    s.log_.shifts.clear();
    for (std::size_t k = 0; k < s.bank_.size(); ++k) s.log_.shifts.push_back(s.bank_.shift(k));
  }
  if (log.empty()) s.bank_.set_residuals(cp.rnorm);

  // The requested shifts need not contain the checkpointed seed.
  s.seed_index_ = s.bank_.size();
  for (std::size_t k = 0; k < s.bank_.size(); ++k)
    if (s.bank_.shift(k) == s.z_seed_) {
      s.seed_index_ = k;
      break;
    }
  StepOutcome ignored;
  s.seed_switch(ignored);
  if (s.seed_index_ == s.bank_.size()) s.seed_index_ = 0;
  if (s.bank_.all_frozen()) s.status_ = StepStatus::converged;
  return s;
}

template <class T>
void BasicShiftedSolver<T>::require_live(const char* what) const {
  if (finalized_) throw StateError(std::string(what) + ": solver already finalized");
}

template <class T>
std::span<const T> BasicShiftedSolver<T>::vector() const {
  require_live("vector");
  return r_cur_;
}

template <class T>
std::span<T> BasicShiftedSolver<T>::product() {
  require_live("product");
  return q_;
}

template <class T>
std::span<const T> BasicShiftedSolver<T>::shadow_vector() const {
  require_live("shadow_vector");
  if (!needs_shadow(method_)) throw StateError("shadow vectors exist only for BiCG");
  return rt_cur_;
}

template <class T>
std::span<T> BasicShiftedSolver<T>::shadow_product() {
  require_live("shadow_product");
  if (!needs_shadow(method_)) throw StateError("shadow vectors exist only for BiCG");
  return qt_;
}

template <class T>
StepOutcome BasicShiftedSolver<T>::update() {
  require_live("update");
  if (status_ != StepStatus::iterating)
    throw StateError("update: solver already finished (" + std::string(to_string(status_)) + ")");
  StepOutcome out;
  try {
    const bool bicg = needs_shadow(method_);
    const bool first = iteration_ == 0;
    std::span<const T> left = bicg ? std::span<const T>(rt_cur_) : std::span<const T>(r_cur_);
    const cplx rho = inner(method_, left, std::span<const T>(r_cur_));
    const cplx rq = inner(method_, left, std::span<const T>(q_));
    if (std::abs(rho) < kBreakdownTolerance) throw BreakdownError("rho vanished", iteration_, -1);
    const cplx beta = first ? cplx{} : rho / rho_prev_;
    cplx denom = z_seed_ * rho - rq;
    if (!first) denom -= beta / alpha_prev_ * rho;
    if (std::abs(denom) < kBreakdownTolerance)
      throw BreakdownError("alpha denominator vanished", iteration_, -1);
    const cplx alpha = rho / denom;
    SeedCoefficients c{alpha, beta, alpha_prev_, 0.0};
    const cplx kk = coupling(c);

    proj_.apply(std::span<const T>(r_cur_), std::span<cplx>(pr_));
    const cplx a = cplx{1.0, 0.0} + kk - alpha * z_seed_;
    three_term(std::span<T>(q_), narrow<T>(a), std::span<const T>(r_cur_), narrow<T>(alpha),
               std::span<const T>(q_), narrow<T>(-kk), std::span<const T>(r_prev_));
    if (bicg)
      three_term(std::span<T>(qt_), narrow<T>(std::conj(a)), std::span<const T>(rt_cur_),
                 narrow<T>(std::conj(alpha)), std::span<const T>(qt_), narrow<T>(std::conj(-kk)),
                 std::span<const T>(rt_prev_));
    std::swap(r_prev_, r_cur_);
    std::swap(r_cur_, q_);  // q_ now holds r_{n-1}, overwritten by the next product
    if (bicg) {
      std::swap(rt_prev_, rt_cur_);
      std::swap(rt_cur_, qt_);
    }
    rnorm_ = norm2(std::span<const T>(r_cur_));
    c.rnorm_next = rnorm_;

    bank_.advance(c, z_seed_, pr_, iteration_);
    if (opts_.keep_log) {
      log_.entries.push_back({alpha, beta, alpha_prev_, rho, rnorm_, -1, cplx{1.0, 0.0}, cplx{1.0, 0.0}, z_seed_});
      log_.projected_residuals.insert(log_.projected_residuals.end(), pr_.begin(), pr_.end());
    }
    alpha_prev_ = alpha;
    rho_prev_ = rho;
    ++iteration_;
    ++updates_;
    seed_switch(out);

    if (bank_.all_frozen())
      status_ = StepStatus::converged;
    else if (updates_ >= opts_.max_iter)
      status_ = StepStatus::max_iter;
  } catch (const BreakdownError& e) {
    status_ = StepStatus::breakdown;
    out.breakdown_reason = e.what();
    out.breakdown_shift = e.shift();
  }
  out.status = status_;
  out.iteration = iteration_;
  out.seed_index = seed_index_;
  out.max_residual = bank_.max_residual();
  return out;
}

template <class T>
void BasicShiftedSolver<T>::seed_switch(StepOutcome& out) {
  const auto best = bank_.weakest();
  if (!best) return;
  const std::size_t s = *best;
  if (bank_.shift(s) == z_seed_) {
    seed_index_ = s;
    return;
  }
  const cplx pi_c = bank_.pi_cur(s);
  const cplx pi_p = bank_.pi_prev(s);
  const cplx one{1.0, 0.0};
  scale(narrow<T>(one / pi_c), std::span<T>(r_cur_));
  scale(narrow<T>(one / pi_p), std::span<T>(r_prev_));
  if (needs_shadow(method_)) {
    scale(narrow<T>(one / std::conj(pi_c)), std::span<T>(rt_cur_));
    scale(narrow<T>(one / std::conj(pi_p)), std::span<T>(rt_prev_));
  }
  alpha_prev_ *= pi_p / pi_c;
  const bool hermitian_form = method_ == Method::cg_r || method_ == Method::cg_c;
  rho_prev_ /= hermitian_form ? std::conj(pi_p) * pi_p : pi_p * pi_p;
  rnorm_ /= std::abs(pi_c);
  const std::size_t from = seed_index_;
  z_seed_ = bank_.shift(s);
  seed_index_ = s;
  const double jump = bank_.rebase(pi_p, pi_c, z_seed_, rnorm_);
  double discrepancy = 0.0;
  if (opts_.verify_switch && rnorm_ > 0.0)
    discrepancy = std::abs(norm2(std::span<const T>(r_cur_)) - rnorm_) / rnorm_;
  switches_.push_back({iteration_, from, s, jump, discrepancy});
  if (opts_.keep_log) {
    if (log_.entries.empty()) {
      log_.z_initial = z_seed_;
    } else {
      auto& e = log_.entries.back();
      e.switch_to = static_cast<std::int64_t>(s);
      e.pi_prev_s *= pi_p;
      e.pi_cur_s *= pi_c;
      e.z_seed_after = z_seed_;
    }
  }
  out.seed_switched = true;
}

template <class T>
std::vector<double> BasicShiftedSolver<T>::get_residual() const {
  require_live("get_residual");
  const auto r = bank_.residuals();
  return {r.begin(), r.end()};
}

template <class T>
Checkpoint BasicShiftedSolver<T>::checkpoint() const {
  require_live("checkpoint");
  Checkpoint cp;
  cp.method = method_;
  cp.dim = dim_;
  cp.iteration = iteration_;
  cp.z_seed = z_seed_;
  cp.alpha_prev = alpha_prev_;
  cp.rho_prev = rho_prev_;
  cp.rnorm = rnorm_;
  cp.r_cur = to_complex(r_cur_);
  cp.r_prev = to_complex(r_prev_);
  if (needs_shadow(method_)) {
    cp.shadow_cur = to_complex(rt_cur_);
    cp.shadow_prev = to_complex(rt_prev_);
  }
  return cp;
}

template <class T>
FinalResult BasicShiftedSolver<T>::finalize() {
  if (finalized_) throw StateError("finalize called twice");
  FinalResult res;
  for (std::size_t k = 0; k < bank_.size(); ++k) res.shifts.push_back(bank_.shift(k));
  res.m_left = bank_.m_left();
  res.solutions.assign(bank_.solutions().begin(), bank_.solutions().end());
  const auto r = bank_.residuals();
  res.residuals.assign(r.begin(), r.end());
  res.converged = bank_.converged();
  res.iterations = iteration_;
  res.log = std::move(log_);
  release(r_cur_);
  release(r_prev_);
  release(q_);
  release(rt_cur_);
  release(rt_prev_);
  release(qt_);
  finalized_ = true;
  return res;
}

template class BasicShiftedSolver<double>;
template class BasicShiftedSolver<cplx>;

}  // namespace shiftk
