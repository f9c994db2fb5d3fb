#include "shiftk/contour/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "shiftk/core/vector_ops.hpp"
#include "shiftk/models/dense.hpp"
#include "shiftk/solvers/solve.hpp"

namespace shiftk {
namespace {

std::vector<cplx> unit_circle(int n) {
  std::vector<cplx> e(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) e[j] = std::polar(1.0, 2.0 * std::numbers::pi * (j + 0.5) / n);
  return e;
}

}  // namespace

void validate(const ContourConfig& cfg) {
  if (!(cfg.rho > 0.0) || !std::isfinite(cfg.rho)) throw InputError("contour: rho must be positive");
  if (cfg.n_z < 4) throw InputError("contour: n_z must be at least 4");
  if (cfg.n_k < 1 || cfg.n_l < 1) throw InputError("contour: n_k and n_l must be at least 1");
  if (!(cfg.svd_cutoff > 0.0) || cfg.svd_cutoff >= 1.0) throw InputError("contour: cutoff must lie in (0, 1)");
  if (!(cfg.threshold > 0.0)) throw InputError("contour: threshold must be positive");
}

std::vector<cplx> quadrature_points(const ContourConfig& cfg) {
  validate(cfg);
  auto z = unit_circle(cfg.n_z);
  for (auto& v : z) v = cfg.gamma + cfg.rho * v;
  return z;
}

std::vector<cplx> quadrature_weights(const ContourConfig& cfg) {
  validate(cfg);
  auto w = unit_circle(cfg.n_z);
  for (auto& v : w) v *= cfg.rho;
  return w;
}

std::vector<DenseVector> random_sources(std::size_t dim, int n_l, std::uint64_t seed) {
  if (dim == 0 || n_l < 1) throw DimensionError("random_sources: empty request");
  std::vector<DenseVector> out;
  for (int l = 0; l < n_l; ++l) out.push_back(random_unit_vector(dim, seed + static_cast<std::uint64_t>(l)));
  return out;
}

SourceSolutions contour_solve_sources(const SparseMatrix& h, const std::vector<DenseVector>& sources,
                                      const ContourConfig& cfg) {
  const auto z = quadrature_points(cfg);
  const std::size_t m = h.dimension();
  const bool hermitian = h.symmetry() != Symmetry::general || h.is_hermitian();
  const SparseMatrix hd = hermitian ? SparseMatrix{} : h.adjoint();
  const Operator apply = [&h](std::span<const cplx> x, std::span<cplx> y) { spmv(h, x, y); };
  const Operator adj = [&](std::span<const cplx> x, std::span<cplx> y) { spmv(hermitian ? h : hd, x, y); };

  SolverOptions opts;
  opts.max_iter = cfg.max_iter;
  opts.threshold = cfg.threshold;

  SourceSolutions out;
  out.dim = m;
  out.n_z = cfg.n_z;
  for (std::size_t l = 0; l < sources.size(); ++l) {
    if (sources[l].size() != m) throw DimensionError("contour: source length does not match H");
    SpectrumOutcome res;
    try {
      res = solve_convenience(Method::bicg, apply, sources[l], z, Projection::full(m), opts, adj);
    } catch (const BreakdownError& e) {
      throw BreakdownError("contour: source " + std::to_string(l) + ": " + e.what(), e.iteration(), e.shift());
    }
    if (res.status != StepStatus::converged) {
      std::size_t worst = 0;
      for (std::size_t j = 0; j < res.residuals.size(); ++j)
        if (res.residuals[j] > res.residuals[worst]) worst = j;
      throw Error("contour: source " + std::to_string(l) + " did not converge within max_iter (quadrature point " +
                  std::to_string(worst) + ", residual " + std::to_string(res.residuals[worst]) + ")");
    }
    out.max_residual = std::max(out.max_residual, *std::max_element(res.residuals.begin(), res.residuals.end()));
    out.iterations.push_back(res.iterations);
    out.operator_calls += res.operator_calls;
    out.solutions.push_back(std::move(res.solutions));
  }
  return out;
}

Eigen::MatrixXcd moments(const SourceSolutions& sol, const ContourConfig& cfg) {
  const auto z = quadrature_points(cfg);
  const auto w = quadrature_weights(cfg);
  if (sol.n_z != cfg.n_z) throw DimensionError("moments: quadrature size differs from the solutions");
  const cplx z0 = cfg.z0.value_or(cfg.gamma);
  const auto n_l = static_cast<Eigen::Index>(sol.solutions.size());
  const auto m = static_cast<Eigen::Index>(sol.dim);
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(m, n_l * cfg.n_k);
  for (Eigen::Index l = 0; l < n_l; ++l) {
    for (int j = 0; j < cfg.n_z; ++j) {
      const auto x = sol.at(static_cast<std::size_t>(l), static_cast<std::size_t>(j));
      const Eigen::Map<const Eigen::VectorXcd> xv(x.data(), m);
      cplx c = w[j] / static_cast<double>(cfg.n_z);
      for (int k = 0; k < cfg.n_k; ++k) {
        s.col(l * cfg.n_k + k) += c * xv;
        c *= z[j] - z0;
      }
    }
  }
  return s;
}

FilteredSubspace filter_and_project(const Eigen::MatrixXcd& s, const SparseMatrix& h, double cutoff) {
  if (s.rows() == 0 || s.cols() == 0) throw DimensionError("filter_and_project: empty moment block");
  if (static_cast<std::size_t>(s.rows()) != h.dimension())
    throw DimensionError("filter_and_project: moment rows do not match H");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(s, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  FilteredSubspace out;
  out.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  if (!(smax > 0.0)) throw Error("filter_and_project: moment block is zero (no eigenvalues enclosed?)");
  while (out.rank < static_cast<std::size_t>(sv.size()) && sv(static_cast<Eigen::Index>(out.rank)) > cutoff * smax)
    ++out.rank;
  const auto r = static_cast<Eigen::Index>(out.rank);
  out.basis = svd.matrixU().leftCols(r);
  Eigen::MatrixXcd hu(s.rows(), r);
  for (Eigen::Index c = 0; c < r; ++c) {
    const Eigen::VectorXcd u = out.basis.col(c);
    spmv(h, std::span<const cplx>(u.data(), u.size()), std::span<cplx>(hu.col(c).data(), hu.rows()));
  }
  out.projected = out.basis.adjoint() * hu;
  return out;
}

ContourResult contour_eigensolve(const SparseMatrix& h, const ContourConfig& cfg) {
  validate(cfg);
  double scale_h = 0.0;
  for (const auto& v : h.values()) scale_h = std::max(scale_h, std::abs(v));
  if (!h.is_hermitian(1e-12 * scale_h))
    throw InputError("contour: H must be Hermitian");
  const auto sources = random_sources(h.dimension(), cfg.n_l, cfg.seed);
  const auto sol = contour_solve_sources(h, sources, cfg);
  Eigen::MatrixXcd s = moments(sol, cfg);
  if (cfg.scale_moments)
    for (Eigen::Index c = 0; c < s.cols(); ++c) s.col(c) /= std::pow(cfg.rho, static_cast<double>(c % cfg.n_k));
  const auto sub = filter_and_project(s, h, cfg.svd_cutoff);
  const Eigen::MatrixXcd hp = (sub.projected + sub.projected.adjoint()) / 2.0;
  const auto eig = dense_eig(hp);

  ContourResult out;
  out.singular_values = sub.singular_values;
  out.rank = sub.rank;
  out.max_solver_iterations = *std::max_element(sol.iterations.begin(), sol.iterations.end());
  out.max_solver_residual = sol.max_residual;
  out.operator_calls = sol.operator_calls;
  const auto m = static_cast<Eigen::Index>(h.dimension());
  for (std::size_t i = 0; i < eig.values.size(); ++i) {
    const double lambda = eig.values[i];
    out.all_ritz_values.push_back(lambda);
    const double dist = std::abs(cplx{lambda, 0.0} - cfg.gamma);
    if (!(dist < cfg.rho)) continue;
    RitzPair p;
    p.value = lambda;
    const Eigen::VectorXcd v = sub.basis * eig.vectors.col(static_cast<Eigen::Index>(i));
    p.vector.assign(v.data(), v.data() + m);
    DenseVector hv = spmv(h, p.vector);
    axpy(cplx{-lambda, 0.0}, p.vector, hv);
    p.residual = norm2(hv) / norm2(p.vector);
    p.near_boundary = dist > kBoundaryFraction * cfg.rho;
    out.pairs.push_back(std::move(p));
  }
  return out;
}

}  // namespace shiftk
