#pragma once

// Contour-integral (moment + SVD) eigensolver for the eigenvalues of a
// Hermitian H inside the circle |z - gamma| < rho.
//
// For random sources phi_l, one shifted BiCG run per source solves
// (z_j - H) x = phi_l at all quadrature points at once. The moments
//   s_{k,l} = (1/N_z) sum_j w_j (z_j - z0)^k x_l(z_j),  w_j = rho exp(i theta_j)
// approximate (H - z0)^k P phi_l with P the spectral projector onto the
// enclosed eigenvectors. An SVD of [s_{k,l}] gives an orthonormal basis, and
// Rayleigh-Ritz on it yields the enclosed eigenpairs.

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "shiftk/core/sparse_matrix.hpp"

namespace shiftk {

struct ContourConfig {
  cplx gamma{-5.0, 0.0};
  double rho = 0.8;
  int n_z = 100;
  int n_k = 10;
  int n_l = 5;
  /// Moment expansion point; defaults to gamma.
  std::optional<cplx> z0;
  /// Singular values below svd_cutoff * sigma_max are discarded.
  double svd_cutoff = 1e-3;
  /// Divide moment k by rho^k before the SVD. Unscaled moments shrink like
  /// rho^k, so for small circles the cutoff would drop high-order columns.
  bool scale_moments = true;
  std::uint64_t seed = 1;
  std::size_t max_iter = 5000;
  /// Absolute residual target per quadrature point (sources have unit norm).
  double threshold = 1e-10;
};

void validate(const ContourConfig& cfg);

/// z_j = gamma + rho exp(2 pi i (j + 1/2) / N_z)
std::vector<cplx> quadrature_points(const ContourConfig& cfg);
/// w_j = rho exp(2 pi i (j + 1/2) / N_z)
std::vector<cplx> quadrature_weights(const ContourConfig& cfg);

/// Unit-norm complex Gaussian vectors; source l uses seed + l.
std::vector<DenseVector> random_sources(std::size_t dim, int n_l, std::uint64_t seed);

struct SourceSolutions {
  std::size_t dim = 0;
  int n_z = 0;
  /// solutions[l][j*dim + i] = x_l(z_j)_i
  std::vector<std::vector<cplx>> solutions;
  std::vector<std::size_t> iterations;
  double max_residual = 0.0;
  std::uint64_t operator_calls = 0;

  std::span<const cplx> at(std::size_t l, std::size_t j) const {
    return std::span<const cplx>(solutions[l]).subspan(j * dim, dim);
  }
};

/// One BiCG run (P = I) per source over all quadrature points.
/// Throws BreakdownError naming the source; unconverged points raise Error.
SourceSolutions contour_solve_sources(const SparseMatrix& h, const std::vector<DenseVector>& sources,
                                      const ContourConfig& cfg);

/// M x (N_k N_l) moment matrix; column l*N_k + k holds s_{k,l}.
Eigen::MatrixXcd moments(const SourceSolutions& sol, const ContourConfig& cfg);

struct FilteredSubspace {
  Eigen::MatrixXcd basis;      // M x M_nz, orthonormal columns
  Eigen::MatrixXcd projected;  // basis^dagger H basis
  std::vector<double> singular_values;
  std::size_t rank = 0;
};

/// Throws Error when every singular value falls below the cutoff.
FilteredSubspace filter_and_project(const Eigen::MatrixXcd& s, const SparseMatrix& h, double cutoff);

struct RitzPair {
  double value = 0.0;
  DenseVector vector;
  double residual = 0.0;  // |H v - lambda v|, |v| = 1
  bool near_boundary = false;
};

struct ContourResult {
  std::vector<RitzPair> pairs;  // inside the contour, ascending
  std::vector<double> all_ritz_values;
  std::vector<double> singular_values;
  std::size_t rank = 0;
  std::size_t max_solver_iterations = 0;
  double max_solver_residual = 0.0;
  std::uint64_t operator_calls = 0;
};

/// Relative distance from gamma beyond which an eigenvalue is flagged.
inline constexpr double kBoundaryFraction = 0.95;

ContourResult contour_eigensolve(const SparseMatrix& h, const ContourConfig& cfg);

}  // namespace shiftk
