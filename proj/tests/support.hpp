#pragma once
// Random dense instances and dense oracles shared by the test binaries.
#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "shiftk/core/sparse_matrix.hpp"
#include "shiftk/models/dense.hpp"

namespace shiftk::test {

enum class Kind { real_symmetric, hermitian, complex_symmetric, general };

inline Eigen::MatrixXcd random_dense(std::size_t n, std::uint64_t seed, Kind kind) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) a(i, j) = {g(rng), kind == Kind::real_symmetric ? 0.0 : g(rng)};
  a /= std::sqrt(static_cast<double>(n));
  switch (kind) {
    case Kind::real_symmetric:
    case Kind::complex_symmetric: return (a + a.transpose()) / 2.0;
    case Kind::hermitian: return (a + a.adjoint()) / 2.0;
    case Kind::general: return a;
  }
  return a;
}

inline SparseMatrix to_sparse(const Eigen::MatrixXcd& a, Kind kind) {
  std::vector<Triplet> t;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != cplx{}) t.push_back({i, j, a(i, j)});
  const auto sym = kind == Kind::real_symmetric || kind == Kind::complex_symmetric ? Symmetry::symmetric
                   : kind == Kind::hermitian                                        ? Symmetry::hermitian
                                                                                    : Symmetry::general;
  return SparseMatrix::from_triplets(static_cast<std::size_t>(a.rows()), std::move(t), sym,
                                     kind == Kind::real_symmetric ? ValueKind::real : ValueKind::complex);
}

inline DenseVector random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  DenseVector v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

inline Eigen::VectorXcd as_eigen(std::span<const cplx> v) {
  return Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

/// (z - H)^{-1} b by dense LU.
inline Eigen::VectorXcd dense_solve(const Eigen::MatrixXcd& h, cplx z, std::span<const cplx> b) {
  const auto n = h.rows();
  const Eigen::MatrixXcd a = z * Eigen::MatrixXcd::Identity(n, n) - h;
  return a.partialPivLu().solve(as_eigen(b));
}

/// sum_j |y_j^dagger a|^2 / (z - lambda_j)
inline cplx spectral_green(const DenseEig& eig, std::span<const cplx> a, cplx z) {
  const Eigen::VectorXcd w = eig.vectors.adjoint() * as_eigen(a);
  cplx g{};
  for (std::size_t j = 0; j < eig.values.size(); ++j)
    g += std::norm(w(static_cast<Eigen::Index>(j))) / (z - eig.values[j]);
  return g;
}

inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace shiftk::test
