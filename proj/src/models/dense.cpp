#include "shiftk/models/dense.hpp"

#include <string>

namespace shiftk {

Eigen::MatrixXcd dense_assemble(const SparseMatrix& a) {
  const std::size_t n = a.dimension();
  if (n > kDenseLimit) throw DimensionError("dense_assemble: dimension exceeds " + std::to_string(kDenseLimit));
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const auto off = a.row_offsets();
  const auto cols = a.column_indices();
  const auto vals = a.values();
  for (std::size_t i = 0; i < n; ++i)
    for (auto k = off[i]; k < off[i + 1]; ++k) d(static_cast<Eigen::Index>(i), cols[k]) = vals[k];
  return d;
}

DenseEig dense_eig(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols()) throw DimensionError("dense_eig: matrix must be square");
  if (h.rows() == 0) throw DimensionError("dense_eig: empty matrix");
  if (static_cast<std::size_t>(h.rows()) > kDenseLimit)
    throw DimensionError("dense_eig: dimension exceeds " + std::to_string(kDenseLimit));
  DenseEig out;
  // Real symmetric input takes the cheaper real path.
  if (h.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.real());
    if (es.info() != Eigen::Success) throw Error("dense_eig: eigensolver did not converge");
    out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    out.vectors = es.eigenvectors().cast<cplx>();
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw Error("dense_eig: eigensolver did not converge");
  out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  out.vectors = es.eigenvectors();
  return out;
}

}  // namespace shiftk
