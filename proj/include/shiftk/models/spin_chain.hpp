#pragma once

// Periodic spin-1/2 XYZ chain with a z-axis Dzyaloshinskii-Moriya term:
//
//   H = sum_i Jx Sx_i Sx_{i+1} + Jy Sy_i Sy_{i+1} + Jz Sz_i Sz_{i+1}
//             + Dz (Sx_i Sy_{i+1} - Sy_i Sx_{i+1}),   site L == site 0.
//
// Basis states are L-bit integers, bit i set = site i up, sorted ascending.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "shiftk/core/sparse_matrix.hpp"

namespace shiftk {

struct SpinChainParams {
  int nsite = 8;
  double jx = 1.0;
  double jy = 1.0;
  double jz = 1.0;
  double dz = 0.0;
  /// Restrict to the sector sum_i 2 Sz_i = two_sz.
  std::optional<int> two_sz;
};

inline constexpr int kMaxSites = 28;

/// Throws InputError for an invalid parameter set.
void validate(const SpinChainParams& p);

class SectorBasis {
 public:
  static SectorBasis full(int nsite);
  static SectorBasis fixed_two_sz(int nsite, int two_sz);
  static SectorBasis for_params(const SpinChainParams& p);

  int nsite() const noexcept { return nsite_; }
  std::size_t size() const noexcept { return full_ ? (std::size_t{1} << nsite_) : states_.size(); }
  std::uint32_t state(std::size_t i) const { return full_ ? static_cast<std::uint32_t>(i) : states_[i]; }
  /// Ordinal of a configuration, or nullopt when it lies outside the sector.
  std::optional<std::size_t> index(std::uint32_t config) const;

 private:
  int nsite_ = 0;
  bool full_ = true;
  std::vector<std::uint32_t> states_;
};

SparseMatrix build_hamiltonian(const SpinChainParams& p, const SectorBasis& basis);
SparseMatrix build_hamiltonian(const SpinChainParams& p);

/// S^z(q) v with S^z(q) = sum_j exp(i q j) Sz_j, diagonal in this basis.
DenseVector szq_vector(const SectorBasis& basis, std::span<const cplx> v, double q);

}  // namespace shiftk
