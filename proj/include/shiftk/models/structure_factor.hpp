#pragma once

#include <span>
#include <vector>

#include "shiftk/models/green.hpp"
#include "shiftk/models/spin_chain.hpp"

namespace shiftk {

struct GroundState {
  double energy = 0.0;
  DenseVector vector;
  SectorBasis basis;
  SparseMatrix hamiltonian;
};

/// Lowest eigenpair by dense diagonalization (desk scale only).
GroundState ground_state(const SpinChainParams& p);

struct StructureFactor {
  double e0 = 0.0;
  /// b = S^z(q) phi_0 and |b|^2 (the frequency-integrated weight).
  DenseVector excitation;
  double weight = 0.0;
  std::vector<double> omega;  // excitation energies
  std::vector<double> values;
  SpectrumResult green;
};

/// S(q, w) = -Im G_bb(w + E0 + i eta) / pi for b = S^z(q) phi_0, with w the
/// excitation energy above the ground state. Nonnegative for eta > 0.
StructureFactor structure_factor(const GroundState& gs, double q, std::span<const double> omega, double eta,
                                 const GreenOptions& opts = {});
StructureFactor structure_factor(const SpinChainParams& p, double q, std::span<const double> omega, double eta,
                                 const GreenOptions& opts = {});

}  // namespace shiftk
