#include "shiftk/models/structure_factor.hpp"

#include <numbers>

#include "shiftk/core/vector_ops.hpp"
#include "shiftk/models/dense.hpp"

namespace shiftk {

GroundState ground_state(const SpinChainParams& p) {
  GroundState gs;
  gs.basis = SectorBasis::for_params(p);
  gs.hamiltonian = build_hamiltonian(p, gs.basis);
  const auto eig = dense_eig(dense_assemble(gs.hamiltonian));
  gs.energy = eig.values.front();
  gs.vector.assign(eig.vectors.col(0).data(), eig.vectors.col(0).data() + eig.vectors.rows());
  return gs;
}

StructureFactor structure_factor(const GroundState& gs, double q, std::span<const double> omega, double eta,
                                 const GreenOptions& opts) {
  if (!(eta > 0.0)) throw InputError("structure_factor: eta must be positive");
  if (omega.empty()) throw InputError("structure_factor: empty frequency grid");
  StructureFactor sf;
  sf.e0 = gs.energy;
  sf.excitation = szq_vector(gs.basis, gs.vector, q);
  sf.weight = norm2(sf.excitation);
  sf.weight *= sf.weight;
  sf.omega.assign(omega.begin(), omega.end());
  if (sf.weight == 0.0) {
    // S^z(q) annihilates the ground state (e.g. q = 0 in the Sz = 0 sector).
    sf.values.assign(omega.size(), 0.0);
    return sf;
  }
  std::vector<cplx> z;
  z.reserve(omega.size());
  for (double w : omega) z.emplace_back(w + gs.energy, eta);
  sf.green = green_diagonal(gs.hamiltonian, sf.excitation, std::move(z), opts);
  sf.values.reserve(omega.size());
  for (const auto& g : sf.green.values) sf.values.push_back(-g.imag() / std::numbers::pi);
  return sf;
}

StructureFactor structure_factor(const SpinChainParams& p, double q, std::span<const double> omega, double eta,
                                 const GreenOptions& opts) {
  return structure_factor(ground_state(p), q, omega, eta, opts);
}

}  // namespace shiftk
