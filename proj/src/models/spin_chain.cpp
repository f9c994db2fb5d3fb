#include "shiftk/models/spin_chain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace shiftk {

void validate(const SpinChainParams& p) {
  if (p.nsite < 2) throw InputError("spin chain: nsite must be at least 2");
  if (p.nsite > kMaxSites) throw InputError("spin chain: nsite > " + std::to_string(kMaxSites) + " is not supported");
  for (double v : {p.jx, p.jy, p.jz, p.dz})
    if (!std::isfinite(v)) throw InputError("spin chain: non-finite coupling");
  if (p.two_sz) {
    const int s = *p.two_sz;
    if (std::abs(s) > p.nsite || (s + p.nsite) % 2 != 0)
      throw InputError("spin chain: two_sz must satisfy |two_sz| <= nsite with the parity of nsite");
    // Jx != Jy creates S+S+ and S-S- terms that leave the sector.
    if (p.jx != p.jy) throw InputError("spin chain: Jx != Jy does not conserve Sz; drop two_sz");
  }
}

SectorBasis SectorBasis::full(int nsite) {
  if (nsite < 1 || nsite > kMaxSites) throw InputError("basis: unsupported number of sites");
  SectorBasis b;
  b.nsite_ = nsite;
  b.full_ = true;
  return b;
}

SectorBasis SectorBasis::fixed_two_sz(int nsite, int two_sz) {
  if (nsite < 1 || nsite > kMaxSites) throw InputError("basis: unsupported number of sites");
  if (std::abs(two_sz) > nsite || (two_sz + nsite) % 2 != 0) throw InputError("basis: empty Sz sector");
  const int n_up = (nsite + two_sz) / 2;
  SectorBasis b;
  b.nsite_ = nsite;
  b.full_ = false;
  const std::uint64_t end = std::uint64_t{1} << nsite;
  if (n_up == 0) {
    b.states_.push_back(0);
    return b;
  }
  // Gosper's hack enumerates fixed-popcount integers in increasing order.
  std::uint64_t c = (std::uint64_t{1} << n_up) - 1;
  while (c < end) {
    b.states_.push_back(static_cast<std::uint32_t>(c));
    const std::uint64_t lo = c & (~c + 1);
    const std::uint64_t r = c + lo;
    c = (((r ^ c) >> 2) / lo) | r;
  }
  return b;
}

SectorBasis SectorBasis::for_params(const SpinChainParams& p) {
  validate(p);
  return p.two_sz ? fixed_two_sz(p.nsite, *p.two_sz) : full(p.nsite);
}

std::optional<std::size_t> SectorBasis::index(std::uint32_t config) const {
  if (full_) {
    if (config >= size()) return std::nullopt;
    return config;
  }
  const auto it = std::lower_bound(states_.begin(), states_.end(), config);
  if (it == states_.end() || *it != config) return std::nullopt;
  return static_cast<std::size_t>(it - states_.begin());
}

SparseMatrix build_hamiltonian(const SpinChainParams& p, const SectorBasis& basis) {
  validate(p);
  if (basis.nsite() != p.nsite) throw DimensionError("spin chain: basis built for a different nsite");
  const int L = p.nsite;
  const cplx flip_pm{(p.jx + p.jy) / 4.0, p.dz / 2.0};   // S+_i S-_j
  const cplx flip_mp{(p.jx + p.jy) / 4.0, -p.dz / 2.0};  // S-_i S+_j
  const double pair = (p.jx - p.jy) / 4.0;                // S+S+ and S-S-

  std::vector<Triplet> t;
  t.reserve(basis.size() * static_cast<std::size_t>(L + 1));
  auto add = [&](std::uint32_t to, std::size_t col, cplx v) {
    if (v == cplx{}) return;
    const auto row = basis.index(to);
    if (!row) throw InputError("spin chain: Hamiltonian leaves the requested sector");
    t.push_back({static_cast<std::int64_t>(*row), static_cast<std::int64_t>(col), v});
  };
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const std::uint32_t c = basis.state(col);
    double diag = 0.0;
    for (int i = 0; i < L; ++i) {
      const int j = (i + 1) % L;
      const std::uint32_t mi = 1u << i, mj = 1u << j;
      const bool up_i = c & mi, up_j = c & mj;
      diag += p.jz * (up_i == up_j ? 0.25 : -0.25);
      if (!up_i && up_j) add(c ^ mi ^ mj, col, flip_pm);
      if (up_i && !up_j) add(c ^ mi ^ mj, col, flip_mp);
      if (up_i == up_j) add(c ^ mi ^ mj, col, pair);
    }
    add(c, col, diag);
  }
  const bool real = p.dz == 0.0;
  return SparseMatrix::from_triplets(basis.size(), std::move(t), real ? Symmetry::symmetric : Symmetry::hermitian,
                                     real ? ValueKind::real : ValueKind::complex);
}

SparseMatrix build_hamiltonian(const SpinChainParams& p) { return build_hamiltonian(p, SectorBasis::for_params(p)); }

DenseVector szq_vector(const SectorBasis& basis, std::span<const cplx> v, double q) {
  if (v.size() != basis.size()) throw DimensionError("szq_vector: vector length does not match the basis");
  std::vector<cplx> phase(static_cast<std::size_t>(basis.nsite()));
  for (int j = 0; j < basis.nsite(); ++j) phase[j] = std::polar(1.0, q * j);
  DenseVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::uint32_t c = basis.state(i);
    cplx coeff{};
    for (int j = 0; j < basis.nsite(); ++j) coeff += (c >> j & 1u ? 0.5 : -0.5) * phase[j];
    out[i] = coeff * v[i];
  }
  return out;
}

}  // namespace shiftk
