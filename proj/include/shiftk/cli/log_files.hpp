#pragma once

// Text files written by the CLI. Every number uses 17 significant digits so a
// log read back replays bit-identically.
//
// TriDiagComp.dat   header (method, dim, m_left, z_initial, threshold, shifts)
//                   then one row per iteration:
//                   n alpha beta alpha_prev rho rnorm switch_to pi_prev_s pi_cur_s z_seed_after
//                   (complex values as two columns)
// ResVec.dat        header (iterations, m_left) then per row: n and P r_n
// Restart.dat       seed checkpoint: scalars, then r_cur, r_prev (and the two
//                   shadow vectors for BiCG), one "re im" per line
// residual.dat      n  max_sigma |r^sigma|  seed index
// dynamicalG.dat    Re(w) Im(w) Re(G) Im(G)

#include <filesystem>
#include <span>

#include "shiftk/solvers/coefficient_log.hpp"
#include "shiftk/solvers/shifted_solver.hpp"

namespace shiftk::cli {

void write_tridiag(const CoefficientLog& log, const std::filesystem::path& path);
void write_resvec(const CoefficientLog& log, const std::filesystem::path& path);
/// Reads both files back into one log. A missing ResVec.dat falls back to ResVec.dat0.
CoefficientLog read_log(const std::filesystem::path& tridiag, const std::filesystem::path& resvec);

void write_checkpoint(const Checkpoint& cp, const std::filesystem::path& path);
Checkpoint read_checkpoint(const std::filesystem::path& path);

void write_green(std::span<const cplx> omega, std::span<const cplx> g, const std::filesystem::path& path);

struct GreenTable {
  std::vector<cplx> omega;
  std::vector<cplx> g;
};
GreenTable read_green(const std::filesystem::path& path);

}  // namespace shiftk::cli
