#include <fstream>

#include "shiftk/cli/run.hpp"
#include "shiftk/core/matrix_market.hpp"
#include "shiftk/core/text_format.hpp"
#include "shiftk/models/spin_chain.hpp"

namespace shiftk::cli {
namespace fs = std::filesystem;

ContourResult run_contour(const InputConfig& input, const ContourConfig& cfg, const RunOptions& opts) {
  if (!input.inham && !input.ham) throw InputError("contour: the input names no Hamiltonian");
  const SparseMatrix h = input.inham ? mm_read_matrix(*input.inham) : build_hamiltonian(*input.ham);
  const auto res = contour_eigensolve(h, cfg);
  const auto dir = opts.outdir / "output";
  fs::create_directories(dir);
  const auto file = dir / "Eigenvalues.dat";
  std::ofstream out(file);
  if (!out) throw InputError("cannot open '" + file.string() + "' for writing");
  out << "# index eigenvalue residual near_boundary\n";
  for (std::size_t i = 0; i < res.pairs.size(); ++i)
    out << i << ' ' << text::format_double(res.pairs[i].value) << ' ' << text::format_double(res.pairs[i].residual)
        << ' ' << (res.pairs[i].near_boundary ? 1 : 0) << '\n';
  out.flush();
  if (!out) throw InputError("write failure on '" + file.string() + "'");
  if (opts.out) {
    auto& o = *opts.out;
    o << "dimension " << h.dimension() << ", SS(" << cfg.n_k << "," << cfg.n_l << "), N_z " << cfg.n_z
      << ", subspace rank " << res.rank << ", solver iterations <= " << res.max_solver_iterations << '\n';
    o << "  #   eigenvalue                 residual\n";
    for (std::size_t i = 0; i < res.pairs.size(); ++i) {
      o << "  " << i << "   " << text::format_double(res.pairs[i].value) << "   "
        << text::format_double(res.pairs[i].residual);
      if (res.pairs[i].near_boundary) o << "   (near contour)";
      o << '\n';
    }
  }
  return res;
}

}  // namespace shiftk::cli
