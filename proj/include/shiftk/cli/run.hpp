#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "shiftk/cli/namelist.hpp"
#include "shiftk/contour/contour.hpp"
#include "shiftk/solvers/shifted_solver.hpp"

namespace shiftk::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInputError = 2, kBreakdown = 3 };

struct RunOptions {
  std::filesystem::path outdir = ".";
  /// Seed for the random invec when none is given.
  std::uint64_t seed = 1;
  std::ostream* out = nullptr;  // progress and summary; nullptr = silent
  std::ostream* err = nullptr;  // warnings
};

struct RunReport {
  CalcType mode = CalcType::normal;
  Method method = Method::bicg;
  std::size_t dim = 0;
  std::size_t iterations = 0;  // total, including restored ones
  StepStatus status = StepStatus::iterating;
  bool converged = false;
  std::uint64_t spmv_calls = 0;
  double max_residual = 0.0;
};

/// Runs one spectrum calculation and writes residual.dat and output/*.
/// Throws InputError/FormatError on bad input, BreakdownError on breakdown.
RunReport run(const InputConfig& cfg, const RunOptions& opts);

/// `shiftk contour`: Hamiltonian from the input file, contour from cfg.
/// Writes output/Eigenvalues.dat.
ContourResult run_contour(const InputConfig& input, const ContourConfig& cfg, const RunOptions& opts);

/// Full command line handling; returns the process exit code.
int main_entry(int argc, char** argv);

}  // namespace shiftk::cli
