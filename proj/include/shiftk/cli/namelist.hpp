#pragma once

// Fortran-namelist style input:
//
//   &filename
//     inham = "Ham.dat"     ! comment
//   /
//   &dyn
//     omegamin = (-2d0, 0.1d0)
//   /
//
// Keys are case-insensitive. Values: integers, reals (d/D exponents allowed),
// .TRUE./.FALSE., quoted strings and (re, im) complex literals.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shiftk/core/types.hpp"
#include "shiftk/models/spin_chain.hpp"

namespace shiftk::cli {

enum class CalcType { normal, recalc, restart };
std::string_view to_string(CalcType c) noexcept;

struct InputConfig {
  // &filename
  std::optional<std::string> inham;
  std::optional<std::string> invec;
  // &cg
  std::optional<std::size_t> maxloops;  // default: the matrix dimension
  int convfactor = 6;
  // &dyn
  CalcType calctype = CalcType::normal;
  int nomega = 100;
  cplx omegamin{-2.0, 0.1};
  cplx omegamax{1.0, 0.1};
  bool outrestart = false;
  // &ham
  std::optional<SpinChainParams> ham;

  double threshold() const;
};

/// Throws FormatError (with line numbers) or InputError.
InputConfig parse_input_text(std::string_view text);
InputConfig parse_input(const std::filesystem::path& path);

/// w_i = omegamin + i * ((omegamax - omegamin) / nomega), i = 0 .. nomega-1.
std::vector<cplx> frequency_grid(cplx omegamin, cplx omegamax, int nomega);

}  // namespace shiftk::cli
