#include <iostream>

#include <CLI11.hpp>

#include "shiftk/cli/run.hpp"
#include "shiftk/core/text_format.hpp"

namespace shiftk::cli {
namespace {

// "re" or "re,im"
cplx parse_center(const std::string& s) {
  const auto comma = s.find(',');
  const auto re = text::parse_double(text::trim(std::string_view(s).substr(0, comma)));
  std::optional<double> im = 0.0;
  if (comma != std::string::npos) im = text::parse_double(text::trim(std::string_view(s).substr(comma + 1)));
  if (!re || !im) throw InputError("--gamma expects 're' or 're,im', got '" + s + "'");
  return {*re, *im};
}

}  // namespace

int main_entry(int argc, char** argv) {
  CLI::App app{"Shifted Krylov solvers for dynamical Green's functions"};
  app.set_version_flag("--version", "shiftk 1.0.0");
  std::string input;
  RunOptions opts;
  std::string outdir = ".";
  app.add_option("input", input, "Namelist input file");
  app.add_option("--outdir", outdir, "Directory for residual.dat and output/")->capture_default_str();
  app.add_option("--seed", opts.seed, "Seed for the random initial vector when invec is absent")
      ->capture_default_str();

  auto* contour = app.add_subcommand("contour", "Contour-integral eigensolver on the input's Hamiltonian");
  std::string contour_input, gamma = "-5";
  ContourConfig ccfg;
  std::string contour_outdir = ".";
  contour->add_option("input", contour_input, "Namelist input file")->required();
  contour->add_option("--gamma", gamma, "Contour center, re[,im]")->capture_default_str();
  contour->add_option("--rho", ccfg.rho, "Contour radius")->capture_default_str();
  contour->add_option("--nz", ccfg.n_z, "Quadrature points")->capture_default_str();
  contour->add_option("--nk", ccfg.n_k, "Moments per source")->capture_default_str();
  contour->add_option("--nl", ccfg.n_l, "Number of random sources")->capture_default_str();
  contour->add_option("--cutoff", ccfg.svd_cutoff, "Relative singular-value cutoff")->capture_default_str();
  contour->add_option("--seed", ccfg.seed, "Seed for the random sources")->capture_default_str();
  contour->add_option("--outdir", contour_outdir, "Directory for output/Eigenvalues.dat")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  opts.out = &std::cout;
  opts.err = &std::cerr;
  try {
    if (*contour) {
      ccfg.gamma = parse_center(gamma);
      opts.outdir = contour_outdir;
      run_contour(parse_input(contour_input), ccfg, opts);
      return kOk;
    }
    if (input.empty()) {
      std::cerr << app.help();
      return kUsage;
    }
    opts.outdir = outdir;
    run(parse_input(input), opts);
    return kOk;
  } catch (const BreakdownError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBreakdown;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace shiftk::cli
