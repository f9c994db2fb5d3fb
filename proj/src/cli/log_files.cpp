#include "shiftk/cli/log_files.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "shiftk/core/text_format.hpp"

namespace shiftk::cli {
namespace {

using text::format_double;

std::string fmt(cplx z) { return format_double(z.real()) + ' ' + format_double(z.imag()); }

std::ofstream create(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
  return out;
}

void close(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw InputError("write failure on '" + path.string() + "'");
}

// Line-oriented reader that skips blank and '#' lines and reports positions.
class Reader {
 public:
  explicit Reader(const std::filesystem::path& path) : path_(path), in_(path) {
    if (!in_) throw InputError("cannot open '" + path.string() + "'");
  }

  std::vector<std::string_view> next() {
    while (std::getline(in_, line_)) {
      ++number_;
      const auto t = text::trim(line_);
      if (t.empty() || t.front() == '#') continue;
      return text::split_ws(line_);
    }
    throw FormatError(path_.string() + ": unexpected end of file", number_);
  }

  bool at_end() {
    std::streampos pos = in_.tellg();
    std::string probe;
    std::size_t n = number_;
    while (std::getline(in_, probe)) {
      ++n;
      const auto t = text::trim(probe);
      if (!t.empty() && t.front() != '#') {
        in_.clear();
        in_.seekg(pos);
        return false;
      }
    }
    number_ = n;
    return true;
  }

  // "key v1 v2 ..." with exactly `count` values.
  std::vector<std::string_view> keyed(std::string_view key, std::size_t count) {
    auto t = next();
    if (t.empty() || t[0] != key || t.size() != count + 1)
      fail("expected '" + std::string(key) + "' with " + std::to_string(count) + " value(s)");
    t.erase(t.begin());
    return t;
  }

  double real(std::string_view tok) {
    const auto v = text::parse_double(tok);
    if (!v) fail("malformed number '" + std::string(tok) + "'");
    return *v;
  }
  long long integer(std::string_view tok) {
    const auto v = text::parse_integer(tok);
    if (!v) fail("malformed integer '" + std::string(tok) + "'");
    return *v;
  }
  cplx complex(std::string_view re, std::string_view im) { return {real(re), real(im)}; }

  [[noreturn]] void fail(const std::string& what) const { throw FormatError(path_.string() + ": " + what, number_); }

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  std::string line_;
  std::size_t number_ = 0;
};

std::size_t count(Reader& r, long long v, const char* what) {
  if (v < 0) r.fail(std::string(what) + " must be nonnegative");
  return static_cast<std::size_t>(v);
}

}  // namespace

void write_tridiag(const CoefficientLog& log, const std::filesystem::path& path) {
  auto out = create(path);
  out << "# shiftk coefficient log\n";
  out << "method " << to_string(log.method) << '\n';
  out << "dim " << log.dim << '\n';
  out << "m_left " << log.m_left << '\n';
  out << "z_initial " << fmt(log.z_initial) << '\n';
  out << "threshold " << format_double(log.threshold) << '\n';
  out << "nshift " << log.shifts.size() << '\n';
  for (const auto& z : log.shifts) out << fmt(z) << '\n';
  out << "iterations " << log.size() << '\n';
  out << "# n alpha beta alpha_prev rho rnorm_next switch_to pi_prev_s pi_cur_s z_seed_after\n";
  for (std::size_t n = 0; n < log.size(); ++n) {
    const auto& e = log.entries[n];
    out << n << ' ' << fmt(e.alpha) << ' ' << fmt(e.beta) << ' ' << fmt(e.alpha_prev) << ' ' << fmt(e.rho) << ' '
        << format_double(e.rnorm_next) << ' ' << e.switch_to << ' ' << fmt(e.pi_prev_s) << ' ' << fmt(e.pi_cur_s)
        << ' ' << fmt(e.z_seed_after) << '\n';
  }
  close(out, path);
}

void write_resvec(const CoefficientLog& log, const std::filesystem::path& path) {
  auto out = create(path);
  out << "# shiftk projected residuals P r_n\n";
  out << "iterations " << log.size() << '\n';
  out << "m_left " << log.m_left << '\n';
  for (std::size_t n = 0; n < log.size(); ++n) {
    out << n;
    for (const auto& v : log.projected_residual(n)) out << ' ' << fmt(v);
    out << '\n';
  }
  close(out, path);
}

CoefficientLog read_log(const std::filesystem::path& tridiag, const std::filesystem::path& resvec) {
  CoefficientLog log;
  {
    Reader r(tridiag);
    log.method = method_from_string(r.keyed("method", 1)[0]);
    log.dim = count(r, r.integer(r.keyed("dim", 1)[0]), "dim");
    log.m_left = count(r, r.integer(r.keyed("m_left", 1)[0]), "m_left");
    if (log.dim == 0 || log.m_left == 0) r.fail("dim and m_left must be positive");
    const auto z = r.keyed("z_initial", 2);
    log.z_initial = r.complex(z[0], z[1]);
    log.threshold = r.real(r.keyed("threshold", 1)[0]);
    const auto nshift = count(r, r.integer(r.keyed("nshift", 1)[0]), "nshift");
    for (std::size_t k = 0; k < nshift; ++k) {
      const auto t = r.next();
      if (t.size() != 2) r.fail("expected 're im' for a shift");
      log.shifts.push_back(r.complex(t[0], t[1]));
    }
    const auto iters = count(r, r.integer(r.keyed("iterations", 1)[0]), "iterations");
    for (std::size_t n = 0; n < iters; ++n) {
      const auto t = r.next();
      if (t.size() != 17) r.fail("coefficient row needs 17 columns");
      if (r.integer(t[0]) != static_cast<long long>(n)) r.fail("coefficient rows out of order");
      LogEntry e;
      e.alpha = r.complex(t[1], t[2]);
      e.beta = r.complex(t[3], t[4]);
      e.alpha_prev = r.complex(t[5], t[6]);
      e.rho = r.complex(t[7], t[8]);
      e.rnorm_next = r.real(t[9]);
      e.switch_to = r.integer(t[10]);
      e.pi_prev_s = r.complex(t[11], t[12]);
      e.pi_cur_s = r.complex(t[13], t[14]);
      e.z_seed_after = r.complex(t[15], t[16]);
      log.entries.push_back(e);
    }
    if (!r.at_end()) r.fail("trailing data after the last coefficient row");
  }
  std::filesystem::path rv = resvec;
  if (!std::filesystem::exists(rv)) {
    auto alt = rv;
    alt += "0";
    if (std::filesystem::exists(alt)) rv = alt;
  }
  Reader r(rv);
  const auto iters = count(r, r.integer(r.keyed("iterations", 1)[0]), "iterations");
  const auto m_left = count(r, r.integer(r.keyed("m_left", 1)[0]), "m_left");
  if (iters != log.size()) r.fail("iteration count differs from the coefficient log");
  if (m_left != log.m_left) r.fail("m_left differs from the coefficient log");
  log.projected_residuals.reserve(iters * m_left);
  for (std::size_t n = 0; n < iters; ++n) {
    const auto t = r.next();
    if (t.size() != 1 + 2 * m_left) r.fail("residual row has the wrong number of columns");
    if (r.integer(t[0]) != static_cast<long long>(n)) r.fail("residual rows out of order");
    for (std::size_t i = 0; i < m_left; ++i) log.projected_residuals.push_back(r.complex(t[1 + 2 * i], t[2 + 2 * i]));
  }
  if (!r.at_end()) r.fail("trailing data after the last residual row");
  return log;
}

void write_checkpoint(const Checkpoint& cp, const std::filesystem::path& path) {
  auto out = create(path);
  out << "# shiftk restart checkpoint\n";
  out << "method " << to_string(cp.method) << '\n';
  out << "dim " << cp.dim << '\n';
  out << "iteration " << cp.iteration << '\n';
  out << "z_seed " << fmt(cp.z_seed) << '\n';
  out << "alpha_prev " << fmt(cp.alpha_prev) << '\n';
  out << "rho_prev " << fmt(cp.rho_prev) << '\n';
  out << "rnorm " << format_double(cp.rnorm) << '\n';
  auto block = [&](const char* name, const DenseVector& v) {
    out << "# " << name << '\n';
    for (const auto& x : v) out << fmt(x) << '\n';
  };
  block("r_cur", cp.r_cur);
  block("r_prev", cp.r_prev);
  if (needs_shadow(cp.method)) {
    block("shadow_cur", cp.shadow_cur);
    block("shadow_prev", cp.shadow_prev);
  }
  close(out, path);
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  Reader r(path);
  Checkpoint cp;
  cp.method = method_from_string(r.keyed("method", 1)[0]);
  cp.dim = count(r, r.integer(r.keyed("dim", 1)[0]), "dim");
  if (cp.dim == 0) r.fail("dim must be positive");
  cp.iteration = count(r, r.integer(r.keyed("iteration", 1)[0]), "iteration");
  auto t = r.keyed("z_seed", 2);
  cp.z_seed = r.complex(t[0], t[1]);
  t = r.keyed("alpha_prev", 2);
  cp.alpha_prev = r.complex(t[0], t[1]);
  t = r.keyed("rho_prev", 2);
  cp.rho_prev = r.complex(t[0], t[1]);
  cp.rnorm = r.real(r.keyed("rnorm", 1)[0]);
  auto block = [&](DenseVector& v) {
    v.resize(cp.dim);
    for (auto& x : v) {
      const auto p = r.next();
      if (p.size() != 2) r.fail("expected 're im' vector entry");
      x = r.complex(p[0], p[1]);
    }
  };
  block(cp.r_cur);
  block(cp.r_prev);
  if (needs_shadow(cp.method)) {
    block(cp.shadow_cur);
    block(cp.shadow_prev);
  }
  if (!r.at_end()) r.fail("trailing data after the checkpoint vectors");
  return cp;
}

void write_green(std::span<const cplx> omega, std::span<const cplx> g, const std::filesystem::path& path) {
  if (omega.size() != g.size()) throw DimensionError("write_green: grid and values differ in length");
  auto out = create(path);
  out << "# Re(omega) Im(omega) Re(G) Im(G)\n";
  for (std::size_t i = 0; i < g.size(); ++i) out << fmt(omega[i]) << ' ' << fmt(g[i]) << '\n';
  close(out, path);
}

GreenTable read_green(const std::filesystem::path& path) {
  Reader r(path);
  GreenTable t;
  while (!r.at_end()) {
    const auto row = r.next();
    if (row.size() != 4) r.fail("dynamicalG rows need 4 columns");
    t.omega.push_back(r.complex(row[0], row[1]));
    t.g.push_back(r.complex(row[2], row[3]));
  }
  return t;
}

}  // namespace shiftk::cli
