#include "shiftk/cli/namelist.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "shiftk/core/text_format.hpp"

namespace shiftk::cli {
namespace {

struct Value {
  enum class Kind { bare, string, complex } kind;
  std::string text;  // bare token or string contents
  cplx z;
  std::size_t line;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  // Skips whitespace, separators and comments.
  void skip() {
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
        ++pos_;
      } else if (c == '!') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }
  bool done() {
    skip();
    return pos_ >= s_.size();
  }
  char peek() const { return s_[pos_]; }
  void advance() { ++pos_; }
  std::size_t line() const { return line_; }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (pos_ == start) throw FormatError("expected a name", line_);
    return text::to_lower(s_.substr(start, pos_ - start));
  }

  Value value() {
    skip();
    if (pos_ >= s_.size()) throw FormatError("missing value", line_);
    const char c = s_[pos_];
    const std::size_t line = line_;
    if (c == '"' || c == '\'') {
      const std::size_t start = ++pos_;
      while (pos_ < s_.size() && s_[pos_] != c) {
        if (s_[pos_] == '\n') throw FormatError("unterminated string", line);
        ++pos_;
      }
      if (pos_ >= s_.size()) throw FormatError("unterminated string", line);
      std::string text(s_.substr(start, pos_ - start));
      ++pos_;
      return {Value::Kind::string, std::move(text), {}, line};
    }
    if (c == '(') {
      const std::size_t close = s_.find(')', pos_);
      if (close == std::string_view::npos) throw FormatError("unterminated complex literal", line);
      const auto inner = s_.substr(pos_ + 1, close - pos_ - 1);
      if (inner.find('\n') != std::string_view::npos) throw FormatError("complex literal spans lines", line);
      const auto comma = inner.find(',');
      if (comma == std::string_view::npos || inner.find(',', comma + 1) != std::string_view::npos)
        throw FormatError("complex literal must be (re, im)", line);
      const auto re = text::parse_double(inner.substr(0, comma));
      const auto im = text::parse_double(inner.substr(comma + 1));
      if (!re || !im) throw FormatError("malformed complex literal '(" + std::string(inner) + ")'", line);
      pos_ = close + 1;
      return {Value::Kind::complex, std::string(inner), {*re, *im}, line};
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size()) {
      const char d = s_[pos_];
      if (std::isspace(static_cast<unsigned char>(d)) || d == ',' || d == '/' || d == '!' || d == '&') break;
      ++pos_;
    }
    if (pos_ == start) throw FormatError("missing value", line);
    return {Value::Kind::bare, std::string(s_.substr(start, pos_ - start)), {}, line};
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

long long as_integer(const Value& v, const std::string& key) {
  if (v.kind == Value::Kind::bare)
    if (const auto i = text::parse_integer(v.text)) return *i;
  throw FormatError("'" + key + "' expects an integer", v.line);
}

double as_real(const Value& v, const std::string& key) {
  if (v.kind == Value::Kind::bare)
    if (const auto d = text::parse_double(v.text); d && std::isfinite(*d)) return *d;
  throw FormatError("'" + key + "' expects a real number", v.line);
}

cplx as_complex(const Value& v, const std::string& key) {
  if (v.kind == Value::Kind::complex) {
    if (!std::isfinite(v.z.real()) || !std::isfinite(v.z.imag()))
      throw FormatError("'" + key + "' is not finite", v.line);
    return v.z;
  }
  return {as_real(v, key), 0.0};
}

bool as_bool(const Value& v, const std::string& key) {
  if (v.kind == Value::Kind::bare) {
    auto t = text::to_lower(v.text);
    if (t.size() > 1 && t.front() == '.') t.erase(0, 1);
    if (!t.empty() && t.back() == '.') t.pop_back();
    if (t == "true" || t == "t") return true;
    if (t == "false" || t == "f") return false;
  }
  throw FormatError("'" + key + "' expects .TRUE. or .FALSE.", v.line);
}

std::string as_string(const Value& v, const std::string& key) {
  if (v.kind == Value::Kind::complex) throw FormatError("'" + key + "' expects a string", v.line);
  return v.text;
}

int as_int(const Value& v, const std::string& key) {
  const auto i = as_integer(v, key);
  if (i < std::numeric_limits<int>::min() || i > std::numeric_limits<int>::max())
    throw FormatError("'" + key + "' is out of range", v.line);
  return static_cast<int>(i);
}

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"filename", {"inham", "invec"}},
      {"cg", {"maxloops", "convfactor"}},
      {"dyn", {"calctype", "nomega", "omegamin", "omegamax", "outrestart"}},
      {"ham", {"nsite", "jx", "jy", "jz", "dz", "two_sz"}},
  };
  return keys;
}

void assign(InputConfig& cfg, const std::string& section, const std::string& key, const Value& v) {
  if (section == "filename") {
    (key == "inham" ? cfg.inham : cfg.invec) = as_string(v, key);
  } else if (section == "cg") {
    if (key == "maxloops") {
      const auto n = as_integer(v, key);
      if (n < 1) throw FormatError("maxloops must be at least 1", v.line);
      cfg.maxloops = static_cast<std::size_t>(n);
    } else {
      cfg.convfactor = as_int(v, key);
      if (cfg.convfactor < 1) throw FormatError("convfactor must be at least 1", v.line);
    }
  } else if (section == "dyn") {
    if (key == "calctype") {
      const auto t = text::to_lower(text::trim(as_string(v, key)));
      if (t == "normal")
        cfg.calctype = CalcType::normal;
      else if (t == "recalc")
        cfg.calctype = CalcType::recalc;
      else if (t == "restart")
        cfg.calctype = CalcType::restart;
      else
        throw FormatError("calctype must be normal, recalc or restart", v.line);
    } else if (key == "nomega") {
      cfg.nomega = as_int(v, key);
      if (cfg.nomega < 1) throw FormatError("nomega must be at least 1", v.line);
    } else if (key == "omegamin") {
      cfg.omegamin = as_complex(v, key);
    } else if (key == "omegamax") {
      cfg.omegamax = as_complex(v, key);
    } else {
      cfg.outrestart = as_bool(v, key);
    }
  } else {
    auto& h = *cfg.ham;
    if (key == "nsite")
      h.nsite = as_int(v, key);
    else if (key == "jx")
      h.jx = as_real(v, key);
    else if (key == "jy")
      h.jy = as_real(v, key);
    else if (key == "jz")
      h.jz = as_real(v, key);
    else if (key == "dz")
      h.dz = as_real(v, key);
    else
      h.two_sz = as_int(v, key);
  }
}

}  // namespace

std::string_view to_string(CalcType c) noexcept {
  switch (c) {
    case CalcType::normal:
      return "normal";
    case CalcType::recalc:
      return "recalc";
    case CalcType::restart:
      return "restart";
  }
  return "normal";
}

double InputConfig::threshold() const { return std::pow(10.0, -convfactor); }

InputConfig parse_input_text(std::string_view text) {
  InputConfig cfg;
  Lexer lx(text);
  std::string section;
  std::set<std::string> seen_sections;
  std::set<std::string> seen_keys;
  while (!lx.done()) {
    const char c = lx.peek();
    if (c == '&') {
      lx.advance();
      if (!section.empty()) throw FormatError("section '&" + section + "' is not closed with '/'", lx.line());
      section = lx.identifier();
      if (!known_keys().count(section)) throw FormatError("unknown section '&" + section + "'", lx.line());
      if (!seen_sections.insert(section).second)
        throw FormatError("section '&" + section + "' appears twice", lx.line());
      if (section == "ham") cfg.ham.emplace();
      seen_keys.clear();
    } else if (c == '/') {
      lx.advance();
      if (section.empty()) throw FormatError("'/' outside a section", lx.line());
      section.clear();
    } else {
      const std::size_t line = lx.line();
      if (section.empty()) throw FormatError("text outside a section", line);
      const auto key = lx.identifier();
      if (!known_keys().at(section).count(key))
        throw FormatError("unknown key '" + key + "' in section '&" + section + "'", line);
      if (!seen_keys.insert(key).second) throw FormatError("key '" + key + "' set twice", line);
      lx.skip();
      if (lx.done() || lx.peek() != '=') throw FormatError("expected '=' after '" + key + "'", line);
      lx.advance();
      assign(cfg, section, key, lx.value());
    }
  }
  if (!section.empty()) throw FormatError("section '&" + section + "' is not closed with '/'", lx.line());

  if (cfg.inham && cfg.ham) throw InputError("input: give either inham or a &ham section, not both");
  if (!cfg.inham && !cfg.ham && cfg.calctype != CalcType::recalc)
    throw InputError("input: no Hamiltonian (set inham in &filename or add a &ham section)");
  if (cfg.ham) validate(*cfg.ham);
  return cfg;
}

InputConfig parse_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_input_text(ss.str());
}

std::vector<cplx> frequency_grid(cplx omegamin, cplx omegamax, int nomega) {
  if (nomega < 1) throw InputError("frequency grid: nomega must be at least 1");
  // The step is computed once so that grids with nomega and 2*nomega share
  // bit-identical points.
  const cplx step = (omegamax - omegamin) / static_cast<double>(nomega);
  std::vector<cplx> w(static_cast<std::size_t>(nomega));
  for (int i = 0; i < nomega; ++i) w[i] = omegamin + static_cast<double>(i) * step;
  return w;
}

}  // namespace shiftk::cli
