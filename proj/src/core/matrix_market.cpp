#include "shiftk/core/matrix_market.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "shiftk/core/text_format.hpp"

namespace shiftk {
namespace {

enum class Layout { coordinate, array };

struct Header {
  Layout layout;
  ValueKind field;
  Symmetry symmetry;
};

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank, non-comment line. Returns false at end of file.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      const auto t = text::trim(line);
      if (t.empty() || t.front() == '%') continue;
      return true;
    }
    return false;
  }
  std::size_t number() const { return number_; }
  std::istream& stream() { return in_; }
  void bump() { ++number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

Header parse_banner(const std::string& line, const MatrixMarketOptions& opts) {
  const auto tokens = text::split_ws(line);
  if (tokens.size() != 5 || text::to_lower(tokens[0]) != "%%matrixmarket" || text::to_lower(tokens[1]) != "matrix")
    throw FormatError("Matrix Market: malformed banner '" + line + "'", 1);
  Header h{};
  const auto layout = text::to_lower(tokens[2]);
  if (layout == "coordinate")
    h.layout = Layout::coordinate;
  else if (layout == "array")
    h.layout = Layout::array;
  else
    throw FormatError("Matrix Market: unsupported format '" + layout + "'", 1);

  const auto field = text::to_lower(tokens[3]);
  if (field == "real" || field == "double")
    h.field = ValueKind::real;
  else if (field == "complex")
    h.field = ValueKind::complex;
  else
    throw FormatError("Matrix Market: unsupported field qualifier '" + field + "'", 1);
  if (opts.real_only && h.field == ValueKind::complex)
    throw InputError("Matrix Market: complex data where a real operand is required");

  const auto sym = text::to_lower(tokens[4]);
  if (sym == "general")
    h.symmetry = Symmetry::general;
  else if (sym == "symmetric")
    h.symmetry = Symmetry::symmetric;
  else if (sym == "hermitian")
    h.symmetry = h.field == ValueKind::real ? Symmetry::symmetric : Symmetry::hermitian;
  else
    throw FormatError("Matrix Market: unsupported symmetry qualifier '" + sym + "'", 1);
  return h;
}

cplx parse_value(const std::vector<std::string_view>& tokens, std::size_t first, ValueKind field,
                 std::size_t line) {
  const std::size_t need = first + (field == ValueKind::complex ? 2 : 1);
  if (tokens.size() != need) throw FormatError("Matrix Market: wrong number of fields in entry", line);
  const auto re = text::parse_double(tokens[first]);
  if (!re) throw FormatError("Matrix Market: malformed number '" + std::string(tokens[first]) + "'", line);
  if (field == ValueKind::real) return {*re, 0.0};
  const auto im = text::parse_double(tokens[first + 1]);
  if (!im) throw FormatError("Matrix Market: malformed number '" + std::string(tokens[first + 1]) + "'", line);
  return {*re, *im};
}

std::int64_t parse_size(std::string_view token, std::size_t line) {
  const auto v = text::parse_integer(token);
  if (!v || *v < 0) throw FormatError("Matrix Market: malformed size '" + std::string(token) + "'", line);
  return *v;
}

SparseMatrix read_coordinate(LineReader& reader, const Header& h) {
  std::string line;
  if (!reader.next(line)) throw FormatError("Matrix Market: missing size line", reader.number());
  const auto sizes = text::split_ws(line);
  if (sizes.size() != 3) throw FormatError("Matrix Market: coordinate size line needs 'rows cols nnz'", reader.number());
  const auto rows = parse_size(sizes[0], reader.number());
  const auto cols = parse_size(sizes[1], reader.number());
  const auto nnz = parse_size(sizes[2], reader.number());
  if (rows != cols || rows == 0) throw FormatError("Matrix Market: only nonempty square matrices are supported", reader.number());

  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(h.symmetry == Symmetry::general ? nnz : 2 * nnz));
  for (std::int64_t k = 0; k < nnz; ++k) {
    if (!reader.next(line))
      throw FormatError("Matrix Market: expected " + std::to_string(nnz) + " entries, found " + std::to_string(k),
                        reader.number());
    const auto tokens = text::split_ws(line);
    if (tokens.size() < 2) throw FormatError("Matrix Market: malformed entry", reader.number());
    const auto i = text::parse_integer(tokens[0]);
    const auto j = text::parse_integer(tokens[1]);
    if (!i || !j) throw FormatError("Matrix Market: malformed index", reader.number());
    if (*i < 1 || *i > rows || *j < 1 || *j > cols)
      throw FormatError("Matrix Market: index out of declared bounds", reader.number());
    const cplx v = parse_value(tokens, 2, h.field, reader.number());
    const std::int64_t r = *i - 1, c = *j - 1;
    if (h.symmetry != Symmetry::general && r < c)
      throw FormatError("Matrix Market: symmetric/hermitian files must store the lower triangle", reader.number());
    if (h.symmetry == Symmetry::hermitian && r == c && v.imag() != 0.0)
      throw FormatError("Matrix Market: Hermitian diagonal entry with nonzero imaginary part", reader.number());
    entries.push_back({r, c, v});
    if (r != c && h.symmetry == Symmetry::symmetric) entries.push_back({c, r, v});
    if (r != c && h.symmetry == Symmetry::hermitian) entries.push_back({c, r, std::conj(v)});
  }
  if (reader.next(line)) throw FormatError("Matrix Market: more entries than declared", reader.number());
  return SparseMatrix::from_triplets(static_cast<std::size_t>(rows), std::move(entries), h.symmetry, h.field);
}

DenseVector read_array(LineReader& reader, const Header& h) {
  if (h.symmetry != Symmetry::general) throw FormatError("Matrix Market: array data must be 'general'", 1);
  std::string line;
  if (!reader.next(line)) throw FormatError("Matrix Market: missing size line", reader.number());
  const auto sizes = text::split_ws(line);
  if (sizes.size() != 2) throw FormatError("Matrix Market: array size line needs 'rows cols'", reader.number());
  const auto rows = parse_size(sizes[0], reader.number());
  const auto cols = parse_size(sizes[1], reader.number());
  if (rows == 0 || cols == 0 || (rows != 1 && cols != 1))
    throw FormatError("Matrix Market: array data must be a nonempty vector (one row or one column)", reader.number());
  const auto n = rows * cols;
  DenseVector v;
  v.reserve(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) {
    if (!reader.next(line))
      throw FormatError("Matrix Market: expected " + std::to_string(n) + " entries, found " + std::to_string(k),
                        reader.number());
    v.push_back(parse_value(text::split_ws(line), 0, h.field, reader.number()));
  }
  if (reader.next(line)) throw FormatError("Matrix Market: more entries than declared", reader.number());
  return v;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw InputError("write failure on '" + path.string() + "'");
}

}  // namespace

MatrixMarketObject mm_read(const std::filesystem::path& path, MatrixMarketOptions opts) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::string banner;
  if (!std::getline(in, banner) || banner.rfind("%%", 0) != 0)
    throw FormatError("Matrix Market: file must begin with a %%MatrixMarket banner", 1);
  LineReader reader(in);
  reader.bump();
  const Header h = parse_banner(banner, opts);
  if (h.layout == Layout::coordinate) return read_coordinate(reader, h);
  return read_array(reader, h);
}

SparseMatrix mm_read_matrix(const std::filesystem::path& path, MatrixMarketOptions opts) {
  auto obj = mm_read(path, opts);
  if (auto* m = std::get_if<SparseMatrix>(&obj)) return std::move(*m);
  throw InputError("'" + path.string() + "' holds a dense array, expected a coordinate matrix");
}

DenseVector mm_read_vector(const std::filesystem::path& path, MatrixMarketOptions opts) {
  auto obj = mm_read(path, opts);
  if (auto* v = std::get_if<DenseVector>(&obj)) return std::move(*v);
  throw InputError("'" + path.string() + "' holds a coordinate matrix, expected a dense array");
}

void mm_write(const SparseMatrix& a, const std::filesystem::path& path) {
  const bool lower_only = a.symmetry() != Symmetry::general;
  const bool real = a.value_kind() == ValueKind::real;
  const auto offsets = a.row_offsets();
  const auto cols = a.column_indices();
  const auto values = a.values();

  std::size_t count = 0;
  for (std::size_t i = 0; i < a.dimension(); ++i)
    for (auto k = offsets[i]; k < offsets[i + 1]; ++k)
      if (!lower_only || static_cast<std::size_t>(cols[k]) <= i) ++count;

  auto out = open_for_write(path);
  out << "%%MatrixMarket matrix coordinate " << to_string(a.value_kind()) << ' ' << to_string(a.symmetry()) << '\n';
  out << a.dimension() << ' ' << a.dimension() << ' ' << count << '\n';
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    for (auto k = offsets[i]; k < offsets[i + 1]; ++k) {
      if (lower_only && static_cast<std::size_t>(cols[k]) > i) continue;
      out << i + 1 << ' ' << cols[k] + 1 << ' ' << text::format_double(values[k].real());
      if (!real) out << ' ' << text::format_double(values[k].imag());
      out << '\n';
    }
  }
  finish(out, path);
}

void mm_write(std::span<const cplx> v, const std::filesystem::path& path, ValueKind kind) {
  if (v.empty()) throw DimensionError("mm_write: empty vector");
  if (kind == ValueKind::real)
    for (const auto& x : v)
      if (x.imag() != 0.0) throw InputError("mm_write: complex entry in a vector written as real");
  auto out = open_for_write(path);
  out << "%%MatrixMarket matrix array " << to_string(kind) << " general\n";
  out << v.size() << " 1\n";
  for (const auto& x : v) {
    out << text::format_double(x.real());
    if (kind == ValueKind::complex) out << ' ' << text::format_double(x.imag());
    out << '\n';
  }
  finish(out, path);
}

}  // namespace shiftk
