#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "shiftk/core/matrix_market.hpp"
#include "shiftk/core/text_format.hpp"
#include "shiftk/core/vector_ops.hpp"
#include "shiftk/models/spin_chain.hpp"
#include "support.hpp"

using namespace shiftk;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "shiftk_test_core";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_text(const std::string& name, const std::string& body) {
  const auto p = scratch(name);
  std::ofstream(p) << body;
  return p;
}

void check_same(const SparseMatrix& a, const SparseMatrix& b) {
  REQUIRE(a.dimension() == b.dimension());
  REQUIRE(a.nnz() == b.nnz());
  CHECK(a.symmetry() == b.symmetry());
  CHECK(a.value_kind() == b.value_kind());
  for (std::size_t i = 0; i <= a.dimension(); ++i) CHECK(a.row_offsets()[i] == b.row_offsets()[i]);
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    CHECK(a.column_indices()[k] == b.column_indices()[k]);
    CHECK(a.values()[k] == b.values()[k]);
  }
}

}  // namespace

TEST_CASE("vector primitives") {
  const DenseVector i0{{0, 1}, {0, 0}};
  CHECK(dot(i0, i0) == cplx{1, 0});
  CHECK(dot_unconjugated(i0, i0) == cplx{-1, 0});
  const DenseVector v34{{3, 0}, {4, 0}};
  CHECK(norm2(v34) == doctest::Approx(5.0));
  const std::vector<double> r{3.0, 4.0};
  CHECK(norm2(std::span<const double>(r)) == doctest::Approx(5.0));

  DenseVector y{{1, 0}, {2, 0}};
  axpy(cplx{0, 1}, v34, y);
  CHECK(y[0] == cplx{1, 3});
  CHECK(y[1] == cplx{2, 4});
  axpby(cplx{1, 0}, v34, cplx{2, 0}, y);
  CHECK(y[0] == cplx{5, 6});
  scale(cplx{0, -1}, y);
  CHECK(y[1] == cplx{8, -8});

  DenseVector out(2);
  three_term(out, 1.0, v34, 2.0, v34, -3.0, v34);
  CHECK(out[0] == cplx{0, 0});

  DenseVector short1(1);
  CHECK_THROWS_AS(dot(short1, v34), DimensionError);
  CHECK_THROWS_AS(axpy(1.0, short1, y), DimensionError);
}

TEST_CASE("random_unit_vector is seeded and normalized") {
  const auto a = random_unit_vector(100, 42), b = random_unit_vector(100, 42), c = random_unit_vector(100, 43);
  CHECK(norm2(a) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("spmv on small matrices") {
  const DenseVector v{{1, 0}, {2, 0}, {3, 0}};
  CHECK(spmv(SparseMatrix::identity(3), v) == v);
  const DenseVector d{{2, 0}, {-1, 0}};
  const auto y = spmv(SparseMatrix::diagonal(d), DenseVector{{1, 0}, {1, 0}});
  CHECK(y == d);
  DenseVector bad(2);
  CHECK_THROWS_AS(spmv(SparseMatrix::identity(3), bad), DimensionError);
}

TEST_CASE("spmv counter") {
  const auto a = SparseMatrix::identity(4);
  DenseVector x(4, 1.0), y(4);
  const auto before = spmv_count();
  spmv(a, x, y);
  spmv(a, x, y);
  CHECK(spmv_count() - before == 2);
}

TEST_CASE("from_triplets sums duplicates and validates") {
  const auto a = SparseMatrix::from_triplets(2, {{0, 0, 1.0}, {0, 0, 2.0}, {1, 0, {0, 1}}});
  CHECK(a.at(0, 0) == cplx{3, 0});
  CHECK(a.at(1, 0) == cplx{0, 1});
  CHECK(a.at(0, 1) == cplx{});
  CHECK(a.nnz() == 2);
  CHECK_THROWS(SparseMatrix::from_triplets(2, {{0, 2, 1.0}}));
  CHECK_THROWS(SparseMatrix::from_triplets(2, {{0, 0, {1, 1}}}, Symmetry::hermitian));
  CHECK_THROWS(SparseMatrix::from_triplets(2, {{0, 0, {1, 1}}}, Symmetry::general, ValueKind::real));
}

TEST_CASE("spmv linearity and adjoint consistency") {
  for (auto kind : {test::Kind::hermitian, test::Kind::general, test::Kind::real_symmetric}) {
    const auto h = test::to_sparse(test::random_dense(24, 9, kind), kind);
    const auto u = test::random_vector(24, 1), v = test::random_vector(24, 2);
    const cplx al{0.3, 1.2}, be{-2.0, 0.5};
    DenseVector w(24);
    for (std::size_t i = 0; i < 24; ++i) w[i] = al * u[i] + be * v[i];
    const auto hw = spmv(h, w), hu = spmv(h, u), hv = spmv(h, v);
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < 24; ++i) {
      err = std::max(err, std::abs(hw[i] - (al * hu[i] + be * hv[i])));
      ref = std::max(ref, std::abs(hw[i]));
    }
    CHECK(err <= 1e-13 * ref);

    // <u, H v> = <H^dagger u, v>
    const auto hdu = spmv(h.adjoint(), u);
    CHECK(std::abs(dot(u, hv) - dot(hdu, v)) <= 1e-13 * std::abs(dot(u, hv)));
    if (kind != test::Kind::general) {
      CHECK(std::abs(dot(u, hv) - std::conj(dot(v, hu))) <= 1e-13 * std::abs(dot(u, hv)));
      CHECK(h.is_hermitian(1e-15));
    }
  }
}

TEST_CASE("spmv matches the dense assembly for L=12") {
  SpinChainParams p;
  p.nsite = 12;
  p.two_sz = 0;
  const auto h = build_hamiltonian(p);
  REQUIRE(h.dimension() == 924);
  DenseVector e0(924);
  e0[0] = 1.0;
  const auto col = spmv(h, e0);
  const auto dense = dense_assemble(h);
  for (std::size_t i = 0; i < 924; ++i) CHECK(col[i] == dense(static_cast<Eigen::Index>(i), 0));
}

TEST_CASE("text format round-trips doubles") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int k = 0; k < 1000; ++k) {
    const double x = u(rng) * std::pow(10.0, (k % 40) - 20);
    CHECK(*text::parse_double(text::format_double(x)) == x);
  }
  CHECK(*text::parse_double("1d0") == 1.0);
  CHECK(*text::parse_double("-2.5D-1") == -0.25);
  CHECK_FALSE(text::parse_double("1.0x"));
}

TEST_CASE("Matrix Market reader") {
  SUBCASE("symmetric expansion") {
    const auto p = write_text("sym.mtx", "%%MatrixMarket matrix coordinate real symmetric\n% c\n2 2 2\n1 1 2.0\n2 1 -1.0\n");
    const auto a = mm_read_matrix(p);
    CHECK(a.at(0, 0) == cplx{2, 0});
    CHECK(a.at(0, 1) == cplx{-1, 0});
    CHECK(a.at(1, 0) == cplx{-1, 0});
    CHECK(a.at(1, 1) == cplx{0, 0});
    CHECK(a.symmetry() == Symmetry::symmetric);
  }
  SUBCASE("complex array vector") {
    const auto p = write_text("vec.mtx", "%%MatrixMarket matrix array complex general\n2 1\n1.0 0.0\n0.0 1.0\n");
    const auto v = mm_read_vector(p);
    CHECK(v == DenseVector{{1, 0}, {0, 1}});
  }
  SUBCASE("hermitian mirror is conjugated") {
    const auto p = write_text("her.mtx", "%%MatrixMarket matrix coordinate complex hermitian\n2 2 2\n1 1 1 0\n2 1 0 1\n");
    const auto a = mm_read_matrix(p);
    CHECK(a.at(1, 0) == cplx{0, 1});
    CHECK(a.at(0, 1) == cplx{0, -1});
  }
  SUBCASE("errors") {
    auto bad = [](const std::string& body) { return write_text("bad.mtx", body); };
    CHECK_THROWS_AS(mm_read(bad("2 2 1\n1 1 1\n")), FormatError);
    CHECK_THROWS_AS(mm_read(bad("%%MatrixMarket matrix coordinate pattern general\n1 1 1\n1 1\n")), FormatError);
    CHECK_THROWS_AS(mm_read(bad("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n")), FormatError);
    CHECK_THROWS_AS(mm_read(bad("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n")), FormatError);
    CHECK_THROWS_AS(mm_read(bad("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 1\n2 2 1\n")),
                    FormatError);
    CHECK_THROWS_AS(mm_read(bad("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n1 2 1\n")), FormatError);
    CHECK_THROWS_AS(mm_read(bad("%%MatrixMarket matrix coordinate real general\n2 3 0\n")), FormatError);
    CHECK_THROWS_AS(mm_read(bad("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 abc\n")), FormatError);
    CHECK_THROWS_AS(mm_read(bad("%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n"),
                            MatrixMarketOptions{true}),
                    InputError);
    CHECK_THROWS_AS(mm_read("/nonexistent/shiftk.mtx"), InputError);
    try {
      mm_read(bad("%%MatrixMarket matrix coordinate real general\n2 2 1\n% note\n1 9 1\n"));
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(e.line() == 4);
    }
  }
}

TEST_CASE("Matrix Market round trips") {
  SUBCASE("diag(1, 2)") {
    const DenseVector d{{1, 0}, {2, 0}};
    const auto a = SparseMatrix::diagonal(d, ValueKind::real);
    mm_write(a, scratch("diag.mtx"));
    check_same(mm_read_matrix(scratch("diag.mtx")), a);
  }
  SUBCASE("random 16x16 Hermitian at 50% density") {
    std::mt19937_64 rng(16);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Triplet> t;
    for (int i = 0; i < 16; ++i) {
      t.push_back({i, i, {u(rng), 0.0}});
      for (int j = 0; j < i; ++j)
        if (u(rng) > 0.0) {
          const cplx v{u(rng) / 3.0, u(rng) * 1e-7};
          t.push_back({i, j, v});
          t.push_back({j, i, std::conj(v)});
        }
    }
    const auto a = SparseMatrix::from_triplets(16, t, Symmetry::hermitian);
    mm_write(a, scratch("herm.mtx"));
    check_same(mm_read_matrix(scratch("herm.mtx")), a);
  }
  SUBCASE("general complex") {
    const auto a = test::to_sparse(test::random_dense(9, 4, test::Kind::general), test::Kind::general);
    mm_write(a, scratch("gen.mtx"));
    check_same(mm_read_matrix(scratch("gen.mtx")), a);
  }
  SUBCASE("empty 1x1") {
    const auto a = SparseMatrix::from_triplets(1, {});
    mm_write(a, scratch("empty.mtx"));
    const auto b = mm_read_matrix(scratch("empty.mtx"));
    CHECK(b.dimension() == 1);
    CHECK(b.nnz() == 0);
  }
  SUBCASE("vectors") {
    const auto v = test::random_vector(7, 8);
    mm_write(v, scratch("v.mtx"));
    CHECK(mm_read_vector(scratch("v.mtx")) == v);
    CHECK_THROWS_AS(mm_write(v, scratch("v2.mtx"), ValueKind::real), InputError);
  }
  SUBCASE("L=12 Hamiltonian") {
    SpinChainParams p;
    p.nsite = 12;
    p.two_sz = 0;
    const auto h = build_hamiltonian(p);
    mm_write(h, scratch("Ham.dat"));
    const auto back = mm_read_matrix(scratch("Ham.dat"));
    check_same(back, h);
    const auto eig = dense_eig(dense_assemble(back));
    CHECK(eig.values[0] == doctest::Approx(-5.387391).epsilon(1e-6 / 5.387391));
  }
}
