#include <doctest.h>

#include <cmath>

#include "shiftk/core/vector_ops.hpp"
#include "shiftk/solvers/recalc.hpp"
#include "shiftk/solvers/solve.hpp"
#include "support.hpp"

using namespace shiftk;

namespace {

struct Instance {
  Eigen::MatrixXcd dense;
  SparseMatrix h, h_adj;
  Method method;
};

Instance make(std::size_t n, std::uint64_t seed, test::Kind kind) {
  Instance in;
  in.dense = test::random_dense(n, seed, kind);
  in.h = test::to_sparse(in.dense, kind);
  in.h_adj = in.h.adjoint();
  in.method = kind == test::Kind::complex_symmetric || kind == test::Kind::real_symmetric ? Method::cocg
                                                                                        : Method::bicg;
  return in;
}

StepOutcome step(ShiftedSolver& s, const Instance& in) {
  spmv(in.h, s.vector(), s.product());
  if (needs_shadow(s.method())) spmv(in.h_adj, s.shadow_vector(), s.shadow_product());
  return s.update();
}

void drive(ShiftedSolver& s, const Instance& in) {
  while (s.status() == StepStatus::iterating) step(s, in);
}

std::vector<cplx> grid(int n, double lo, double hi, double eta) {
  std::vector<cplx> z;
  for (int i = 0; i < n; ++i) z.emplace_back(lo + (hi - lo) * i / std::max(1, n - 1), eta);
  return z;
}

double explicit_residual(const Eigen::MatrixXcd& h, cplx z, std::span<const cplx> b, std::span<const cplx> x) {
  const auto bx = test::as_eigen(b);
  const Eigen::VectorXcd r = bx - (z * test::as_eigen(x) - h * test::as_eigen(x));
  return r.norm();
}

}  // namespace

TEST_CASE("method names") {
  for (auto m : {Method::cg_r, Method::cg_c, Method::cocg, Method::bicg}) CHECK(method_from_string(to_string(m)) == m);
  CHECK(method_from_string("BiCG") == Method::bicg);
  CHECK_THROWS_AS(method_from_string("gmres"), InputError);
  CHECK(needs_shadow(Method::bicg));
  CHECK_FALSE(needs_shadow(Method::cocg));
}

TEST_CASE("projection") {
  const DenseVector a{{1, 1}, {0, 2}};
  const DenseVector v{{3, 0}, {1, -1}};
  const auto p = Projection::single(a);
  CHECK(p.rows() == 1);
  CHECK(p.apply(v)[0] == dot(a, v));
  CHECK(Projection::full(2).apply(v) == v);
  const auto r = Projection::rows(2, 2, {1.0, 0.0, 0.0, 2.0});
  const auto out = r.apply(v);
  CHECK(out[0] == v[0]);
  CHECK(out[1] == 2.0 * v[1]);
  CHECK_THROWS_AS(Projection::rows(2, 2, {1.0}), DimensionError);
  DenseVector wrong(3);
  CHECK_THROWS_AS(p.apply(wrong), DimensionError);
}

TEST_CASE("initial state") {
  SUBCASE("cg_r, b = (1, 0)") {
    const std::vector<double> b{1.0, 0.0};
    RealShiftedSolver s(Method::cg_r, b, {cplx{0.0}}, Projection::full(2), {});
    CHECK(s.vector()[0] == 1.0);
    CHECK(s.vector()[1] == 0.0);
    CHECK(s.get_residual() == std::vector<double>{1.0});
  }
  SUBCASE("bicg, b = e_0") {
    DenseVector b(4);
    b[0] = 1.0;
    ShiftedSolver s(Method::bicg, b, {{2, 0.1}, {3, 0.1}}, Projection::full(4), {});
    CHECK(s.get_residual() == std::vector<double>{1.0, 1.0});
    CHECK(s.seed() == cplx{2, 0.1});
    CHECK(s.seed_index() == 0);
    CHECK(s.shadow_vector()[0] == cplx{1, 0});
    for (std::size_t k = 0; k < 2; ++k)
      for (const auto& y : s.solution(k)) CHECK(y == cplx{});
  }
  SUBCASE("bad arguments") {
    DenseVector b(3, 1.0);
    CHECK_THROWS_AS(ShiftedSolver(Method::cocg, b, {}, Projection::full(3), {}), InputError);
    CHECK_THROWS_AS(ShiftedSolver(Method::cocg, b, {{1, 0}}, Projection::full(4), {}), DimensionError);
    CHECK_THROWS_AS(ShiftedSolver(Method::cocg, DenseVector(3), {{1, 0}}, Projection::full(3), {}), InputError);
    CHECK_THROWS_AS(ShiftedSolver(Method::cg_r, b, {{1, 0}}, Projection::full(3), {}), InputError);
  }
}

TEST_CASE("CG terminates in 2 steps on diag(1, 2)") {
  const double s2 = 1.0 / std::sqrt(2.0);
  const auto h = SparseMatrix::diagonal(DenseVector{1.0, 2.0}, ValueKind::real);
  const std::vector<double> b{s2, s2};
  SolverOptions opts;
  opts.threshold = 1e-12;
  opts.keep_log = true;
  RealShiftedSolver s(Method::cg_r, b, {cplx{3.0}}, Projection::full(2), opts);
  while (s.status() == StepStatus::iterating) {
    spmv(h, s.vector(), s.product());
    s.update();
  }
  CHECK(s.status() == StepStatus::converged);
  CHECK(s.iteration() == 2);
  const auto res = s.finalize();
  CHECK(res.iterations == 2);
  CHECK(res.log.size() == 2);
  CHECK(std::abs(res.solution(0)[0] - s2 / 2.0) < 1e-14);
  CHECK(std::abs(res.solution(0)[1] - s2) < 1e-14);

  // the complex CG path reaches the same point
  const DenseVector bc{s2, s2};
  ShiftedSolver c(Method::cg_c, bc, {cplx{3.0}}, Projection::full(2), opts);
  while (c.status() == StepStatus::iterating) {
    spmv(h, c.vector(), c.product());
    c.update();
  }
  CHECK(c.iteration() == 2);
  CHECK(std::abs(c.solution(0)[1] - s2) < 1e-14);
}

TEST_CASE("finite termination on diagonal matrices") {
  for (int d : {3, 5, 8}) {
    DenseVector diag(24);
    for (std::size_t i = 0; i < diag.size(); ++i) diag[i] = 1.0 + static_cast<double>(i % d);
    const auto h = SparseMatrix::diagonal(diag, ValueKind::real);
    const auto b = random_unit_vector(24, 5);
    SolverOptions opts;
    opts.threshold = 1e-10;
    opts.max_iter = d + 2;
    ShiftedSolver s(Method::cocg, b, {{0.5, 0.3}, {-1.0, 0.1}, {4.0, 0.2}}, Projection::full(24), opts);
    while (s.status() == StepStatus::iterating) {
      spmv(h, s.vector(), s.product());
      s.update();
    }
    CHECK(s.status() == StepStatus::converged);
  }
}

TEST_CASE("dense LU oracle, five shifts z_k = k + 0.05i") {
  for (auto kind : {test::Kind::hermitian, test::Kind::complex_symmetric, test::Kind::general}) {
    CAPTURE(static_cast<int>(kind));
    const auto in = make(32, 21, kind);
    const auto b = test::random_vector(32, 22);
    std::vector<cplx> z;
    for (int k = 0; k < 5; ++k) z.emplace_back(k - 2.0, 0.05);
    SolverOptions opts;
    opts.threshold = 1e-9;
    opts.max_iter = 2000;
    ShiftedSolver s(in.method, b, z, Projection::full(32), opts);
    drive(s, in);
    REQUIRE(s.status() == StepStatus::converged);
    for (std::size_t k = 0; k < z.size(); ++k) {
      const auto x = s.solution(k);
      const auto ref = test::dense_solve(in.dense, z[k], b);
      CHECK((test::as_eigen(x) - ref).norm() <= 1e-8 * ref.norm() * 50);
      CHECK(explicit_residual(in.dense, z[k], b, x) < 1e-9 * 1.5);
      CHECK(s.get_residual()[k] < 1e-9);
    }
  }
}

TEST_CASE("get_residual matches explicit residuals mid-run") {
  const auto in = make(32, 31, test::Kind::hermitian);
  const auto b = test::random_vector(32, 32);
  const auto z = grid(5, -1.5, 1.5, 0.3);
  ShiftedSolver s(Method::bicg, b, z, Projection::full(32), {});
  const auto r0 = s.get_residual();
  for (double r : r0) CHECK(r == doctest::Approx(norm2(b)).epsilon(1e-15));
  for (int n = 0; n < 12; ++n) {
    step(s, in);
    const auto res = s.get_residual();
    for (std::size_t k = 0; k < z.size(); ++k) {
      const double e = explicit_residual(in.dense, z[k], b, s.solution(k));
      CHECK(std::abs(res[k] - e) <= 1e-10 * e);
    }
  }
}

TEST_CASE("SpMV count is independent of the number of shifts") {
  const auto in = make(48, 41, test::Kind::real_symmetric);
  const auto b = random_unit_vector(48, 42);
  const cplx hard{0.1, 0.2};
  std::uint64_t counts[2];
  std::size_t iters[2];
  int idx = 0;
  for (int neq : {1, 5}) {
    std::vector<cplx> z{hard};
    for (int k = 1; k < neq; ++k) z.emplace_back(-2.0 + k, 1.0);
    SolverOptions opts;
    opts.threshold = 1e-10;
    ShiftedSolver s(Method::cocg, b, z, Projection::single(b), opts);
    const auto c0 = spmv_count();
    drive(s, in);
    REQUIRE(s.status() == StepStatus::converged);
    counts[idx] = spmv_count() - c0;
    iters[idx] = s.iteration();
    ++idx;
  }
  CHECK(counts[0] == counts[1]);
  CHECK(counts[0] == iters[0]);
}

TEST_CASE("finalize lifecycle") {
  const DenseVector b{1.0, 2.0, 3.0};
  SolverOptions opts;
  opts.keep_log = true;
  ShiftedSolver s(Method::cocg, b, {{1, 1}}, Projection::full(3), opts);
  auto res = s.finalize();
  CHECK(res.iterations == 0);
  CHECK(res.log.empty());
  for (const auto& y : res.solutions) CHECK(y == cplx{});
  CHECK(s.finalized());
  CHECK_THROWS_AS(s.finalize(), StateError);
  CHECK_THROWS_AS(s.update(), StateError);
  CHECK_THROWS_AS(s.product(), StateError);
}

TEST_CASE("max_iter stops with a partial result") {
  const auto in = make(32, 51, test::Kind::hermitian);
  const auto b = test::random_vector(32, 52);
  SolverOptions opts;
  opts.max_iter = 1;
  auto out = solve_convenience(
      Method::bicg, [&](std::span<const cplx> x, std::span<cplx> y) { spmv(in.h, x, y); }, b, grid(4, -1, 1, 0.1),
      Projection::full(32), opts);
  CHECK(out.status == StepStatus::max_iter);
  CHECK(out.residual_history.size() == 1);
  CHECK(out.iterations == 1);
  CHECK(out.operator_calls == 2);
}

TEST_CASE("solve_convenience with identity H") {
  const DenseVector b{{1, 2}, {-3, 0}};
  auto out = solve_convenience(
      Method::cocg, [](std::span<const cplx> x, std::span<cplx> y) { std::copy(x.begin(), x.end(), y.begin()); }, b,
      {cplx{2.0}}, Projection::full(2), {});
  CHECK(out.status == StepStatus::converged);
  CHECK(std::abs(out.solution(0)[0] - b[0]) < 1e-14);
  CHECK(std::abs(out.solution(0)[1] - b[1]) < 1e-14);
}

TEST_CASE("BiCG breakdown when b^T b = 0") {
  const DenseVector b{{1, 0}, {0, 1}};
  const auto h = SparseMatrix::identity(2);
  auto apply = [&](std::span<const cplx> x, std::span<cplx> y) { spmv(h, x, y); };
  CHECK_THROWS_AS(solve_convenience(Method::bicg, apply, b, {{3, 0.1}}, Projection::full(2), {}), BreakdownError);
  ShiftedSolver s(Method::cocg, b, {{3, 0.1}}, Projection::full(2), {});
  spmv(h, s.vector(), s.product());
  const auto out = s.update();
  CHECK(out.status == StepStatus::breakdown);
  CHECK_FALSE(out.breakdown_reason.empty());
}

TEST_CASE("relative threshold") {
  const auto in = make(32, 61, test::Kind::hermitian);
  DenseVector b = test::random_vector(32, 62);
  scale(cplx{1e3}, b);
  SolverOptions opts;
  opts.threshold = 1e-8;
  opts.relative = true;
  ShiftedSolver s(Method::bicg, b, grid(3, -1, 1, 0.2), Projection::full(32), opts);
  CHECK(s.threshold() == doctest::Approx(1e-8 * norm2(b)));
  drive(s, in);
  CHECK(s.status() == StepStatus::converged);
}

TEST_CASE("seed switching keeps residuals continuous") {
  const auto in = make(32, 71, test::Kind::complex_symmetric);
  const auto b = test::random_vector(32, 72);
  SolverOptions opts;
  opts.threshold = 1e-10;
  opts.verify_switch = true;
  // the first shift is the easiest, so the seed must move
  auto z = grid(30, -2.0, 2.0, 0.1);
  z.insert(z.begin(), cplx{10.0, 5.0});
  ShiftedSolver s(Method::cocg, b, z, Projection::full(32), opts);
  while (s.status() == StepStatus::iterating) step(s, in);
  REQUIRE_FALSE(s.switches().empty());
  for (const auto& sw : s.switches()) {
    CHECK(sw.from != sw.to);
    CHECK(sw.residual_jump <= 1e-12);
    CHECK(sw.norm_discrepancy <= 1e-12);
  }
  CHECK(s.status() == StepStatus::converged);
}

TEST_CASE("restart reproduces an uninterrupted run") {
  for (auto kind : {test::Kind::hermitian, test::Kind::complex_symmetric}) {
    const auto in = make(32, 81, kind);
    const auto b = test::random_vector(32, 82);
    const auto z = grid(20, -2.0, 2.0, 0.1);
    SolverOptions opts;
    opts.threshold = 1e-10;
    opts.keep_log = true;
    ShiftedSolver fresh(in.method, b, z, Projection::single(b), opts);
    drive(fresh, in);
    const auto ref = fresh.finalize();

    ShiftedSolver first(in.method, b, z, Projection::single(b), opts);
    for (int n = 0; n < 10; ++n) step(first, in);
    const auto cp = first.checkpoint();
    CHECK(cp.iteration == 10);
    auto resumed = ShiftedSolver::resume(first.log(), cp, z, Projection::single(b), opts);
    CHECK(resumed.iteration() == 10);
    drive(resumed, in);
    const auto got = resumed.finalize();
    REQUIRE(got.iterations == ref.iterations);
    for (std::size_t k = 0; k < z.size(); ++k) CHECK(std::abs(got.solution(k)[0] - ref.solution(k)[0]) <= 1e-12 * std::abs(ref.solution(k)[0]));
    CHECK(got.log.size() == ref.log.size());
  }
}

TEST_CASE("recalc") {
  const auto in = make(32, 91, test::Kind::hermitian);
  const auto b = random_unit_vector(32, 92);
  const auto z = grid(21, -2.0, 2.0, 0.1);
  SolverOptions opts;
  opts.threshold = 1e-11;
  opts.keep_log = true;
  ShiftedSolver s(Method::bicg, b, z, Projection::single(b), opts);
  drive(s, in);
  const auto ref = s.finalize();
  REQUIRE(ref.log.size() == ref.iterations);

  const auto c0 = spmv_count();
  SUBCASE("original shifts replay exactly") {
    const auto r = recalc(ref.log, z);
    for (std::size_t k = 0; k < z.size(); ++k) CHECK(r.solution(k)[0] == ref.solution(k)[0]);
  }
  SUBCASE("a new shift matches a dense solve") {
    const cplx mid{0.05, 0.1};
    const auto r = recalc(ref.log, {mid});
    CHECK(r.converged[0]);
    const auto x = test::dense_solve(in.dense, mid, b);
    const cplx g = test::as_eigen(b).dot(x);
    CHECK(test::rel_err(r.solution(0)[0], g) <= 1e-9);
  }
  SUBCASE("far shift is finite and flagged") {
    const auto r = recalc(ref.log, {{0.0, 1e-6}});
    CHECK(std::isfinite(std::abs(r.solution(0)[0])));
    CHECK_FALSE(r.converged[0]);
    CHECK(r.residuals[0] > 1e-11);
  }
  SUBCASE("empty log is an error") { CHECK_THROWS(recalc(CoefficientLog{}, z)); }
  CHECK(spmv_count() == c0);
}

TEST_CASE("collinearity of shifted residuals") {
  const auto in = make(32, 101, test::Kind::hermitian);
  const auto b = test::random_vector(32, 102);
  const auto z = grid(6, -1.5, 1.5, 0.2);
  // The explicit residual of a computed x_n cannot resolve below about
  // eps |A| |x|, so the sine grows like 1e-15 / (|r| / |b|) once residuals are
  // tiny. Stopping at 1e-4 keeps every checked iterate above that floor.
  SolverOptions opts;
  opts.threshold = 1e-4;
  opts.relative = true;
  ShiftedSolver s(Method::bicg, b, z, Projection::full(32), opts);
  while (s.status() == StepStatus::iterating) {
    step(s, in);
    const auto r = test::as_eigen(s.vector());
    const auto conv = s.converged();
    const auto res = s.get_residual();
    for (std::size_t k = 0; k < z.size(); ++k) {
      if (conv[k]) continue;
      const Eigen::VectorXcd e =
          test::as_eigen(b) - (z[k] * test::as_eigen(s.solution(k)) - in.dense * test::as_eigen(s.solution(k)));
      // sine from the component of e orthogonal to r
      const Eigen::VectorXcd perp = e - (r.dot(e) / r.squaredNorm()) * r;
      CHECK(perp.norm() / e.norm() <= 1e-10);
      CHECK(std::abs(res[k] - e.norm()) <= 1e-10 * e.norm());
    }
  }
}

TEST_CASE("real CG agrees with complex CG") {
  const Eigen::MatrixXcd d = test::random_dense(40, 111, test::Kind::real_symmetric);
  const auto h = test::to_sparse(d, test::Kind::real_symmetric);
  const auto eig = dense_eig(d);
  const double top = eig.values.back() + 0.5;
  std::vector<double> br(40);
  DenseVector bc(40);
  for (std::size_t i = 0; i < 40; ++i) bc[i] = br[i] = std::sin(1.0 + i);
  SolverOptions opts;
  opts.threshold = 1e-10;
  const std::vector<cplx> z{top, top + 1.0, top + 3.0};
  auto real = solve_convenience([&](std::span<const double> x, std::span<double> y) { spmv(h, x, y); }, br, z,
                                Projection::full(40), opts);
  auto cplxr = solve_convenience(
      Method::cg_c, [&](std::span<const cplx> x, std::span<cplx> y) { spmv(h, x, y); }, bc, z, Projection::full(40),
      opts);
  REQUIRE(real.status == StepStatus::converged);
  CHECK(real.iterations == cplxr.iterations);
  for (std::size_t k = 0; k < z.size(); ++k)
    for (std::size_t i = 0; i < 40; ++i)
      CHECK(std::abs(real.solution(k)[i] - cplxr.solution(k)[i]) <= 1e-12 * (1 + std::abs(real.solution(k)[i])));
}
