#include <doctest.h>

#include <numbers>
#include <random>

#include "shiftk/contour/contour.hpp"
#include "shiftk/core/vector_ops.hpp"
#include "shiftk/models/spin_chain.hpp"
#include "support.hpp"

using namespace shiftk;

namespace {

SparseMatrix diag(std::vector<double> d) {
  DenseVector v(d.begin(), d.end());
  return SparseMatrix::diagonal(v, ValueKind::real);
}

std::vector<double> values(const ContourResult& r) {
  std::vector<double> v;
  for (const auto& p : r.pairs) v.push_back(p.value);
  return v;
}

}  // namespace

TEST_CASE("configuration") {
  ContourConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  auto bad = cfg;
  bad.rho = 0.0;
  CHECK_THROWS_AS(validate(bad), InputError);
  bad = cfg;
  bad.n_z = 0;
  CHECK_THROWS_AS(validate(bad), InputError);
  bad = cfg;
  bad.n_l = 0;
  CHECK_THROWS_AS(validate(bad), InputError);
  bad = cfg;
  bad.svd_cutoff = -1.0;
  CHECK_THROWS_AS(validate(bad), InputError);
}

TEST_CASE("quadrature nodes on the circle") {
  ContourConfig cfg;
  cfg.n_z = 8;
  const auto z = quadrature_points(cfg);
  const auto w = quadrature_weights(cfg);
  REQUIRE(z.size() == 8);
  for (int j = 0; j < 8; ++j) {
    const double theta = 2.0 * std::numbers::pi * (j + 0.5) / 8;
    CHECK(std::abs(z[j] - (cfg.gamma + cfg.rho * std::polar(1.0, theta))) < 1e-15);
    CHECK(std::abs(w[j] - cfg.rho * std::polar(1.0, theta)) < 1e-15);
  }
}

TEST_CASE("random sources") {
  const auto s = random_sources(10, 3, 7);
  REQUIRE(s.size() == 3);
  CHECK(s[1] == random_unit_vector(10, 8));
  for (const auto& v : s) CHECK(norm2(v) == doctest::Approx(1.0));
}

TEST_CASE("diagonal resolvent and moments") {
  const auto h = diag({-5.1, 0.0});
  ContourConfig cfg;
  cfg.n_k = 2;
  cfg.n_l = 1;
  const std::vector<DenseVector> src{{1.0, 1.0}};
  const auto sol = contour_solve_sources(h, src, cfg);
  const auto z = quadrature_points(cfg);
  CHECK(sol.max_residual < cfg.threshold);
  for (int j = 0; j < cfg.n_z; ++j) {
    const auto x = sol.at(0, j);
    CHECK(std::abs(x[0] - 1.0 / (z[j] + 5.1)) < 1e-10);
    CHECK(std::abs(x[1] - 1.0 / z[j]) < 1e-10);
  }
  const auto s = moments(sol, cfg);
  CHECK(std::abs(s(0, 0) - 1.0) < 1e-8);
  CHECK(std::abs(s(1, 0)) < 1e-8);
  const cplx z0 = cfg.gamma;
  CHECK(std::abs(s(0, 1) - (-5.1 - z0)) < 1e-8);
  CHECK(std::abs(s(1, 1)) < 1e-8);

  SUBCASE("no enclosed eigenvalue") {
    ContourConfig far = cfg;
    far.gamma = 100.0;
    const auto s2 = moments(contour_solve_sources(h, src, far), far);
    CHECK(s2.norm() < 1e-8);
  }
}

TEST_CASE("rank-one moment block") {
  const auto h = diag({1.0, 2.0, 3.0});
  Eigen::MatrixXcd s(3, 4);
  for (int c = 0; c < 4; ++c) s.col(c) = (c + 1.0) * Eigen::Vector3cd(1.0, 2.0, -1.0);
  const auto f = filter_and_project(s, h, 1e-3);
  CHECK(f.rank == 1);
  CHECK(f.basis.cols() == 1);
  CHECK_THROWS(filter_and_project(Eigen::MatrixXcd::Zero(3, 2), h, 1e-3));
}

TEST_CASE("three-level diagonal") {
  const auto res = contour_eigensolve(diag({-5.1, -4.5, 0.0}), ContourConfig{});
  const auto v = values(res);
  REQUIRE(v.size() == 2);
  CHECK(std::abs(v[0] + 5.1) < 1e-10);
  CHECK(std::abs(v[1] + 4.5) < 1e-10);
  CHECK(res.rank == 2);
}

TEST_CASE("boundary flag") {
  ContourConfig cfg;
  const auto res = contour_eigensolve(diag({-5.0, -5.0 + 0.97 * cfg.rho, 3.0}), cfg);
  const auto v = values(res);
  REQUIRE(v.size() == 2);
  CHECK_FALSE(res.pairs[0].near_boundary);
  CHECK(res.pairs[1].near_boundary);
}

TEST_CASE("non-Hermitian input is rejected") {
  const auto h = test::to_sparse(test::random_dense(8, 1, test::Kind::general), test::Kind::general);
  CHECK_THROWS_AS(contour_eigensolve(h, ContourConfig{}), InputError);
}

TEST_CASE("interior completeness on random Hermitian matrices") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 4; ++trial) {
    const std::size_t m = 96 + 40 * trial;
    const auto d = test::random_dense(m, 300 + trial, trial % 2 ? test::Kind::hermitian : test::Kind::real_symmetric);
    const auto h = test::to_sparse(d, trial % 2 ? test::Kind::hermitian : test::Kind::real_symmetric);
    const auto exact = dense_eig(d).values;
    ContourConfig cfg;
    cfg.gamma = -1.5 + 3.0 * u(rng);
    cfg.rho = 0.15 + 0.2 * u(rng);
    cfg.seed = 10 + trial;
    std::vector<double> inside;
    bool marginal = false;
    for (double e : exact) {
      const double r = std::abs(e - cfg.gamma.real());
      if (r < cfg.rho) inside.push_back(e);
      if (std::abs(r - cfg.rho) < 0.05 * cfg.rho) marginal = true;
    }
    CAPTURE(trial);
    CAPTURE(inside.size());
    if (marginal) MESSAGE("eigenvalue within 0.05 rho of the contour; comparing the interior only");
    // The default 1e-3 cutoff also drops the weakly leaked directions of
    // eigenvalues just outside the circle, which Rayleigh-Ritz needs for full
    // accuracy on a dense random spectrum.
    cfg.svd_cutoff = 1e-8;
    cfg.n_k = 8;
    cfg.n_l = static_cast<int>((inside.size() + 3 + cfg.n_k - 1) / cfg.n_k) + 1;
    const auto res = contour_eigensolve(h, cfg);
    std::vector<double> got;
    for (const auto& p : res.pairs)
      if (std::abs(std::abs(p.value - cfg.gamma.real()) - cfg.rho) >= 0.05 * cfg.rho) got.push_back(p.value);
    std::vector<double> want;
    for (double e : inside)
      if (std::abs(std::abs(e - cfg.gamma.real()) - cfg.rho) >= 0.05 * cfg.rho) want.push_back(e);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) < 1e-8);
    for (const auto& p : res.pairs) CHECK(p.residual < 1e-6);
  }
}

TEST_CASE("L=12 Heisenberg, SS(10,5) and SS(10,2)") {
  SpinChainParams p;
  p.nsite = 12;
  p.two_sz = 0;
  const auto h = build_hamiltonian(p);
  const std::vector<double> table{-5.387391, -5.031543, -4.777389, -4.569374, -4.569374, -4.297689, -4.297689};
  for (int nl : {5, 2}) {
    ContourConfig cfg;
    cfg.n_l = nl;
    const auto res = contour_eigensolve(h, cfg);
    const auto v = values(res);
    CAPTURE(nl);
    REQUIRE(v.size() == table.size());
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(v[i] - table[i]) <= 1e-5);
    for (const auto& pr : res.pairs) CHECK(pr.residual <= 1e-6 * (nl == 5 ? 1 : 10));
  }
}
