#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "ptosc/spectral_oracle.hpp"

using namespace ptosc;

TEST_CASE("Grid1D basics") {
  const Grid1D grid(1.0, 3);
  CHECK(grid.dx() == 1.0);
  CHECK(grid.node(0) == -1.0);
  CHECK(grid.node(1) == 0.0);
  CHECK(grid.node(2) == 1.0);
  CHECK_THROWS_AS(Grid1D(1.0, 2), Error);
  CHECK_THROWS_AS(Grid1D(-1.0, 11), Error);

  const Grid1D odd(5.0, 101);
  const Eigen::VectorXd xs = odd.nodes();
  for (int i = 1; i < 101; ++i) CHECK(xs[i] > xs[i - 1]);
  CHECK(std::abs(xs[50]) < 1e-15);
}

TEST_CASE("discretize_h formula") {
  const TridiagSym m = discretize_h(Grid1D(1.0, 3));
  REQUIRE(m.diag.size() == 3);
  REQUIRE(m.offdiag.size() == 2);
  CHECK(m.diag[0] == 1.5);
  CHECK(m.diag[1] == 1.0);
  CHECK(m.diag[2] == 1.5);
  CHECK(m.offdiag[0] == -0.5);
  CHECK(m.offdiag[1] == -0.5);
  // Constant off-diagonal.
  const TridiagSym big = discretize_h(Grid1D(10.0, 201));
  for (int i = 1; i < big.offdiag.size(); ++i) CHECK(big.offdiag[i] == big.offdiag[0]);
}

TEST_CASE("eigenvalues_tridiag analytic cases") {
  {
    TridiagSym m;
    m.diag = Eigen::Vector2d(2, 2);
    m.offdiag = Eigen::VectorXd::Constant(1, -1.0);
    const auto eigs = eigenvalues_tridiag(m, 2);
    REQUIRE(eigs.size() == 2);
    CHECK(eigs[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eigs[1] == doctest::Approx(3.0).epsilon(1e-12));
  }
  {
    TridiagSym m;
    m.diag = Eigen::VectorXd::Constant(1, 4.2);
    m.offdiag = Eigen::VectorXd(0);
    const auto eigs = eigenvalues_tridiag(m, 1);
    REQUIRE(eigs.size() == 1);
    CHECK(eigs[0] == 4.2);
  }
  TridiagSym m;
  m.diag = Eigen::Vector2d(1, 1);
  m.offdiag = Eigen::VectorXd::Constant(1, 0.5);
  CHECK_THROWS_AS(eigenvalues_tridiag(m, 3), IndexTooLarge);
}

TEST_CASE("QL agrees with Sturm bisection on random matrices") {
  std::mt19937_64 gen(47);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 5 + static_cast<int>(gen() % 20);
    TridiagSym m;
    m.diag.resize(n);
    m.offdiag.resize(n - 1);
    for (int i = 0; i < n; ++i) m.diag[i] = ptosc_test::uniform(gen, -5, 5);
    for (int i = 0; i + 1 < n; ++i) m.offdiag[i] = ptosc_test::uniform(gen, -3, 3);

    const auto eigs = eigenvalues_tridiag(m, n);
    for (int i = 1; i < n; ++i) CHECK(eigs[i] >= eigs[i - 1]);

    // Gershgorin bound.
    double lo = m.diag[0], hi = m.diag[0];
    for (int i = 0; i < n; ++i) {
      double r = 0;
      if (i > 0) r += std::abs(m.offdiag[i - 1]);
      if (i + 1 < n) r += std::abs(m.offdiag[i]);
      lo = std::min(lo, m.diag[i] - r);
      hi = std::max(hi, m.diag[i] + r);
    }
    CHECK(eigs.front() >= lo - 1e-10);
    CHECK(eigs.back() <= hi + 1e-10);

    for (int j = 0; j < n; j += std::max(1, n / 4)) {
      const double ref = ptosc_test::sturm_eigenvalue(m.diag, m.offdiag, j);
      CHECK(std::abs(eigs[j] - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("discretized oscillator spectrum") {
  const auto eigs = eigenvalues_tridiag(discretize_h(Grid1D(10.0, 2001)), 6);
  for (int j = 0; j < 6; ++j) {
    const double expected = j + 0.5;
    CHECK(std::abs(eigs[j] - expected) / expected <= 1e-4);
  }
  CHECK(std::abs(eigs[0] - 0.5) < 1e-5);
}

TEST_CASE("grid refinement converges at second order") {
  const std::vector<int> grids = {201, 401, 801};
  for (int j = 0; j < 4; ++j) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int N : grids) {
      const auto eigs = eigenvalues_tridiag(discretize_h(Grid1D(10.0, N)), j + 1);
      const double lx = std::log(20.0 / (N - 1));
      const double ly = std::log(std::abs(eigs[j] - (j + 0.5)));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double np = grids.size();
    const double slope = (np * sxy - sx * sy) / (np * sxx - sx * sx);
    CHECK(slope == doctest::Approx(2.0).epsilon(0.1));
  }
}
