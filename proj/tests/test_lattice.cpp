#include <doctest.h>

#include <cmath>
#include <random>

#include "lpkdv/grid_io.hpp"
#include "lpkdv/lattice.hpp"
#include "lpkdv/soliton.hpp"
#include "support.hpp"

using namespace lpkdv;

using testing_support::code_of;

namespace {
const LatticeParams kP{2.0, 1.0};
}  // namespace

TEST_CASE("residual examples") {
  for (double c : {-3.0, 0.0, 0.7}) CHECK(residual(c, c, c, c, kP) == 0.0);
  CHECK(residual(0, 0, 1, 1.5, kP) == doctest::Approx(0.0));
  CHECK(residual(0, 1, 0, 0, kP) == doctest::Approx(-3.0));
}

TEST_CASE("parameter validation") {
  CHECK(code_of([] { LatticeParams{2, 2}.validate(); }) == ErrorCode::InvalidParams);
  CHECK(code_of([] { LatticeParams{2, -2}.validate(); }) == ErrorCode::InvalidParams);
  CHECK(code_of([] { LatticeParams{0, 1}.validate(); }) == ErrorCode::InvalidParams);
}

TEST_CASE("gradient") {
  const Gradient g = residual_gradient(5, 5, 5, 5, kP);
  CHECK(g.d00 == 1.0);
  CHECK(g.d10 == -3.0);
  CHECK(g.d01 == 3.0);
  CHECK(g.d11 == -1.0);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  const double h = 1e-6;
  for (int i = 0; i < 100; ++i) {
    double u[4] = {d(rng), d(rng), d(rng), d(rng)};
    const Gradient gr = residual_gradient(u[0], u[1], u[2], u[3], kP);
    CHECK(gr.d00 == -gr.d11);
    CHECK(gr.d01 == -gr.d10);
    const double an[4] = {gr.d00, gr.d10, gr.d01, gr.d11};
    for (int k = 0; k < 4; ++k) {
      double up[4], um[4];
      std::copy(u, u + 4, up);
      std::copy(u, u + 4, um);
      up[k] += h;
      um[k] -= h;
      const double fd = (residual(up[0], up[1], up[2], up[3], kP) - residual(um[0], um[1], um[2], um[3], kP)) / (2 * h);
      CHECK(std::abs(fd - an[k]) < 1e-8);
    }
  }
}

TEST_CASE("solve_corner") {
  CHECK(solve_corner(0, 0, 0, kP) == 0.0);
  CHECK(solve_corner(0, 0, 1, kP) == doctest::Approx(1.5));
  CHECK(code_of([] { solve_corner(0, 1, 0, kP); }) == ErrorCode::SingularQuad);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-0.3, 0.3);
  for (int i = 0; i < 100; ++i) {
    const double a = d(rng), b = d(rng), c = d(rng);
    const double u11 = solve_corner(a, b, c, kP);
    CHECK(std::abs(residual(a, b, c, u11, kP)) <= 1e-12 * (1 + std::abs(a) + std::abs(b) + std::abs(c)));
  }
}

TEST_CASE("evolve") {
  Staircase zero{0, 0, std::vector<double>(6, 0.0), std::vector<double>(5, 0.0)};
  const Grid z = evolve(zero, kP);
  CHECK(z.max_abs() == 0.0);
  CHECK(z.cols() == 6);
  CHECK(z.rows() == 5);

  SUBCASE("reproduces the one-soliton") {
    // Perturbations grow like ((p+q)/(p-q))^(cells) here, so a small window.
    const SolitonSpec spec{{{0.5, 1.0}}};
    const Grid g = soliton_grid(spec, kP, -3, -3, 6, 6);
    const Grid e = evolve(staircase_of(g), kP);
    for (int m = g.m0(); m < g.m_end(); ++m)
      for (int n = g.n0(); n < g.n_end(); ++n) CHECK(std::abs(e(n, m) - g(n, m)) < 1e-9);
  }
  SUBCASE("p and q of opposite sign stay well conditioned") {
    const LatticeParams lp{2.0, -1.0};
    const SolitonSpec spec{{{0.5, 1.0}}};
    const Grid g = soliton_grid(spec, lp, -20, -20, 40, 40);
    const Grid e = evolve(staircase_of(g), lp);
    double d = 0;
    for (int m = g.m0(); m < g.m_end(); ++m)
      for (int n = g.n0(); n < g.n_end(); ++n) d = std::max(d, std::abs(e(n, m) - g(n, m)));
    CHECK(d < 1e-9);
  }
  SUBCASE("residual of evolved data") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-0.2, 0.2);
    Staircase st{5, -2, {}, {}};
    for (int i = 0; i < 20; ++i) st.row.push_back(d(rng));
    st.col.push_back(st.row[0]);
    for (int j = 1; j < 20; ++j) st.col.push_back(d(rng));
    const Grid g = evolve(st, kP);
    CHECK(residual_max(g, kP) < 1e-10);
    CHECK(g(5, -2) == st.row[0]);
    CHECK(g(24, -2) == st.row[19]);
    CHECK(g(5, 17) == st.col[19]);
  }
  SUBCASE("forced singular leg quad names the cell") {
    Staircase st{0, 0, {0.0, 1.0, 0.0}, {0.0, 0.0, 0.0}};
    try {
      evolve(st, kP);
      FAIL("expected SingularQuad");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SingularQuad);
      CHECK(std::string(e.what()).find("n=0 m=0") != std::string::npos);
    }
  }
  CHECK(code_of([] { evolve({0, 0, {1.0}, {2.0}}, kP); }) == ErrorCode::InvalidParams);
}

TEST_CASE("residual_max") {
  CHECK(residual_max(Grid(0, 0, 4, 4, 2.5), kP) == 0.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  Grid g(0, 0, 10, 10);
  for (double& v : g.values()) v = d(rng);
  CHECK(residual_max(g, kP) > 0.0);
}

TEST_CASE("cube consistency") {
  CHECK(check_3d_consistency(0, 0, 0, 0, 3, 2, 1) == 0.0);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> d(-0.2, 0.2);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i)
    worst = std::max(worst, check_3d_consistency(d(rng), d(rng), d(rng), d(rng), 3, 2, 1));
  CHECK(worst < 1e-10);
  CHECK(check_3d_consistency_perturbed(0.1, -0.05, 0.02, 0.15, 3, 2, 1, 0.1) > 1e-3);

  std::uniform_real_distribution<double> par(1.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double p = par(rng), q = par(rng), r = par(rng);
    if (std::min({std::abs(p - q), std::abs(p - r), std::abs(q - r)}) < 0.2) continue;
    CHECK(check_3d_consistency(d(rng), d(rng), d(rng), d(rng), p, q, r) < 1e-10);
  }
}

TEST_CASE("p = q factorisation is minus the residual") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double a = d(rng), b = d(rng), c = d(rng), e = d(rng), p = d(rng);
    CHECK(degenerate_factored(a, b, c, e, p) + residual_raw(a, b, c, e, p, p) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("grid accessors and crop") {
  const Grid g = Grid::generate(-2, 3, 4, 3, [](int n, int m) { return 10.0 * n + m; });
  CHECK(g.at(-2, 3) == -17.0);
  CHECK(g.at(1, 5) == 15.0);
  CHECK(code_of([&] { g.at(2, 3); }) == ErrorCode::OutOfWindow);
  const Grid c = g.crop(-1, 4, 2, 2);
  CHECK(c.n0() == -1);
  CHECK(c(0, 5) == 5.0);
  CHECK(code_of([&] { g.crop(0, 0, 2, 2); }) == ErrorCode::OutOfWindow);
}

TEST_CASE("grid csv round trip is lossless") {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> d(0.0, 1e3);
  Grid g(-4, 7, 5, 3);
  for (double& v : g.values()) v = d(rng) * std::pow(10.0, static_cast<int>(d(rng)) % 30);
  const GridFile back = grid_from_csv(grid_to_csv(g, kP));
  CHECK(back.grid.n0() == -4);
  CHECK(back.grid.m0() == 7);
  CHECK(back.params.p == 2.0);
  CHECK(back.grid.values() == g.values());
  CHECK_THROWS_AS(grid_from_csv("1,2\n"), std::runtime_error);
  CHECK_THROWS_AS(grid_from_csv("# n0=0 m0=0 p=2 q=1\n1,2\n3\n"), std::runtime_error);
  CHECK_THROWS_AS(grid_from_csv("# n0=0 m0=0 p=2\n1,2\n"), std::runtime_error);

  const Staircase st{1, 2, {0.5, 0.25, 1.0 / 3.0}, {0.5, -1e-300}};
  const StaircaseFile sf = staircase_from_csv(staircase_to_csv(st, kP));
  CHECK(sf.staircase.row == st.row);
  CHECK(sf.staircase.col == st.col);
  CHECK(sf.staircase.n0 == 1);
}
