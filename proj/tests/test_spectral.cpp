#include <doctest.h>

#include <cmath>

#include "lpkdv/soliton.hpp"
#include "lpkdv/spectral.hpp"
#include "support.hpp"

using namespace lpkdv;
using testing_support::code_of;
using testing_support::random_grid;

namespace {
const LatticeParams kP{2.0, 1.0};
const SolitonSpec kOne{{{0.5, 1.0}}};
const SolitonSpec kTwo{{{0.5, 1.0}, {0.8, 2.0}}};

Grid centred(const SolitonSpec& spec, int cols, int rows) {
  const int nc = static_cast<int>(std::lround(soliton_core_n(spec, kP, 0)));
  return soliton_grid(spec, kP, nc - cols / 2, -rows / 2, cols, rows);
}
}  // namespace

TEST_CASE("lax matrices on the vacuum") {
  const Grid c(0, 0, 3, 3, 0.0);
  const LaxPair lp = lax_matrices(0, 0, c, kP, 1.0);
  const Mat2 a{{{2, 1}, {1, 2}}};
  CHECK(lp.L == a);
  CHECK(mat_det(lp.L) == doctest::Approx(kP.p * kP.p - 1.0));
  CHECK(mat_det(lp.M) == doctest::Approx(kP.q * kP.q - 1.0));
  CHECK(mat_det(a) == 3.0);
  const Mat2 sq = mat_mul(a, a);
  CHECK(sq[0][0] == 5.0);
  CHECK(sq[0][1] == 4.0);
}

TEST_CASE("compatibility and determinants") {
  const Grid c(0, 0, 6, 6, 0.4);
  const Grid g = centred(kOne, 40, 40);
  const Grid g2 = centred(kTwo, 30, 30);
  for (double h2 : {-1.0, 0.0, 1.0, 5.0}) {
    CHECK(lax_compatibility_defect(c, kP, h2) < 1e-12);
    CHECK(lax_compatibility_defect(g, kP, h2) < 1e-10);
    CHECK(lax_compatibility_defect(g2, kP, h2) < 1e-10);
    CHECK(lax_det_defect(g, kP, h2) < 1e-10);
    CHECK(lax_det_defect(random_grid(0, 0, 8, 8, 3, -1, 1), kP, h2) < 1e-12);
  }
  CHECK(lax_compatibility_defect(random_grid(0, 0, 10, 10, 5, -1, 1), kP, 1.0) > 1e-3);
}

TEST_CASE("scalar recursions") {
  CHECK(scalar_recursion_check(Grid(0, 0, 12, 12, 0.0), kP, -0.25, 1.0, 1.0) < 1e-10);
  const Grid g = centred(kOne, 30, 30);
  CHECK(scalar_recursion_check(g, kP, 1.0, 1.0, 0.5) < 1e-9);
  CHECK(scalar_recursion_check(g, kP, -0.25, 1.0, 1.0) < 1e-9);
  Grid broken = g;
  broken(g.n0() + 15, 0) += 0.1;
  CHECK(scalar_recursion_check(broken, kP, 1.0, 1.0, 0.5) > 1e-4);
  CHECK(code_of([] { scalar_recursion_check(Grid(0, 0, 2, 5, 0.0), kP, 1.0, 1.0, 1.0); }) ==
        ErrorCode::OutOfWindow);
}

TEST_CASE("reflectionless Jost values") {
  const JostValues j = jost_reflectionless(0, 0, kOne, kP);
  REQUIRE(j.mu.size() == 1);
  CHECK(j.mu[0] == doctest::Approx(0.5));
  CHECK(jost_reflectionless(4, 2, SolitonSpec{{{0.5, 0.0}}}, kP).mu[0] == 1.0);

  const SolitonSpec deg{{{0.5, 1.0}, {0.8, 0.0}}};
  for (int n = -5; n <= 5; ++n) {
    const JostValues a = jost_reflectionless(n, 1, deg, kP);
    const JostValues b = jost_reflectionless(n, 1, kOne, kP);
    CHECK(a.mu[0] == doctest::Approx(b.mu[0]).epsilon(1e-14));
    CHECK(a.denom == doctest::Approx(b.denom).epsilon(1e-14));
  }
  CHECK(code_of([] { jost_reflectionless(0, 0, SolitonSpec{{{3.0, 1.0}}}, kP); }) == ErrorCode::InvalidSpec);
}

TEST_CASE("eta reconstruction") {
  CHECK(reconstruct_eta_reflectionless(3, 1, SolitonSpec{{{0.5, 0.0}}}, kP) == 0.0);

  SUBCASE("one mode, calibrated at a single point") {
    const Grid g = centred(kOne, 40, 5);
    const PotentialView view{g, kP};
    const int ref = g.n0() + 20;
    const double scale = calibrate_eta_scale(ref, 0, kOne, kP);
    CHECK(scale == doctest::Approx(1.0).epsilon(1e-12));
    int checked = 0;
    for (int m = g.m0(); m < g.m_end(); ++m)
      for (int n = g.n0(); n + 2 < g.n_end(); ++n) {
        if (n == ref && m == 0) continue;
        CHECK(std::abs(reconstruct_eta_reflectionless(n, m, kOne, kP, scale) - view.eta(n, m)) < 1e-8);
        ++checked;
      }
    CHECK(checked >= 180);
  }
  SUBCASE("two modes") {
    const Grid g = centred(kTwo, 30, 6);
    const PotentialView view{g, kP};
    const double scale = calibrate_eta_scale(g.n0() + 15, 0, kTwo, kP);
    for (int m = g.m0(); m < g.m_end(); ++m)
      for (int n = g.n0(); n + 2 < g.n_end(); ++n)
        CHECK(std::abs(reconstruct_eta_reflectionless(n, m, kTwo, kP, scale) - view.eta(n, m)) < 1e-6);
  }
  SUBCASE("a step in m is the evolution factor on the norming constant") {
    const double f = reflection_evolution_factor(0.5, kP);
    const SolitonSpec evolved{{{0.5, 1.0 * f}}};
    for (int n = -6; n <= 6; ++n)
      CHECK(reconstruct_eta_reflectionless(n, 1, kOne, kP) ==
            doctest::Approx(reconstruct_eta_reflectionless(n, 0, evolved, kP)).epsilon(1e-13));
  }
}

TEST_CASE("reflection evolution factor") {
  CHECK(reflection_evolution_factor(0.5, kP) == doctest::Approx(3.0));
  CHECK(reflection_evolution_factor(1e-12, kP) == doctest::Approx(1.0));
  double acc = 1.0;
  for (int i = 0; i < 7; ++i) acc *= reflection_evolution_factor(0.3, kP);
  CHECK(acc == doctest::Approx(std::pow(1.3 / 0.7, 7)).epsilon(1e-14));
  CHECK(code_of([] { reflection_evolution_factor(1.0, kP); }) == ErrorCode::PoleAtQ);
}
