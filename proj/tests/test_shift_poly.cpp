#include <doctest.h>

#include <cmath>
#include <random>

#include "lpkdv/characteristic.hpp"
#include "lpkdv/shift_poly.hpp"
#include "lpkdv/soliton.hpp"
#include "support.hpp"

using namespace lpkdv;
using testing_support::code_of;

TEST_CASE("arithmetic and shifts") {
  const ShiftPoly a = ShiftPoly::r(0) + ShiftPoly::r(1) * 2.0;
  const ShiftPoly b = a * a;
  auto at = [](int s) { return 1.0 + 0.5 * s; };
  CHECK(b.evaluate(at) == doctest::Approx(std::pow(1.0 + 2.0 * 1.5, 2)));
  CHECK(a.shifted(-2).shift_range() == std::pair{-2, -1});
  CHECK((a - a).is_zero());
  CHECK(ShiftPoly::constant(3.0).vacuum(0.1) == 3.0);
  CHECK(b.vacuum(0.5) == doctest::Approx(2.25));
}

TEST_CASE("antidifference") {
  const ShiftPoly f = ShiftPoly::r(2) * ShiftPoly::r(3) - ShiftPoly::r(0) * ShiftPoly::r(1);
  const ShiftPoly h = f.antidifference();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(0.1, 1.0);
  std::vector<double> vals(20);
  for (double& v : vals) v = d(rng);
  auto at = [&](int base) { return [&, base](int s) { return vals.at(static_cast<std::size_t>(base + s)); }; };
  for (int n = 2; n < 12; ++n)
    CHECK(h.evaluate(at(n + 1)) - h.evaluate(at(n)) == doctest::Approx(f.evaluate(at(n))).epsilon(1e-13));
  CHECK(code_of([] { ShiftPoly::r(0).antidifference(); }) == ErrorCode::Degenerate);
  CHECK(code_of([] { ShiftPoly::constant(1.0).antidifference(); }) == ErrorCode::Degenerate);
}

TEST_CASE("generated hierarchy matches the explicit flows") {
  const LatticeParams lp{2.0, 1.0};
  const Grid g = soliton_grid(SolitonSpec{{{0.5, 1.0}}}, lp, -15, -2, 30, 5);
  const PotentialView view{g, lp};
  for (int k = 0; k <= 2; ++k) {
    const ShiftPoly hat = hierarchy_homogeneous(k);
    CHECK(hat.vacuum(1.0 / (2.0 * lp.p)) == doctest::Approx(hierarchy_constant(k, lp.p)).epsilon(1e-14));
    for (int n = -8; n <= 8; ++n) {
      const double explicit_value = char_eval(Characteristic::xn(k), n, 0, g, lp) - hierarchy_constant(k, lp.p);
      const double generated = -hat.evaluate([&](int s) { return 1.0 / view.q_pot(n + s, 0); });
      CHECK(explicit_value == doctest::Approx(generated).epsilon(1e-12));
    }
  }
}

TEST_CASE("hierarchy constants") {
  const double p = 1.5;
  CHECK(hierarchy_constant(0, p) == doctest::Approx(1.0 / (2 * p)));
  CHECK(hierarchy_constant(1, p) == doctest::Approx(-1.0 / (4 * p * p * p)));
  CHECK(hierarchy_constant(2, p) == doctest::Approx(3.0 / (16 * std::pow(p, 5))));
  CHECK(hierarchy_constant(3, p) == doctest::Approx(-5.0 / (32 * std::pow(p, 7))));
  const ShiftPoly h3 = hierarchy_homogeneous(3);
  CHECK(-h3.vacuum(1.0 / (2 * p)) + hierarchy_constant(3, p) == doctest::Approx(0.0));
}
