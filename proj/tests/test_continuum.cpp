#include <doctest.h>

#include <cmath>

#include "lpkdv/continuum.hpp"
#include "lpkdv/soliton.hpp"
#include "support.hpp"

using namespace lpkdv;
using testing_support::code_of;

namespace {

Sequence constant(int start, int size, double v) { return Sequence{start, std::vector<double>(size, v)}; }

double max_abs(const Sequence& s) {
  double r = 0.0;
  for (double x : s.v) r = std::max(r, std::abs(x));
  return r;
}

/// q_k on a lattice row at level m, with k = n + m.
struct LatticeQ {
  double p;
  LatticeParams lp;
  SolitonSpec spec;
  double operator()(int k, int m) const {
    const int n = k - m;
    return 2.0 * p - one_soliton(n + 1, m, spec, lp) + one_soliton(n - 1, m, spec, lp);
  }
};

}  // namespace

TEST_CASE("vacuum fixed points") {
  const double p = 2.0;
  CHECK(max_abs(rhs_v({constant(0, 9, 0.3), 0, p})) == 0.0);
  CHECK(max_abs(rhs_q({constant(0, 9, 2 * p), 0, p})) == 0.0);
  CHECK(max_abs(rhs_dkdv({constant(0, 9, 1.0), 0, p})) == 0.0);
  CHECK(max_abs(rhs_volterra({constant(0, 9, 1.0), 0, p})) == 0.0);
  const Sequence r = rhs_v({constant(5, 9, 0.3), 0, p});
  CHECK(r.start == 6);
  CHECK(r.v.size() == 7);
}

TEST_CASE("right-hand side errors") {
  Sequence s = constant(0, 5, 0.0);
  s.v[3] = 4.0;  // 2p - v_3 + v_1 = 0 at k = 2
  CHECK(code_of([&] { rhs_v({s, 0, 2.0}); }) == ErrorCode::DivergentDenominator);
  Sequence q = constant(0, 5, 4.0);
  q.v[0] = 0.0;
  CHECK(code_of([&] { rhs_q({q, 0, 2.0}); }) == ErrorCode::DivergentDenominator);
  CHECK(code_of([&] { rhs_q({constant(0, 2, 4.0), 0, 2.0}); }) == ErrorCode::WindowTooSmall);
}

TEST_CASE("rhs_q against the lattice") {
  // Lattice at q = p - delta, tau = m delta: central differences in m give
  // the flow up to O(delta).
  const double p = 2.0;
  double prev = 0.0;
  for (double d : {0.1, 0.05, 0.025}) {
    const LatticeQ lq{p, {p, p - d}, SolitonSpec{{{0.5, 1.0}}}};
    Sequence q{-30, {}};
    for (int k = -30; k <= 30; ++k) q.v.push_back(lq(k, 0));
    const Sequence r = rhs_q({q, 0, p});
    double e = 0.0;
    for (int k = r.start; k < r.end(); ++k)
      e = std::max(e, std::abs((lq(k, 1) - lq(k, -1)) / (2 * d) - r.at(k)));
    CHECK(e < 0.03 * d);
    if (prev > 0.0) CHECK(prev / e == doctest::Approx(2.0).epsilon(0.1));
    prev = e;
  }
}

TEST_CASE("Miura maps") {
  const double p = 2.0;
  const LatticeParams lp{p, 1.0};
  const Sequence s = miura_s(constant(0, 6, 2 * p), p);
  for (double x : s.v) CHECK(x == 1.0);
  const Sequence a = miura_a(s);
  CHECK(a.start == 1);
  for (double x : a.v) CHECK(x == 1.0);
  for (double x : miura_u_to_a(Grid(0, 0, 10, 1, 0.7), 1, 8, 0, lp).v) CHECK(x == 1.0);

  const SolitonSpec spec{{{0.6, 1.0}}};
  const Grid row = soliton_grid(spec, lp, -20, 0, 40, 1);
  const Sequence q = q_row(row, -20, 18, 0, lp);
  const Sequence a1 = miura_u_to_a(row, -19, 18, 0, lp);
  const Sequence a2 = miura_a(miura_s(q, p));
  for (int k = a1.start; k < a1.end(); ++k) CHECK(std::abs(a1.at(k) - a2.at(k)) < 1e-14);
}

TEST_CASE("DDE integration") {
  const double p = 2.0;
  SUBCASE("constant data stays constant") {
    const ContinuumState out = integrate_dde(rhs_v, {constant(0, 50, 0.2), 0.0, p}, 1.0, 5);
    CHECK(out.tau == 1.0);
    CHECK(out.seq.v.size() == 50 - 2 * 4 * 5);
    for (double x : out.seq.v) CHECK(x == doctest::Approx(0.2).epsilon(1e-15));
  }
  SUBCASE("window too small") {
    CHECK(code_of([&] { integrate_dde(rhs_v, {constant(0, 20, 0.0), 0.0, p}, 1.0, 3); }) ==
          ErrorCode::WindowTooSmall);
  }
  SUBCASE("fourth order in the step") {
    Sequence v{-120, {}};
    for (int k = -120; k <= 120; ++k) v.v.push_back(0.5 * std::exp(-std::pow(k / 3.0, 2)));
    const ContinuumState st{v, 0.0, p};
    const ContinuumState a = integrate_dde(rhs_v, st, 2.0, 5);
    const ContinuumState b = integrate_dde(rhs_v, st, 2.0, 10);
    const ContinuumState c = integrate_dde(rhs_v, st, 2.0, 20);
    double e1 = 0.0, e2 = 0.0;
    for (int k = c.seq.start; k < c.seq.end(); ++k) {
      e1 = std::max(e1, std::abs(a.seq.at(k) - c.seq.at(k)));
      e2 = std::max(e2, std::abs(b.seq.at(k) - c.seq.at(k)));
    }
    CHECK(e1 / e2 > 12.0);
    CHECK(e1 / e2 < 20.0);
  }
}

TEST_CASE("time constant and Miura consistency") {
  const double p = 2.0;
  const LatticeParams lp{p, 1.0};
  const SolitonSpec spec{{{0.3, 1.0}}};
  const int nc = static_cast<int>(soliton_core_n(spec, lp, 0));
  const Grid row = soliton_grid(spec, lp, nc - 150, 0, 303, 1);
  const Sequence q0 = q_row(row, row.n0(), row.n_end() - 2, 0, lp);
  const ContinuumState qs{q0, 0.0, p};
  const double tc = calibrate_time_constant(qs);
  CHECK(tc == doctest::Approx(2.0 * p).epsilon(1e-6));

  const ContinuumState qt = integrate_dde(rhs_q, qs, 0.2, 10);
  const ContinuumState st = integrate_dde(rhs_dkdv, {miura_s(q0, p), 0.0, p}, 0.2, 10, 1.0 / tc);
  const ContinuumState at = integrate_dde(rhs_volterra, {miura_a(miura_s(q0, p)), 0.0, p}, 0.2, 10, 1.0 / tc);
  const Sequence s_q = miura_s(qt.seq, p);
  const Sequence a_q = miura_a(s_q);
  for (int k = at.seq.start; k < at.seq.end(); ++k) {
    CHECK(std::abs(s_q.at(k) - st.seq.at(k)) < 1e-6);
    CHECK(std::abs(a_q.at(k) - at.seq.at(k)) < 1e-6);
  }
}

TEST_CASE("continuum limit") {
  SUBCASE("first order in delta") {
    const LimitOrder r = continuum_limit_order(LimitConfig{});
    CHECK(r.slope >= 0.8);
    CHECK(r.slope <= 1.2);
    CHECK_FALSE(r.exact_match);
    REQUIRE(r.errors.size() == 3);
    CHECK(r.errors[0] > r.errors[1]);
  }
  SUBCASE("zero profile matches exactly") {
    LimitConfig cfg;
    cfg.amplitude = 0.0;
    const LimitOrder r = continuum_limit_order(cfg);
    CHECK(r.exact_match);
    for (double e : r.errors) CHECK(e == 0.0);
  }
  SUBCASE("refining the integrator alone plateaus") {
    LimitConfig cfg;
    cfg.deltas = {0.05};
    cfg.dde_steps_per_unit = 100;
    const double coarse = continuum_limit_order(cfg).errors[0];
    cfg.dde_steps_per_unit = 400;
    const double fine = continuum_limit_order(cfg).errors[0];
    CHECK(fine == doctest::Approx(coarse).epsilon(0.01));
    CHECK(fine > 1e-5);
  }
}

TEST_CASE("sequence csv") {
  const std::string csv = sequence_to_csv({Sequence{-2, {0.5, 0.25}}, 1.5, 2.0});
  CHECK(csv.rfind("# k0=-2 tau=1.5 p=2\n", 0) == 0);
  CHECK(csv.find("0.25") != std::string::npos);
}
