#include "lpkdv/point_symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lpkdv {

namespace {

double parity(int n, int m) { return ((n + m) % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

double point_char(PointGenerator gen, int n, int m, double u, const LatticeParams& lp) {
  switch (gen) {
    case PointGenerator::X1: return 1.0;
    case PointGenerator::X2: return parity(n, m);
    case PointGenerator::X3: return parity(n, m) * (u - lp.p * n - lp.q * m);
  }
  return 0.0;
}

double point_char_du(PointGenerator gen, int n, int m, const LatticeParams&) {
  return gen == PointGenerator::X3 ? parity(n, m) : 0.0;
}

double prolonged_defect(PointGenerator gen, Cell c, const Grid& g, const LatticeParams& lp) {
  const double u00 = g.at(c.n, c.m), u10 = g.at(c.n + 1, c.m);
  const double u01 = g.at(c.n, c.m + 1), u11 = g.at(c.n + 1, c.m + 1);
  const Gradient d = residual_gradient(u00, u10, u01, u11, lp);
  // Diagonal corners paired first: for X1 and X2 each pair cancels exactly.
  return (d.d00 * point_char(gen, c.n, c.m, u00, lp) +
          d.d11 * point_char(gen, c.n + 1, c.m + 1, u11, lp)) +
         (d.d10 * point_char(gen, c.n + 1, c.m, u10, lp) +
          d.d01 * point_char(gen, c.n, c.m + 1, u01, lp));
}

Grid apply_finite_transform(const Grid& g, const GroupParams& gp, const LatticeParams& lp) {
  Grid out = g;
  for (int m = g.m0(); m < g.m_end(); ++m) {
    for (int n = g.n0(); n < g.n_end(); ++n) {
      const double sigma = parity(n, m);
      const double s = gp.eps3 * sigma;
      double growth = 1.0, weight = 1.0;
      if (std::abs(gp.eps3) >= 1e-12) {
        growth = std::exp(s);
        weight = std::expm1(s) / s;
      }
      const double drive = gp.eps1 + gp.eps2 * sigma - gp.eps3 * sigma * (lp.p * n + lp.q * m);
      out(n, m) = growth * g(n, m) + weight * drive;
    }
  }
  return out;
}

BracketCheck lie_bracket_check(std::uint64_t seed, int samples, const LatticeParams& lp) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> idx(-20, 20);
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  auto bracket = [&](PointGenerator a, PointGenerator b, int n, int m, double u) {
    return point_char(a, n, m, u, lp) * point_char_du(b, n, m, lp) -
           point_char(b, n, m, u, lp) * point_char_du(a, n, m, lp);
  };
  BracketCheck r;
  for (int i = 0; i < samples; ++i) {
    const int n = idx(rng), m = idx(rng);
    const double u = val(rng);
    using G = PointGenerator;
    r.x1x2 = std::max(r.x1x2, std::abs(bracket(G::X1, G::X2, n, m, u)));
    r.x1x3 = std::max(r.x1x3,
                      std::abs(bracket(G::X1, G::X3, n, m, u) - point_char(G::X2, n, m, u, lp)));
    r.x2x3 = std::max(r.x2x3,
                      std::abs(bracket(G::X2, G::X3, n, m, u) - point_char(G::X1, n, m, u, lp)));
  }
  return r;
}

std::pair<Grid, LatticeParams> apply_discrete_symmetry(const Grid& g, DiscreteSymmetry which,
                                                       const LatticeParams& lp) {
  switch (which) {
    case DiscreteSymmetry::SwapNM: {
      Grid out(g.m0(), g.n0(), g.rows(), g.cols());
      for (int m = g.m0(); m < g.m_end(); ++m)
        for (int n = g.n0(); n < g.n_end(); ++n) out(m, n) = g(n, m);
      return {out, LatticeParams{lp.q, lp.p}};
    }
    case DiscreteSymmetry::ReflectN: {
      const int n1 = g.n_end() - 1;
      Grid out(g.n0() + 1, g.m0(), g.cols(), g.rows());
      for (int m = g.m0(); m < g.m_end(); ++m)
        for (int n = out.n0(); n < out.n_end(); ++n) out(n, m) = g(g.n0() + n1 + 1 - n, m);
      return {out, LatticeParams{-lp.p, lp.q}};
    }
    case DiscreteSymmetry::ReflectM: {
      const int m1 = g.m_end() - 1;
      Grid out(g.n0(), g.m0() + 1, g.cols(), g.rows());
      for (int m = out.m0(); m < out.m_end(); ++m)
        for (int n = g.n0(); n < g.n_end(); ++n) out(n, m) = g(n, g.m0() + m1 + 1 - m);
      return {out, LatticeParams{lp.p, -lp.q}};
    }
  }
  return {g, lp};
}

}  // namespace lpkdv
