#include "lpkdv/gen_symmetry.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "lpkdv/shift_poly.hpp"

namespace lpkdv {

double quad_defect(const Characteristic& c, Cell q, const Grid& g, const LatticeParams& lp) {
  const Gradient d = residual_gradient(g.at(q.n, q.m), g.at(q.n + 1, q.m), g.at(q.n, q.m + 1),
                                       g.at(q.n + 1, q.m + 1), lp);
  return d.d00 * char_eval(c, q.n, q.m, g, lp) + d.d10 * char_eval(c, q.n + 1, q.m, g, lp) +
         d.d01 * char_eval(c, q.n, q.m + 1, g, lp) + d.d11 * char_eval(c, q.n + 1, q.m + 1, g, lp);
}

namespace {

/// Quads (n, m) whose four corners carry a full stencil of radius (rn, rm).
template <class F>
void for_admissible_quads(const Grid& g, int rn, int rm, F&& f) {
  for (int m = g.m0() + rm; m + 1 + rm < g.m_end(); ++m)
    for (int n = g.n0() + rn; n + 1 + rn < g.n_end(); ++n) f(Cell{n, m});
}

/// Prolonged defect per admissible quad using a precomputed field.
double field_defect(const Grid& field, const Grid& g, Cell q, const LatticeParams& lp) {
  const Gradient d = residual_gradient(g(q.n, q.m), g(q.n + 1, q.m), g(q.n, q.m + 1),
                                       g(q.n + 1, q.m + 1), lp);
  return d.d00 * field(q.n, q.m) + d.d10 * field(q.n + 1, q.m) + d.d01 * field(q.n, q.m + 1) +
         d.d11 * field(q.n + 1, q.m + 1);
}

}  // namespace

double symmetry_defect(const Characteristic& c, const Grid& g, const LatticeParams& lp) {
  const Grid field = char_field(c, g, lp);
  double worst = 0.0;
  for_admissible_quads(g, c.radius_n(), c.radius_m(), [&](Cell q) {
    worst = std::max(worst, std::abs(field_defect(field, g, q, lp)));
  });
  return worst;
}

Theorem1Result theorem1_combine(const Characteristic& zn, const Characteristic& zm,
                                const Grid& g, const LatticeParams& lp, double ratio_tol) {
  const int rn = std::max(zn.radius_n(), zm.radius_n());
  const int rm = std::max(zn.radius_m(), zm.radius_m());
  const Grid fa = char_field(zn, g, lp);
  const Grid fb = char_field(zm, g, lp);
  std::vector<double> pa, pb;
  for_admissible_quads(g, rn, rm, [&](Cell q) {
    pa.push_back(field_defect(fa, g, q, lp));
    pb.push_back(field_defect(fb, g, q, lp));
  });
  if (pa.empty()) throw Error(ErrorCode::WindowTooSmall, "no admissible quads for the pair");

  Theorem1Result res;
  double amax = 0.0, bmax = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    amax = std::max(amax, std::abs(pa[i]));
    bmax = std::max(bmax, std::abs(pb[i]));
  }
  constexpr double kVanish = 1e-9;
  if (amax < kVanish && bmax < kVanish) {
    // Both members are symmetries on their own; any combination works.
    res.degenerate = true;
    res.ratio = -1.0;
    res.combined = Characteristic::combined({{1.0, zn}, {1.0, zm}});
    res.defect = symmetry_defect(res.combined, g, lp);
    return res;
  }

  std::vector<double> ratios;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (std::abs(pa[i]) < 1e-6 * amax || std::abs(pb[i]) < 1e-6 * bmax) continue;
    res.alpha_g.push_back(pa[i]);
    res.beta_g.push_back(pb[i]);
    ratios.push_back(pa[i] / pb[i]);
  }
  if (ratios.empty())
    throw Error(ErrorCode::RatioNotConstant, "prolongations never overlap on this window");
  double mean = 0.0;
  for (double r : ratios) mean += r;
  mean /= static_cast<double>(ratios.size());
  for (double r : ratios) res.ratio_spread = std::max(res.ratio_spread, std::abs(r - mean) / std::abs(mean));
  res.ratio = mean;
  if (res.ratio_spread > ratio_tol)
    throw Error(ErrorCode::RatioNotConstant,
                fmt::format("{} vs {}: ratio {:.6g} spreads by {:.3e}", zn.label(), zm.label(), mean,
                            res.ratio_spread));
  // With g = pr zn.D we get alpha' = 1 and beta' = 1/ratio.
  res.combined = Characteristic::combined({{1.0, zn}, {-mean, zm}});
  res.defect = symmetry_defect(res.combined, g, lp);
  return res;
}

int flow_margin_n(const Characteristic& c, int steps) { return 4 * c.radius_n() * steps; }
int flow_margin_m(const Characteristic& c, int steps) { return 4 * c.radius_m() * steps; }

namespace {

/// base restricted to the window of `inc`, plus coef * inc.
Grid axpy(const Grid& base, const Grid& inc, double coef) {
  Grid out = inc;
  for (int m = inc.m0(); m < inc.m_end(); ++m)
    for (int n = inc.n0(); n < inc.n_end(); ++n) out(n, m) = base(n, m) + coef * inc(n, m);
  return out;
}

}  // namespace

FlowResult flow_integrate(const Characteristic& c, const Grid& g, const LatticeParams& lp,
                          double eps_total, int steps) {
  if (steps <= 0) throw Error(ErrorCode::InvalidParams, "steps must be positive");
  const int mn = flow_margin_n(c, steps), mm = flow_margin_m(c, steps);
  if (g.cols() - 2 * mn < 2 || g.rows() - 2 * mm < 2)
    throw Error(ErrorCode::WindowTooSmall,
                fmt::format("{}x{} window, flow of {} over {} steps consumes {} x {} per side",
                            g.cols(), g.rows(), c.label(), steps, mn, mm));
  const double h = eps_total / steps;
  Grid u = g;
  for (int s = 0; s < steps; ++s) {
    const Grid k1 = char_field(c, u, lp);
    const Grid k2 = char_field(c, axpy(u, k1, 0.5 * h), lp);
    const Grid k3 = char_field(c, axpy(u, k2, 0.5 * h), lp);
    const Grid k4 = char_field(c, axpy(u, k3, h), lp);
    Grid next = k4;
    for (int m = k4.m0(); m < k4.m_end(); ++m)
      for (int n = k4.n0(); n < k4.n_end(); ++n)
        next(n, m) = u(n, m) + h / 6.0 * (k1(n, m) + 2.0 * k2(n, m) + 2.0 * k3(n, m) + k4(n, m));
    if (!next.all_finite())
      throw Error(ErrorCode::DivergentDenominator, fmt::format("non-finite values after step {}", s + 1));
    u = std::move(next);
  }
  return {u, eps_total, steps};
}

double commutator_eval(const Characteristic& a, const Characteristic& b, int n, int m,
                       const Grid& g, const LatticeParams& lp, BracketOrder order) {
  // pr_x(y): derivative of y at (n, m) along the flow of x.
  auto directional = [&](const Characteristic& x, const Characteristic& y) {
    const int rn = y.radius_n() + x.radius_n(), rm = y.radius_m() + x.radius_m();
    const Grid local = g.crop(n - rn, m - rm, 2 * rn + 1, 2 * rm + 1);
    const Grid fx = char_field(x, local, lp);
    const double h = 1e-6 * (1.0 + local.max_abs());
    auto probe = [&](double s) { return char_eval(y, n, m, axpy(local, fx, s), lp); };
    auto central = [&](double step) { return (probe(step) - probe(-step)) / (2.0 * step); };
    return (4.0 * central(0.5 * h) - central(h)) / 3.0;
  };
  const double v = directional(a, b) - directional(b, a);
  return order == BracketOrder::VectorField ? v : -v;
}

Sequence char_row(const Characteristic& c, int m, int n_begin, int n_end, const Grid& g,
                  const LatticeParams& lp) {
  Sequence s{n_begin, {}};
  for (int n = n_begin; n < n_end; ++n) s.v.push_back(char_eval(c, n, m, g, lp));
  return s;
}

Sequence apply_inverse_recursion(const Sequence& f, int m, const Grid& g,
                                 const LatticeParams& lp, double tail) {
  const int a = f.start, b = f.end();
  if (b - a < 4) throw Error(ErrorCode::WindowTooSmall, "inverse recursion needs 4 or more samples");
  auto q = [&](int n) {
    const double v = 2.0 * lp.p + g.at(n, m) - g.at(n + 2, m);
    if (!(std::abs(v) >= 1e-12))
      throw Error(ErrorCode::DivergentDenominator, fmt::format("q = {:.3e} at n={} m={}", v, n, m));
    return v;
  };
  // summand (1/q)(E^2 - 1) f on [a, b-2)
  std::vector<double> gsum(static_cast<std::size_t>(b - 2 - a));
  for (int n = a; n < b - 2; ++n) gsum[n - a] = (f.at(n + 2) - f.at(n)) / q(n);

  const int edge = b - 3;
  const double q_edge = q(edge);
  if (std::abs(q_edge - 2.0 * lp.p) > kDecayTol || std::abs(gsum.back()) > kDecayTol)
    throw Error(ErrorCode::NoDecay,
                fmt::format("row m={} at n={}: |q-2p|={:.3e}, |summand|={:.3e}", m, edge,
                            std::abs(q_edge - 2.0 * lp.p), std::abs(gsum.back())));

  // h_n = tail - sum_{k>=0} g_{n+k}, the sum truncated at the window edge.
  std::vector<double> h(gsum.size());
  double acc = 0.0;
  for (int i = static_cast<int>(gsum.size()) - 1; i >= 0; --i) {
    acc += gsum[i];
    h[i] = tail - acc;
  }
  Sequence out{a + 1, {}};
  for (int n = a + 1; n < b - 2; ++n) out.v.push_back(-(h[n - a] + h[n - 1 - a]) / q(n - 1));
  return out;
}

Sequence generate_next_xn(int k, int m, int n_begin, int n_end, const Grid& g,
                          const LatticeParams& lp) {
  if (k < 0 || k > 2) throw Error(ErrorCode::InvalidSpec, fmt::format("cannot raise level {}", k));
  Sequence f = char_row(Characteristic::xn(k), m, n_begin, n_end, g, lp);
  const double beta = hierarchy_constant(k, lp.p);
  for (double& x : f.v) x -= beta;  // f is now the homogeneous part, -hat_X(k)
  const double tail = inverse_recursion_tail(hierarchy_homogeneous(k) * -1.0, 1.0 / (2.0 * lp.p));
  Sequence out = apply_inverse_recursion(f, m, g, lp, tail);
  const double beta_next = hierarchy_constant(k + 1, lp.p);
  for (double& x : out.v) x += beta_next;
  return out;
}

}  // namespace lpkdv
