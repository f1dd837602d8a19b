#include "lpkdv/spectral.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace lpkdv {

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
  Mat2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

double mat_det(const Mat2& a) { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }

LaxPair lax_matrices(int n, int m, const Grid& g, const LatticeParams& lp, double h2) {
  const double u00 = g.at(n, m), u10 = g.at(n + 1, m), u01 = g.at(n, m + 1);
  const double p = lp.p, q = lp.q;
  LaxPair lx;
  lx.h2 = h2;
  lx.L = {{{p - u10, 1.0}, {h2 - p * p + (p + u00) * (p - u10), p + u00}}};
  lx.M = {{{q - u01, 1.0}, {h2 - q * q + (q + u00) * (q - u01), q + u00}}};
  return lx;
}

double lax_compatibility_defect(const Grid& g, const LatticeParams& lp, double h2) {
  double worst = 0.0;
  for (int m = g.m0(); m + 2 < g.m_end(); ++m) {
    for (int n = g.n0(); n + 2 < g.n_end(); ++n) {
      const Mat2 lhs = mat_mul(lax_matrices(n, m + 1, g, lp, h2).L, lax_matrices(n, m, g, lp, h2).M);
      const Mat2 rhs = mat_mul(lax_matrices(n + 1, m, g, lp, h2).M, lax_matrices(n, m, g, lp, h2).L);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) worst = std::max(worst, std::abs(lhs[i][j] - rhs[i][j]));
    }
  }
  return worst;
}

double lax_det_defect(const Grid& g, const LatticeParams& lp, double h2) {
  double worst = 0.0;
  for (int m = g.m0(); m + 1 < g.m_end(); ++m) {
    for (int n = g.n0(); n + 1 < g.n_end(); ++n) {
      const LaxPair lx = lax_matrices(n, m, g, lp, h2);
      worst = std::max(worst, std::abs(mat_det(lx.L) - (lp.p * lp.p - h2)));
      worst = std::max(worst, std::abs(mat_det(lx.M) - (lp.q * lp.q - h2)));
    }
  }
  return worst;
}

double scalar_recursion_check(const Grid& g, const LatticeParams& lp, double h2, double psi0,
                              double psi1) {
  if (g.cols() < 3 || g.rows() < 3)
    throw Error(ErrorCode::OutOfWindow, "scalar recursion check needs at least 3x3 cells");
  const double p = lp.p, q = lp.q;
  auto u = [&](int n, int m) { return g(n, m); };
  // first-order m step
  auto step_m = [&](double right, double here, int n, int m) {
    return right + (q - p + u(n + 1, m) - u(n, m + 1)) * here;
  };
  double worst = 0.0;
  for (int m = g.m0(); m + 2 < g.m_end(); ++m) {
    for (int n = g.n0(); n + 2 < g.n_end(); ++n) {
      // psi seeded at (n, m), (n+1, m); every other value follows from the
      // n recursion on row m and the m step, so rounding stays local.
      const double a0 = psi0, a1 = psi1;
      const double a2 = (2.0 * p - u(n + 2, m) + u(n, m)) * a1 + (h2 - p * p) * a0;
      const double b0 = step_m(a1, a0, n, m), b1 = step_m(a2, a1, n + 1, m);
      const double c0 = step_m(b1, b0, n, m + 1);
      const double t1 = (2.0 * q - u(n, m + 2) + u(n, m)) * b0;
      const double t2 = (h2 - q * q) * a0;
      const double scale = std::max({std::abs(a0), std::abs(a1), std::abs(a2), std::abs(b0), std::abs(b1),
                                     std::abs(c0), std::abs(t1), std::abs(t2), 1e-300});
      worst = std::max(worst, std::abs(c0 - t1 - t2) / scale);
    }
  }
  return worst;
}

namespace {

/// s_j = (c0_j/(2k_j)) X_j^n Y_j^m for each mode.
std::vector<double> weights(int n, int m, const SolitonSpec& spec, const LatticeParams& lp) {
  std::vector<double> s;
  for (const auto& md : spec.modes) {
    const double l = log_weight(md, n, m, lp);
    if (l > 700.0)
      throw Error(ErrorCode::Overflow, fmt::format("mode weight e^{:.1f} at n={} m={}", l, n, m));
    s.push_back(std::exp(l));
  }
  return s;
}

}  // namespace

JostValues jost_reflectionless(int n, int m, const SolitonSpec& spec, const LatticeParams& lp) {
  spec.validate(lp);
  const auto s = weights(n, m, spec, lp);
  JostValues out;
  if (spec.modes.size() == 1) {
    out.denom = 1.0 + s[0];
    out.mu = {1.0 / out.denom};
    return out;
  }
  const double k1 = spec.modes[0].kappa0, k2 = spec.modes[1].kappa0;
  const double A = (k1 - k2) * (k1 - k2) / ((k1 + k2) * (k1 + k2));
  out.denom = 1.0 + s[0] + s[1] + A * s[0] * s[1];
  out.mu = {(1.0 + s[1] * (k1 - k2) / (k1 + k2)) / out.denom,
            (1.0 + s[0] * (k2 - k1) / (k1 + k2)) / out.denom};
  return out;
}

double reconstruct_eta_reflectionless(int n, int m, const SolitonSpec& spec,
                                      const LatticeParams& lp, double scale) {
  spec.validate(lp);
  const JostValues here = jost_reflectionless(n, m, spec, lp);
  const JostValues ahead = jost_reflectionless(n + 2, m, spec, lp);
  double sum = 0.0;
  for (std::size_t j = 0; j < spec.modes.size(); ++j) {
    const auto& md = spec.modes[j];
    const double x = growth_n(md.kappa0, lp);
    // i C_j realized as -c0 Y^m; the mode factor X^n is kept with the weight.
    const double cjm = md.c0 * std::pow(reflection_evolution_factor(md.kappa0, lp), m);
    sum += -cjm * (ahead.mu[j] * x * x - here.mu[j]) * std::pow(x, n);
  }
  return scale * sum;
}

double calibrate_eta_scale(int n, int m, const SolitonSpec& spec, const LatticeParams& lp) {
  const double target = soliton_value(n, m, spec, lp) - soliton_value(n + 2, m, spec, lp);
  const double raw = reconstruct_eta_reflectionless(n, m, spec, lp, 1.0);
  if (std::abs(raw) < 1e-14)
    throw Error(ErrorCode::Degenerate, fmt::format("reference point n={} m={} carries no signal", n, m));
  return target / raw;
}

double reflection_evolution_factor(double kappa0, const LatticeParams& lp) {
  if (std::abs(lp.q - kappa0) <= 1e-14 * std::max(1.0, std::abs(lp.q)))
    throw Error(ErrorCode::PoleAtQ, fmt::format("kappa0={} sits on q={}", kappa0, lp.q));
  return (lp.q + kappa0) / (lp.q - kappa0);
}

}  // namespace lpkdv
