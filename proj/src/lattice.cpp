#include "lpkdv/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

namespace lpkdv {

void LatticeParams::validate() const {
  if (!std::isfinite(p) || !std::isfinite(q) || p == 0.0 || q == 0.0)
    throw Error(ErrorCode::InvalidParams, fmt::format("p={} q={} must be finite and nonzero", p, q));
  if (p == q || p == -q)
    throw Error(ErrorCode::InvalidParams, fmt::format("p={} q={} must satisfy p != +-q", p, q));
}

Grid::Grid(int n0, int m0, int cols, int rows, double fill)
    : n0_(n0), m0_(m0), cols_(cols), rows_(rows) {
  if (cols < 0 || rows < 0)
    throw Error(ErrorCode::OutOfWindow, fmt::format("negative grid size {}x{}", cols, rows));
  v_.assign(static_cast<std::size_t>(cols) * rows, fill);
}

double Grid::at(int n, int m) const {
  if (!contains(n, m))
    throw Error(ErrorCode::OutOfWindow, fmt::format("cell n={} m={}", n, m));
  return (*this)(n, m);
}

Grid Grid::crop(int n0, int m0, int cols, int rows) const {
  if (cols <= 0 || rows <= 0 || !contains(n0, m0) || !contains(n0 + cols - 1, m0 + rows - 1))
    throw Error(ErrorCode::OutOfWindow,
                fmt::format("crop n0={} m0={} {}x{} outside window", n0, m0, cols, rows));
  Grid out(n0, m0, cols, rows);
  for (int m = m0; m < m0 + rows; ++m)
    for (int n = n0; n < n0 + cols; ++n) out(n, m) = (*this)(n, m);
  return out;
}

double Grid::max_abs() const noexcept {
  double r = 0.0;
  for (double x : v_) r = std::max(r, std::abs(x));
  return r;
}

bool Grid::all_finite() const noexcept {
  return std::all_of(v_.begin(), v_.end(), [](double x) { return std::isfinite(x); });
}

double residual_raw(double u00, double u10, double u01, double u11, double p, double q) {
  return (p - q + u01 - u10) * (p + q - u11 + u00) - (p * p - q * q);
}

double residual(double u00, double u10, double u01, double u11, const LatticeParams& lp) {
  return residual_raw(u00, u10, u01, u11, lp.p, lp.q);
}

Gradient residual_gradient(double u00, double u10, double u01, double u11,
                           const LatticeParams& lp) {
  const double a = lp.p - lp.q + u01 - u10;
  const double b = lp.p + lp.q - u11 + u00;
  return {a, -b, b, -a};
}

double sing_tol(double u10, double u01, const LatticeParams& lp) {
  return 1e-12 * (1.0 + std::abs(lp.p - lp.q) + std::abs(u01) + std::abs(u10));
}

double solve_corner(double u00, double u10, double u01, const LatticeParams& lp) {
  const double den = lp.p - lp.q + u01 - u10;
  if (!(std::abs(den) > sing_tol(u10, u01, lp)))
    throw Error(ErrorCode::SingularQuad,
                fmt::format("denominator {:.3e} with u10={} u01={}", den, u10, u01));
  return u00 + (lp.p + lp.q) - (lp.p * lp.p - lp.q * lp.q) / den;
}

Grid evolve(const Staircase& st, const LatticeParams& lp) {
  lp.validate();
  if (st.row.empty() || st.col.empty())
    throw Error(ErrorCode::OutOfWindow, "staircase legs must be nonempty");
  if (st.row.front() != st.col.front())
    throw Error(ErrorCode::InvalidParams, "staircase legs disagree at the corner");
  const int cols = static_cast<int>(st.row.size());
  const int rows = static_cast<int>(st.col.size());
  Grid g(st.n0, st.m0, cols, rows);
  for (int i = 0; i < cols; ++i) g(st.n0 + i, st.m0) = st.row[i];
  for (int j = 0; j < rows; ++j) g(st.n0, st.m0 + j) = st.col[j];
  for (int m = st.m0; m + 1 < st.m0 + rows; ++m) {
    for (int n = st.n0; n + 1 < st.n0 + cols; ++n) {
      try {
        g(n + 1, m + 1) = solve_corner(g(n, m), g(n + 1, m), g(n, m + 1), lp);
      } catch (const Error& e) {
        throw Error(ErrorCode::SingularQuad, fmt::format("cell n={} m={}: {}", n, m, e.detail()));
      }
    }
  }
  return g;
}

Staircase staircase_of(const Grid& g) {
  Staircase st{g.n0(), g.m0(), {}, {}};
  for (int n = g.n0(); n < g.n_end(); ++n) st.row.push_back(g(n, g.m0()));
  for (int m = g.m0(); m < g.m_end(); ++m) st.col.push_back(g(g.n0(), m));
  return st;
}

double quad_residual(const Grid& g, Cell c, const LatticeParams& lp) {
  return residual(g.at(c.n, c.m), g.at(c.n + 1, c.m), g.at(c.n, c.m + 1),
                  g.at(c.n + 1, c.m + 1), lp);
}

double residual_max(const Grid& g, const LatticeParams& lp) {
  double r = 0.0;
  for (int m = g.m0(); m + 1 < g.m_end(); ++m)
    for (int n = g.n0(); n + 1 < g.n_end(); ++n)
      r = std::max(r, std::abs(residual(g(n, m), g(n + 1, m), g(n, m + 1), g(n + 1, m + 1), lp)));
  return r;
}

namespace {

/// solve_corner in extended precision. Near a pole of u123 the double result
/// loses about |u123| ulps, which would swamp a 1e-10 spread.
long double corner(long double u00, long double u10, long double u01, double a, double b) {
  const long double den = static_cast<long double>(a) - b + u01 - u10;
  const double tol = sing_tol(static_cast<double>(u10), static_cast<double>(u01), LatticeParams{a, b});
  if (!(std::abs(den) > tol))
    throw Error(ErrorCode::SingularQuad, fmt::format("denominator {:.3e} with u10={} u01={}",
                                                     static_cast<double>(den), static_cast<double>(u10),
                                                     static_cast<double>(u01)));
  return u00 + (static_cast<long double>(a) + b) - (static_cast<long double>(a) * a - static_cast<long double>(b) * b) / den;
}

}  // namespace

double check_3d_consistency_perturbed(double u, double u1, double u2, double u3, double p,
                                      double q, double r, double du23) {
  const long double u12 = corner(u, u1, u2, p, q);
  const long double u13 = corner(u, u1, u3, p, r);
  const long double u23 = corner(u, u2, u3, q, r) + du23;
  const long double a = corner(u3, u13, u23, p, q);  // face opposite the r-axis
  const long double b = corner(u2, u12, u23, p, r);  // face opposite the q-axis
  const long double c = corner(u1, u12, u13, q, r);  // face opposite the p-axis
  return static_cast<double>(std::max({std::abs(a - b), std::abs(a - c), std::abs(b - c)}));
}

double check_3d_consistency(double u, double u1, double u2, double u3, double p, double q,
                            double r) {
  return check_3d_consistency_perturbed(u, u1, u2, u3, p, q, r, 0.0);
}

double degenerate_factored(double u00, double u10, double u01, double u11, double p) {
  return (u00 - u11 + 2.0 * p) * (u10 - u01);
}

}  // namespace lpkdv
