#include "lpkdv/painleve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>
#include <fmt/format.h>
#include <json.hpp>

namespace lpkdv {

double ReductionParams::pw() const { return std::pow(p, w); }
double ReductionParams::qw() const { return std::pow(q, w); }
double ReductionParams::kprime() const { return (pw() - qw()) / (2.0 * delta()); }

void ReductionParams::validate() const {
  if (!std::isfinite(p) || !std::isfinite(q) || !std::isfinite(w) || !std::isfinite(c))
    throw Error(ErrorCode::InvalidParams, "reduction parameters must be finite");
  if (p == q || p == -q)
    throw Error(ErrorCode::InvalidParams, fmt::format("p={} q={} must satisfy p != +-q", p, q));
  if (!std::isfinite(pw()) || !std::isfinite(qw()))
    throw Error(ErrorCode::InvalidParams, fmt::format("p^w, q^w undefined for p={} q={} w={}", p, q, w));
}

namespace {

double root_pq(const LatticeParams& lp) {
  if (!(lp.p + lp.q > 0.0))
    throw Error(ErrorCode::NegativePQSum, fmt::format("p+q={} has no real square root", lp.p + lp.q));
  return std::sqrt(lp.p + lp.q);
}

double nonzero(double v, const char* what, int n, int m) {
  if (v == 0.0 || !std::isfinite(v))
    throw Error(ErrorCode::ZeroDifference, fmt::format("{} = {} at n={} m={}", what, v, n, m));
  return v;
}

double divisor(double v, const char* what, int n) {
  if (!(std::abs(v) > 1e-300) || !std::isfinite(v))
    throw Error(ErrorCode::SingularStep, fmt::format("{} = {:.3e} at n={}", what, v, n));
  return v;
}

}  // namespace

Grid map_forward(const Grid& g, const LatticeParams& lp) {
  const double s = root_pq(lp);
  Grid out = g;
  for (int m = g.m0(); m < g.m_end(); ++m)
    for (int n = g.n0(); n < g.n_end(); ++n) out(n, m) = g(n, m) * s + lp.p * n + lp.q * m;
  return out;
}

Grid map_backward(const Grid& g, const LatticeParams& lp) {
  const double s = root_pq(lp);
  Grid out = g;
  for (int m = g.m0(); m < g.m_end(); ++m)
    for (int n = g.n0(); n < g.n_end(); ++n) out(n, m) = (g(n, m) - lp.p * n - lp.q * m) / s;
  return out;
}

double reduced_residual(double u00, double u10, double u01, double u11, const LatticeParams& lp) {
  return (u10 - u01) * (u11 - u00) - (lp.p - lp.q);
}

double reduced_residual_max(const Grid& g, const LatticeParams& lp) {
  double r = 0.0;
  for (int m = g.m0(); m + 1 < g.m_end(); ++m)
    for (int n = g.n0(); n + 1 < g.n_end(); ++n)
      r = std::max(r, std::abs(reduced_residual(g(n, m), g(n + 1, m), g(n, m + 1), g(n + 1, m + 1), lp)));
  return r;
}

namespace {

/// Corner solve without exceptions; a vanishing difference leaves NaN behind.
Grid evolve_reduced_unchecked(const Staircase& st, double delta) {
  const int cols = static_cast<int>(st.row.size()), rows = static_cast<int>(st.col.size());
  Grid g(st.n0, st.m0, cols, rows);
  for (int i = 0; i < cols; ++i) g(st.n0 + i, st.m0) = st.row[i];
  for (int j = 0; j < rows; ++j) g(st.n0, st.m0 + j) = st.col[j];
  for (int m = st.m0; m + 1 < st.m0 + rows; ++m)
    for (int n = st.n0; n + 1 < st.n0 + cols; ++n) {
      const double d = g(n + 1, m) - g(n, m + 1);
      g(n + 1, m + 1) = d == 0.0 ? std::numeric_limits<double>::quiet_NaN() : g(n, m) + delta / d;
    }
  return g;
}

}  // namespace

Grid evolve_reduced(const Staircase& st, double delta) {
  if (st.row.empty() || st.col.empty()) throw Error(ErrorCode::OutOfWindow, "staircase legs must be nonempty");
  if (st.row.front() != st.col.front())
    throw Error(ErrorCode::InvalidParams, "staircase legs disagree at the corner");
  const int cols = static_cast<int>(st.row.size()), rows = static_cast<int>(st.col.size());
  Grid g(st.n0, st.m0, cols, rows);
  for (int i = 0; i < cols; ++i) g(st.n0 + i, st.m0) = st.row[i];
  for (int j = 0; j < rows; ++j) g(st.n0, st.m0 + j) = st.col[j];
  for (int m = st.m0; m + 1 < st.m0 + rows; ++m)
    for (int n = st.n0; n + 1 < st.n0 + cols; ++n) {
      const double d = g(n + 1, m) - g(n, m + 1);
      if (!(std::abs(d) > 1e-14 * (1.0 + std::abs(g(n + 1, m)) + std::abs(g(n, m + 1)))))
        throw Error(ErrorCode::SingularQuad, fmt::format("cell n={} m={}: u10-u01={:.3e}", n, m, d));
      g(n + 1, m + 1) = g(n, m) + delta / d;
    }
  return g;
}

double constraint_residual(int n, int m, const Grid& g, const ReductionParams& rp) {
  const double a = nonzero(g.at(n + 1, m) - g.at(n - 1, m), "u(n+1,m)-u(n-1,m)", n, m);
  const double b = nonzero(g.at(n, m + 1) - g.at(n, m - 1), "u(n,m+1)-u(n,m-1)", n, m);
  return n * rp.pw() / a + m * rp.qw() / b - rp.kprime() * g.at(n, m) + rp.c;
}

double constraint_residual_max(const Grid& g, const ReductionParams& rp) {
  double r = 0.0;
  for (int m = g.m0() + 1; m + 1 < g.m_end(); ++m)
    for (int n = g.n0() + 1; n + 1 < g.n_end(); ++n) r = std::max(r, std::abs(constraint_residual(n, m, g, rp)));
  return r;
}

double reduced_y(const Grid& g, int n, int m) { return g.at(n + 1, m + 1) - g.at(n, m); }
double reduced_a(const Grid& g, int n, int m) { return g.at(n + 1, m) - g.at(n - 1, m); }
double reduced_b(const Grid& g, int n, int m) { return g.at(n, m + 1) - g.at(n, m - 1); }

double a_identity_defect(const Grid& g, double delta) {
  double r = 0.0;
  for (int m = g.m0(); m + 1 < g.m_end(); ++m)
    for (int n = g.n0() + 1; n + 1 < g.n_end(); ++n)
      r = std::max(r, std::abs(reduced_a(g, n, m) - reduced_y(g, n - 1, m) - delta / reduced_y(g, n, m)));
  return r;
}

double b_recursion_defect(const Grid& g, double delta) {
  double r = 0.0;
  for (int m = g.m0() + 1; m + 1 < g.m_end(); ++m)
    for (int n = g.n0(); n + 2 < g.n_end(); ++n) {
      const double b0 = reduced_b(g, n, m), b1 = reduced_b(g, n + 1, m), y = reduced_y(g, n, m);
      r = std::max(r, std::abs(1.0 / b1 - delta / (b0 * y * y) - 1.0 / y));
    }
  return r;
}

PainleveState painleve_step(const PainleveState& st, const ReductionParams& rp) {
  const double d = rp.delta(), pw = rp.pw(), qw = rp.qw(), k = rp.kprime(), c = rp.c;
  const int n = st.n;
  const double yn = divisor(st.y_cur, "y_n", n);
  const double lower = divisor(yn * st.y_prev + d, "y_n y_{n-1} + delta", n);
  const double rhs = pw * (n + 1) + qw * rp.m - c * d / yn + c * yn +
                     k * (d * st.u_cur / yn - yn * st.u_next) - pw * n * d / lower;
  const double y_next = (pw * (n + 1) * d / divisor(rhs, "RHS'", n) - d) / yn;
  divisor(yn * y_next + d, "y_n y_{n+1} + delta", n);
  const double u_after = st.u_cur + yn + d / divisor(y_next, "y_{n+1}", n);
  return {n + 1, yn, y_next, st.u_next, u_after};
}

PainleveState painleve_step_via_b(const PainleveState& st, const ReductionParams& rp) {
  const double d = rp.delta(), pw = rp.pw(), qw = rp.qw(), k = rp.kprime(), c = rp.c;
  const int n = st.n, m = rp.m;
  const double yn = divisor(st.y_cur, "y_n", n);
  const double a_n = st.y_prev + d / yn;
  const double b_n = m * qw / divisor(k * st.u_cur - c - n * pw / divisor(a_n, "a_n", n), "b_n denominator", n);
  const double inv_b1 = d / (divisor(b_n, "b_n", n) * yn * yn) + 1.0 / yn;
  const double a_next =
      (n + 1) * pw / divisor(k * st.u_next - c - m * qw * inv_b1, "a_{n+1} denominator", n);
  const double y_next = d / divisor(a_next - yn, "a_{n+1} - y_n", n);
  return {n + 1, yn, y_next, st.u_next, st.u_cur + a_next};
}

PainleveState harvest_state(const Grid& g, int n, int m) {
  return {n, reduced_y(g, n - 1, m), reduced_y(g, n, m), g.at(n, m), g.at(n + 1, m)};
}

double invariant_profile(int n, int m, const ReductionParams& rp) {
  const double d = rp.delta();
  const double gap = rp.pw() - rp.qw();
  if (rp.w == 0.0 || gap == 0.0) return std::sqrt(d * (static_cast<double>(n) * n - static_cast<double>(m) * m));
  // The branch with beta < 0 is the one the Goursat solve propagates stably.
  const double alpha = std::sqrt(rp.pw() * d / gap);
  const double beta = -std::sqrt(rp.qw() * d / gap);
  return alpha * n + beta * m + rp.c / rp.kprime();
}

Staircase invariant_seed(const ReductionParams& rp, int n0, int m0, int cols, int rows,
                         double perturbation, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  Staircase st{n0, m0, {}, {}};
  for (int i = 0; i < cols; ++i) st.row.push_back(invariant_profile(n0 + i, m0, rp) + perturbation * noise(rng));
  st.col.push_back(st.row.front());
  for (int j = 1; j < rows; ++j) st.col.push_back(invariant_profile(n0, m0 + j, rp) + perturbation * noise(rng));
  return st;
}

namespace {

struct BandProblem {
  const ReductionParams& rp;
  int n0, m0, cols, rows;

  Staircase unpack(const Eigen::VectorXd& x) const {
    Staircase st{n0, m0, {}, {}};
    for (int i = 0; i < cols; ++i) st.row.push_back(x[i]);
    st.col.push_back(x[0]);
    for (int j = 1; j < rows; ++j) st.col.push_back(x[cols + j - 1]);
    return st;
  }

  /// Constraint on row m0+1 and column n0+1, the band the staircase determines.
  Eigen::VectorXd residual(const Eigen::VectorXd& x) const {
    const Grid g = evolve_reduced_unchecked(unpack(x), rp.delta());
    Eigen::VectorXd r((cols - 2) + (rows - 3));
    int k = 0;
    auto eval = [&](int n, int m) {
      const double a = g(n + 1, m) - g(n - 1, m), b = g(n, m + 1) - g(n, m - 1);
      return n * rp.pw() / a + m * rp.qw() / b - rp.kprime() * g(n, m) + rp.c;
    };
    for (int i = 1; i + 1 < cols; ++i) r[k++] = eval(n0 + i, m0 + 1);
    for (int j = 2; j + 1 < rows; ++j) r[k++] = eval(n0 + 1, m0 + j);
    return r;
  }
};

double max_abs(const Eigen::VectorXd& r) {
  return r.allFinite() ? r.cwiseAbs().maxCoeff() : std::numeric_limits<double>::infinity();
}

}  // namespace

GenerateResult painleve_generate(const ReductionParams& rp, const Staircase& seed) {
  rp.validate();
  const int cols = static_cast<int>(seed.row.size()), rows = static_cast<int>(seed.col.size());
  if (cols < 4 || rows < 4)
    throw Error(ErrorCode::WindowTooSmall, fmt::format("staircase {}x{} is shorter than the constraint stencil", cols, rows));
  if (seed.row.front() != seed.col.front())
    throw Error(ErrorCode::InvalidParams, "staircase legs disagree at the corner");
  const BandProblem prob{rp, seed.n0, seed.m0, cols, rows};

  Eigen::VectorXd x(cols + rows - 1);
  for (int i = 0; i < cols; ++i) x[i] = seed.row[i];
  for (int j = 1; j < rows; ++j) x[cols + j - 1] = seed.col[j];

  constexpr int kMaxIter = 50;
  Eigen::VectorXd r = prob.residual(x);
  double res = max_abs(r);
  int it = 0;
  auto tol = [&] { return 1e-12 * (1.0 + x.cwiseAbs().maxCoeff()); };
  for (; it < kMaxIter && std::isfinite(res) && res >= tol(); ++it) {
    Eigen::MatrixXd jac(r.size(), x.size());
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      const double h = 1e-7 * (1.0 + std::abs(x[k]));
      Eigen::VectorXd xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      jac.col(k) = (prob.residual(xp) - prob.residual(xm)) / (2.0 * h);
    }
    if (!jac.allFinite()) break;
    const Eigen::VectorXd dx = jac.completeOrthogonalDecomposition().solve(-r);
    double lam = 1.0;
    Eigen::VectorXd xn = x + dx, rn = prob.residual(xn);
    while (lam > 1e-6 && !(max_abs(rn) < res)) {
      lam *= 0.5;
      xn = x + lam * dx;
      rn = prob.residual(xn);
    }
    if (!(max_abs(rn) < res)) break;  // no descent left
    x = std::move(xn);
    r = std::move(rn);
    res = max_abs(r);
  }
  if (!(res < tol()))
    throw Error(ErrorCode::NewtonFailure,
                fmt::format("band residual {:.3e} after {} iterations", res, it));
  return {evolve_reduced(prob.unpack(x), rp.delta()), it, res};
}

double track_row(const Grid& g, const ReductionParams& rp, int n_start, int steps) {
  PainleveState st = harvest_state(g, n_start, rp.m);
  double dev = 0.0;
  for (int s = 0; s < steps; ++s) {
    st = painleve_step(st, rp);
    dev = std::max({dev, std::abs(st.y_cur - reduced_y(g, st.n, rp.m)),
                    std::abs(st.u_cur - g.at(st.n, rp.m)), std::abs(st.u_next - g.at(st.n + 1, rp.m))});
  }
  return dev;
}

std::vector<PainleveState> painleve_trajectory(const PainleveState& start,
                                               const ReductionParams& rp, int steps) {
  std::vector<PainleveState> out{start};
  for (int s = 0; s < steps; ++s) out.push_back(painleve_step(out.back(), rp));
  return out;
}

std::string trajectory_to_csv(const std::vector<PainleveState>& traj, const ReductionParams& rp) {
  std::string s = fmt::format("# w={:.17g} c={:.17g} p={:.17g} q={:.17g} m={}\nn,y,u\n", rp.w, rp.c, rp.p, rp.q, rp.m);
  for (const auto& st : traj) s += fmt::format("{},{:.17g},{:.17g}\n", st.n, st.y_cur, st.u_cur);
  return s;
}

ReductionParams reduction_params_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ReductionParams rp;
  rp.w = j.value("w", rp.w);
  rp.c = j.value("c", rp.c);
  rp.p = j.value("p", rp.p);
  rp.q = j.value("q", rp.q);
  rp.m = j.value("m", rp.m);
  rp.validate();
  return rp;
}

}  // namespace lpkdv
