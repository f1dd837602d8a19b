#include "lpkdv/continuum.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace lpkdv {

namespace {

double guarded(double den, int k) {
  if (!(std::abs(den) >= 1e-12))
    throw Error(ErrorCode::DivergentDenominator, fmt::format("denominator {:.3e} at k={}", den, k));
  return den;
}

template <class F>
Sequence stencil3(const ContinuumState& st, F&& f) {
  const Sequence& x = st.seq;
  if (x.v.size() < 3) throw Error(ErrorCode::WindowTooSmall, "stencil needs 3 samples");
  Sequence out{x.start + 1, {}};
  for (int k = x.start + 1; k + 1 < x.end(); ++k) out.v.push_back(f(x.at(k - 1), x.at(k), x.at(k + 1), k));
  return out;
}

}  // namespace

Sequence rhs_v(const ContinuumState& st) {
  const double p = st.p;
  return stencil3(st, [p](double vm, double, double vp, int k) {
    return 2.0 * p / guarded(2.0 * p - vp + vm, k) - 1.0;
  });
}

Sequence rhs_q(const ContinuumState& st) {
  const double p = st.p;
  return stencil3(st, [p](double qm, double, double qp, int k) {
    return 2.0 * p * (1.0 / guarded(qm, k - 1) - 1.0 / guarded(qp, k + 1));
  });
}

Sequence rhs_dkdv(const ContinuumState& st) {
  return stencil3(st, [](double sm, double s, double sp, int) { return s * s * (sp - sm); });
}

Sequence rhs_volterra(const ContinuumState& st) {
  return stencil3(st, [](double am, double a, double ap, int) { return a * (ap - am); });
}

Sequence miura_s(const Sequence& q, double p) {
  Sequence s{q.start, {}};
  for (int k = q.start; k < q.end(); ++k) s.v.push_back(2.0 * p / guarded(q.at(k), k));
  return s;
}

Sequence miura_a(const Sequence& s) {
  Sequence a{s.start + 1, {}};
  for (int k = s.start + 1; k < s.end(); ++k) a.v.push_back(s.at(k) * s.at(k - 1));
  return a;
}

Sequence miura_u_to_a(const Grid& g, int n_begin, int n_end, int m, const LatticeParams& lp) {
  const double p = lp.p;
  Sequence a{n_begin, {}};
  for (int n = n_begin; n < n_end; ++n) {
    const double d1 = guarded(2.0 * p - g.at(n + 2, m) + g.at(n, m), n);
    const double d2 = guarded(2.0 * p - g.at(n + 1, m) + g.at(n - 1, m), n - 1);
    a.v.push_back(4.0 * p * p / (d1 * d2));
  }
  return a;
}

Sequence q_row(const Grid& g, int n_begin, int n_end, int m, const LatticeParams& lp) {
  Sequence q{n_begin, {}};
  for (int n = n_begin; n < n_end; ++n) q.v.push_back(2.0 * lp.p - g.at(n + 2, m) + g.at(n, m));
  return q;
}

namespace {

/// base restricted to inc's range, plus coef * inc
Sequence axpy(const Sequence& base, const Sequence& inc, double coef) {
  Sequence out{inc.start, inc.v};
  for (int k = inc.start; k < inc.end(); ++k) out.v[k - inc.start] = base.at(k) + coef * inc.at(k);
  return out;
}

}  // namespace

ContinuumState integrate_dde(const Rhs& rhs, const ContinuumState& st, double tau_target,
                             int steps, double rate) {
  if (steps <= 0) throw Error(ErrorCode::InvalidParams, "steps must be positive");
  if (static_cast<int>(st.seq.v.size()) - 8 * steps < 1)
    throw Error(ErrorCode::WindowTooSmall,
                fmt::format("{} samples cannot absorb {} steps at 4 cells per side each",
                            st.seq.v.size(), steps));
  const double h = (tau_target - st.tau) / steps;
  ContinuumState cur = st;
  auto eval = [&](const Sequence& x, double t) {
    Sequence r = rhs(ContinuumState{x, t, st.p});
    for (double& v : r.v) v *= rate;
    return r;
  };
  for (int s = 0; s < steps; ++s) {
    const double t = cur.tau;
    const Sequence k1 = eval(cur.seq, t);
    const Sequence k2 = eval(axpy(cur.seq, k1, 0.5 * h), t + 0.5 * h);
    const Sequence k3 = eval(axpy(cur.seq, k2, 0.5 * h), t + 0.5 * h);
    const Sequence k4 = eval(axpy(cur.seq, k3, h), t + h);
    Sequence next{k4.start, {}};
    for (int k = k4.start; k < k4.end(); ++k)
      next.v.push_back(cur.seq.at(k) + h / 6.0 * (k1.at(k) + 2.0 * k2.at(k) + 2.0 * k3.at(k) + k4.at(k)));
    cur.seq = std::move(next);
    cur.tau = t + h;
  }
  cur.tau = tau_target;
  return cur;
}

double calibrate_time_constant(const ContinuumState& q_state, double probe_tau) {
  const double p = q_state.p;
  const double t0 = q_state.tau;
  const ContinuumState fwd = integrate_dde(rhs_q, q_state, t0 + probe_tau, 1);
  const ContinuumState bwd = integrate_dde(rhs_q, q_state, t0 - probe_tau, 1);
  const Sequence s0 = miura_s(q_state.seq, p);
  const Sequence sf = miura_s(fwd.seq, p), sb = miura_s(bwd.seq, p);
  const Sequence flow = rhs_dkdv(ContinuumState{s0, t0, p});
  double num = 0.0, den = 0.0;
  for (int k = sf.start; k < sf.end(); ++k) {
    const double dsdt = (sf.at(k) - sb.at(k)) / (2.0 * probe_tau);
    num += flow.at(k) * flow.at(k);
    den += flow.at(k) * dsdt;
  }
  if (den == 0.0) throw Error(ErrorCode::Degenerate, "no signal to calibrate the time constant");
  return num / den;
}

Sequence lattice_march_k(const Sequence& v0, double p, double q, int steps) {
  if (p + q == 0.0 || p == q) throw Error(ErrorCode::InvalidParams, fmt::format("p={} q={}", p, q));
  Sequence row = v0;
  for (int s = 0; s < steps; ++s) {
    // Quad at (n, m) reads v^m_k, v^m_{k+1}, v^{m+1}_{k+2} and is solved for
    // u01 = v^{m+1}_{k+1}. Sweeping right to left contracts errors by about
    // delta/(p+q) per cell; the forward corner solve would amplify them.
    std::vector<double> next(row.v.size() - 1);
    next.back() = 0.0;
    for (int k = row.end() - 3; k >= row.start; --k) {
      const double u11 = next[static_cast<std::size_t>(k + 2 - (row.start + 1))];
      const double x = u11 - row.at(k);
      const double den = guarded(p + q - x, k);
      // (p^2-q^2)/den - (p-q) regrouped so that flat data stays exactly flat.
      next[static_cast<std::size_t>(k + 1 - (row.start + 1))] = row.at(k + 1) + (p - q) * x / den;
    }
    row = Sequence{row.start + 1, std::move(next)};
  }
  return row;
}

LimitOrder continuum_limit_order(const LimitConfig& cfg) {
  LimitOrder out;
  const int steps_dde = std::max(1, static_cast<int>(std::lround(cfg.dde_steps_per_unit * cfg.tau_target)));
  const int reach = cfg.half_window + 8 * steps_dde + 8;
  Sequence v0{-reach, {}};
  for (int k = -reach; k <= reach; ++k) v0.v.push_back(cfg.amplitude * std::exp(-std::pow(k / cfg.width, 2)));
  const ContinuumState dde =
      integrate_dde(rhs_v, ContinuumState{v0, 0.0, cfg.p}, cfg.tau_target, steps_dde);

  for (double delta : cfg.deltas) {
    const int m_steps = static_cast<int>(std::lround(cfg.tau_target / delta));
    const Sequence lat = lattice_march_k(v0, cfg.p, cfg.p - delta, m_steps);
    double err = 0.0;
    for (int k = -cfg.half_window; k <= cfg.half_window; ++k) err = std::max(err, std::abs(lat.at(k) - dde.seq.at(k)));
    out.deltas.push_back(delta);
    out.errors.push_back(err);
  }
  const bool all_zero = std::all_of(out.errors.begin(), out.errors.end(), [](double e) { return e == 0.0; });
  if (all_zero) {
    out.exact_match = true;
    return out;
  }
  // least-squares slope of log(err) against log(delta)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(out.deltas.size());
  for (std::size_t i = 0; i < out.deltas.size(); ++i) {
    const double x = std::log(out.deltas[i]), y = std::log(out.errors[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return out;
}

std::string sequence_to_csv(const ContinuumState& st) {
  std::string out = fmt::format("# k0={} tau={:.17g} p={:.17g}\n", st.seq.start, st.tau, st.p);
  for (double v : st.seq.v) out += fmt::format("{:.17g}\n", v);
  return out;
}

}  // namespace lpkdv
