#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lpkdv/gen_symmetry.hpp"
#include "lpkdv/lattice.hpp"

namespace lpkdv {

/// Values v_k for k = k0, k0+1, ... at time tau.
struct ContinuumState {
  Sequence seq;
  double tau = 0.0;
  double p = 2.0;
};

using Rhs = std::function<Sequence(const ContinuumState&)>;

/// dv_k/dtau = 2p/(2p - v_{k+1} + v_{k-1}) - 1
Sequence rhs_v(const ContinuumState& st);
/// dq_k/dtau = 2p (1/q_{k-1} - 1/q_{k+1})
Sequence rhs_q(const ContinuumState& st);
/// ds_k/dtau' = s_k^2 (s_{k+1} - s_{k-1})
Sequence rhs_dkdv(const ContinuumState& st);
/// da_k/dtau' = a_k (a_{k+1} - a_{k-1})
Sequence rhs_volterra(const ContinuumState& st);

/// s_k = 2p/q_k
Sequence miura_s(const Sequence& q, double p);
/// a_k = s_k s_{k-1}, defined from start+1
Sequence miura_a(const Sequence& s);
/// a_n = 4p^2/((2p - u_{n+2} + u_n)(2p - u_{n+1} + u_{n-1})) on row m for n in [n_begin, n_end)
Sequence miura_u_to_a(const Grid& g, int n_begin, int n_end, int m, const LatticeParams& lp);
/// q_n = 2p - u_{n+2} + u_n on row m for n in [n_begin, n_end)
Sequence q_row(const Grid& g, int n_begin, int n_end, int m, const LatticeParams& lp);

/// RK4 over `steps` equal steps to tau_target; every stage consumes one cell
/// per side. The right-hand side is multiplied by rate (1/c for an equation
/// posed in the rescaled time tau/c).
ContinuumState integrate_dde(const Rhs& rhs, const ContinuumState& st, double tau_target,
                             int steps, double rate = 1.0);

/// Least-squares c in ds/dtau = s^2 (s_{k+1} - s_{k-1})/c, where ds/dtau is
/// taken by central differences of s = 2p/q along the q flow.
double calibrate_time_constant(const ContinuumState& q_state, double probe_tau = 1e-3);

struct LimitOrder {
  double slope = 0.0;
  bool exact_match = false;     ///< every error vanished; slope undefined
  std::vector<double> deltas;
  std::vector<double> errors;
};

struct LimitConfig {
  double p = 2.0;
  std::vector<double> deltas{0.1, 0.05, 0.025};
  double tau_target = 1.0;
  double amplitude = 0.1;
  double width = 5.0;
  int half_window = 40;       ///< errors measured on |k| <= half_window
  int dde_steps_per_unit = 200;
};

/// Lattice solution vs the differential-difference limit at tau_target, from
/// the profile amplitude exp(-(k/width)^2); log-log slope of the max error.
LimitOrder continuum_limit_order(const LimitConfig& cfg);

/// Lattice row at m = steps from v^0, with k = n + m. Each new row is swept
/// from a zero right boundary towards decreasing k and loses one cell on the
/// left per step.
Sequence lattice_march_k(const Sequence& v0, double p, double q, int steps);

/// Header `# k0=<int> tau=<float> p=<float>`, then one value per line.
std::string sequence_to_csv(const ContinuumState& st);

}  // namespace lpkdv
