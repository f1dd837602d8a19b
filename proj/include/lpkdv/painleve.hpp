#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lpkdv/lattice.hpp"

namespace lpkdv {

/// Parameters of the reduction by the generator combining the Z(w) pair with
/// the constant c; m is the row, fixed along a trajectory.
struct ReductionParams {
  double w = 1.0;
  double c = 0.0;
  double p = 2.0;
  double q = 1.0;
  int m = 1;

  double delta() const { return p - q; }
  double pw() const;
  double qw() const;
  /// (p^w - q^w) / (2 (p - q))
  double kprime() const;
  /// InvalidParams for p = +-q or non-finite powers.
  void validate() const;
};

/// (y_{n-1}, y_n, u_n, u_{n+1}) at row rp.m.
struct PainleveState {
  int n = 0;
  double y_prev = 0.0;
  double y_cur = 0.0;
  double u_cur = 0.0;
  double u_next = 0.0;
};

/// U = u sqrt(p+q) + p n + q m, and its inverse. NegativePQSum when p+q <= 0.
Grid map_forward(const Grid& g, const LatticeParams& lp);
Grid map_backward(const Grid& g, const LatticeParams& lp);

/// (u10 - u01)(u11 - u00) - (p - q)
double reduced_residual(double u00, double u10, double u01, double u11, const LatticeParams& lp);
double reduced_residual_max(const Grid& g, const LatticeParams& lp);

/// Fills the quadrant from staircase data with u11 = u00 + delta/(u10 - u01).
Grid evolve_reduced(const Staircase& st, double delta);

/// n p^w / (u_{n+1,m} - u_{n-1,m}) + m q^w / (u_{n,m+1} - u_{n,m-1}) - K' u_{n,m} + c.
/// ZeroDifference when either difference vanishes.
double constraint_residual(int n, int m, const Grid& g, const ReductionParams& rp);
/// Max over points with the full cross stencil in the window.
double constraint_residual_max(const Grid& g, const ReductionParams& rp);

/// y_{n,m} = u_{n+1,m+1} - u_{n,m}
double reduced_y(const Grid& g, int n, int m);
/// a_{n,m} = u_{n+1,m} - u_{n-1,m}
double reduced_a(const Grid& g, int n, int m);
/// b_{n,m} = u_{n,m+1} - u_{n,m-1}
double reduced_b(const Grid& g, int n, int m);

/// Max |a_{n,m} - y_{n-1,m} - delta/y_{n,m}| over the window.
double a_identity_defect(const Grid& g, double delta);
/// Max |1/b_{n+1,m} - delta/(b_{n,m} y_{n,m}^2) - 1/y_{n,m}| over the window.
double b_recursion_defect(const Grid& g, double delta);

/// One step of the second-order system: y_{n+1} from the reciprocal solve,
/// then u_{n+2} = u_n + y_n + delta/y_{n+1}. SingularStep on a zero divisor.
PainleveState painleve_step(const PainleveState& st, const ReductionParams& rp);

/// The same step through the constraint solved for b_n, the b-recursion, and
/// the constraint solved again for a_{n+1}.
PainleveState painleve_step_via_b(const PainleveState& st, const ReductionParams& rp);

/// State at (n, m) read off a reduced-lattice grid.
PainleveState harvest_state(const Grid& g, int n, int m);

/// Linear invariant solution (w != 0 and p^w != q^w): u = alpha n + beta m + c/K'
/// with beta < 0; for w = 0 the profile sqrt(delta (n^2 - m^2)).
double invariant_profile(int n, int m, const ReductionParams& rp);

/// Staircase sampled off invariant_profile with N(0, perturbation) noise.
Staircase invariant_seed(const ReductionParams& rp, int n0, int m0, int cols, int rows,
                         double perturbation, std::uint64_t seed);

struct GenerateResult {
  Grid grid;
  int iterations = 0;
  double band_residual = 0.0;
};

/// Gauss-Newton on every staircase value so that the constraint holds on the
/// band next to the staircase, then the reduced corner solve. Minimum-norm
/// steps with backtracking; tolerance 1e-12 (1 + max|staircase|), at most 50
/// iterations. NewtonFailure carries the final residual.
GenerateResult painleve_generate(const ReductionParams& rp, const Staircase& seed);

/// Runs painleve_step from the state at (n_start, rp.m) for `steps` steps and
/// returns the max deviation in y_n, u_n, u_{n+1} from the grid.
double track_row(const Grid& g, const ReductionParams& rp, int n_start, int steps);

std::vector<PainleveState> painleve_trajectory(const PainleveState& start,
                                               const ReductionParams& rp, int steps);

/// Header `# w= c= p= q= m=`, then `n,y,u` rows.
std::string trajectory_to_csv(const std::vector<PainleveState>& traj, const ReductionParams& rp);

ReductionParams reduction_params_from_json(const std::string& text);

}  // namespace lpkdv
