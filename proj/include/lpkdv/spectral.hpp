#pragma once

#include <array>
#include <vector>

#include "lpkdv/lattice.hpp"
#include "lpkdv/soliton.hpp"

namespace lpkdv {

using Mat2 = std::array<std::array<double, 2>, 2>;

Mat2 mat_mul(const Mat2& a, const Mat2& b);
double mat_det(const Mat2& a);

struct LaxPair {
  Mat2 L;
  Mat2 M;
  double h2;
};

/// L, M at (n, m) with squared spectral parameter h2. Reads u(n,m), u(n+1,m), u(n,m+1).
LaxPair lax_matrices(int n, int m, const Grid& g, const LatticeParams& lp, double h2);

/// Max entry of L(n,m+1) M(n,m) - M(n+1,m) L(n,m) over all quads of the grid.
double lax_compatibility_defect(const Grid& g, const LatticeParams& lp, double h2);

/// Max over cells of |det L - (p^2 - h2)| and |det M - (q^2 - h2)|.
double lax_det_defect(const Grid& g, const LatticeParams& lp, double h2);

/// At every cell, seeds psi(n, m) = psi0 and psi(n+1, m) = psi1, extends with
/// the three-term n recursion and the first-order m step, and measures the
/// three-term m recursion at (n, m). Returns the max violation relative to the
/// largest |psi| involved. Filling whole rows from the first row instead would
/// mix values of size 3^m and measure rounding, not the identity.
double scalar_recursion_check(const Grid& g, const LatticeParams& lp, double h2, double psi0,
                              double psi1);

struct JostValues {
  std::vector<double> mu;  ///< mu^-(-kappa_j) per mode
  double denom = 1.0;      ///< determinant of the Cauchy system (N = 2), 1 + s for N = 1
};

/// Reflectionless Jost functions at the eigenvalues, from the Cauchy system
/// (I + K) mu = 1 with K_lj = r_j/(k_l + k_j), r_j = c0_j X_j^n Y_j^m.
JostValues jost_reflectionless(int n, int m, const SolitonSpec& spec, const LatticeParams& lp);

/// Discrete sum of the reconstruction formula with vanishing reflection,
/// multiplied by `scale`.
double reconstruct_eta_reflectionless(int n, int m, const SolitonSpec& spec,
                                      const LatticeParams& lp, double scale = 1.0);

/// Single scalar that maps the reconstruction onto the soliton eta at (n, m).
double calibrate_eta_scale(int n, int m, const SolitonSpec& spec, const LatticeParams& lp);

/// (q + kappa0)/(q - kappa0), the per-step m factor on the imaginary axis.
double reflection_evolution_factor(double kappa0, const LatticeParams& lp);

}  // namespace lpkdv
