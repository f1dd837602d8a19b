#pragma once

#include <vector>

#include "lpkdv/characteristic.hpp"
#include "lpkdv/lattice.hpp"

namespace lpkdv {

/// Sum over the quad corners of dD/du_corner * F(corner).
double quad_defect(const Characteristic& c, Cell cell, const Grid& g, const LatticeParams& lp);

/// Max |quad_defect| over quads whose corners all have the stencil in range.
double symmetry_defect(const Characteristic& c, const Grid& g, const LatticeParams& lp);

struct Theorem1Result {
  Characteristic combined;
  double ratio = 0.0;         ///< mean of pr zn.D / pr zm.D over sampled quads
  double ratio_spread = 0.0;  ///< max relative deviation from the mean
  std::vector<double> alpha_g;  ///< pr zn.D per sampled quad
  std::vector<double> beta_g;   ///< pr zm.D per sampled quad
  bool degenerate = false;      ///< both prolongations vanish: each is a symmetry alone
  double defect = 0.0;          ///< symmetry_defect of the combination
};

/// Combines a mirror pair so that the prolonged defects cancel. Quads where
/// either prolongation is below 1e-6 of its maximum carry no ratio information
/// and are skipped. Throws RatioNotConstant when the ratio varies by more than
/// ratio_tol (relative).
Theorem1Result theorem1_combine(const Characteristic& zn, const Characteristic& zm,
                                const Grid& g, const LatticeParams& lp,
                                double ratio_tol = 1e-6);

struct FlowResult {
  Grid grid;
  double epsilon = 0.0;
  int steps = 0;
};

/// Classical RK4 on a shrinking window: each step consumes 4*radius cells on
/// each side of every flowed direction. Throws WindowTooSmall up front.
FlowResult flow_integrate(const Characteristic& c, const Grid& g, const LatticeParams& lp,
                          double eps_total, int steps);

/// Number of cells the flow consumes on each side, per direction.
int flow_margin_n(const Characteristic& c, int steps);
int flow_margin_m(const Characteristic& c, int steps);

/// Ordering of the evolutionary bracket. With pr_a(b) the derivative of b along
/// the flow of a, VectorField is pr_a(b) - pr_b(a) (the commutator of the
/// vector fields a d/du and b d/du); Reversed is its negative.
enum class BracketOrder { VectorField, Reversed };

/// Bracket at (n, m) by central differences along each flow with one
/// Richardson level, probe step h = 1e-6 (1 + max|u|) over the local window.
double commutator_eval(const Characteristic& a, const Characteristic& b, int n, int m,
                       const Grid& g, const LatticeParams& lp,
                       BracketOrder order = BracketOrder::VectorField);

/// Contiguous values f_n for n = start, start+1, ...
struct Sequence {
  int start = 0;
  std::vector<double> v;

  int end() const { return start + static_cast<int>(v.size()); }
  double at(int n) const { return v.at(static_cast<std::size_t>(n - start)); }
};

/// Characteristic values along row m over [n_begin, n_end).
Sequence char_row(const Characteristic& c, int m, int n_begin, int n_end, const Grid& g,
                  const LatticeParams& lp);

constexpr double kDecayTol = 1e-10;

/// -E^{-1} (1/q) (E+1) (E-1)^{-1} (1/q) (E^2-1) f on row m. The inverse of E-1
/// is the truncated sum -sum_{k>=0} E^k plus `tail`, the constant picked from
/// the kernel of E-1; tail = 1 with f = 0 gives the local seed -2/q_{n-1}.
/// The output covers [f.start+1, f.end()-2). Throws NoDecay when q or the
/// summand have not relaxed to the vacuum at the +n edge.
Sequence apply_inverse_recursion(const Sequence& f, int m, const Grid& g,
                                 const LatticeParams& lp, double tail);

/// Xn(k+1) on row m from Xn(k) by the numeric inverse recursion, with the tail
/// fixed so that the homogeneous parts map exactly and the constant fixed so
/// that the result vanishes on the vacuum.
Sequence generate_next_xn(int k, int m, int n_begin, int n_end, const Grid& g,
                          const LatticeParams& lp);

}  // namespace lpkdv
