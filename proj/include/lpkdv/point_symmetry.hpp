#pragma once

#include <cstdint>
#include <utility>

#include "lpkdv/lattice.hpp"

namespace lpkdv {

enum class PointGenerator { X1, X2, X3 };

struct GroupParams {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double eps3 = 0.0;
};

enum class DiscreteSymmetry { SwapNM, ReflectN, ReflectM };

/// X1 -> 1, X2 -> (-1)^(n+m), X3 -> (-1)^(n+m) (u - pn - qm).
double point_char(PointGenerator gen, int n, int m, double u, const LatticeParams& lp);

/// d(point_char)/du, needed for analytic brackets.
double point_char_du(PointGenerator gen, int n, int m, const LatticeParams& lp);

/// Sum over the quad corners of dD/du_corner * char(corner).
double prolonged_defect(PointGenerator gen, Cell cell, const Grid& g, const LatticeParams& lp);

/// Finite group action generated by eps1 X1 + eps2 X2 + eps3 X3.
Grid apply_finite_transform(const Grid& g, const GroupParams& gp, const LatticeParams& lp);

struct BracketCheck {
  double x1x2 = 0.0;  ///< max |[X1,X2]|
  double x1x3 = 0.0;  ///< max |[X1,X3] - X2|
  double x2x3 = 0.0;  ///< max |[X2,X3] - X1|
};

/// Evolutionary brackets [a,b] = pr_a(b) - pr_b(a) at random sample points.
BracketCheck lie_bracket_check(std::uint64_t seed, int samples, const LatticeParams& lp);

/// Returns the transformed grid and parameters. ReflectN maps the window
/// [n0, n1] onto [n0+1, n1+1] via u'(n,m) = u(n0 + n1 + 1 - n, m) with p -> -p;
/// ReflectM is the same in m with q -> -q.
std::pair<Grid, LatticeParams> apply_discrete_symmetry(const Grid& g, DiscreteSymmetry which,
                                                       const LatticeParams& lp);

}  // namespace lpkdv
