#pragma once

#include <functional>
#include <vector>

#include "lpkdv/error.hpp"

namespace lpkdv {

/// Lattice parameters of the n and m directions.
struct LatticeParams {
  double p = 2.0;
  double q = 1.0;

  /// Throws InvalidParams unless p, q are nonzero, finite and p != +-q.
  void validate() const;
};

/// Lower-left corner of an elementary quad.
struct Cell {
  int n = 0;
  int m = 0;
};

/// Dense window of field values u(n, m) with absolute index origin (n0, m0).
/// Storage is row-major in m: rows are fixed m, columns are fixed n.
class Grid {
 public:
  Grid() = default;
  Grid(int n0, int m0, int cols, int rows, double fill = 0.0);

  template <class F>
  static Grid generate(int n0, int m0, int cols, int rows, F&& f) {
    Grid g(n0, m0, cols, rows);
    for (int m = m0; m < m0 + rows; ++m)
      for (int n = n0; n < n0 + cols; ++n) g(n, m) = f(n, m);
    return g;
  }

  int n0() const noexcept { return n0_; }
  int m0() const noexcept { return m0_; }
  int cols() const noexcept { return cols_; }
  int rows() const noexcept { return rows_; }
  int n_end() const noexcept { return n0_ + cols_; }
  int m_end() const noexcept { return m0_ + rows_; }

  bool contains(int n, int m) const noexcept {
    return n >= n0_ && n < n_end() && m >= m0_ && m < m_end();
  }

  double operator()(int n, int m) const noexcept {
    return v_[static_cast<std::size_t>(m - m0_) * cols_ + (n - n0_)];
  }
  double& operator()(int n, int m) noexcept {
    return v_[static_cast<std::size_t>(m - m0_) * cols_ + (n - n0_)];
  }

  /// Bounds-checked access; throws OutOfWindow.
  double at(int n, int m) const;

  const std::vector<double>& values() const noexcept { return v_; }
  std::vector<double>& values() noexcept { return v_; }

  /// Copy of the sub-window [n0, n0+cols) x [m0, m0+rows); throws OutOfWindow.
  Grid crop(int n0, int m0, int cols, int rows) const;

  double max_abs() const noexcept;
  bool all_finite() const noexcept;

 private:
  int n0_ = 0;
  int m0_ = 0;
  int cols_ = 0;
  int rows_ = 0;
  std::vector<double> v_;
};

/// Initial data on the row m = m0 (increasing n) and the column n = n0
/// (increasing m). row[0] and col[0] are the shared corner.
struct Staircase {
  int n0 = 0;
  int m0 = 0;
  std::vector<double> row;
  std::vector<double> col;
};

struct Gradient {
  double d00, d10, d01, d11;
};

/// (p-q+u01-u10)(p+q-u11+u00) - (p^2-q^2)
double residual(double u00, double u10, double u01, double u11, const LatticeParams& lp);

Gradient residual_gradient(double u00, double u10, double u01, double u11,
                           const LatticeParams& lp);

double sing_tol(double u10, double u01, const LatticeParams& lp);

/// Solves the quad relation for u11. Throws SingularQuad.
double solve_corner(double u00, double u10, double u01, const LatticeParams& lp);

/// Fills the quadrant n > n0, m > m0 from staircase data. Throws SingularQuad
/// naming the offending cell.
Grid evolve(const Staircase& st, const LatticeParams& lp);

/// Staircase legs read off an existing grid at its lower-left corner.
Staircase staircase_of(const Grid& g);

double quad_residual(const Grid& g, Cell c, const LatticeParams& lp);
double residual_max(const Grid& g, const LatticeParams& lp);

/// Max pairwise spread of the three values of u123 obtained around the cube.
/// The seven corner solves run in long double.
double check_3d_consistency(double u, double u1, double u2, double u3, double p, double q,
                            double r);

/// Same as above with an additive perturbation applied to u23 before the last
/// step. Used as a detector sanity check.
double check_3d_consistency_perturbed(double u, double u1, double u2, double u3, double p,
                                      double q, double r, double du23);

/// Factored form valid at p = q: (u00 - u11 + 2p)(u10 - u01).
double degenerate_factored(double u00, double u10, double u01, double u11, double p);

/// Unvalidated residual used for the p = q identity check.
double residual_raw(double u00, double u10, double u01, double u11, double p, double q);

}  // namespace lpkdv
