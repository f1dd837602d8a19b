#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lpkdv/lattice.hpp"
#include "lpkdv/point_symmetry.hpp"

namespace lpkdv {

enum class CharKind { Xn, Xm, Yn1, Ym1, Y0n, Y0m, Sigma0, Zn, Zm, Point, Combined };
enum class ZVariant { Ms, Z1, Z2 };

/// A symmetry characteristic F_{n,m}(u-stencil; n, m, p, q).
struct Characteristic {
  struct Term;

  CharKind kind = CharKind::Xn;
  int k = 0;                         ///< hierarchy level for Xn, Xm (0..3)
  double w = 0.0;                    ///< Z family parameter
  ZVariant variant = ZVariant::Ms;   ///< Z family member
  PointGenerator point = PointGenerator::X1;
  std::vector<Term> terms;           ///< Combined only

  static Characteristic xn(int k);
  static Characteristic xm(int k);
  static Characteristic yn1();
  static Characteristic ym1();
  static Characteristic y0n();
  static Characteristic y0m();
  static Characteristic sigma0();
  static Characteristic zn(double w, ZVariant v);
  static Characteristic zm(double w, ZVariant v);
  static Characteristic point_gen(PointGenerator g);
  static Characteristic combined(std::vector<Term> terms);

  /// Max offset in n (resp. m) of the field values the characteristic reads.
  int radius_n() const;
  int radius_m() const;

  std::string label() const;
};

struct Characteristic::Term {
  double coef;
  Characteristic ch;
};

/// Integration constant of the k-th isospectral flow in direction with
/// parameter a: 1/(2a), -1/(4a^3), 3/(16a^5), -5/(32a^7). It equals the vacuum
/// value of the homogeneous part, so every Xn(k) vanishes on constant grids.
double hierarchy_constant(int k, double a);

/// Value at (n, m). Throws OutOfWindow, DivergentDenominator or InvalidW.
double char_eval(const Characteristic& c, int n, int m, const Grid& g, const LatticeParams& lp);

/// Characteristic sampled on every point whose stencil fits; the result is the
/// input window shrunk by radius_n / radius_m on each side.
Grid char_field(const Characteristic& c, const Grid& g, const LatticeParams& lp);

/// Vacuum value on a constant grid, computed in closed form per kind.
double char_vacuum(const Characteristic& c, int n, int m, double u, const LatticeParams& lp);

Characteristic characteristic_from_json(const std::string& text);
std::string characteristic_to_json(const Characteristic& c);

}  // namespace lpkdv
