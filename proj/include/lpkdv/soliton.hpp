#pragma once

#include <string>
#include <vector>

#include "lpkdv/lattice.hpp"

namespace lpkdv {

/// One reflectionless mode. The eigenvalue sits on the imaginary axis at
/// i*kappa0 and the norming constant is i*c0, which keeps every quantity real.
struct SolitonMode {
  double kappa0 = 0.5;
  double c0 = 1.0;
};

struct SolitonSpec {
  std::vector<SolitonMode> modes;

  /// Throws InvalidSpec (bad sizes, kappa0 outside (0, min(|p|,|q|)), c0 < 0)
  /// or Degenerate (equal kappa0 for N = 2).
  void validate(const LatticeParams& lp) const;
};

/// X = (p+kappa0)/(p-kappa0), the per-step growth of the mode along n.
double growth_n(double kappa0, const LatticeParams& lp);
/// Y = (q+kappa0)/(q-kappa0), the per-step growth along m.
double growth_m(double kappa0, const LatticeParams& lp);

/// log of s = (c0/(2 kappa0)) X^n Y^m; -inf when c0 = 0.
double log_weight(const SolitonMode& mode, int n, int m, const LatticeParams& lp);

double one_soliton(int n, int m, const SolitonSpec& spec, const LatticeParams& lp);
double two_soliton(int n, int m, const SolitonSpec& spec, const LatticeParams& lp);

/// Dispatches on the number of modes.
double soliton_value(int n, int m, const SolitonSpec& spec, const LatticeParams& lp);

Grid soliton_grid(const SolitonSpec& spec, const LatticeParams& lp, int n0, int m0, int cols,
                  int rows);

/// n at which the first mode's weight equals 1 on row m (the soliton core).
double soliton_core_n(const SolitonSpec& spec, const LatticeParams& lp, int m);

/// Derived potentials read off a grid.
struct PotentialView {
  const Grid& grid;
  LatticeParams params;

  /// u(n,m) - u(n+2,m)
  double eta(int n, int m) const;
  /// 2p + eta(n,m)
  double q_pot(int n, int m) const;
  /// 2q - u(n,m+2) + u(n,m)
  double p_pot(int n, int m) const;
};

SolitonSpec soliton_spec_from_json(const std::string& text);
std::string soliton_spec_to_json(const SolitonSpec& spec);

}  // namespace lpkdv
