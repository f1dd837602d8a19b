#pragma once

#include <iosfwd>
#include <string>

#include "lpkdv/lattice.hpp"

namespace lpkdv {

struct GridFile {
  Grid grid;
  LatticeParams params;
};

/// Header `# n0=<int> m0=<int> p=<float> q=<float>`, then one line per row
/// starting at m0, values at 17 significant digits.
void write_grid_csv(std::ostream& os, const Grid& g, const LatticeParams& lp);
std::string grid_to_csv(const Grid& g, const LatticeParams& lp);

/// Throws std::runtime_error on malformed input (an I/O error, not a module error).
GridFile read_grid_csv(std::istream& is);
GridFile grid_from_csv(const std::string& text);

struct StaircaseFile {
  Staircase staircase;
  LatticeParams params;
};

/// Same header as the grid format, then two lines: the row u(n0.., m0) and the
/// column u(n0, m0..).
std::string staircase_to_csv(const Staircase& st, const LatticeParams& lp);
StaircaseFile staircase_from_csv(const std::string& text);

/// Shortest decimal that round-trips, capped at 17 significant digits.
std::string format_real(double x);

}  // namespace lpkdv
