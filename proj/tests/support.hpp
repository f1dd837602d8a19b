#pragma once

#include <doctest.h>

#include <functional>
#include <random>

#include "lpkdv/error.hpp"
#include "lpkdv/lattice.hpp"

namespace testing_support {

/// Code of the lpkdv::Error thrown by f; fails the test if nothing is thrown.
inline lpkdv::ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const lpkdv::Error& e) {
    return e.code();
  }
  FAIL("no lpkdv::Error thrown");
  return lpkdv::ErrorCode::InvalidParams;
}

inline lpkdv::Grid random_grid(int n0, int m0, int cols, int rows, std::uint64_t seed, double lo,
                               double hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(lo, hi);
  lpkdv::Grid g(n0, m0, cols, rows);
  for (double& v : g.values()) v = d(rng);
  return g;
}

inline double max_diff(const lpkdv::Grid& a, const lpkdv::Grid& b) {
  double r = 0.0;
  for (int m = a.m0(); m < a.m_end(); ++m)
    for (int n = a.n0(); n < a.n_end(); ++n) r = std::max(r, std::abs(a(n, m) - b(n, m)));
  return r;
}

}  // namespace testing_support
