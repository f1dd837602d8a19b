#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpkdv/lattice.hpp"
#include "lpkdv/report.hpp"

namespace lpkdv {

constexpr std::uint64_t kDefaultSeed = 20240611;

struct SuiteConfig {
  std::uint64_t seed = kDefaultSeed;
  LatticeParams params{2.0, 1.0};
  std::optional<double> tol;  ///< replaces the tolerance of every identity case
};

/// lattice-core, soliton, point-symmetry, gen-symmetry, spectral, continuum,
/// painleve, all
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown name. Errors raised inside a
/// case are recorded as failed cases, never propagated.
VerificationReport run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace lpkdv
