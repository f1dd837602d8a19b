#include "lpkdv/soliton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>
#include <json.hpp>

namespace lpkdv {

void SolitonSpec::validate(const LatticeParams& lp) const {
  lp.validate();
  if (modes.empty() || modes.size() > 2)
    throw Error(ErrorCode::InvalidSpec, fmt::format("{} modes; 1 or 2 supported", modes.size()));
  const double kmax = std::min(std::abs(lp.p), std::abs(lp.q));
  for (const auto& md : modes) {
    if (!(md.kappa0 > 0.0) || !(md.kappa0 < kmax))
      throw Error(ErrorCode::InvalidSpec,
                  fmt::format("kappa0={} outside (0, {})", md.kappa0, kmax));
    if (!(md.c0 >= 0.0) || !std::isfinite(md.c0))
      throw Error(ErrorCode::InvalidSpec, fmt::format("c0={} must be >= 0", md.c0));
  }
  if (modes.size() == 2 && modes[0].kappa0 == modes[1].kappa0)
    throw Error(ErrorCode::Degenerate, fmt::format("coincident kappa0={}", modes[0].kappa0));
}

double growth_n(double kappa0, const LatticeParams& lp) {
  return (lp.p + kappa0) / (lp.p - kappa0);
}

double growth_m(double kappa0, const LatticeParams& lp) {
  return (lp.q + kappa0) / (lp.q - kappa0);
}

double log_weight(const SolitonMode& mode, int n, int m, const LatticeParams& lp) {
  if (mode.c0 == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(mode.c0 / (2.0 * mode.kappa0)) + n * std::log(growth_n(mode.kappa0, lp)) +
         m * std::log(growth_m(mode.kappa0, lp));
}

double one_soliton(int n, int m, const SolitonSpec& spec, const LatticeParams& lp) {
  spec.validate(lp);
  if (spec.modes.size() != 1)
    throw Error(ErrorCode::InvalidSpec, "one_soliton needs exactly one mode");
  const auto& md = spec.modes[0];
  const double l = log_weight(md, n, m, lp);
  // 2k s/(1+s) written as a logistic so that neither tail overflows.
  if (l >= 0.0) return 2.0 * md.kappa0 / (1.0 + std::exp(-l));
  const double e = std::exp(l);
  return 2.0 * md.kappa0 * e / (1.0 + e);
}

double two_soliton(int n, int m, const SolitonSpec& spec, const LatticeParams& lp) {
  spec.validate(lp);
  if (spec.modes.size() != 2)
    throw Error(ErrorCode::InvalidSpec, "two_soliton needs exactly two modes");
  const double k1 = spec.modes[0].kappa0;
  const double k2 = spec.modes[1].kappa0;
  // Interaction coefficient of the 2x2 Cauchy system (I + K) mu = 1 with
  // K_lj = r_j/(k_l + k_j).
  const double A = (k1 - k2) * (k1 - k2) / ((k1 + k2) * (k1 + k2));
  const double l1 = log_weight(spec.modes[0], n, m, lp);
  const double l2 = log_weight(spec.modes[1], n, m, lp);
  const double l12 = l1 + l2 + std::log(A);
  const double top = std::max({0.0, l1, l2, l12});
  const double e0 = std::exp(-top);
  const double e1 = std::exp(l1 - top);
  const double e2 = std::exp(l2 - top);
  const double e12 = std::exp(l12 - top);
  const double num = 2.0 * k1 * e1 + 2.0 * k2 * e2 + 2.0 * (k1 + k2) * e12;
  const double den = e0 + e1 + e2 + e12;
  return num / den;
}

double soliton_value(int n, int m, const SolitonSpec& spec, const LatticeParams& lp) {
  return spec.modes.size() == 2 ? two_soliton(n, m, spec, lp) : one_soliton(n, m, spec, lp);
}

Grid soliton_grid(const SolitonSpec& spec, const LatticeParams& lp, int n0, int m0, int cols,
                  int rows) {
  spec.validate(lp);
  return Grid::generate(n0, m0, cols, rows,
                        [&](int n, int m) { return soliton_value(n, m, spec, lp); });
}

double soliton_core_n(const SolitonSpec& spec, const LatticeParams& lp, int m) {
  spec.validate(lp);
  const auto& md = spec.modes[0];
  const double base = log_weight(md, 0, m, lp);
  return -base / std::log(growth_n(md.kappa0, lp));
}

double PotentialView::eta(int n, int m) const { return grid.at(n, m) - grid.at(n + 2, m); }

double PotentialView::q_pot(int n, int m) const { return 2.0 * params.p + eta(n, m); }

double PotentialView::p_pot(int n, int m) const {
  return 2.0 * params.q - grid.at(n, m + 2) + grid.at(n, m);
}

SolitonSpec soliton_spec_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SolitonSpec spec;
  for (const auto& md : j.at("modes"))
    spec.modes.push_back({md.at("kappa0").get<double>(), md.at("c0").get<double>()});
  return spec;
}

std::string soliton_spec_to_json(const SolitonSpec& spec) {
  nlohmann::json j;
  j["modes"] = nlohmann::json::array();
  for (const auto& md : spec.modes) j["modes"].push_back({{"kappa0", md.kappa0}, {"c0", md.c0}});
  return j.dump();
}

}  // namespace lpkdv
