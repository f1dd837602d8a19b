// Command-line front end: grids, flows, trajectories and verification reports.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "lpkdv/characteristic.hpp"
#include "lpkdv/continuum.hpp"
#include "lpkdv/gen_symmetry.hpp"
#include "lpkdv/grid_io.hpp"
#include "lpkdv/painleve.hpp"
#include "lpkdv/soliton.hpp"
#include "lpkdv/suites.hpp"

namespace {

using namespace lpkdv;

/// I/O and parse failures; mapped to exit code 2.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write '" + out_path + "'");
}

std::vector<double> parse_list(const std::string& s, std::size_t expect, const char* what) {
  std::vector<double> v;
  std::istringstream ls(s);
  std::string cell;
  while (std::getline(ls, cell, ',')) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
      x = std::stod(cell, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != cell.size()) throw IoError(fmt::format("{}: bad number '{}'", what, cell));
    v.push_back(x);
  }
  if (expect != 0 && v.size() != expect)
    throw IoError(fmt::format("{}: expected {} comma-separated values, got {}", what, expect, v.size()));
  return v;
}

LatticeParams parse_params(const std::string& s) {
  const auto v = parse_list(s, 2, "--params");
  return {v[0], v[1]};
}

struct Window {
  int n0, m0, cols, rows;
};

Window parse_window(const std::string& s) {
  const auto v = parse_list(s, 4, "--window");
  for (double x : v)
    if (x != std::floor(x)) throw IoError("--window: values must be integers");
  return {static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]), static_cast<int>(v[3])};
}

struct Options {
  std::string params, window, out, tol_text;
  std::uint64_t seed = kDefaultSeed;
  // soliton
  std::string spec_file;
  // evolve
  std::string staircase_file;
  // verify
  std::string suite = "all";
  // flow
  std::string char_file, grid_file;
  double eps = 0.05;
  int steps = 20;
  // painleve
  std::string rp_file, state_text;
  int start_n = 0;
  bool start_n_set = false;
  // continuum
  std::string deltas = "0.1,0.05,0.025";
  double amplitude = 0.1, width = 5.0, tau = 1.0;
  std::string sequence_out;
};

int cmd_soliton(const Options& o) {
  const LatticeParams lp = o.params.empty() ? LatticeParams{} : parse_params(o.params);
  lp.validate();
  SolitonSpec spec{{SolitonMode{}}};
  if (!o.spec_file.empty()) spec = soliton_spec_from_json(read_file(o.spec_file));
  spec.validate(lp);
  Window w{0, -20, 40, 40};
  if (o.window.empty())
    w.n0 = static_cast<int>(std::lround(soliton_core_n(spec, lp, 0))) - 20;
  else
    w = parse_window(o.window);
  emit(o.out, grid_to_csv(soliton_grid(spec, lp, w.n0, w.m0, w.cols, w.rows), lp));
  return 0;
}

int cmd_evolve(const Options& o) {
  StaircaseFile sf = staircase_from_csv(read_file(o.staircase_file));
  if (!o.params.empty()) sf.params = parse_params(o.params);
  emit(o.out, grid_to_csv(evolve(sf.staircase, sf.params), sf.params));
  return 0;
}

int cmd_verify(const Options& o) {
  SuiteConfig cfg;
  cfg.seed = o.seed;
  if (!o.params.empty()) cfg.params = parse_params(o.params);
  cfg.params.validate();
  if (!o.tol_text.empty()) cfg.tol = parse_list(o.tol_text, 1, "--tol")[0];
  VerificationReport rep;
  try {
    rep = run_suite(o.suite, cfg);
  } catch (const std::invalid_argument& e) {
    throw IoError(e.what());
  }
  if (!o.grid_file.empty()) {
    GridFile gf = grid_from_csv(read_file(o.grid_file));
    if (!o.params.empty()) gf.params = parse_params(o.params);
    gf.params.validate();
    VerificationReport extra;
    extra.suite = "input-grid";
    extra.check("residual_max", residual_max(gf.grid, gf.params), cfg.tol.value_or(1e-9),
                fmt::format("{}x{} window from {}", gf.grid.cols(), gf.grid.rows(), o.grid_file));
    rep.append(extra);
  }
  emit(o.out, report_to_json(rep) + "\n");
  if (!rep.all_pass()) {
    int failed = 0;
    for (const auto& c : rep.cases) failed += c.pass ? 0 : 1;
    std::cerr << fmt::format("VERIFICATION_FAILED: {} of {} cases\n", failed, rep.cases.size());
    return 1;
  }
  return 0;
}

int cmd_flow(const Options& o) {
  const Characteristic ch = characteristic_from_json(read_file(o.char_file));
  GridFile gf = grid_from_csv(read_file(o.grid_file));
  if (!o.params.empty()) gf.params = parse_params(o.params);
  gf.params.validate();
  const FlowResult r = flow_integrate(ch, gf.grid, gf.params, o.eps, o.steps);
  emit(o.out, grid_to_csv(r.grid, gf.params));
  return 0;
}

int cmd_painleve(const Options& o) {
  ReductionParams rp;
  if (!o.rp_file.empty()) rp = reduction_params_from_json(read_file(o.rp_file));
  rp.validate();
  PainleveState start;
  if (!o.state_text.empty()) {
    const auto v = parse_list(o.state_text, 4, "--state");
    start = {o.start_n_set ? o.start_n : 1, v[0], v[1], v[2], v[3]};
  } else {
    // Initial state harvested from a constrained grid wide enough for the run.
    const bool sqrt_profile = rp.w == 0.0 || rp.pw() == rp.qw();
    const int n0 = o.start_n_set ? o.start_n - 1 : (sqrt_profile ? std::abs(rp.m) + 29 : 1);
    const int m0 = rp.m - 1;
    const int cols = std::max(o.steps + 4, 6);
    const GenerateResult g = painleve_generate(rp, invariant_seed(rp, n0, m0, cols, 5, 0.01, o.seed));
    start = harvest_state(g.grid, n0 + 1, rp.m);
  }
  emit(o.out, trajectory_to_csv(painleve_trajectory(start, rp, o.steps), rp));
  return 0;
}

int cmd_continuum(const Options& o) {
  LimitConfig cfg;
  if (!o.params.empty()) cfg.p = parse_params(o.params).p;
  cfg.deltas = parse_list(o.deltas, 0, "--deltas");
  cfg.amplitude = o.amplitude;
  cfg.width = o.width;
  cfg.tau_target = o.tau;
  for (double d : cfg.deltas)
    if (!(d > 0.0)) throw Error(ErrorCode::InvalidParams, fmt::format("delta {} must be positive", d));
  const LimitOrder r = continuum_limit_order(cfg);
  nlohmann::ordered_json j;
  j["schema"] = "1";
  j["p"] = cfg.p;
  j["tau"] = cfg.tau_target;
  j["profile"] = {{"amplitude", cfg.amplitude}, {"width", cfg.width}};
  j["deltas"] = r.deltas;
  j["errors"] = r.errors;
  if (r.exact_match) {
    j["order"] = "ExactMatch";
  } else {
    j["order"] = r.slope;
  }
  emit(o.out, j.dump(2) + "\n");
  if (!o.sequence_out.empty()) {
    const int steps = std::max(1, static_cast<int>(std::lround(cfg.dde_steps_per_unit * cfg.tau_target)));
    const int reach = cfg.half_window + 8 * steps + 8;
    Sequence v0{-reach, {}};
    for (int k = -reach; k <= reach; ++k) v0.v.push_back(cfg.amplitude * std::exp(-std::pow(k / cfg.width, 2)));
    emit(o.sequence_out, sequence_to_csv(integrate_dde(rhs_v, {v0, 0.0, cfg.p}, cfg.tau_target, steps)));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lpkdv: lattice potential KdV laboratory"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub, bool with_window) {
    sub->add_option("--params", o.params, "p,q");
    if (with_window) sub->add_option("--window", o.window, "n0,m0,N,M");
    sub->add_option("--out", o.out, "output file (default stdout)");
  };

  auto* sol = app.add_subcommand("soliton", "soliton grid as CSV");
  common(sol, true);
  sol->add_option("--spec", o.spec_file, "soliton spec JSON {\"modes\":[{\"kappa0\":..,\"c0\":..}]}");

  auto* ev = app.add_subcommand("evolve", "fill a quadrant from staircase CSV");
  common(ev, false);
  ev->add_option("staircase", o.staircase_file, "staircase CSV")->required();

  auto* ver = app.add_subcommand("verify", "run a verification suite, JSON report");
  common(ver, false);
  ver->add_option("suite", o.suite, "suite name")->check(CLI::IsMember(suite_names()));
  ver->add_option("--seed", o.seed, "random seed");
  ver->add_option("--tol", o.tol_text, "tolerance override for identity cases");
  ver->add_option("--grid", o.grid_file, "also report residual_max of this grid CSV");

  auto* fl = app.add_subcommand("flow", "integrate a symmetry flow on a grid");
  common(fl, false);
  fl->add_option("--char", o.char_file, "characteristic JSON")->required();
  fl->add_option("--grid", o.grid_file, "grid CSV")->required();
  fl->add_option("--eps", o.eps, "total flow parameter");
  fl->add_option("--steps", o.steps, "RK4 steps");

  auto* pa = app.add_subcommand("painleve", "reduced recurrence trajectory as CSV");
  pa->add_option("--out", o.out, "output file (default stdout)");
  pa->add_option("--rp", o.rp_file, "reduction JSON {w, c, p, q, m}");
  pa->add_option("--seed", o.seed, "seed for the constrained-grid start");
  pa->add_option("--steps", o.steps, "number of steps");
  pa->add_option("--state", o.state_text, "y_prev,y_cur,u_cur,u_next (skips the grid start)");
  pa->add_option("--n", o.start_n, "starting n")->each([&](const std::string&) { o.start_n_set = true; });

  auto* co = app.add_subcommand("continuum", "continuum-limit order report JSON");
  common(co, false);
  co->add_option("--deltas", o.deltas, "comma-separated delta values");
  co->add_option("--amplitude", o.amplitude, "Gaussian profile amplitude");
  co->add_option("--width", o.width, "Gaussian profile width");
  co->add_option("--tau", o.tau, "comparison time");
  co->add_option("--sequence-out", o.sequence_out, "write the limit solution v_k(tau) as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "PARSE_ERROR: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*sol) return cmd_soliton(o);
    if (*ev) return cmd_evolve(o);
    if (*ver) return cmd_verify(o);
    if (*fl) return cmd_flow(o);
    if (*pa) return cmd_painleve(o);
    if (*co) return cmd_continuum(o);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "PARSE_ERROR: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "IO_ERROR: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
