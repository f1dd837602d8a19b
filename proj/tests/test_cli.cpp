#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "lpkdv/grid_io.hpp"
#include "lpkdv/soliton.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / ("lpkdv_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }

  fs::path file(const std::string& name, const std::string& content) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p;
  }

  RunResult run(const std::string& args) const {
    const fs::path out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
    const std::string cmd = std::string(LPKDV_CLI_PATH) + " " + args + " > " + out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  }

  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
};

std::string strip_wallclock(const std::string& s) {
  std::stringstream in(s);
  std::string line, out;
  while (std::getline(in, line))
    if (line.find("wallclock_seconds") == std::string::npos) out += line + "\n";
  return out;
}

}  // namespace

TEST_CASE("verify lattice-core passes") {
  const Scratch s;
  const RunResult r = s.run("verify lattice-core");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("schema") == "1");
  CHECK(j.at("all_pass") == true);
  CHECK(j.at("cases").size() >= 5);
}

TEST_CASE("verify output is deterministic apart from the wallclock") {
  const Scratch s;
  const RunResult a = s.run("verify soliton --seed 5");
  const RunResult b = s.run("verify soliton --seed 5");
  CHECK(a.code == 0);
  CHECK(strip_wallclock(a.out) == strip_wallclock(b.out));
  CHECK(a.out.find("wallclock_seconds") != std::string::npos);
}

TEST_CASE("soliton grid re-checked by verify") {
  const Scratch s;
  const fs::path grid = s.dir() / "grid.csv";
  REQUIRE(s.run("soliton --out " + grid.string()).code == 0);
  const lpkdv::GridFile gf = lpkdv::grid_from_csv(slurp(grid));
  CHECK(gf.grid.cols() == 40);
  CHECK(lpkdv::residual_max(gf.grid, gf.params) < 1e-9);
  const RunResult r = s.run("verify lattice-core --grid " + grid.string());
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const auto& last = j.at("cases").back();
  CHECK(last.at("name") == "input-grid/residual_max");
  CHECK(last.at("metric").get<double>() < 1e-9);
}

TEST_CASE("evolve from a staircase file") {
  const Scratch s;
  const lpkdv::LatticeParams lp{2.0, -1.0};
  const lpkdv::Grid g = lpkdv::soliton_grid(lpkdv::SolitonSpec{{{0.5, 1.0}}}, lp, -5, -5, 10, 10);
  const fs::path st = s.file("st.csv", lpkdv::staircase_to_csv(lpkdv::staircase_of(g), lp));
  const RunResult r = s.run("evolve " + st.string());
  REQUIRE(r.code == 0);
  const lpkdv::GridFile gf = lpkdv::grid_from_csv(r.out);
  CHECK(gf.grid.n0() == -5);
  CHECK(lpkdv::residual_max(gf.grid, lp) < 1e-10);
}

TEST_CASE("flow error paths") {
  const Scratch s;
  const fs::path ch = s.file("ch.json", R"({"kind":"Xn","k":0})");
  const fs::path grid = s.file("g.csv", lpkdv::grid_to_csv(lpkdv::Grid(0, 0, 6, 3, 0.0), {2.0, 1.0}));
  const RunResult small = s.run("flow --char " + ch.string() + " --grid " + grid.string() + " --steps 20");
  CHECK(small.code == 1);
  CHECK(small.err.rfind("WINDOW_TOO_SMALL:", 0) == 0);
  CHECK(small.err.find('\n') == small.err.size() - 1);

  const RunResult missing = s.run("flow --char " + ch.string() + " --grid " + (s.dir() / "nope.csv").string());
  CHECK(missing.code == 2);

  const fs::path bad = s.file("bad.json", "{not json");
  CHECK(s.run("flow --char " + bad.string() + " --grid " + grid.string()).code == 2);

  const fs::path wide = s.file("w.csv", lpkdv::grid_to_csv(lpkdv::Grid(0, 0, 20, 3, 0.0), {2.0, 1.0}));
  const RunResult ok = s.run("flow --char " + ch.string() + " --grid " + wide.string() + " --steps 1 --eps 0.1");
  CHECK(ok.code == 0);
  const lpkdv::GridFile out = lpkdv::grid_from_csv(ok.out);
  CHECK(out.grid.cols() == 20 - 2 * 4);
  CHECK(out.grid.n0() == 4);
  CHECK(out.grid.max_abs() == 0.0);
}

TEST_CASE("argument errors exit with 2") {
  const Scratch s;
  CHECK(s.run("verify no-such-suite").code == 2);
  CHECK(s.run("soliton --params 2").code == 2);
  CHECK(s.run("frobnicate").code == 2);
}

TEST_CASE("module errors exit with 1") {
  const Scratch s;
  const RunResult r = s.run("soliton --params 2,2");
  CHECK(r.code == 1);
  CHECK(r.err.rfind("INVALID_PARAMS:", 0) == 0);
}

TEST_CASE("painleve and continuum commands") {
  const Scratch s;
  const fs::path rp = s.file("rp.json", R"({"w":1,"c":0.1,"p":2,"q":0.1,"m":2})");
  const RunResult p = s.run("painleve --rp " + rp.string() + " --steps 10");
  CHECK(p.code == 0);
  CHECK(p.out.rfind("# w=1 c=0.10000000000000001 p=2 q=0.10000000000000001 m=2\nn,y,u\n", 0) == 0);

  const RunResult c = s.run("continuum --amplitude 0");
  CHECK(c.code == 0);
  const auto j = nlohmann::json::parse(c.out);
  CHECK(j.at("order") == "ExactMatch");
}
