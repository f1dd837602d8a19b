#include "lpkdv/grid_io.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

namespace lpkdv {

std::string format_real(double x) { return fmt::format("{:.17g}", x); }

void write_grid_csv(std::ostream& os, const Grid& g, const LatticeParams& lp) {
  os << fmt::format("# n0={} m0={} p={} q={}\n", g.n0(), g.m0(), format_real(lp.p),
                    format_real(lp.q));
  for (int m = g.m0(); m < g.m_end(); ++m) {
    std::string line;
    for (int n = g.n0(); n < g.n_end(); ++n) {
      if (n != g.n0()) line += ',';
      line += format_real(g(n, m));
    }
    os << line << '\n';
  }
}

std::string grid_to_csv(const Grid& g, const LatticeParams& lp) {
  std::ostringstream os;
  write_grid_csv(os, g, lp);
  return os.str();
}

namespace {

double parse_real(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::runtime_error("bad number '" + s + "'");
  return v;
}


std::map<std::string, std::string> read_header(std::istream& is) {
  std::string header;
  if (!std::getline(is, header) || header.rfind("#", 0) != 0)
    throw std::runtime_error("csv: missing '#' header line");
  std::map<std::string, std::string> kv;
  std::istringstream hs(header.substr(1));
  std::string tok;
  while (hs >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::runtime_error("csv: bad header token '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  for (const char* key : {"n0", "m0", "p", "q"})
    if (!kv.count(key)) throw std::runtime_error(std::string("csv: header lacks ") + key);
  return kv;
}

std::vector<double> parse_line(const std::string& line) {
  std::vector<double> row;
  std::istringstream ls(line);
  std::string cell;
  while (std::getline(ls, cell, ',')) row.push_back(parse_real(cell));
  return row;
}

}  // namespace

GridFile read_grid_csv(std::istream& is) {
  auto kv = read_header(is);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row = parse_line(line);
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error("grid csv: ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("grid csv: no data rows");

  GridFile out;
  out.params = {parse_real(kv["p"]), parse_real(kv["q"])};
  const int n0 = std::stoi(kv["n0"]);
  const int m0 = std::stoi(kv["m0"]);
  out.grid = Grid(n0, m0, static_cast<int>(rows.front().size()), static_cast<int>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j)
    for (std::size_t i = 0; i < rows[j].size(); ++i)
      out.grid(n0 + static_cast<int>(i), m0 + static_cast<int>(j)) = rows[j][i];
  return out;
}

GridFile grid_from_csv(const std::string& text) {
  std::istringstream is(text);
  return read_grid_csv(is);
}

std::string staircase_to_csv(const Staircase& st, const LatticeParams& lp) {
  auto join = [](const std::vector<double>& v) {
    std::string line;
    for (std::size_t i = 0; i < v.size(); ++i) line += (i ? "," : "") + format_real(v[i]);
    return line;
  };
  return fmt::format("# n0={} m0={} p={} q={}\n{}\n{}\n", st.n0, st.m0, format_real(lp.p),
                     format_real(lp.q), join(st.row), join(st.col));
}

StaircaseFile staircase_from_csv(const std::string& text) {
  std::istringstream is(text);
  auto kv = read_header(is);
  std::vector<std::vector<double>> lines;
  std::string line;
  while (std::getline(is, line))
    if (!line.empty()) lines.push_back(parse_line(line));
  if (lines.size() != 2 || lines[0].empty() || lines[1].empty())
    throw std::runtime_error("staircase csv: expected a row line and a column line");
  StaircaseFile out;
  out.params = {parse_real(kv["p"]), parse_real(kv["q"])};
  out.staircase = {std::stoi(kv["n0"]), std::stoi(kv["m0"]), lines[0], lines[1]};
  return out;
}

}  // namespace lpkdv
