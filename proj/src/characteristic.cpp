#include "lpkdv/characteristic.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "lpkdv/shift_poly.hpp"

namespace lpkdv {

Characteristic Characteristic::xn(int k) {
  if (k < 0 || k > 3) throw Error(ErrorCode::InvalidSpec, fmt::format("Xn level {} not in 0..3", k));
  Characteristic c;
  c.kind = CharKind::Xn;
  c.k = k;
  return c;
}

Characteristic Characteristic::xm(int k) {
  Characteristic c = xn(k);
  c.kind = CharKind::Xm;
  return c;
}

namespace {

Characteristic of_kind(CharKind kind) {
  Characteristic c;
  c.kind = kind;
  return c;
}

/// Level-3 homogeneous part is generated once; lower levels are written out.
const ShiftPoly& level3() {
  static const ShiftPoly poly = hierarchy_homogeneous(3);
  return poly;
}

int hierarchy_radius(int k) {
  if (k < 3) return k + 1;
  auto [lo, hi] = level3().shift_range();
  return std::max(-lo, hi + 2);
}

}  // namespace

Characteristic Characteristic::yn1() { return of_kind(CharKind::Yn1); }
Characteristic Characteristic::ym1() { return of_kind(CharKind::Ym1); }
Characteristic Characteristic::y0n() { return of_kind(CharKind::Y0n); }
Characteristic Characteristic::y0m() { return of_kind(CharKind::Y0m); }
Characteristic Characteristic::sigma0() { return of_kind(CharKind::Sigma0); }

Characteristic Characteristic::zn(double w, ZVariant v) {
  Characteristic c = of_kind(CharKind::Zn);
  c.w = w;
  c.variant = v;
  return c;
}

Characteristic Characteristic::zm(double w, ZVariant v) {
  Characteristic c = zn(w, v);
  c.kind = CharKind::Zm;
  return c;
}

Characteristic Characteristic::point_gen(PointGenerator g) {
  Characteristic c = of_kind(CharKind::Point);
  c.point = g;
  return c;
}

Characteristic Characteristic::combined(std::vector<Term> terms) {
  Characteristic c = of_kind(CharKind::Combined);
  c.terms = std::move(terms);
  return c;
}

int Characteristic::radius_n() const {
  switch (kind) {
    case CharKind::Xn: return hierarchy_radius(k);
    case CharKind::Yn1:
    case CharKind::Sigma0:
    case CharKind::Zn: return 1;
    case CharKind::Combined: {
      int r = 0;
      for (const auto& t : terms) r = std::max(r, t.ch.radius_n());
      return r;
    }
    default: return 0;
  }
}

int Characteristic::radius_m() const {
  switch (kind) {
    case CharKind::Xm: return hierarchy_radius(k);
    case CharKind::Ym1:
    case CharKind::Zm: return 1;
    case CharKind::Combined: {
      int r = 0;
      for (const auto& t : terms) r = std::max(r, t.ch.radius_m());
      return r;
    }
    default: return 0;
  }
}

namespace {

const char* variant_name(ZVariant v) {
  switch (v) {
    case ZVariant::Ms: return "ms";
    case ZVariant::Z1: return "z1";
    case ZVariant::Z2: return "z2";
  }
  return "?";
}

const char* point_name(PointGenerator g) {
  switch (g) {
    case PointGenerator::X1: return "X1";
    case PointGenerator::X2: return "X2";
    case PointGenerator::X3: return "X3";
  }
  return "?";
}

}  // namespace

std::string Characteristic::label() const {
  switch (kind) {
    case CharKind::Xn: return fmt::format("Xn({})", k);
    case CharKind::Xm: return fmt::format("Xm({})", k);
    case CharKind::Yn1: return "Yn1";
    case CharKind::Ym1: return "Ym1";
    case CharKind::Y0n: return "Y0n";
    case CharKind::Y0m: return "Y0m";
    case CharKind::Sigma0: return "Sigma0";
    case CharKind::Zn: return fmt::format("Zn({},{})", w, variant_name(variant));
    case CharKind::Zm: return fmt::format("Zm({},{})", w, variant_name(variant));
    case CharKind::Point: return point_name(point);
    case CharKind::Combined: {
      std::string s;
      for (const auto& t : terms) s += fmt::format("{}{}*{}", s.empty() ? "" : "+", t.coef, t.ch.label());
      return s;
    }
  }
  return "?";
}

double hierarchy_constant(int k, double a) {
  switch (k) {
    case 0: return 1.0 / (2.0 * a);
    case 1: return -1.0 / (4.0 * std::pow(a, 3));
    case 2: return 3.0 / (16.0 * std::pow(a, 5));
    case 3: return level3().vacuum(1.0 / (2.0 * a));
    default: throw Error(ErrorCode::InvalidSpec, fmt::format("no constant for level {}", k));
  }
}

namespace {

constexpr double kDenomTol = 1e-12;

double checked_inverse(double x, const char* what, int n, int m) {
  if (!(std::abs(x) >= kDenomTol))
    throw Error(ErrorCode::DivergentDenominator,
                fmt::format("{} = {:.3e} at n={} m={}", what, x, n, m));
  return 1.0 / x;
}

/// r(j) = 1/q_{n+j,m}, q_{n,m} = 2p + u(n,m) - u(n+2,m).
double rq(const Grid& g, const LatticeParams& lp, int n, int m, int j) {
  const double q = 2.0 * lp.p + g.at(n + j, m) - g.at(n + j + 2, m);
  return checked_inverse(q, "q", n + j, m);
}

/// r(j) = 1/p_{n,m+j}, p_{n,m} = 2q + u(n,m) - u(n,m+2).
double rp(const Grid& g, const LatticeParams& lp, int n, int m, int j) {
  const double p = 2.0 * lp.q + g.at(n, m + j) - g.at(n, m + j + 2);
  return checked_inverse(p, "p", n, m + j);
}

/// Displayed hierarchy members in terms of r_j, with constant a = p or q.
template <class R>
double hierarchy_value(int k, R&& r, double a) {
  switch (k) {
    case 0: return -r(-1) + hierarchy_constant(0, a);
    case 1: {
      const double rm1 = r(-1);
      return rm1 * rm1 * (r(0) + r(-2)) + hierarchy_constant(1, a);
    }
    case 2: {
      const double r1 = r(1), r0 = r(0), rm1 = r(-1), rm2 = r(-2), rm3 = r(-3);
      const double bracket = rm2 * (r0 * rm1 + rm1 * rm2 + rm2 * rm3) +
                             r0 * (r1 * r0 + r0 * rm1 + rm1 * rm2);
      return -rm1 * rm1 * bracket + hierarchy_constant(2, a);
    }
    case 3: return -level3().evaluate(r) + hierarchy_constant(3, a);
  }
  return 0.0;
}

double pow_w(double base, double w) {
  const double v = std::pow(base, w);
  if (!std::isfinite(v))
    throw Error(ErrorCode::InvalidW, fmt::format("{}^{} is not a finite real", base, w));
  return v;
}

/// Z family in the n direction written for generic (a, b) = (p, q); the m
/// direction uses the same formula with n <-> m, p <-> q.
double z_value(ZVariant v, double w, int idx, double a, double b, double u, double inv_pot) {
  const double aw = pow_w(a, w), bw = pow_w(b, w);
  switch (v) {
    case ZVariant::Ms: {
      const double kz = (aw - bw) / (2.0 * (a * a - b * b));
      return idx * aw * inv_pot - kz * (a * idx - 0.5 * u);
    }
    case ZVariant::Z1:
    case ZVariant::Z2: {
      if (w == 0.0 || aw == bw)
        throw Error(ErrorCode::InvalidW, fmt::format("p^w == q^w at w={}", w));
      const double lead = v == ZVariant::Z1 ? aw + bw : pow_w(a * b, w);
      return idx * lead * inv_pot - u / (aw - bw);
    }
  }
  return 0.0;
}

}  // namespace

double char_eval(const Characteristic& c, int n, int m, const Grid& g, const LatticeParams& lp) {
  switch (c.kind) {
    case CharKind::Xn:
      return hierarchy_value(c.k, [&](int j) { return rq(g, lp, n, m, j); }, lp.p);
    case CharKind::Xm:
      return hierarchy_value(c.k, [&](int j) { return rp(g, lp, n, m, j); }, lp.q);
    case CharKind::Yn1: return n * rq(g, lp, n, m, -1);
    case CharKind::Ym1: return m * rp(g, lp, n, m, -1);
    case CharKind::Y0n: return g.at(n, m) - lp.p * n;
    case CharKind::Y0m: return g.at(n, m) - lp.q * m;
    case CharKind::Sigma0:
      return (2.0 * n - g.at(n, m) - 1.0) / (2.0 * lp.p * lp.p) + (2.0 * n - 1.0) * rq(g, lp, n, m, -1);
    case CharKind::Zn:
      return z_value(c.variant, c.w, n, lp.p, lp.q, g.at(n, m), rq(g, lp, n, m, -1));
    case CharKind::Zm:
      return z_value(c.variant, c.w, m, lp.q, lp.p, g.at(n, m), rp(g, lp, n, m, -1));
    case CharKind::Point: return point_char(c.point, n, m, g.at(n, m), lp);
    case CharKind::Combined: {
      double s = 0.0;
      for (const auto& t : c.terms) s += t.coef * char_eval(t.ch, n, m, g, lp);
      return s;
    }
  }
  return 0.0;
}

Grid char_field(const Characteristic& c, const Grid& g, const LatticeParams& lp) {
  const int rn = c.radius_n(), rm = c.radius_m();
  const int cols = g.cols() - 2 * rn, rows = g.rows() - 2 * rm;
  if (cols <= 0 || rows <= 0)
    throw Error(ErrorCode::WindowTooSmall,
                fmt::format("{}x{} window cannot hold the stencil of {}", g.cols(), g.rows(), c.label()));
  return Grid::generate(g.n0() + rn, g.m0() + rm, cols, rows,
                        [&](int n, int m) { return char_eval(c, n, m, g, lp); });
}

double char_vacuum(const Characteristic& c, int n, int m, double u, const LatticeParams& lp) {
  switch (c.kind) {
    case CharKind::Xn:
    case CharKind::Xm: return 0.0;
    case CharKind::Yn1: return n / (2.0 * lp.p);
    case CharKind::Ym1: return m / (2.0 * lp.q);
    case CharKind::Y0n: return u - lp.p * n;
    case CharKind::Y0m: return u - lp.q * m;
    case CharKind::Sigma0:
      return (2.0 * n - u - 1.0) / (2.0 * lp.p * lp.p) + (2.0 * n - 1.0) / (2.0 * lp.p);
    case CharKind::Zn: return z_value(c.variant, c.w, n, lp.p, lp.q, u, 1.0 / (2.0 * lp.p));
    case CharKind::Zm: return z_value(c.variant, c.w, m, lp.q, lp.p, u, 1.0 / (2.0 * lp.q));
    case CharKind::Point: return point_char(c.point, n, m, u, lp);
    case CharKind::Combined: {
      double s = 0.0;
      for (const auto& t : c.terms) s += t.coef * char_vacuum(t.ch, n, m, u, lp);
      return s;
    }
  }
  return 0.0;
}

namespace {

using nlohmann::json;

ZVariant variant_of(const std::string& s) {
  if (s == "ms") return ZVariant::Ms;
  if (s == "z1") return ZVariant::Z1;
  if (s == "z2") return ZVariant::Z2;
  throw std::runtime_error("unknown Z variant '" + s + "'");
}

Characteristic from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "Xn") return Characteristic::xn(j.at("k").get<int>());
  if (kind == "Xm") return Characteristic::xm(j.at("k").get<int>());
  if (kind == "Yn1") return Characteristic::yn1();
  if (kind == "Ym1") return Characteristic::ym1();
  if (kind == "Y0n") return Characteristic::y0n();
  if (kind == "Y0m") return Characteristic::y0m();
  if (kind == "Sigma0") return Characteristic::sigma0();
  if (kind == "Zn" || kind == "Zm") {
    const double w = j.at("w").get<double>();
    const ZVariant v = variant_of(j.value("variant", std::string("ms")));
    return kind == "Zn" ? Characteristic::zn(w, v) : Characteristic::zm(w, v);
  }
  if (kind == "X1") return Characteristic::point_gen(PointGenerator::X1);
  if (kind == "X2") return Characteristic::point_gen(PointGenerator::X2);
  if (kind == "X3") return Characteristic::point_gen(PointGenerator::X3);
  if (kind == "combined") {
    std::vector<Characteristic::Term> terms;
    for (const auto& t : j.at("terms")) terms.push_back({t.at("coef").get<double>(), from_json(t.at("char"))});
    return Characteristic::combined(std::move(terms));
  }
  throw std::runtime_error("unknown characteristic kind '" + kind + "'");
}

json to_json(const Characteristic& c) {
  switch (c.kind) {
    case CharKind::Xn: return {{"kind", "Xn"}, {"k", c.k}};
    case CharKind::Xm: return {{"kind", "Xm"}, {"k", c.k}};
    case CharKind::Yn1: return {{"kind", "Yn1"}};
    case CharKind::Ym1: return {{"kind", "Ym1"}};
    case CharKind::Y0n: return {{"kind", "Y0n"}};
    case CharKind::Y0m: return {{"kind", "Y0m"}};
    case CharKind::Sigma0: return {{"kind", "Sigma0"}};
    case CharKind::Zn:
    case CharKind::Zm:
      return {{"kind", c.kind == CharKind::Zn ? "Zn" : "Zm"}, {"w", c.w}, {"variant", variant_name(c.variant)}};
    case CharKind::Point: return {{"kind", point_name(c.point)}};
    case CharKind::Combined: {
      json terms = json::array();
      for (const auto& t : c.terms) terms.push_back({{"coef", t.coef}, {"char", to_json(t.ch)}});
      return {{"kind", "combined"}, {"terms", terms}};
    }
  }
  return {};
}

}  // namespace

Characteristic characteristic_from_json(const std::string& text) { return from_json(json::parse(text)); }

std::string characteristic_to_json(const Characteristic& c) { return to_json(c).dump(); }

}  // namespace lpkdv
