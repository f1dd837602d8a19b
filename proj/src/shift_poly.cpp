#include "lpkdv/shift_poly.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "lpkdv/error.hpp"

namespace lpkdv {

namespace {

using Monomial = ShiftPoly::Monomial;

Monomial multiply(const Monomial& a, const Monomial& b) {
  std::map<int, int> acc;
  for (auto [s, e] : a) acc[s] += e;
  for (auto [s, e] : b) acc[s] += e;
  return Monomial(acc.begin(), acc.end());
}

Monomial shift_mono(const Monomial& a, int s) {
  Monomial out = a;
  for (auto& f : out) f.first += s;
  return out;
}

int degree(const Monomial& a) {
  int d = 0;
  for (auto [s, e] : a) d += e;
  return d;
}

}  // namespace

void ShiftPoly::add_term(const Monomial& mono, double c) {
  if (c == 0.0) return;
  auto [it, inserted] = terms_.emplace(mono, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

ShiftPoly ShiftPoly::constant(double c) {
  ShiftPoly p;
  p.add_term({}, c);
  return p;
}

ShiftPoly ShiftPoly::r(int shift) {
  ShiftPoly p;
  p.add_term({{shift, 1}}, 1.0);
  return p;
}

ShiftPoly ShiftPoly::operator+(const ShiftPoly& o) const {
  ShiftPoly out = *this;
  for (const auto& [mono, c] : o.terms_) out.add_term(mono, c);
  return out;
}

ShiftPoly ShiftPoly::operator-(const ShiftPoly& o) const { return *this + o * -1.0; }

ShiftPoly ShiftPoly::operator*(const ShiftPoly& o) const {
  ShiftPoly out;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) out.add_term(multiply(ma, mb), ca * cb);
  return out;
}

ShiftPoly ShiftPoly::operator*(double c) const {
  ShiftPoly out;
  for (const auto& [mono, v] : terms_) out.add_term(mono, v * c);
  return out;
}

ShiftPoly ShiftPoly::shifted(int s) const {
  ShiftPoly out;
  for (const auto& [mono, c] : terms_) out.add_term(shift_mono(mono, s), c);
  return out;
}

ShiftPoly ShiftPoly::antidifference() const {
  // Group monomials by their translation class. For a term c E^s m0 the
  // telescoping sum (E^s - 1)/(E - 1) m0 is a finite sum of shifts of m0; the
  // leftover -c m0 must cancel within each class.
  std::map<Monomial, double> leftover;
  ShiftPoly h;
  for (const auto& [mono, c] : terms_) {
    if (mono.empty())
      throw Error(ErrorCode::Degenerate, "constant term has no bounded antidifference");
    const int s = mono.front().first;
    const Monomial base = shift_mono(mono, -s);
    leftover[base] += c;
    if (s > 0)
      for (int j = 0; j < s; ++j) h.add_term(shift_mono(base, j), c);
    else if (s < 0)
      for (int j = s; j < 0; ++j) h.add_term(shift_mono(base, j), -c);
  }
  for (const auto& [base, c] : leftover) {
    double scale = 0.0;
    for (const auto& [mono, v] : terms_) scale = std::max(scale, std::abs(v));
    if (std::abs(c) > 1e-9 * std::max(1.0, scale))
      throw Error(ErrorCode::Degenerate, "polynomial is not a total difference");
  }
  return h;
}

double ShiftPoly::evaluate(const std::function<double(int)>& r_at_shift) const {
  double sum = 0.0;
  for (const auto& [mono, c] : terms_) {
    double t = c;
    for (auto [s, e] : mono) t *= std::pow(r_at_shift(s), e);
    sum += t;
  }
  return sum;
}

double ShiftPoly::vacuum(double rho) const {
  double sum = 0.0;
  for (const auto& [mono, c] : terms_) sum += c * std::pow(rho, degree(mono));
  return sum;
}

std::pair<int, int> ShiftPoly::shift_range() const {
  int lo = 0, hi = 0;
  bool first = true;
  for (const auto& [mono, c] : terms_) {
    for (auto [s, e] : mono) {
      if (first) {
        lo = hi = s;
        first = false;
      }
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
  }
  return {lo, hi};
}

std::string ShiftPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [mono, c] : terms_) {
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    out += fmt::format("{}", std::abs(c));
    for (auto [s, e] : mono) out += e == 1 ? fmt::format("*r[{}]", s) : fmt::format("*r[{}]^{}", s, e);
  }
  return out;
}

namespace {

ShiftPoly inner(const ShiftPoly& f) { return ShiftPoly::r(0) * (f.shifted(2) - f); }

}  // namespace

ShiftPoly inverse_recursion(const ShiftPoly& f) {
  const ShiftPoly h = inner(f).antidifference();
  const ShiftPoly z = ShiftPoly::r(0) * (h.shifted(1) + h);
  return z.shifted(-1) * -1.0;
}

ShiftPoly hierarchy_homogeneous(int k) {
  ShiftPoly x = ShiftPoly::r(-1);
  for (int i = 0; i < k; ++i) x = inverse_recursion(x);
  return x;
}

double inverse_recursion_tail(const ShiftPoly& f, double rho) {
  return inner(f).antidifference().vacuum(rho);
}

}  // namespace lpkdv
