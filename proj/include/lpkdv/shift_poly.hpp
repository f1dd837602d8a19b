#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace lpkdv {

/// Polynomials in the shifted reciprocal potentials r_j = 1/q_{n+j}.
/// A monomial is a list of (shift, exponent) pairs sorted by shift.
class ShiftPoly {
 public:
  using Monomial = std::vector<std::pair<int, int>>;

  ShiftPoly() = default;
  static ShiftPoly constant(double c);
  /// The single monomial r_shift.
  static ShiftPoly r(int shift);

  ShiftPoly operator+(const ShiftPoly& o) const;
  ShiftPoly operator-(const ShiftPoly& o) const;
  ShiftPoly operator*(const ShiftPoly& o) const;
  ShiftPoly operator*(double c) const;

  /// E^s: every shift increases by s.
  ShiftPoly shifted(int s) const;

  /// H with H_{n+1} - H_n = *this and no constant term. Throws Degenerate when
  /// no such polynomial exists.
  ShiftPoly antidifference() const;

  double evaluate(const std::function<double(int)>& r_at_shift) const;
  /// Value at r_j = rho for all j.
  double vacuum(double rho) const;

  /// Smallest and largest shift present; (0, 0) for constants.
  std::pair<int, int> shift_range() const;
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, double>& terms() const { return terms_; }
  std::string to_string() const;

 private:
  void add_term(const Monomial& mono, double c);
  std::map<Monomial, double> terms_;
};

/// -E^{-1} r_0 (E + 1) antidifference(r_0 (E^2 - 1) f), the local inverse
/// recursion operator with the homogeneous choice of antidifference.
ShiftPoly inverse_recursion(const ShiftPoly& f);

/// Homogeneous hierarchy: hat_X(0) = r_{-1}, hat_X(k+1) = inverse_recursion(hat_X(k)).
ShiftPoly hierarchy_homogeneous(int k);

/// Vacuum value of antidifference(r_0 (E^2 - 1) f) at r = rho. This is the tail
/// constant that turns the bounded truncated sum into the homogeneous result.
double inverse_recursion_tail(const ShiftPoly& f, double rho);

}  // namespace lpkdv
