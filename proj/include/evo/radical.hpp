#pragma once

#include <array>
#include <compare>
#include <optional>
#include <ostream>
#include <string>

#include "evo/rational.hpp"

namespace evo {

/// Element of the real number field Q(r), r the real root of x^n = q,
/// n in {1, 2, 3}.
///
/// Stored as c0 + c1*r + c2*r^2. Fields are created through generator(),
/// which reduces perfect powers to n = 1, so x^n - q is always irreducible
/// and an element is zero iff all of its coefficients are zero.
///
/// Rationals (degree 1) mix freely with any field; mixing two different
/// radical fields throws std::domain_error. This is the scalar used for
/// exact change-of-basis witnesses, whose entries need at most one square
/// root or one cube root of a rational.
class RadicalNumber {
 public:
  RadicalNumber() = default;
  RadicalNumber(const Rational& value) : coeffs_{value, 0, 0} {}  // NOLINT: implicit by design of the number tower
  RadicalNumber(long value) : coeffs_{Rational(value), 0, 0} {}   // NOLINT

  /// The real root r of x^n = q, as an element of Q(r).
  static RadicalNumber generator(int n, const Rational& q);

  int degree() const { return degree_; }
  const Rational& radicand() const { return radicand_; }
  const std::array<Rational, 3>& coeffs() const { return coeffs_; }

  bool is_rational() const;
  std::optional<Rational> rational() const;
  double to_double() const;
  std::string str() const;

  RadicalNumber operator-() const;
  RadicalNumber& operator+=(const RadicalNumber& rhs);
  RadicalNumber& operator-=(const RadicalNumber& rhs);
  RadicalNumber& operator*=(const RadicalNumber& rhs);
  RadicalNumber& operator/=(const RadicalNumber& rhs);

  RadicalNumber inverse() const;

  friend RadicalNumber operator+(RadicalNumber a, const RadicalNumber& b) { return a += b; }
  friend RadicalNumber operator-(RadicalNumber a, const RadicalNumber& b) { return a -= b; }
  friend RadicalNumber operator*(RadicalNumber a, const RadicalNumber& b) { return a *= b; }
  friend RadicalNumber operator/(RadicalNumber a, const RadicalNumber& b) { return a /= b; }
  friend bool operator==(const RadicalNumber& a, const RadicalNumber& b);

 private:
  void adopt_field(const RadicalNumber& other);

  int degree_ = 1;
  Rational radicand_ = 0;
  std::array<Rational, 3> coeffs_{};
};

std::ostream& operator<<(std::ostream& os, const RadicalNumber& x);

/// Exact real number of the form cbrt(c), c rational. Rationals are the case
/// c = r^3. Closed under multiplication and division; ordering and equality
/// are decided on the cubes, since the real cube root is strictly monotone.
class CubeRoot {
 public:
  CubeRoot() = default;

  static CubeRoot of_rational(const Rational& r) { return CubeRoot(r * r * r); }
  static CubeRoot of_cube(const Rational& c) { return CubeRoot(c); }

  const Rational& cube() const { return cube_; }
  std::optional<Rational> rational() const { return exact_root(cube_, 3); }
  double to_double() const;
  /// "p/q" when rational, otherwise "cbrt(p/q)".
  std::string str() const;
  /// The value as an element of Q(cbrt(c)) (a plain rational when possible).
  RadicalNumber to_radical() const { return RadicalNumber::generator(3, cube_); }

  friend CubeRoot operator*(const CubeRoot& a, const CubeRoot& b) { return CubeRoot(a.cube_ * b.cube_); }
  friend CubeRoot operator/(const CubeRoot& a, const CubeRoot& b) { return CubeRoot(a.cube_ / b.cube_); }
  friend CubeRoot operator-(const CubeRoot& a) { return CubeRoot(-a.cube_); }
  friend bool operator==(const CubeRoot& a, const CubeRoot& b) { return a.cube_ == b.cube_; }
  friend bool operator<(const CubeRoot& a, const CubeRoot& b) { return a.cube_ < b.cube_; }

 private:
  explicit CubeRoot(Rational c) : cube_(std::move(c)) {}
  Rational cube_ = 0;
};

std::ostream& operator<<(std::ostream& os, const CubeRoot& x);

/// True iff x equals the real number cbrt(c). Exact: compares x^3 with c.
bool equals_cube_root(const RadicalNumber& x, const CubeRoot& c);

}  // namespace evo
