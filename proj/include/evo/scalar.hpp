#pragma once

#include <algorithm>
#include <cmath>
#include <type_traits>

#include "evo/radical.hpp"
#include "evo/rational.hpp"

namespace evo {

/// Relative zero-test policy for floating mode. Ignored by exact scalars.
struct Tolerance {
  double rel = 1e-9;
};

/// |x| <= rel * max(1, scale)^degree, where degree is the homogeneity of x in
/// the matrix entries (entries are degree 1, determinants degree 2).
inline bool near_zero(double x, double scale, Tolerance tol, int degree = 1) {
  const double s = std::max(1.0, scale);
  return std::abs(x) <= tol.rel * std::pow(s, degree);
}

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  /// Scalar of change-of-basis witnesses.
  using witness_type = double;
  /// Scalar of canonical-class parameters.
  using param_type = double;

  static double root(int n, double q) { return n == 2 ? std::sqrt(q) : n == 3 ? std::cbrt(q) : q; }
  static double lift(double x) { return x; }
  static double param(double x) { return x; }
  static double param_from_cube(double c) { return std::cbrt(c); }
  static int sign(double x) { return (x > 0) - (x < 0); }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  using witness_type = RadicalNumber;
  using param_type = CubeRoot;

  static RadicalNumber root(int n, const Rational& q) { return RadicalNumber::generator(n, q); }
  static RadicalNumber lift(const Rational& x) { return RadicalNumber(x); }
  static CubeRoot param(const Rational& x) { return CubeRoot::of_rational(x); }
  static CubeRoot param_from_cube(const Rational& c) { return CubeRoot::of_cube(c); }
  static int sign(const Rational& x) { return sgn(x); }
};

template <>
struct ScalarTraits<RadicalNumber> {
  static constexpr bool exact = true;
  using witness_type = RadicalNumber;
  using param_type = CubeRoot;
  static RadicalNumber lift(const RadicalNumber& x) { return x; }
};

template <class T>
using witness_t = typename ScalarTraits<T>::witness_type;
template <class T>
using param_t = typename ScalarTraits<T>::param_type;

template <class T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

inline double to_double(const RadicalNumber& x) { return x.to_double(); }
inline double to_double(const CubeRoot& x) { return x.to_double(); }

}  // namespace evo
