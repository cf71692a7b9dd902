#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <type_traits>

#include "evo/errors.hpp"
#include "evo/scalar.hpp"

namespace evo {

/// Plain 2x2 matrix over a field-like scalar.
template <class T>
struct Matrix2 {
  T a11{}, a12{}, a21{}, a22{};

  Matrix2() = default;
  Matrix2(T m11, T m12, T m21, T m22)
      : a11(std::move(m11)), a12(std::move(m12)), a21(std::move(m21)), a22(std::move(m22)) {
    // mpq_class(num, den) is not reduced; exact comparisons need reduced entries
    if constexpr (std::is_same_v<T, Rational>) {
      a11.canonicalize();
      a12.canonicalize();
      a21.canonicalize();
      a22.canonicalize();
    }
  }

  static Matrix2 identity() { return {T(1), T(0), T(0), T(1)}; }
  static Matrix2 swap() { return {T(0), T(1), T(1), T(0)}; }
  static Matrix2 diagonal(T d1, T d2) { return {std::move(d1), T(0), T(0), std::move(d2)}; }

  T det() const { return a11 * a22 - a12 * a21; }

  /// Throws SingularChange when det = 0 (exact test).
  Matrix2 inverse() const {
    const T d = det();
    if (d == T(0)) throw SingularChange();
    return {a22 / d, -a12 / d, -a21 / d, a11 / d};
  }

  /// Entrywise square, S(T) in M' = S(T) M T^-1.
  Matrix2 squared_entries() const { return {a11 * a11, a12 * a12, a21 * a21, a22 * a22}; }

  friend Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
    return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
            x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
  }
  friend Matrix2 operator*(const T& c, const Matrix2& m) { return {c * m.a11, c * m.a12, c * m.a21, c * m.a22}; }
  friend Matrix2 operator-(const Matrix2& x, const Matrix2& y) {
    return {x.a11 - y.a11, x.a12 - y.a12, x.a21 - y.a21, x.a22 - y.a22};
  }
  friend bool operator==(const Matrix2& x, const Matrix2& y) {
    return x.a11 == y.a11 && x.a12 == y.a12 && x.a21 == y.a21 && x.a22 == y.a22;
  }

  template <class U, class F>
  Matrix2<U> map(F&& f) const {
    return {f(a11), f(a12), f(a21), f(a22)};
  }
};

template <class T>
std::ostream& operator<<(std::ostream& os, const Matrix2<T>& m) {
  return os << "[[" << m.a11 << ", " << m.a12 << "], [" << m.a21 << ", " << m.a22 << "]]";
}

inline double max_abs(const Matrix2<double>& m) {
  return std::max({std::abs(m.a11), std::abs(m.a12), std::abs(m.a21), std::abs(m.a22)});
}

inline double frobenius(const Matrix2<double>& m) {
  return std::sqrt(m.a11 * m.a11 + m.a12 * m.a12 + m.a21 * m.a21 + m.a22 * m.a22);
}

/// Structural constants of a 2-dimensional evolution algebra: row i holds the
/// coordinates of e_i e_i in the natural basis. a11..a22 are a1..a4 of the
/// general table e1e1 = a1 e1 + a2 e2, e2e2 = a3 e1 + a4 e2.
template <class T>
struct StructMatrix : Matrix2<T> {
  using Matrix2<T>::Matrix2;
  StructMatrix() = default;
  explicit StructMatrix(const Matrix2<T>& m) : Matrix2<T>(m) {}
};

/// e'1 = t11 e1 + t12 e2, e'2 = t21 e1 + t22 e2 (rows are the new basis).
template <class T>
struct BasisChange : Matrix2<T> {
  using Matrix2<T>::Matrix2;
  BasisChange() = default;
  explicit BasisChange(const Matrix2<T>& m) : Matrix2<T>(m) {}
};

/// Coordinates in the current natural basis.
template <class T>
struct Element {
  T c1{}, c2{};
  friend bool operator==(const Element&, const Element&) = default;
};

/// Evolution product: cross terms e1 e2 vanish, e_i e_i = row_i(M).
template <class T>
Element<T> product(const Element<T>& u, const Element<T>& v, const StructMatrix<T>& m) {
  const T w1 = u.c1 * v.c1;
  const T w2 = u.c2 * v.c2;
  return {w1 * m.a11 + w2 * m.a21, w1 * m.a12 + w2 * m.a22};
}

/// Converts every entry with f, keeping the strong type.
template <class U, class T, class F>
StructMatrix<U> convert(const StructMatrix<T>& m, F&& f) {
  return StructMatrix<U>(m.template map<U>(std::forward<F>(f)));
}
template <class U, class T, class F>
BasisChange<U> convert(const BasisChange<T>& m, F&& f) {
  return BasisChange<U>(m.template map<U>(std::forward<F>(f)));
}

template <class T>
StructMatrix<witness_t<T>> lift(const StructMatrix<T>& m) {
  return convert<witness_t<T>>(m, [](const T& x) { return ScalarTraits<T>::lift(x); });
}

inline StructMatrix<double> to_double(const StructMatrix<Rational>& m) {
  return convert<double>(m, [](const Rational& x) { return x.get_d(); });
}

/// Cross products (t11 t21, t12 t22) . M, i.e. the e1/e2 coordinates of e'1 e'2.
template <class T>
Element<T> cross_terms(const StructMatrix<T>& m, const BasisChange<T>& t) {
  return product(Element<T>{t.a11, t.a12}, Element<T>{t.a21, t.a22}, m);
}

template <class T>
bool is_natural(const StructMatrix<T>& m, const BasisChange<T>& t, Tolerance tol = {}) {
  const Element<T> cross = cross_terms(m, t);
  if constexpr (is_exact_v<T>) {
    return t.det() != T(0) && cross.c1 == T(0) && cross.c2 == T(0);
  } else {
    const double ts = max_abs(t);
    if (std::abs(t.det()) <= tol.rel * ts * ts) return false;
    const double scale = ts * ts * std::max(1.0, max_abs(m));
    return std::abs(cross.c1) <= tol.rel * std::max(1.0, scale) &&
           std::abs(cross.c2) <= tol.rel * std::max(1.0, scale);
  }
}

/// M' = S(T) M T^-1 without checking naturality.
template <class T>
StructMatrix<T> transform_unchecked(const StructMatrix<T>& m, const BasisChange<T>& t) {
  return StructMatrix<T>(t.squared_entries() * static_cast<const Matrix2<T>&>(m) * t.inverse());
}

/// Structural matrix of the same algebra in the basis e' = T e.
/// Throws SingularChange or NotNaturalBasis.
template <class T>
StructMatrix<T> transform(const StructMatrix<T>& m, const BasisChange<T>& t, Tolerance tol = {}) {
  if (t.det() == T(0)) throw SingularChange();
  if (!is_natural(m, t, tol)) throw NotNaturalBasis();
  return transform_unchecked(m, t);
}

/// Basis e'' = T2 e' where e' = T1 e, expressed against e.
template <class T>
BasisChange<T> compose(const BasisChange<T>& second, const BasisChange<T>& first) {
  return BasisChange<T>(static_cast<const Matrix2<T>&>(second) * static_cast<const Matrix2<T>&>(first));
}

/// Entries within tol*max(1, max |a_ij|) of zero replaced by exact zeros.
inline StructMatrix<double> snap_entries(const StructMatrix<double>& m, Tolerance tol = {}) {
  const double scale = max_abs(m);
  auto snap = [&](double x) { return near_zero(x, scale, tol) ? 0.0 : x; };
  return convert<double>(m, snap);
}

/// dim E^2. Floating mode snaps entries against tol*scale and then compares
/// det against tol*scale^2, with scale = max(1, max |a_ij|).
template <class T>
int rank(const StructMatrix<T>& m, Tolerance tol = {}) {
  if constexpr (is_exact_v<T>) {
    if (m.det() != T(0)) return 2;
    const bool zero = m.a11 == T(0) && m.a12 == T(0) && m.a21 == T(0) && m.a22 == T(0);
    return zero ? 0 : 1;
  } else {
    const double scale = max_abs(m);
    const StructMatrix<double> snapped = snap_entries(m, tol);
    if (max_abs(snapped) == 0.0) return 0;
    return near_zero(snapped.det(), scale, tol, 2) ? 1 : 2;
  }
}

}  // namespace evo
