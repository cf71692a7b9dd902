#include "evo/iso.hpp"

#include <Eigen/Dense>

#include <limits>

namespace evo {

std::string_view method_name(IsoMethod m) { return m == IsoMethod::Analytic ? "analytic" : "numeric"; }

template <class T>
bool verify_witness(const StructMatrix<T>& left, const StructMatrix<T>& right,
                    const BasisChange<witness_t<T>>& witness, Tolerance tol) {
  using W = witness_t<T>;
  if constexpr (is_exact_v<T>) {
    const StructMatrix<W> l = lift(left);
    if (!is_natural(l, witness)) return false;
    return transform_unchecked(l, witness) == lift(right);
  } else {
    if (!is_natural(left, witness, tol)) return false;
    const double denom = std::max(1.0, max_abs(right));
    return max_abs(transform_unchecked(left, witness) - right) / denom <= tol.rel;
  }
}

namespace detail {

template <class T>
std::optional<BasisChange<witness_t<T>>> solve_diagonal(const StructMatrix<T>& left, const StructMatrix<T>& right,
                                                        Tolerance tol) {
  using W = witness_t<T>;
  const StructMatrix<W> l = lift(left);
  const StructMatrix<W> r = lift(right);
  [[maybe_unused]] double scale = 0.0;
  if constexpr (!is_exact_v<T>) scale = std::max(max_abs(left), max_abs(right));
  auto zero = [&](const W& x) {
    if constexpr (is_exact_v<T>) {
      return x == W(0);
    } else {
      return near_zero(x, scale, tol);
    }
  };

  // e'1 = x e1, e'2 = v e2:  alpha x = a,  delta v = d,  beta x^2 = b v,  gamma v^2 = c x
  const W &alpha = l.a11, &beta = l.a12, &gamma = l.a21, &delta = l.a22;
  const W &a = r.a11, &b = r.a12, &c = r.a21, &d = r.a22;
  std::optional<W> x, v;
  if (!zero(alpha)) {
    if (zero(a)) return std::nullopt;
    x = a / alpha;
  } else if (!zero(a)) {
    return std::nullopt;
  }
  if (!zero(delta)) {
    if (zero(d)) return std::nullopt;
    v = d / delta;
  } else if (!zero(d)) {
    return std::nullopt;
  }

  if (!x && !v) {
    if (zero(b) || zero(c) || zero(beta) || zero(gamma)) return std::nullopt;
    const W cube = c * b * b / (beta * beta * gamma);
    if constexpr (is_exact_v<T>) {
      const auto q = cube.rational();
      if (!q) return std::nullopt;
      x = ScalarTraits<Rational>::root(3, *q);
    } else {
      x = std::cbrt(cube);
    }
    v = beta * *x * *x / b;
  } else if (!v) {
    if (zero(b)) return std::nullopt;
    v = beta * *x * *x / b;
  } else if (!x) {
    if (zero(c)) return std::nullopt;
    x = gamma * *v * *v / c;
  }
  if (*x == W(0) || *v == W(0)) return std::nullopt;
  return BasisChange<W>(Matrix2<W>::diagonal(*x, *v));
}

namespace {

using Vec4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Jac = Eigen::Matrix<double, 6, 4>;

// The structure equations for e'1 = x e1 + y e2, e'2 = z e1 + v e2.
Vec6 residuals(const StructMatrix<double>& l, const StructMatrix<double>& r, const Vec4& u) {
  const double x = u[0], y = u[1], z = u[2], v = u[3];
  const double al = l.a11, be = l.a12, ga = l.a21, de = l.a22;
  const double a = r.a11, b = r.a12, c = r.a21, d = r.a22;
  Vec6 f;
  f << al * x * z + ga * y * v, be * x * z + de * y * v, al * x * x + ga * y * y - (a * x + b * z),
      be * x * x + de * y * y - (a * y + b * v), al * z * z + ga * v * v - (c * x + d * z),
      be * z * z + de * v * v - (c * y + d * v);
  return f;
}

Jac jacobian(const StructMatrix<double>& l, const StructMatrix<double>& r, const Vec4& u) {
  const double x = u[0], y = u[1], z = u[2], v = u[3];
  const double al = l.a11, be = l.a12, ga = l.a21, de = l.a22;
  const double a = r.a11, b = r.a12, c = r.a21, d = r.a22;
  Jac j;
  j << al * z, ga * v, al * x, ga * y,  //
      be * z, de * v, be * x, de * y,   //
      2 * al * x - a, 2 * ga * y, -b, 0,  //
      2 * be * x, 2 * de * y - a, 0, -b,  //
      -c, 0, 2 * al * z - d, 2 * ga * v,  //
      0, -c, 2 * be * z, 2 * de * v - d;
  return j;
}

}  // namespace

NumericSearch numeric_search(const StructMatrix<double>& left, const StructMatrix<double>& right, Tolerance tol,
                             const std::vector<BasisChange<double>>& seeds) {
  NumericSearch out;
  out.best_residual = std::numeric_limits<double>::infinity();
  const double scale = std::max({1.0, max_abs(left), max_abs(right)});

  // diagonal and antidiagonal shapes, (+-1, +-1) on the free entries
  std::vector<Vec4> starts;
  for (const auto& w : seeds) starts.emplace_back(w.a11, w.a12, w.a21, w.a22);
  for (int shape = 0; shape < 2; ++shape) {
    for (int sx = -1; sx <= 1; sx += 2) {
      for (int sv = -1; sv <= 1; sv += 2) {
        starts.push_back(shape == 0 ? Vec4(sx, 0, 0, sv) : Vec4(0, sx, sv, 0));
      }
    }
  }

  for (const Vec4& start : starts) {
    Vec4 u = start;
    double mu = 1e-3;
    Vec6 f = residuals(left, right, u);
    double cost = f.squaredNorm();
    for (int it = 0; it < 200 && cost > 0.0; ++it) {
      const Jac j = jacobian(left, right, u);
      const Eigen::Matrix4d jtj = j.transpose() * j;
      const Vec4 g = j.transpose() * f;
      const Eigen::Matrix4d damped = jtj + mu * Eigen::Matrix4d(jtj.diagonal().asDiagonal()) +
                                     mu * 1e-12 * Eigen::Matrix4d::Identity();
      const Vec4 step = damped.ldlt().solve(-g);
      const Vec4 trial = u + step;
      const Vec6 ft = residuals(left, right, trial);
      const double ct = ft.squaredNorm();
      if (ct < cost) {
        u = trial;
        f = ft;
        cost = ct;
        mu = std::max(mu / 3.0, 1e-15);
        if (step.norm() <= 1e-15 * (1.0 + u.norm())) break;
      } else {
        mu *= 4.0;
        if (mu > 1e12) break;
      }
    }
    const double tnorm = u.cwiseAbs().maxCoeff();
    const double det = u[0] * u[3] - u[1] * u[2];
    if (tnorm == 0.0 || std::abs(det) <= 1e-8 * tnorm * tnorm) continue;
    // linear terms dominate for small T, quadratic ones for large T
    const double rel = f.cwiseAbs().maxCoeff() / (scale * std::max(tnorm, tnorm * tnorm));
    out.best_residual = std::min(out.best_residual, rel);
    const BasisChange<double> w(u[0], u[1], u[2], u[3]);
    if (rel <= tol.rel && verify_witness(left, right, w, tol)) {
      out.witness = w;
      out.best_residual = rel;
      return out;
    }
  }
  return out;
}

}  // namespace detail

template <class T>
IsoResult<T> iso(const StructMatrix<T>& left, const StructMatrix<T>& right, Tolerance tol) {
  using W = witness_t<T>;
  IsoResult<T> res;
  // analytic candidates that miss verification only through rounding seed the numeric search
  [[maybe_unused]] std::vector<BasisChange<double>> seeds;
  auto accept = [&](const BasisChange<W>& w, IsoMethod method) {
    if (!verify_witness(left, right, w, tol)) {
      if constexpr (!is_exact_v<T>) seeds.push_back(w);
      return false;
    }
    res.isomorphic = true;
    res.witness = w;
    res.method = method;
    return true;
  };

  const int rl = rank(left, tol);
  const int rr = rank(right, tol);
  if (rl != rr) return res;

  if (rl == 0) {
    if (accept(BasisChange<W>(Matrix2<W>::identity()), IsoMethod::Analytic)) return res;
  } else if (rl == 2) {
    if (auto w = detail::solve_diagonal(left, right, tol); w && accept(*w, IsoMethod::Analytic)) return res;
    const BasisChange<T> swap(Matrix2<T>::swap());
    const StructMatrix<T> swapped = transform_unchecked(left, swap);
    if (auto w = detail::solve_diagonal(swapped, right, tol)) {
      const BasisChange<W> full = compose(*w, BasisChange<W>(Matrix2<W>::swap()));
      if (accept(full, IsoMethod::Analytic)) return res;
    }
  } else {
    const auto al = detail::analyze(left, tol);
    const auto ar = detail::analyze(right, tol);
    const auto fl = detail::rank1_factors(al);
    const auto fr = detail::rank1_factors(ar);
    if (fl.tag == fr.tag) {
      auto lift_m = [](const Matrix2<T>& m) {
        return m.template map<W>([](const T& x) { return ScalarTraits<T>::lift(x); });
      };
      const W ratio_root = ScalarTraits<T>::root(2, T(fr.radicand / fl.radicand));
      const Matrix2<W> t =
          lift_m(fr.rational_part.inverse()) * Matrix2<W>::diagonal(W(1), ratio_root) * lift_m(fl.rational_part);
      if (accept(BasisChange<W>(t), IsoMethod::Analytic)) return res;
    }
  }

  if constexpr (!is_exact_v<T>) {
    const auto search = detail::numeric_search(left, right, tol, seeds);
    if (search.witness && accept(*search.witness, IsoMethod::Numeric)) return res;
    if (search.best_residual <= 1e-6) throw Inconclusive(search.best_residual);
  }
  return res;
}

template IsoResult<double> iso<double>(const StructMatrix<double>&, const StructMatrix<double>&, Tolerance);
template IsoResult<Rational> iso<Rational>(const StructMatrix<Rational>&, const StructMatrix<Rational>&, Tolerance);
template bool verify_witness<double>(const StructMatrix<double>&, const StructMatrix<double>&,
                                     const BasisChange<double>&, Tolerance);
template bool verify_witness<Rational>(const StructMatrix<Rational>&, const StructMatrix<Rational>&,
                                       const BasisChange<RadicalNumber>&, Tolerance);
template std::optional<BasisChange<double>> detail::solve_diagonal<double>(const StructMatrix<double>&,
                                                                           const StructMatrix<double>&, Tolerance);
template std::optional<BasisChange<RadicalNumber>> detail::solve_diagonal<Rational>(const StructMatrix<Rational>&,
                                                                                    const StructMatrix<Rational>&,
                                                                                    Tolerance);

}  // namespace evo
