#include "evo/classifier.hpp"

#include <sstream>
#include <stdexcept>

namespace evo {

std::string_view tag_name(ClassTag tag) {
  static constexpr std::array<std::string_view, 8> names{"E0", "E1", "E2", "E3", "E4", "E5", "E6", "E7"};
  return names[static_cast<int>(tag)];
}

std::optional<ClassTag> parse_tag(std::string_view name) {
  for (int i = 0; i < 8; ++i) {
    if (tag_name(static_cast<ClassTag>(i)) == name) return static_cast<ClassTag>(i);
  }
  return std::nullopt;
}

int param_count(ClassTag tag) {
  switch (tag) {
    case ClassTag::E6: return 2;
    case ClassTag::E7: return 1;
    default: return 0;
  }
}

namespace {

template <class T>
using Traits = ScalarTraits<T>;

template <class P>
P param_constant(long v) {
  if constexpr (std::is_same_v<P, double>) {
    return static_cast<double>(v);
  } else {
    return CubeRoot::of_rational(Rational(v));
  }
}

template <class P>
bool param_less(const P& a, const P& b) {
  return a < b;
}

template <class P>
bool e6_degenerate(const P& a2, const P& a3, Tolerance tol) {
  if constexpr (std::is_same_v<P, double>) {
    return near_zero(1.0 - a2 * a3, 1.0, tol);
  } else {
    return (a2 * a3).cube() == 1;
  }
}

}  // namespace

template <class T>
CanonicalClass<T> CanonicalClass<T>::plain(ClassTag tag) {
  CanonicalClass c;
  c.tag = tag;
  c.params = {param_constant<Param>(0), param_constant<Param>(0)};
  return c;
}

template <class T>
CanonicalClass<T> CanonicalClass<T>::e6(Param a2, Param a3, Tolerance tol) {
  if (e6_degenerate(a2, a3, tol)) throw InvalidE6Params();
  CanonicalClass c;
  c.tag = ClassTag::E6;
  if (param_less(a3, a2)) std::swap(a2, a3);
  c.params = {std::move(a2), std::move(a3)};
  return c;
}

template <class T>
CanonicalClass<T> CanonicalClass<T>::e7(Param a4) {
  CanonicalClass c;
  c.tag = ClassTag::E7;
  c.params = {std::move(a4), param_constant<Param>(0)};
  return c;
}

template <class T>
std::string CanonicalClass<T>::str() const {
  std::ostringstream os;
  os << tag_name(tag);
  const int n = param_count(tag);
  if (n > 0) {
    os << "(";
    for (int i = 0; i < n; ++i) os << (i ? "; " : "") << params[i];
  }
  if (n > 0) os << ")";
  return os.str();
}

template <class T>
std::array<double, 2> CanonicalClass<T>::param_values() const {
  return {evo::to_double(params[0]), evo::to_double(params[1])};
}

bool same_class(const CanonicalClass<double>& a, const CanonicalClass<double>& b, double rel_tol) {
  if (a.tag != b.tag) return false;
  for (int i = 0; i < param_count(a.tag); ++i) {
    const double x = a.params[i];
    const double y = b.params[i];
    if (std::abs(x - y) > rel_tol * std::max({1.0, std::abs(x), std::abs(y)})) return false;
  }
  return true;
}

CanonicalClass<double> to_double(const CanonicalClass<Rational>& c) {
  CanonicalClass<double> out;
  out.tag = c.tag;
  out.params = c.param_values();
  return out;
}

template <class T>
std::array<param_t<T>, 4> canonical_entries(const CanonicalClass<T>& c) {
  using P = param_t<T>;
  auto k = [](long v) { return param_constant<P>(v); };
  switch (c.tag) {
    case ClassTag::E0: return {k(0), k(0), k(0), k(0)};
    case ClassTag::E1: return {k(1), k(0), k(0), k(0)};
    case ClassTag::E2: return {k(1), k(0), k(1), k(0)};
    case ClassTag::E3: return {k(1), k(1), k(-1), k(-1)};
    case ClassTag::E4: return {k(0), k(1), k(0), k(0)};
    case ClassTag::E5: return {k(0), k(1), k(0), k(-1)};
    case ClassTag::E6: return {k(1), c.params[0], c.params[1], k(1)};
    case ClassTag::E7: return {k(0), k(1), k(1), c.params[0]};
  }
  throw std::logic_error("unknown class tag");
}

template <class T>
StructMatrix<witness_t<T>> canonical_matrix(const CanonicalClass<T>& c, Tolerance tol) {
  if (c.tag == ClassTag::E6 && e6_degenerate(c.params[0], c.params[1], tol)) throw InvalidE6Params();
  const auto e = canonical_entries(c);
  if constexpr (is_exact_v<T>) {
    return {e[0].to_radical(), e[1].to_radical(), e[2].to_radical(), e[3].to_radical()};
  } else {
    return {e[0], e[1], e[2], e[3]};
  }
}

namespace detail {

template <class T>
Analysis<T> analyze(const StructMatrix<T>& m, Tolerance tol) {
  Analysis<T> a;
  [[maybe_unused]] double scale = 0.0;
  StructMatrix<T> rep = m;
  if constexpr (!is_exact_v<T>) {
    scale = max_abs(m);
    rep = snap_entries(m, tol);
    a.ambiguous = !(rep == m);
  }

  // Zero test on a quantity of the given degree in the entries.
  auto zero = [&](const T& x, int degree) {
    if constexpr (is_exact_v<T>) {
      return x == 0;
    } else {
      if (x == 0.0) return true;
      if (near_zero(x, scale, tol, degree)) {
        a.ambiguous = true;
        return true;
      }
      return false;
    }
  };

  const bool all_zero = rep.a11 == T(0) && rep.a12 == T(0) && rep.a21 == T(0) && rep.a22 == T(0);
  if (all_zero) {
    a.rank = 0;
    a.representative = rep;
    return a;
  }
  if (!zero(rep.det(), 2)) {
    a.rank = 2;
    a.representative = rep;
    return a;
  }

  a.rank = 1;
  a.swapped = rep.a11 == T(0) && rep.a12 == T(0);
  // frame rows: swapping e1 and e2 swaps both rows and columns
  const T r1x = a.swapped ? rep.a22 : rep.a11;
  const T r1y = a.swapped ? rep.a21 : rep.a12;
  const T r2x = a.swapped ? rep.a12 : rep.a21;
  const T r2y = a.swapped ? rep.a11 : rep.a22;

  T kappa = (r1x * r2x + r1y * r2y) / (r1x * r1x + r1y * r1y);
  if constexpr (!is_exact_v<T>) {
    const double row_size = std::max(std::abs(r1x), std::abs(r1y));
    if (kappa != 0.0 && near_zero(kappa * row_size, scale, tol)) {
      a.ambiguous = true;
      kappa = 0.0;
    }
  }
  a.p = r1x;
  a.q = r1y;
  if (Traits<T>::sign(kappa) < 0 && a.q != T(0)) {
    const T n = a.p * a.p + a.q * a.q * kappa;
    bool on_locus = false;
    if constexpr (is_exact_v<T>) {
      on_locus = n == 0;
    } else {
      // n = a1^2 + a2 a4 in the frame; first-order bound for entry errors of size tol * scale
      const double bound = tol.rel * std::max(1.0, scale) *
                           (2 * std::abs(a.p) + std::abs(a.q) + std::abs(a.q * kappa));
      on_locus = std::abs(n) <= bound;
      if (on_locus && n != 0.0) a.ambiguous = true;
    }
    if (on_locus) {
      a.n_zero = true;
      kappa = -(a.p * a.p) / (a.q * a.q);
    }
  }
  a.kappa = kappa;

  const T f11 = a.p, f12 = a.q, f21 = kappa * a.p, f22 = kappa * a.q;
  if (a.swapped) {
    a.representative = StructMatrix<T>(f22, f21, f12, f11);
  } else {
    a.representative = StructMatrix<T>(f11, f12, f21, f22);
  }
  return a;
}

template <class T>
Rank1Factors<T> rank1_factors(const Analysis<T>& a) {
  if (a.rank != 1) throw std::logic_error("rank1_factors needs a rank-1 analysis");
  Rank1Factors<T> f;
  const T& p = a.p;
  const T& q = a.q;
  const T& kappa = a.kappa;
  const int ks = Traits<T>::sign(kappa);

  if (ks == 0) {
    if (p != T(0)) {
      // e'1 = (p e1 + q e2) / p^2, e'2 = e2
      const T n = p * p;
      f.tag = ClassTag::E1;
      f.rational_part = {p / n, q / n, T(0), T(1)};
    } else {
      // e'1 = e1, e'2 = q e2
      f.tag = ClassTag::E4;
      f.rational_part = {T(1), T(0), T(0), q};
    }
  } else if (p != T(0) && a.n_zero) {
    // e'1 = e1 / p, e'2 = (q / p^2) e2
    f.tag = ClassTag::E3;
    f.rational_part = {T(1) / p, T(0), T(0), q / (p * p)};
  } else {
    if (p != T(0)) {
      // g1 = w / N, g2 = (-q kappa e1 + p e2) / (N sqrt|kappa|), w = p e1 + q e2
      const T n = p * p + q * q * kappa;
      f.rational_part = {p / n, q / n, -q * kappa / n, p / n};
    } else {
      // g1 = e2 / (kappa q), g2 = e1 / (q sqrt|kappa|)
      f.rational_part = {T(0), T(1) / (kappa * q), T(1) / q, T(0)};
    }
    f.radicand = ks > 0 ? kappa : T(-kappa);
    if (ks > 0) {
      f.tag = ClassTag::E2;
    } else {
      // g1 g1 = g1, g2 g2 = -g1 is E5 in the basis (g2, -g1)
      f.tag = ClassTag::E5;
      f.signed_perm = {T(0), T(1), T(-1), T(0)};
    }
  }
  if (a.swapped) f.rational_part = f.rational_part * Matrix2<T>::swap();
  return f;
}

}  // namespace detail

namespace {

template <class T>
BasisChange<witness_t<T>> lift_change(const Matrix2<T>& m) {
  return BasisChange<witness_t<T>>(m.template map<witness_t<T>>([](const T& x) { return Traits<T>::lift(x); }));
}

template <class T>
CanonicalRecord<T> build_record(const StructMatrix<T>& m, const detail::Analysis<T>& an, Tolerance tol) {
  using W = witness_t<T>;
  using P = param_t<T>;
  CanonicalRecord<T> rec;
  rec.ambiguous = an.ambiguous;
  rec.representative = an.representative;
  const StructMatrix<T>& r = an.representative;

  if (an.rank == 0) {
    rec.cls = CanonicalClass<T>::plain(ClassTag::E0);
    rec.witness = BasisChange<W>(Matrix2<W>::identity());
  } else if (an.rank == 1) {
    const auto f = detail::rank1_factors(an);
    rec.cls = CanonicalClass<T>::plain(f.tag);
    const W inv_root = W(1) / Traits<T>::root(2, f.radicand);
    const Matrix2<W> scale = Matrix2<W>::diagonal(W(1), inv_root);
    rec.witness = BasisChange<W>(lift_change(f.signed_perm) * scale * lift_change(f.rational_part));
  } else {
    const T &a1 = r.a11, &a2 = r.a12, &a3 = r.a21, &a4 = r.a22;
    if (a1 != T(0) && a4 != T(0)) {
      const T x = a2 * a4 / (a1 * a1);
      const T y = a3 * a1 / (a4 * a4);
      const Matrix2<T> w = Matrix2<T>::diagonal(T(1) / a1, T(1) / a4);
      const P px = Traits<T>::param(x);
      const P py = Traits<T>::param(y);
      rec.cls = CanonicalClass<T>::e6(px, py, tol);
      rec.witness = lift_change(param_less(py, px) ? Matrix2<T>::swap() * w : w);
    } else {
      // zero first diagonal entry: e'1 = cbrt(1/(b^2 c)) e1, e'2 = b cbrt(1/(b^2 c))^2 e2
      // for the table [[0, b], [c, d]]; E7(d / cbrt(b c^2))
      const bool swap = a1 != T(0);
      const T b = swap ? a3 : a2;
      const T c = swap ? a2 : a3;
      const T d = swap ? a1 : a4;
      const W root = Traits<T>::root(3, T(1) / (b * b * c));
      const W lb = Traits<T>::lift(b);
      Matrix2<W> w = Matrix2<W>::diagonal(root, lb * root * root);
      if (swap) w = w * Matrix2<W>::swap();
      rec.witness = BasisChange<W>(w);
      if constexpr (is_exact_v<T>) {
        rec.cls = CanonicalClass<T>::e7(Traits<T>::param_from_cube(d * d * d / (b * c * c)));
      } else {
        rec.cls = CanonicalClass<T>::e7(d / std::cbrt(b * c * c));
      }
    }
  }

  // verification
  if constexpr (is_exact_v<T>) {
    const StructMatrix<W> lifted = lift(m);
    bool ok = is_natural(lifted, rec.witness);
    if (ok) {
      const StructMatrix<W> out = transform_unchecked(lifted, rec.witness);
      const auto expect = canonical_entries(rec.cls);
      ok = equals_cube_root(out.a11, expect[0]) && equals_cube_root(out.a12, expect[1]) &&
           equals_cube_root(out.a21, expect[2]) && equals_cube_root(out.a22, expect[3]);
    }
    rec.verified = ok;
    rec.residual = 0.0;
  } else {
    const StructMatrix<double> expect = canonical_matrix(rec.cls, tol);
    const double denom = std::max(1.0, max_abs(expect));
    bool ok = is_natural(r, rec.witness, tol);
    if (ok) {
      const double res_rep = max_abs(transform_unchecked(r, rec.witness) - expect) / denom;
      ok = res_rep <= tol.rel;
    }
    rec.verified = ok;
    rec.residual = max_abs(transform_unchecked(m, rec.witness) - expect) / denom;
  }
  if (!rec.verified) {
    std::ostringstream os;
    os << "classification witness failed verification for " << static_cast<const Matrix2<T>&>(m);
    throw std::logic_error(os.str());
  }
  return rec;
}

}  // namespace

template <class T>
CanonicalRecord<T> classify(const StructMatrix<T>& m, Tolerance tol) {
  const auto an = detail::analyze(m, tol);
  return build_record(m, an, tol);
}

template <class T>
StructMatrix<T> lemma_matrix(LemmaForm form, const T& l, const T& m) {
  switch (form) {
    case LemmaForm::Symmetric: return {l, m, m, l};
    case LemmaForm::Skew: return {l, m, T(-m), l};
    case LemmaForm::Affine: return {T(1 + l), T(1 - l), T(1 + m), T(1 - m)};
  }
  throw std::logic_error("unknown lemma form");
}

template <class T>
CanonicalClass<T> classify_lemma_form(LemmaForm form, const T& l, const T& m, Tolerance tol) {
  using C = CanonicalClass<T>;
  auto is_zero = [&](const T& x) {
    if constexpr (is_exact_v<T>) {
      return x == 0;
    } else {
      return near_zero(x, std::max({std::abs(l), std::abs(m), form == LemmaForm::Affine ? 1.0 : 0.0}), tol);
    }
  };
  auto param = [](const T& x) { return Traits<T>::param(x); };
  // E7 parameter b / cbrt(c) given b^3 and c, keeping exactness.
  auto e7_from = [](const T& num, const T& radicand) {
    if constexpr (is_exact_v<T>) {
      return C::e7(Traits<T>::param_from_cube(num * num * num / radicand));
    } else {
      return C::e7(num / std::cbrt(radicand));
    }
  };

  switch (form) {
    case LemmaForm::Symmetric:
      if (is_zero(l) && is_zero(m)) return C::plain(ClassTag::E0);
      if (is_zero(T(l - m))) return C::plain(ClassTag::E2);
      if (is_zero(T(l + m))) return C::plain(ClassTag::E3);
      if (is_zero(l)) return C::e7(param(T(0)));
      return C::e6(param(T(m / l)), param(T(m / l)), tol);
    case LemmaForm::Skew:
      if (is_zero(l) && is_zero(m)) return C::plain(ClassTag::E0);
      if (is_zero(l)) return C::e7(param(T(0)));
      return C::e6(param(T(m / l)), param(T(-m / l)), tol);
    case LemmaForm::Affine: {
      if (is_zero(T(l - m))) return C::plain(ClassTag::E2);
      const T one(1);
      if (is_zero(T(l + one))) {
        return e7_from(T(one - m), T(2 * (one + m) * (one + m)));
      }
      if (is_zero(T(m - one))) {
        return e7_from(T(one + l), T(2 * (one - l) * (one - l)));
      }
      const T x = (one + l) * (one + m) / ((one - m) * (one - m));
      const T y = (one - l) * (one - m) / ((one + l) * (one + l));
      return C::e6(param(x), param(y), tol);
    }
  }
  throw std::logic_error("unknown lemma form");
}

#define EVO_INSTANTIATE(T)                                                                        \
  template struct CanonicalClass<T>;                                                              \
  template CanonicalRecord<T> classify<T>(const StructMatrix<T>&, Tolerance);                     \
  template std::array<param_t<T>, 4> canonical_entries<T>(const CanonicalClass<T>&);              \
  template StructMatrix<witness_t<T>> canonical_matrix<T>(const CanonicalClass<T>&, Tolerance);   \
  template StructMatrix<T> lemma_matrix<T>(LemmaForm, const T&, const T&);                        \
  template CanonicalClass<T> classify_lemma_form<T>(LemmaForm, const T&, const T&, Tolerance);    \
  template detail::Analysis<T> detail::analyze<T>(const StructMatrix<T>&, Tolerance);             \
  template detail::Rank1Factors<T> detail::rank1_factors<T>(const detail::Analysis<T>&);

EVO_INSTANTIATE(double)
EVO_INSTANTIATE(Rational)

#undef EVO_INSTANTIATE

}  // namespace evo
