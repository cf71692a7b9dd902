#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "evo/algebra.hpp"

namespace evo {

/// The pairwise non-isomorphic two-dimensional real evolution algebras.
/// E0 is the zero algebra; E1..E5 have dim E^2 = 1; E6(a2;a3), E7(a4) have
/// dim E^2 = 2.
///
/// Over C the same list without E4 classifies the complex case; only the real
/// classification is implemented here.
enum class ClassTag { E0, E1, E2, E3, E4, E5, E6, E7 };

std::string_view tag_name(ClassTag tag);
std::optional<ClassTag> parse_tag(std::string_view name);
int param_count(ClassTag tag);

/// A canonical class with its parameters. E6 parameters are kept sorted
/// (a2 <= a3), which canonicalizes E6(a2;a3) ~ E6(a3;a2).
template <class T>
struct CanonicalClass {
  using Param = param_t<T>;

  ClassTag tag = ClassTag::E0;
  std::array<Param, 2> params{};

  static CanonicalClass plain(ClassTag tag);
  /// Sorts the pair. Throws InvalidE6Params when 1 - a2 a3 = 0.
  static CanonicalClass e6(Param a2, Param a3, Tolerance tol = {});
  static CanonicalClass e7(Param a4);

  std::string str() const;
  std::array<double, 2> param_values() const;

  friend bool operator==(const CanonicalClass& a, const CanonicalClass& b) {
    if (a.tag != b.tag) return false;
    for (int i = 0; i < param_count(a.tag); ++i) {
      if (!(a.params[i] == b.params[i])) return false;
    }
    return true;
  }
};

/// Tag equality plus parameters within rel_tol * max(1, |a|, |b|).
bool same_class(const CanonicalClass<double>& a, const CanonicalClass<double>& b, double rel_tol = 1e-9);

CanonicalClass<double> to_double(const CanonicalClass<Rational>& c);

/// Result of classify: a class and a machine-verified witness with
/// transform(M, witness) = canonical_matrix(class).
///
/// In floating mode the decision strata are taken with the relative tolerance:
/// `representative` is the input projected onto the chosen stratum (entries
/// snapped to zero, rank-1 rows made proportional), the witness is verified
/// against it, and `ambiguous` reports that some branch condition was within
/// tolerance of a boundary without being exactly on it. `residual` is the
/// relative max-entry residual of the witness against the unprojected input.
template <class T>
struct CanonicalRecord {
  CanonicalClass<T> cls;
  BasisChange<witness_t<T>> witness;
  bool verified = false;
  bool ambiguous = false;
  StructMatrix<T> representative;
  double residual = 0.0;
};

template <class T>
CanonicalRecord<T> classify(const StructMatrix<T>& m, Tolerance tol = {});

/// Entries of the canonical table as exact or floating parameters.
template <class T>
std::array<param_t<T>, 4> canonical_entries(const CanonicalClass<T>& c);

/// E0 = 0, E1 = [[1,0],[0,0]], E2 = [[1,0],[1,0]], E3 = [[1,1],[-1,-1]],
/// E4 = [[0,1],[0,0]], E5 = [[0,1],[0,-1]], E6 = [[1,a2],[a3,1]],
/// E7 = [[0,1],[1,a4]]. Exact E7 parameters are cube roots, hence the
/// radical scalar. Throws InvalidE6Params.
template <class T>
StructMatrix<witness_t<T>> canonical_matrix(const CanonicalClass<T>& c, Tolerance tol = {});

/// Families with closed-form classes:
///   symmetric [[l, m], [m, l]], skew [[l, m], [-m, l]],
///   affine [[1 + l, 1 - l], [1 + m, 1 - m]].
enum class LemmaForm { Symmetric, Skew, Affine };

template <class T>
StructMatrix<T> lemma_matrix(LemmaForm form, const T& l, const T& m);

/// Closed-form class of lemma_matrix(form, l, m). A cross-check entry point;
/// it must agree with classify(lemma_matrix(form, l, m)).
template <class T>
CanonicalClass<T> classify_lemma_form(LemmaForm form, const T& l, const T& m, Tolerance tol = {});

namespace detail {

/// Decision data of the classification tree.
template <class T>
struct Analysis {
  StructMatrix<T> representative;
  int rank = 0;
  bool ambiguous = false;
  // rank 1, in the frame where the first row is nonzero: rows (p, q) and
  // kappa * (p, q). `swapped` means that frame is e1 <-> e2.
  bool swapped = false;
  T p{}, q{}, kappa{};
  bool n_zero = false;  // p^2 + q^2 kappa = 0
};

template <class T>
Analysis<T> analyze(const StructMatrix<T>& m, Tolerance tol = {});

/// Rank-1 witness in the unswapped-or-swapped frame of an Analysis, factored
/// as W = P diag(1, 1/sqrt(d)) A with P, A, d rational (d > 0).
template <class T>
struct Rank1Factors {
  ClassTag tag = ClassTag::E1;
  Matrix2<T> signed_perm = Matrix2<T>::identity();
  T radicand{1};
  Matrix2<T> rational_part = Matrix2<T>::identity();
};

template <class T>
Rank1Factors<T> rank1_factors(const Analysis<T>& a);

}  // namespace detail

}  // namespace evo
