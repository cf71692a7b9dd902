#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "evo/classifier.hpp"

namespace evo {

enum class IsoMethod { Analytic, Numeric };

std::string_view method_name(IsoMethod m);

/// Outcome of an isomorphism query. When isomorphic, `witness` is a natural
/// basis change T with transform(left, T) = right, already re-verified.
template <class T>
struct IsoResult {
  bool isomorphic = false;
  std::optional<BasisChange<witness_t<T>>> witness;
  IsoMethod method = IsoMethod::Analytic;
};

/// Decides whether some natural basis change carries `left` to `right`.
///
/// Strategy, first verified witness wins:
///  - different rank: not isomorphic;
///  - rank 2: every natural change is diagonal or antidiagonal (the two
///    cross equations force xz = yv = 0 when det M != 0), so both shapes are
///    solved in closed form;
///  - rank <= 1: both sides are classified and the witnesses composed through
///    the shared canonical form;
///  - floating mode only: damped Gauss-Newton on the full system from 8
///    deterministic starts. A residual that is small but not certifying raises
///    Inconclusive.
template <class T>
IsoResult<T> iso(const StructMatrix<T>& left, const StructMatrix<T>& right, Tolerance tol = {});

/// True iff `witness` is a natural change with transform(left, witness) = right
/// (exactly, or within tol relative to max(1, max |right|)).
template <class T>
bool verify_witness(const StructMatrix<T>& left, const StructMatrix<T>& right,
                    const BasisChange<witness_t<T>>& witness, Tolerance tol = {});

namespace detail {

/// Diagonal solution of the structure equations, if one exists.
template <class T>
std::optional<BasisChange<witness_t<T>>> solve_diagonal(const StructMatrix<T>& left, const StructMatrix<T>& right,
                                                        Tolerance tol = {});

struct NumericSearch {
  std::optional<BasisChange<double>> witness;
  double best_residual = 0.0;  // relative, among well-conditioned candidates
};

/// Damped Gauss-Newton from `seeds` and then the 8 diagonal/antidiagonal
/// sign patterns; returns the first verified witness.
NumericSearch numeric_search(const StructMatrix<double>& left, const StructMatrix<double>& right,
                             Tolerance tol = {}, const std::vector<BasisChange<double>>& seeds = {});

}  // namespace detail

}  // namespace evo
