#pragma once

// Shared generators for the test binaries.

#include <random>

#include "evo/algebra.hpp"

namespace testing_support {

using evo::BasisChange;
using evo::Rational;
using evo::StructMatrix;

inline Rational random_rational(std::mt19937_64& rng, int range = 5, int max_den = 3) {
  std::uniform_int_distribution<int> num(-range * max_den, range * max_den);
  std::uniform_int_distribution<int> den(1, max_den);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline Rational random_nonzero(std::mt19937_64& rng, int range = 5, int max_den = 3) {
  for (;;) {
    Rational q = random_rational(rng, range, max_den);
    if (q != 0) return q;
  }
}

/// Matrices drawn from every stratum: generic, zero diagonal entries, rank 1
/// with each sign of kappa, the p^2 + q^2 kappa = 0 locus, zero rows, zero.
inline StructMatrix<Rational> random_stratum_matrix(std::mt19937_64& rng, int kind) {
  auto r = [&] { return random_rational(rng); };
  auto nz = [&] { return random_nonzero(rng); };
  switch (kind % 8) {
    case 0: return {r(), r(), r(), r()};
    case 1: return {Rational(0), nz(), nz(), r()};
    case 2: return {nz(), nz(), nz(), Rational(0)};
    case 3: {
      const Rational p = r(), q = r(), k = r();
      return {p, q, k * p, k * q};
    }
    case 4: {
      // kappa = -p^2/q^2
      const Rational p = nz(), q = nz();
      const Rational k = -p * p / (q * q);
      return {p, q, k * p, k * q};
    }
    case 5: {
      const Rational p = r(), q = r();
      return {Rational(0), Rational(0), p, q};
    }
    case 6: {
      const Rational p = nz(), k = nz();
      return {Rational(0), p, Rational(0), k * p};
    }
    default: {
      if (kind % 16 == 7) return {};
      return {nz(), Rational(0), Rational(0), nz()};
    }
  }
}

/// A random natural change for m: the first new vector is random and the
/// second spans the kernel of the two cross constraints. Rank-2 matrices force
/// a diagonal or antidiagonal shape.
template <class S, class Gen>
BasisChange<S> random_natural(const StructMatrix<S>& m, std::mt19937_64& rng, Gen&& scalar) {
  const S zero(0);
  const bool full_rank = m.det() != zero;
  for (;;) {
    S t11 = scalar(), t12 = scalar();
    if (full_rank) {
      if (rng() % 2) {
        t12 = zero;
      } else {
        t11 = zero;
      }
    }
    // t21 t11 (a11, a12) + t22 t12 (a21, a22) = 0
    const S c11 = t11 * m.a11, c12 = t12 * m.a21;
    const S c21 = t11 * m.a12, c22 = t12 * m.a22;
    S t21, t22;
    const auto mag = [&zero](const S& x) { return x < zero ? S(-x) : x; };
    if (c11 == zero && c12 == zero && c21 == zero && c22 == zero) {
      t21 = scalar();
      t22 = scalar();
    } else if (mag(c11) + mag(c12) >= mag(c21) + mag(c22)) {
      t21 = -c12;
      t22 = c11;
    } else {
      t21 = -c22;
      t22 = c21;
    }
    const S k = scalar();
    t21 = k * t21;
    t22 = k * t22;
    BasisChange<S> t(t11, t12, t21, t22);
    if (t.det() != zero) return t;
  }
}

}  // namespace testing_support
