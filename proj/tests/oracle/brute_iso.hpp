#pragma once

// Test-only isomorphism oracle: Gauss-Newton with a finite-difference Jacobian
// from a dense grid of starting changes of basis. Accepts a candidate only
// when the direct product expansion confirms it.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>

#include "oracle/expansion.hpp"

namespace oracle {

using Vec = std::array<double, 4>;

/// Cross terms relative to |t|^2, then the new-basis table minus r. Unlike
/// the old-coordinate product equations this does not vanish as t -> 0.
inline std::array<double, 6> equations(const Flat<double>& l, const Flat<double>& r, const Vec& t) {
  const double tn = std::max({std::abs(t[0]), std::abs(t[1]), std::abs(t[2]), std::abs(t[3])});
  const double det = t[0] * t[3] - t[1] * t[2];
  if (tn == 0 || det == 0) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {inf, inf, inf, inf, inf, inf};
  }
  const auto c = cross_product(l, t);
  const auto out = expand_transform(l, t);
  return {c[0] / (tn * tn), c[1] / (tn * tn), out[0] - r[0], out[1] - r[1], out[2] - r[2], out[3] - r[3]};
}

inline double norm2(const std::array<double, 6>& f) {
  double s = 0;
  for (double x : f) s += x * x;
  return s;
}

/// Solves the 4x4 system a x = b by Gaussian elimination with partial pivoting.
inline std::optional<Vec> solve4(std::array<std::array<double, 5>, 4> a) {
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int r = c + 1; r < 4; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    if (std::abs(a[piv][c]) < 1e-300) return std::nullopt;
    std::swap(a[c], a[piv]);
    for (int r = 0; r < 4; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < 5; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return Vec{a[0][4] / a[0][0], a[1][4] / a[1][1], a[2][4] / a[2][2], a[3][4] / a[3][3]};
}

/// Accepts t when it is well conditioned and the expansion reproduces r.
/// Lower-rank tables lie in the closure of higher-rank orbits, so a
/// degenerating t can reproduce them to any fixed tolerance; the conditioning
/// bound rules that out (a residual eps costs a conditioning of eps^(1/3)).
/// Shrinking t uniformly scales the new table towards zero, so |t| is kept
/// in [1e-3, 1e3]; the oracle is meant for tables with moderate entries.
inline bool confirms(const Flat<double>& l, const Flat<double>& r, const Vec& t, double tol) {
  const double tn = std::max({std::abs(t[0]), std::abs(t[1]), std::abs(t[2]), std::abs(t[3])});
  const double det = t[0] * t[3] - t[1] * t[2];
  if (tn < 1e-3 || tn > 1e3 || std::abs(det) < 1e-3 * tn * tn) return false;
  double scale = 1.0;
  for (double x : l) scale = std::max(scale, std::abs(x));
  const auto c = cross_product(l, t);
  if (std::abs(c[0]) > tol * scale * tn * tn || std::abs(c[1]) > tol * scale * tn * tn) return false;
  const auto out = expand_transform(l, t);
  double rmax = 1.0;
  for (double x : r) rmax = std::max(rmax, std::abs(x));
  for (int i = 0; i < 4; ++i) {
    if (std::abs(out[i] - r[i]) > tol * rmax) return false;
  }
  return true;
}

/// Some T with expand_transform(l, T) = r, or nothing when the search is
/// exhausted (a weaker claim than non-isomorphism).
inline std::optional<Vec> brute_force_iso(const Flat<double>& l, const Flat<double>& r, double tol = 1e-10) {
  static constexpr std::array<double, 7> grid{-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
  for (double a : grid) {
    for (double b : grid) {
      for (double c : grid) {
        for (double d : grid) {
          if (a * d - b * c == 0.0) continue;
          Vec t{a, b, c, d};
          auto f = equations(l, r, t);
          for (int it = 0; it < 100 && norm2(f) > 1e-30; ++it) {
            // finite-difference Jacobian
            std::array<std::array<double, 4>, 6> j{};
            for (int k = 0; k < 4; ++k) {
              Vec tp = t;
              const double h = 1e-7 * std::max(1.0, std::abs(t[k]));
              tp[k] += h;
              const auto fp = equations(l, r, tp);
              for (int e = 0; e < 6; ++e) j[e][k] = (fp[e] - f[e]) / h;
            }
            std::array<std::array<double, 5>, 4> n{};
            for (int p = 0; p < 4; ++p) {
              for (int q = 0; q < 4; ++q) {
                for (int e = 0; e < 6; ++e) n[p][q] += j[e][p] * j[e][q];
              }
              n[p][p] += 1e-12;
              for (int e = 0; e < 6; ++e) n[p][4] -= j[e][p] * f[e];
            }
            const auto step = solve4(n);
            if (!step) break;
            // backtrack on the step length until the residual drops
            bool improved = false;
            for (double scale = 1.0; scale > 1e-6 && !improved; scale /= 2) {
              Vec next = t;
              for (int k = 0; k < 4; ++k) next[k] += scale * (*step)[k];
              const auto fn = equations(l, r, next);
              if (norm2(fn) < norm2(f)) {
                t = next;
                f = fn;
                improved = true;
              }
            }
            if (!improved) break;
          }
          if (confirms(l, r, t, tol)) return t;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace oracle
