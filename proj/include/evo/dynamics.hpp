#pragma once

#include <optional>
#include <vector>

#include "evo/cea.hpp"
#include "evo/classifier.hpp"

namespace evo {

/// Closed-form class of a built-in family at (s, t):
///   F1 is the symmetric form with l = (L + M)/2, m = (L - M)/2, giving
///      E6(theta; theta), theta = (L - M)/(L + M), off the strata
///      L = M = 0 (E0), M = 0 (E2), L = 0 (E3);
///   F2 is the skew form, E6(tan(t - s); -tan(t - s)) off the lines
///      t = s + pi/2 + pi k, where it is E7(0);
///   F3 is the affine form in (xi, zeta).
/// Throws UnsupportedFamily for custom families.
CanonicalClass<double> expected_class(const Family& f, double s, double t, Tolerance tol = {});

struct TraceRecord {
  double s = 0.0, t = 0.0;
  CanonicalClass<double> cls;
  bool ambiguous = false;
  std::optional<CanonicalClass<double>> expected;
  std::optional<bool> agrees;  // parameters within 1e-9 relative
  bool boundary = false;
};

struct TraceGrid {
  double s = 0.0;
  double t0 = 0.0;
  double t1 = 1.0;
  double step = 0.1;
};

/// Grid points t_k = t0 + k step, k = 0..floor((t1 - t0)/step).
std::vector<double> grid_points(const TraceGrid& grid);

/// Classifies each grid point. A record is flagged as a boundary when a
/// neighbour is on the other side of a stratum: the class tag changes, or for
/// two rank-2 points the sign of a1, a4 or det changes.
std::vector<TraceRecord> trace(const Family& f, const TraceGrid& grid, Tolerance tol = {});

/// Stratum key used for boundary detection.
struct Stratum {
  ClassTag tag = ClassTag::E0;
  int sign_a1 = 0, sign_a4 = 0, sign_det = 0;
  friend bool operator==(const Stratum&, const Stratum&) = default;
};

Stratum stratum_at(const Family& f, double s, double t, Tolerance tol = {});

struct BoundaryOptions {
  TimeVar var = TimeVar::T;
  double fixed = 0.0;  // the other variable
  double lo = 0.0, hi = 1.0;
  double scan_step = 1e-2;
  double precision = 1e-6;
};

/// Points in [lo, hi] where the stratum changes, bisected to `precision`.
std::vector<double> find_boundaries(const Family& f, const BoundaryOptions& opt, Tolerance tol = {});

}  // namespace evo
