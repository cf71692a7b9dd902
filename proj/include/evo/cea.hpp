#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "evo/algebra.hpp"
#include "evo/expr.hpp"

namespace evo {

/// (1/2) [[L + M, L - M], [L - M, L + M]] with L = lambda^u, M = mu^u.
/// u = t - s by default; `printed_exponent` uses u = t, which breaks
/// Chapman-Kolmogorov.
struct FamilyF1 {
  double lambda = 2.0;
  double mu = 0.5;
  bool printed_exponent = false;
};

/// Rotation [[cos(t - s), sin(t - s)], [-sin(t - s), cos(t - s)]], optionally
/// halved (`half_factor`), which breaks Chapman-Kolmogorov.
struct FamilyF2 {
  bool half_factor = false;
};

/// (1/2) [[1 + xi, 1 - xi], [1 + zeta, 1 - zeta]] with
/// xi = A + B, zeta = A - B, A = phi(t)(psi(t) - psi(s)), B = phi(t)/phi(s).
struct FamilyF3 {
  Expr phi;
  Expr psi;
};

/// Four entries as expressions in s and t, row-major.
struct FamilyCustom {
  std::array<Expr, 4> entries;
};

using Family = std::variant<FamilyF1, FamilyF2, FamilyF3, FamilyCustom>;

class OutOfDomain : public Error {
 public:
  OutOfDomain(double s, double t);
};

class PhiVanishes : public Error {
 public:
  explicit PhiVanishes(double s);
};

class UnsupportedFamily : public Error {
 public:
  explicit UnsupportedFamily(const std::string& what) : Error(what) {}
};

/// |phi(s)| must exceed this for F3.
inline constexpr double kPhiFloor = 1e-9;

/// M^{[s,t]}; requires 0 <= s <= t. Throws OutOfDomain, PhiVanishes,
/// EvalDomainError.
StructMatrix<double> evaluate(const Family& f, double s, double t);

std::string family_name(const Family& f);

/// The pair (xi, zeta) of F3 at (s, t).
std::array<double, 2> f3_xi_zeta(const FamilyF3& f, double s, double t);

struct Triple {
  double s = 0.0, tau = 0.0, t = 0.0;
};

/// Additive recurrence x_n = frac(0.5 + n * alpha) in d dimensions, alpha
/// built from the real root of x^(d+1) = x + 1. Deterministic.
class LowDiscrepancy {
 public:
  explicit LowDiscrepancy(int dims);
  std::vector<double> point(std::size_t n) const;

 private:
  std::vector<double> alpha_;
};

/// n triples s <= tau <= t in [lo, hi].
std::vector<Triple> sample_triples(std::size_t n, double lo, double hi);

struct CKSample {
  Triple at;
  double residual = 0.0;  // ||M[s,t] - M[s,tau] M[tau,t]||_F
};

struct CKReport {
  std::vector<CKSample> samples;
  double max_residual = 0.0;
  bool pass = false;
};

/// Passes iff every residual <= tol * max(1, ||M[s,t]||_F).
CKReport ck_check(const Family& f, const std::vector<Triple>& triples, double tol = 1e-9);

struct ShiftSample {
  double s = 0.0, t = 0.0, h = 0.0;
  double residual = 0.0;  // ||M[s+h, t+h] - M[s,t]||_F
};

struct HomogeneityReport {
  std::vector<ShiftSample> samples;
  double max_residual = 0.0;
  bool pass = false;
};

/// n shifts (s, t, h) with lo <= s <= t <= hi and 0 <= h <= hi - lo.
std::vector<ShiftSample> sample_shifts(std::size_t n, double lo, double hi);

HomogeneityReport homogeneity_check(const Family& f, std::vector<ShiftSample> samples, double tol = 1e-9);

enum class TimeVar { S, T };

struct PeriodOptions {
  double p_max = 10.0;
  double grid_step = 1e-3;
  double tol = 1e-9;
  std::size_t samples = 16;
};

struct PeriodReport {
  std::optional<double> period;
  double residual = 0.0;    // max over samples at the reported period
  bool degenerate = false;  // every grid shift passed
};

/// Smallest P in (0, p_max] with max_k ||M(shifted by P) - M||_F <= tol.
/// Shifting t compares M[s, t+P]; shifting s compares M[s+P, t] on samples
/// with t >= s + p_max. Candidates are interior grid minima of the summed
/// squared residual, refined by bisection on the sign of its slope.
PeriodReport periodicity_scan(const Family& f, TimeVar var, const PeriodOptions& opt = {});

}  // namespace evo
