#include "evo/dynamics.hpp"

#include <cmath>

namespace evo {

namespace {

int sign(double x) { return (x > 0) - (x < 0); }

Stratum stratum_of(const CanonicalRecord<double>& rec) {
  Stratum st;
  st.tag = rec.cls.tag;
  if (rank(rec.representative) == 2) {
    const auto& r = rec.representative;
    st.sign_a1 = sign(r.a11);
    st.sign_a4 = sign(r.a22);
    st.sign_det = sign(r.det());
  }
  return st;
}

}  // namespace

CanonicalClass<double> expected_class(const Family& f, double s, double t, Tolerance tol) {
  if (const auto* g = std::get_if<FamilyF1>(&f)) {
    const double u = g->printed_exponent ? t : t - s;
    const double l = std::pow(g->lambda, u), m = std::pow(g->mu, u);
    return classify_lemma_form(LemmaForm::Symmetric, 0.5 * (l + m), 0.5 * (l - m), tol);
  }
  if (const auto* g = std::get_if<FamilyF2>(&f)) {
    const double k = g->half_factor ? 0.5 : 1.0;
    return classify_lemma_form(LemmaForm::Skew, k * std::cos(t - s), k * std::sin(t - s), tol);
  }
  if (const auto* g = std::get_if<FamilyF3>(&f)) {
    const auto [xi, zeta] = f3_xi_zeta(*g, s, t);
    return classify_lemma_form(LemmaForm::Affine, xi, zeta, tol);
  }
  throw UnsupportedFamily("no closed-form class for custom families");
}

std::vector<double> grid_points(const TraceGrid& grid) {
  if (!(grid.step > 0.0)) throw Error("grid step must be positive");
  if (grid.t1 < grid.t0) throw Error("grid end precedes grid start");
  const auto n = static_cast<std::size_t>(std::floor((grid.t1 - grid.t0) / grid.step + 1e-9));
  std::vector<double> ts;
  ts.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) ts.push_back(grid.t0 + static_cast<double>(k) * grid.step);
  return ts;
}

std::vector<TraceRecord> trace(const Family& f, const TraceGrid& grid, Tolerance tol) {
  if (!(grid.s >= 0.0) || grid.t0 < grid.s) throw OutOfDomain(grid.s, grid.t0);
  const bool closed_form = !std::holds_alternative<FamilyCustom>(f);
  std::vector<TraceRecord> out;
  std::vector<Stratum> strata;
  for (double t : grid_points(grid)) {
    const auto rec = classify(evaluate(f, grid.s, t), tol);
    TraceRecord tr;
    tr.s = grid.s;
    tr.t = t;
    tr.cls = rec.cls;
    tr.ambiguous = rec.ambiguous;
    if (closed_form) {
      tr.expected = expected_class(f, grid.s, t, tol);
      tr.agrees = same_class(tr.cls, *tr.expected, 1e-9);
    }
    out.push_back(std::move(tr));
    strata.push_back(stratum_of(rec));
  }
  for (std::size_t k = 0; k + 1 < out.size(); ++k) {
    if (!(strata[k] == strata[k + 1])) {
      out[k].boundary = true;
      out[k + 1].boundary = true;
    }
  }
  return out;
}

Stratum stratum_at(const Family& f, double s, double t, Tolerance tol) {
  return stratum_of(classify(evaluate(f, s, t), tol));
}

std::vector<double> find_boundaries(const Family& f, const BoundaryOptions& opt, Tolerance tol) {
  if (!(opt.scan_step > 0.0) || !(opt.precision > 0.0)) throw Error("scan step and precision must be positive");
  auto at = [&](double x) {
    return opt.var == TimeVar::T ? stratum_at(f, opt.fixed, x, tol) : stratum_at(f, x, opt.fixed, tol);
  };
  std::vector<double> found;
  const auto n = static_cast<std::size_t>(std::ceil((opt.hi - opt.lo) / opt.scan_step - 1e-9));
  double prev_x = opt.lo;
  Stratum prev = at(prev_x);
  for (std::size_t k = 1; k <= n; ++k) {
    const double x = std::min(opt.hi, opt.lo + static_cast<double>(k) * opt.scan_step);
    const Stratum cur = at(x);
    if (!(cur == prev)) {
      double a = prev_x, b = x;
      while (b - a > opt.precision) {
        const double mid = 0.5 * (a + b);
        if (at(mid) == prev) {
          a = mid;
        } else {
          b = mid;
        }
      }
      const double point = 0.5 * (a + b);
      if (found.empty() || point - found.back() > 2 * opt.precision) found.push_back(point);
    }
    prev_x = x;
    prev = cur;
  }
  return found;
}

}  // namespace evo
