#include "evo/cea.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace evo {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

double frob_diff(const Matrix2<double>& a, const Matrix2<double>& b) { return frobenius(a - b); }

}  // namespace

OutOfDomain::OutOfDomain(double s, double t)
    : Error("(s, t) = (" + fmt(s) + ", " + fmt(t) + ") is outside 0 <= s <= t") {}

PhiVanishes::PhiVanishes(double s) : Error("phi vanishes at s = " + fmt(s)) {}

std::array<double, 2> f3_xi_zeta(const FamilyF3& f, double s, double t) {
  const double phi_s = eval(f.phi, s);
  if (std::abs(phi_s) <= kPhiFloor) throw PhiVanishes(s);
  const double phi_t = eval(f.phi, t);
  const double a = phi_t * (eval(f.psi, t) - eval(f.psi, s));
  const double b = phi_t / phi_s;
  return {a + b, a - b};
}

StructMatrix<double> evaluate(const Family& f, double s, double t) {
  if (!(s >= 0.0) || !(t >= s)) throw OutOfDomain(s, t);
  return std::visit(
      Overloaded{
          [&](const FamilyF1& g) {
            const double u = g.printed_exponent ? t : t - s;
            const double l = std::pow(g.lambda, u);
            const double m = std::pow(g.mu, u);
            const double p = 0.5 * (l + m), q = 0.5 * (l - m);
            return StructMatrix<double>(p, q, q, p);
          },
          [&](const FamilyF2& g) {
            const double k = g.half_factor ? 0.5 : 1.0;
            const double c = k * std::cos(t - s), sn = k * std::sin(t - s);
            return StructMatrix<double>(c, sn, -sn, c);
          },
          [&](const FamilyF3& g) {
            const auto [xi, zeta] = f3_xi_zeta(g, s, t);
            return StructMatrix<double>(0.5 * (1 + xi), 0.5 * (1 - xi), 0.5 * (1 + zeta), 0.5 * (1 - zeta));
          },
          [&](const FamilyCustom& g) {
            const Vars v{t, s};
            return StructMatrix<double>(eval(g.entries[0], v), eval(g.entries[1], v), eval(g.entries[2], v),
                                        eval(g.entries[3], v));
          },
      },
      f);
}

std::string family_name(const Family& f) {
  static constexpr std::array<const char*, 4> names{"f1", "f2", "f3", "custom"};
  return names[f.index()];
}

LowDiscrepancy::LowDiscrepancy(int dims) {
  // root of x^(d+1) = x + 1 by fixed-point iteration
  double g = 2.0;
  for (int i = 0; i < 64; ++i) g = std::pow(1.0 + g, 1.0 / (dims + 1));
  for (int j = 1; j <= dims; ++j) alpha_.push_back(std::fmod(std::pow(1.0 / g, j), 1.0));
}

std::vector<double> LowDiscrepancy::point(std::size_t n) const {
  std::vector<double> out;
  out.reserve(alpha_.size());
  for (double a : alpha_) {
    const double x = 0.5 + static_cast<double>(n) * a;
    out.push_back(x - std::floor(x));
  }
  return out;
}

std::vector<Triple> sample_triples(std::size_t n, double lo, double hi) {
  const LowDiscrepancy seq(3);
  std::vector<Triple> out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    auto p = seq.point(i);
    std::sort(p.begin(), p.end());
    out.push_back({lo + (hi - lo) * p[0], lo + (hi - lo) * p[1], lo + (hi - lo) * p[2]});
  }
  return out;
}

CKReport ck_check(const Family& f, const std::vector<Triple>& triples, double tol) {
  CKReport rep;
  rep.pass = true;
  for (const Triple& tr : triples) {
    const auto whole = evaluate(f, tr.s, tr.t);
    const Matrix2<double> chained = evaluate(f, tr.s, tr.tau) * evaluate(f, tr.tau, tr.t);
    const double r = frob_diff(whole, chained);
    rep.samples.push_back({tr, r});
    rep.max_residual = std::max(rep.max_residual, r);
    if (r > tol * std::max(1.0, frobenius(whole))) rep.pass = false;
  }
  return rep;
}

std::vector<ShiftSample> sample_shifts(std::size_t n, double lo, double hi) {
  const LowDiscrepancy seq(3);
  std::vector<ShiftSample> out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const auto p = seq.point(i);
    const double a = lo + (hi - lo) * p[0], b = lo + (hi - lo) * p[1];
    out.push_back({std::min(a, b), std::max(a, b), (hi - lo) * p[2], 0.0});
  }
  return out;
}

HomogeneityReport homogeneity_check(const Family& f, std::vector<ShiftSample> samples, double tol) {
  HomogeneityReport rep;
  rep.pass = true;
  for (ShiftSample& sm : samples) {
    const auto base = evaluate(f, sm.s, sm.t);
    sm.residual = frob_diff(evaluate(f, sm.s + sm.h, sm.t + sm.h), base);
    rep.max_residual = std::max(rep.max_residual, sm.residual);
    if (sm.residual > tol * std::max(1.0, frobenius(base))) rep.pass = false;
  }
  rep.samples = std::move(samples);
  return rep;
}

PeriodReport periodicity_scan(const Family& f, TimeVar var, const PeriodOptions& opt) {
  struct Point {
    double s, t;
    StructMatrix<double> m;
  };
  const LowDiscrepancy seq(2);
  std::vector<Point> pts;
  double scale = 1.0;
  for (std::size_t i = 1; i <= opt.samples; ++i) {
    const auto p = seq.point(i);
    const double s = p[0];
    const double t = var == TimeVar::T ? s + p[1] : s + opt.p_max + p[1];
    pts.push_back({s, t, evaluate(f, s, t)});
    scale = std::max(scale, frobenius(pts.back().m));
  }
  const double limit = opt.tol * scale;

  auto shifted = [&](const Point& pt, double period) {
    return var == TimeVar::T ? evaluate(f, pt.s, pt.t + period) : evaluate(f, pt.s + period, pt.t);
  };
  auto sum_sq = [&](double period) {
    double acc = 0.0;
    for (const Point& pt : pts) {
      const double r = frob_diff(shifted(pt, period), pt.m);
      acc += r * r;
    }
    return acc;
  };
  auto worst = [&](double period) {
    double w = 0.0;
    for (const Point& pt : pts) w = std::max(w, frob_diff(shifted(pt, period), pt.m));
    return w;
  };

  PeriodReport rep;
  const auto k_max = static_cast<std::size_t>(std::floor(opt.p_max / opt.grid_step + 1e-9));
  if (k_max == 0) return rep;
  std::vector<double> h(k_max + 1);
  bool all_pass = true;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double period = k * opt.grid_step;
    h[k] = sum_sq(period);
    if (all_pass && worst(period) > limit) all_pass = false;
  }
  if (all_pass) {
    rep.period = opt.grid_step;
    rep.residual = worst(opt.grid_step);
    rep.degenerate = true;
    return rep;
  }

  constexpr double eps = 1e-7;
  for (std::size_t k = 2; k < k_max; ++k) {
    if (h[k] > h[k - 1] || h[k] > h[k + 1]) continue;
    double lo = (k - 1) * opt.grid_step, hi = (k + 1) * opt.grid_step;
    for (int it = 0; it < 100 && hi - lo > 1e-13; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (sum_sq(mid + eps) - sum_sq(mid - eps) > 0.0) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    const double period = 0.5 * (lo + hi);
    const double w = worst(period);
    if (w <= limit) {
      rep.period = period;
      rep.residual = w;
      return rep;
    }
  }
  return rep;
}

}  // namespace evo
