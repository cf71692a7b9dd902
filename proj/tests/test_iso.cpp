#include <doctest.h>

#include "evo/iso.hpp"
#include "oracle/brute_iso.hpp"
#include "oracle/expansion.hpp"
#include "support.hpp"

using namespace evo;
using Q = Rational;

namespace {

StructMatrix<Q> qm(const Q& a, const Q& b, const Q& c, const Q& d) { return {a, b, c, d}; }

void check_exact_witness(const StructMatrix<Q>& l, const StructMatrix<Q>& r, const IsoResult<Q>& res) {
  REQUIRE(res.witness);
  const auto got = oracle::expand_transform(oracle::flat(lift(l)), oracle::flat(*res.witness));
  const auto cross = oracle::cross_product(oracle::flat(lift(l)), oracle::flat(*res.witness));
  CHECK(cross[0] == RadicalNumber(0));
  CHECK(cross[1] == RadicalNumber(0));
  CHECK(got == oracle::flat(lift(r)));
}

}  // namespace

TEST_CASE("iso examples") {
  const auto a = qm(1, 2, 3, 1), b = qm(1, 3, 2, 1);
  const auto r = iso(a, b);
  CHECK(r.isomorphic);
  CHECK(r.method == IsoMethod::Analytic);
  CHECK(r.witness->a11 == RadicalNumber(0));
  CHECK(r.witness->a22 == RadicalNumber(0));
  check_exact_witness(a, b, r);

  CHECK_FALSE(iso(qm(1, 0, 0, 0), qm(0, 1, 0, 0)).isomorphic);

  const auto e5 = iso(qm(1, 0, -1, 0), qm(0, 1, 0, -1));
  CHECK(e5.isomorphic);
  CHECK(*e5.witness == BasisChange<RadicalNumber>(0, 1, -1, 0));

  const auto self = iso(qm(3, -2, 7, 5), qm(3, -2, 7, 5));
  CHECK(self.isomorphic);
  CHECK(*self.witness == BasisChange<RadicalNumber>(Matrix2<RadicalNumber>::identity()));
}

TEST_CASE("brute-force oracle examples") {
  CHECK(oracle::brute_force_iso({1, 0, 1, 0}, {1, 0, 1, 0}));
  CHECK(oracle::brute_force_iso({1, Q(1, 3).get_d(), Q(1, 3).get_d(), 1}, {3, 1, 1, 3}));
  CHECK_FALSE(oracle::brute_force_iso({0, 1, 1, 1}, {0, 1, 1, -1}));
  // witness entries outside the starting grid
  CHECK(oracle::brute_force_iso({0, 1, 0.05, 0.95}, {0, 1, 1, 0.95 / std::cbrt(0.05 * 0.05)}));
  // lower-rank tables in the orbit closure are not reachable
  CHECK_FALSE(oracle::brute_force_iso({0, 1, 1, 0}, {0, 1, 0, 0}));
  CHECK_FALSE(oracle::brute_force_iso({1, 0, 0, 1}, {0, 0, 0, 0}));
  CHECK_FALSE(oracle::brute_force_iso({1, 0, 1, 0}, {1, 0, 0, 0}));
}

TEST_CASE("M is isomorphic to every natural transform of M, exactly") {
  std::mt19937_64 rng(21);
  auto scalar = [&] { return testing_support::random_nonzero(rng, 3, 3); };
  for (int i = 0; i < 3000; ++i) {
    const StructMatrix<Q> m = testing_support::random_stratum_matrix(rng, i);
    const StructMatrix<Q> m2 = transform(m, testing_support::random_natural(m, rng, scalar));
    const auto res = iso(m, m2);
    CHECK(res.isomorphic);
    check_exact_witness(m, m2, res);
  }
}

TEST_CASE("iso agrees with classify on random exact pairs") {
  std::mt19937_64 rng(22);
  int positives = 0;
  for (int i = 0; i < 10000; ++i) {
    StructMatrix<Q> a = testing_support::random_stratum_matrix(rng, i);
    StructMatrix<Q> b = testing_support::random_stratum_matrix(rng, i + (i % 3 == 0 ? 0 : 1));
    if (i % 5 == 0) b = transform(a, testing_support::random_natural(a, rng, [&] { return testing_support::random_nonzero(rng, 2, 2); }));
    const bool same = classify(a).cls == classify(b).cls;
    const auto res = iso(a, b);
    CHECK(res.isomorphic == same);
    CHECK(iso(b, a).isomorphic == same);
    if (res.isomorphic) {
      ++positives;
      check_exact_witness(a, b, res);
    }
  }
  CHECK(positives > 2000);
}

TEST_CASE("witness transitivity") {
  std::mt19937_64 rng(23);
  auto scalar = [&] { return testing_support::random_nonzero(rng, 2, 2); };
  for (int i = 0; i < 500; ++i) {
    const StructMatrix<Q> a = testing_support::random_stratum_matrix(rng, i);
    const StructMatrix<Q> b = transform(a, testing_support::random_natural(a, rng, scalar));
    const StructMatrix<Q> c = transform(b, testing_support::random_natural(b, rng, scalar));
    const auto ab = iso(a, b);
    const auto bc = iso(b, c);
    REQUIRE(ab.witness);
    REQUIRE(bc.witness);
    try {
      const auto ac = compose(*bc.witness, *ab.witness);
      CHECK(verify_witness(a, c, ac));
    } catch (const std::domain_error&) {
      // the two witnesses live in different radical fields; compare numerically
      const auto ac = compose(convert<double>(*bc.witness, [](const RadicalNumber& x) { return x.to_double(); }),
                              convert<double>(*ab.witness, [](const RadicalNumber& x) { return x.to_double(); }));
      CHECK(verify_witness(to_double(a), to_double(c), ac, Tolerance{1e-9}));
    }
  }
}

TEST_CASE("floating iso: analytic paths and rejections") {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> u(-3, 3);
  auto scalar = [&] {
    double x = 0;
    while (std::abs(x) < 0.2) x = u(rng);
    return x;
  };
  for (int i = 0; i < 2000; ++i) {
    const StructMatrix<double> m = to_double(testing_support::random_stratum_matrix(rng, i));
    const StructMatrix<double> m2 = transform(m, testing_support::random_natural(m, rng, scalar));
    const auto res = iso(m, m2);
    INFO(static_cast<const Matrix2<double>&>(m), " -> ", static_cast<const Matrix2<double>&>(m2));
    CHECK(res.isomorphic);
    if (res.witness) {
      const auto got = oracle::expand_transform(oracle::flat(m), oracle::flat(*res.witness));
      const auto want = oracle::flat(m2);
      double scale = 1.0;
      for (double x : want) scale = std::max(scale, std::abs(x));
      for (int k = 0; k < 4; ++k) CHECK(std::abs(got[k] - want[k]) <= 1e-9 * scale);
    }
  }
  CHECK_FALSE(iso(StructMatrix<double>(0, 1, 1, 1), StructMatrix<double>(0, 1, 1, -1)).isomorphic);
  CHECK_FALSE(iso(StructMatrix<double>(1, 0.5, 2, 1), StructMatrix<double>(1, 0.5, 2.5, 1)).isomorphic);
}

TEST_CASE("numeric search finds a witness on its own") {
  // E6(2,3) against its antidiagonal copy, bypassing the analytic solver
  const StructMatrix<double> a(1, 2, 3, 1), b(1, 3, 2, 1);
  const auto found = detail::numeric_search(a, b, {});
  REQUIRE(found.witness);
  CHECK(verify_witness(a, b, *found.witness));
  const auto none = detail::numeric_search(StructMatrix<double>(0, 1, 1, 1), StructMatrix<double>(0, 1, 1, -1), {});
  CHECK_FALSE(none.witness);
  CHECK(none.best_residual > 1e-6);
}

TEST_CASE("exact iso never falls back to numerics") {
  const auto res = iso(qm(0, 2, 1, 1), qm(0, 1, 1, Q(1, 2)));
  // [[0,2],[1,1]] is E7(1/cbrt(2)); E7(1/2) differs
  CHECK_FALSE(res.isomorphic);
  const auto yes = iso(qm(0, 2, 1, 1), qm(0, 1, 1, 1));
  CHECK_FALSE(yes.isomorphic);
  const auto irr = iso(qm(0, 2, 1, 0), qm(0, 1, 1, 0));
  CHECK(irr.isomorphic);
  check_exact_witness(qm(0, 2, 1, 0), qm(0, 1, 1, 0), irr);
}
