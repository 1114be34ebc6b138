#include "heegner/real.hpp"

#include <stdexcept>
#include <vector>

#include "doctest.h"

using namespace heegner;

namespace {

// |a - b| <= 2^e
bool close2(const Real& a, const Real& b, long e) {
  Real d = abs(a - b);
  return d <= ldexp(Real(1L, 64), e);
}

// Independent oracle: direct AGM iteration run to convergence.
Real agm_naive(Real a, Real b, mpfr_prec_t prec) {
  a = a.with_precision(prec + 32);
  b = b.with_precision(prec + 32);
  for (int i = 0; i < 200; i++) {
    Real am = ldexp(a + b, -1);
    Real gm = sqrt(a * b);
    a = am;
    b = gm;
    if (abs(a - b) <= ldexp(max(abs(a), Real(1L, 64)), -(long)prec - 8)) break;
  }
  return a;
}

// Romberg integration of f on [lo, hi] at working precision wp.
template <class F>
Real romberg(F f, const Real& lo, const Real& hi, mpfr_prec_t wp, int levels) {
  std::vector<std::vector<Real>> r(levels);
  Real h = hi - lo;
  r[0].push_back(ldexp((f(lo) + f(hi)) * h, -1));
  for (int k = 1; k < levels; k++) {
    h = ldexp(h, -1);
    // trapezoid refinement
    Real s(0L, wp);
    long n = 1L << (k - 1);
    for (long i = 0; i < n; i++) s += f(lo + Real(2 * i + 1, wp) * h);
    r[k].push_back(ldexp(r[k - 1][0], -1) + s * h);
    for (int j = 1; j <= k; j++) {
      Real num = ldexp(r[k][j - 1], 2 * j) - r[k - 1][j - 1];
      r[k].push_back(num / Real((1L << (2 * j)) - 1, wp));
    }
  }
  return r[levels - 1][levels - 1];
}

}  // namespace

TEST_CASE("agm fixed points and symmetry") {
  Real one(1L, 200), two(2L, 200);
  CHECK(agm(one, one, 200) == one);
  CHECK(agm(two, two, 200) == two);
  Real x(1.25, 200), y(3.5, 200);
  CHECK(close2(agm(x, y, 200), agm(y, x, 200), -196));
}

TEST_CASE("agm(1, sqrt 2) matches direct iteration at 200 bits") {
  Real a(1L, 220), b = sqrt(Real(2L, 220));
  Real expect = agm_naive(a, b, 200);
  Real got = agm(a, b, 200);
  CHECK(close2(got, expect, -192));
}

TEST_CASE("agm bounds and scaling") {
  std::vector<std::pair<double, double>> samples = {
      {1.0, 2.0}, {0.125, 9.75}, {3.0, 3.0625}, {1e-3, 1.0}, {7.5, 100.25}};
  for (auto [da, db] : samples) {
    Real a(da, 160), b(db, 160);
    Real m = agm(a, b, 160);
    CHECK(m >= min(a, b));
    CHECK(m <= max(a, b));
    for (double dc : {0.5, 3.0, 12.25}) {
      Real c(dc, 160);
      CHECK(close2(agm(a * c, b * c, 160), c * m, -140));
    }
  }
}

TEST_CASE("agm rejects non-positive input") {
  Real a(1L, 100);
  CHECK_THROWS_AS(agm(a, Real(0L, 100), 100), std::domain_error);
  CHECK_THROWS_AS(agm(Real(-2L, 100), a, 100), std::domain_error);
}

TEST_CASE("e1 asymptotic inequality at x = 50") {
  Real x(50L, 150);
  Real v = exp_integral_e1(x, 150);
  CHECK(v > 0L);
  CHECK(v < exp(-x) / x);
}

TEST_CASE("e1(1) matches quadrature of the defining integral at 100 bits") {
  // int_1^inf e^-t/t dt; truncate at T = 90 (tail < e^-90 < 2^-129).
  const mpfr_prec_t wp = 140;
  auto f = [&](const Real& t) { return exp(-t) / t; };
  Real lo(1L, wp);
  Real acc(0L, wp);
  // split [1, 90] into [1,3],[3,9],[9,30],[30,90] for Romberg efficiency
  double cuts[] = {1, 3, 9, 30, 90};
  for (int i = 0; i < 4; i++)
    acc += romberg(f, Real(cuts[i], wp), Real(cuts[i + 1], wp), wp, 14);
  Real got = exp_integral_e1(Real(1L, wp), 100);
  CHECK(close2(got, acc, -98));
}

TEST_CASE("e1(1/2) matches the convergent series oracle") {
  const mpfr_prec_t wp = 160;
  Real x(0.5, wp);
  // -gamma - ln x - sum_k (-x)^k / (k * k!)
  Real s(0L, wp);
  Real term(1L, wp);  // (-x)^k / k!
  for (long k = 1; k <= 120; k++) {
    term = term * (-x) / Real(k, wp);
    s += term / Real(k, wp);
  }
  Real expect = -euler_gamma(wp) - log(x) - s;
  CHECK(close2(exp_integral_e1(x, 150), expect, -145));
}

TEST_CASE("e1 is strictly decreasing; e1 + ln x bounded near 0") {
  Real prev = exp_integral_e1(Real(0.0625, 150), 150);
  for (double x = 0.125; x < 40; x *= 1.5) {
    Real cur = exp_integral_e1(Real(x, 150), 150);
    CHECK(cur < prev);
    prev = cur;
  }
  // E1(x) = -gamma - ln x + O(x): e1 + ln x stays within [-1, 1] for small x
  for (double x : {1e-4, 1e-3, 1e-2, 0.1}) {
    Real v = exp_integral_e1(Real(x, 150), 150) + log(Real(x, 150));
    CHECK(abs(v) < Real(1L, 150));
  }
}

TEST_CASE("e1 domain errors") {
  CHECK_THROWS_AS(exp_integral_e1(Real(0L, 100), 100), std::domain_error);
  CHECK_THROWS_AS(exp_integral_e1(Real(-3L, 100), 100), std::domain_error);
}

TEST_CASE("precision ladder: p vs p+64 agree to 2^(-p+g)") {
  for (long p : {120L, 200L}) {
    Real a(1L, p + 80), b = sqrt(Real(2L, p + 80));
    Real v1 = agm(a, b, p);
    Real v2 = agm(a, b, p + 64);
    CHECK(close2(v1, v2, -(p - kGuardBits)));
    Real e1a = exp_integral_e1(Real(1L, p + 80), p);
    Real e1b = exp_integral_e1(Real(1L, p + 80), p + 64);
    CHECK(close2(e1a, e1b, -(p - kGuardBits)));
    Real e2a = exp_integral_e1(Real(37.5, p + 80), p);
    Real e2b = exp_integral_e1(Real(37.5, p + 80), p + 64);
    // relative for tiny values
    CHECK(abs(e2a - e2b) <= abs(e2b) * ldexp(Real(1L, 64), -(p - kGuardBits)));
  }
}

TEST_CASE("determinism: identical inputs give bit-identical outputs") {
  Real a(1.5, 180), b(2.75, 180);
  Real m1 = agm(a, b, 180), m2 = agm(a, b, 180);
  CHECK(mpfr_cmp(m1.raw(), m2.raw()) == 0);
  Real x(0.75, 180);
  CHECK(mpfr_cmp(exp_integral_e1(x, 180).raw(), exp_integral_e1(x, 180).raw()) == 0);
}

TEST_CASE("complex basics") {
  mpfr_prec_t p = 150;
  Complex i(Real(0L, p), Real(1L, p));
  Complex r = sqrt(Complex(Real(-1L, p), Real(0L, p)));
  CHECK(close2(r.re(), Real(0L, p), -140));
  CHECK(close2(r.im(), Real(1L, p), -140));
  // exp(i pi) = -1
  Complex e = exp(Complex(Real(0L, p), pi(p)));
  CHECK(close2(e.re(), Real(-1L, p), -140));
  CHECK(close2(e.im(), Real(0L, p), -140));
  // sqrt principal branch: sqrt(z)^2 = z
  Complex z(Real(-2.25, p), Real(3.5, p));
  Complex s = sqrt(z);
  CHECK(close2((s * s).re(), z.re(), -135));
  CHECK(close2((s * s).im(), z.im(), -135));
  CHECK(s.re() >= 0L);
}

TEST_CASE("complex agm agrees with real agm on positive reals") {
  mpfr_prec_t p = 150;
  Complex a(Real(1L, p), Real(0L, p));
  Complex b(Real(2L, p), Real(0L, p));
  Complex m = agm(a, b, p);
  Real expect = agm(Real(1L, p), Real(2L, p), p);
  CHECK(close2(m.re(), expect, -140));
  CHECK(close2(m.im(), Real(0L, p), -140));
}

TEST_CASE("real parsing and printing round-trip") {
  Real x = Real::from_string("1.2345678901234567890123456789e-3", 200);
  std::string s = x.str(30);
  Real y = Real::from_string(s, 200);
  CHECK(close2(x, y, -190));
}
