#include "heegner/real.hpp"

#include <stdexcept>

namespace heegner {

Real Real::from_string(std::string_view s, mpfr_prec_t prec) {
  Real r(prec);
  std::string tmp(s);
  if (mpfr_set_str(r.v_, tmp.c_str(), 10, MPFR_RNDN) != 0 && r.is_nan())
    throw std::invalid_argument("Real::from_string: cannot parse '" + tmp + "'");
  return r;
}

std::string Real::str(size_t digits) const {
  if (is_nan()) return "nan";
  if (mpfr_inf_p(v_)) return sign() > 0 ? "inf" : "-inf";
  char fmt[32];
  std::snprintf(fmt, sizeof fmt, "%%.%zuRe", digits ? digits - 1 : 0);
  char* out = nullptr;
  if (mpfr_asprintf(&out, fmt, v_) < 0) throw std::runtime_error("mpfr_asprintf failed");
  std::string s(out);
  mpfr_free_str(out);
  return s;
}

std::string Complex::str(size_t digits) const {
  return re_.str(digits) + (im_.sign() < 0 ? " - " : " + ") + heegner::abs(im_).str(digits) + "i";
}

#define HEEGNER_REAL_FN1(NAME, MPFR_FN)      \
  Real NAME(const Real& x) {                 \
    Real r(x.precision());                   \
    MPFR_FN(r.raw(), x.raw(), MPFR_RNDN);    \
    return r;                                \
  }

HEEGNER_REAL_FN1(sqrt, mpfr_sqrt)
HEEGNER_REAL_FN1(cbrt, mpfr_cbrt)
HEEGNER_REAL_FN1(abs, mpfr_abs)
HEEGNER_REAL_FN1(exp, mpfr_exp)
HEEGNER_REAL_FN1(log, mpfr_log)
HEEGNER_REAL_FN1(sin, mpfr_sin)
HEEGNER_REAL_FN1(cos, mpfr_cos)
#undef HEEGNER_REAL_FN1

Real atan2(const Real& y, const Real& x) {
  Real r(std::max(y.precision(), x.precision()));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real pow_si(const Real& x, long e) {
  Real r(x.precision());
  mpfr_pow_si(r.raw(), x.raw(), e, MPFR_RNDN);
  return r;
}

Real hypot(const Real& x, const Real& y) {
  Real r(std::max(x.precision(), y.precision()));
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

Real ldexp(const Real& x, long e) {
  Real r(x.precision());
  mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
  return r;
}

Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
Real max(const Real& a, const Real& b) { return a >= b ? a : b; }

Real pi(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

Real euler_gamma(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_euler(r.raw(), MPFR_RNDN);
  return r;
}

Real log2_const(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_log2(r.raw(), MPFR_RNDN);
  return r;
}

Real agm(const Real& a, const Real& b, mpfr_prec_t prec) {
  if (!(a > 0L) || !(b > 0L)) throw std::domain_error("agm: inputs must be positive");
  Real r(prec);
  // MPFR's agm is the same iteration (a,b) <- ((a+b)/2, sqrt(ab)) run to
  // convergence, correctly rounded.
  mpfr_agm(r.raw(), a.with_precision(prec).raw(), b.with_precision(prec).raw(), MPFR_RNDN);
  return r;
}

Real exp_integral_e1(const Real& x, mpfr_prec_t prec) {
  if (!(x > 0L)) throw std::domain_error("exp_integral_e1: x must be positive");
  // E1(x) = -Ei(-x) for x > 0.
  Real r(prec + kGuardBits);
  mpfr_neg(r.raw(), x.with_precision(prec + kGuardBits).raw(), MPFR_RNDN);
  mpfr_eint(r.raw(), r.raw(), MPFR_RNDN);
  mpfr_neg(r.raw(), r.raw(), MPFR_RNDN);
  return r.with_precision(prec);
}

Complex sqrt(const Complex& z) {
  mpfr_prec_t p = z.precision();
  if (z.im().is_zero()) {
    if (z.re().sign() >= 0) return Complex(sqrt(z.re()), Real(0L, p));
    return Complex(Real(0L, p), sqrt(-z.re()));
  }
  // sqrt((r + re)/2) + i sgn(im) sqrt((r - re)/2), r = |z|
  Real r = z.abs();
  Real u = sqrt(ldexp(r + z.re(), -1));
  Real v = sqrt(ldexp(r - z.re(), -1));
  if (z.im().sign() < 0) v = -v;
  return Complex(u, v);
}

Complex exp(const Complex& z) {
  Real m = exp(z.re());
  return Complex(m * cos(z.im()), m * sin(z.im()));
}

Complex agm(const Complex& a0, const Complex& b0, mpfr_prec_t prec) {
  mpfr_prec_t wp = prec + kGuardBits + 8;
  Complex a(a0.re().with_precision(wp), a0.im().with_precision(wp));
  Complex b(b0.re().with_precision(wp), b0.im().with_precision(wp));
  Real tol = ldexp(Real(1L, wp), -(prec + 4));
  for (int it = 0; it < 4 * 64 + (int)prec; ++it) {
    Complex am = (a + b) / Real(2L, wp);
    Complex gm = sqrt(a * b);
    // Optimal branch: require |am - gm| <= |am + gm|; flip sign otherwise.
    Real d1 = (am - gm).norm(), d2 = (am + gm).norm();
    if (d1 > d2) gm = -gm;
    a = am;
    b = gm;
    Real scale = a.abs();
    if ((a - b).abs() <= tol * scale) break;
  }
  Complex r = (a + b) / Real(2L, wp);
  return Complex(r.re().with_precision(prec), r.im().with_precision(prec));
}

}  // namespace heegner
