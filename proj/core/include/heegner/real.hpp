#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdlib>
#include <string>
#include <string_view>
#include <utility>

namespace heegner {

// Compound operations in this library (agm, e1, series sums, ...) keep their
// relative error below 2^(-prec + kGuardBits).  Primitive operations are
// correctly rounded by MPFR (round-to-nearest-even throughout), so their
// error is at most half an ulp.
inline constexpr long kGuardBits = 16;

// Arbitrary-precision real with an explicit binary working precision.
// Binary operations produce a result at the larger of the two operand
// precisions.  Values are immutable in spirit: every operation returns a
// fresh value, and const Reals are safe to share between threads.
class Real {
 public:
  Real() { mpfr_init2(v_, 53); mpfr_set_nan(v_); }
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_nan(v_); }
  Real(double x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
  Real(long x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(int x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(const mpz_class& x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
  }
  Real(const mpq_class& x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
  }

  // Parses a decimal literal (as produced by str()) at the given precision.
  static Real from_string(std::string_view s, mpfr_prec_t prec);

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, 53);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  // Same value rounded to precision p.
  Real with_precision(mpfr_prec_t p) const {
    Real r(p);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  // Nearest integer (ties to even).
  mpz_class round_to_integer() const {
    Real t(precision());
    mpfr_rint(t.v_, v_, MPFR_RNDN);
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), t.v_, MPFR_RNDN);
    return z;
  }
  mpz_class floor_to_integer() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
    return z;
  }

  // Decimal string with the given number of significant digits.
  std::string str(size_t digits = 20) const;

  Real operator-() const {
    Real r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

#define HEEGNER_REAL_BINOP(OP, FN)                            \
  friend Real operator OP(const Real& a, const Real& b) {     \
    Real r(std::max(a.precision(), b.precision()));           \
    FN(r.v_, a.v_, b.v_, MPFR_RNDN);                          \
    return r;                                                 \
  }                                                           \
  friend Real operator OP(const Real& a, long b) {            \
    Real r(a.precision());                                    \
    FN##_si(r.v_, a.v_, b, MPFR_RNDN);                        \
    return r;                                                 \
  }                                                           \
  Real& operator OP##=(const Real& b) {                       \
    if (precision() < b.precision()) *this = with_precision(b.precision()); \
    FN(v_, v_, b.v_, MPFR_RNDN);                              \
    return *this;                                             \
  }

  HEEGNER_REAL_BINOP(+, mpfr_add)
  HEEGNER_REAL_BINOP(-, mpfr_sub)
  HEEGNER_REAL_BINOP(*, mpfr_mul)
  HEEGNER_REAL_BINOP(/, mpfr_div)
#undef HEEGNER_REAL_BINOP

  friend Real operator+(long a, const Real& b) { return b + a; }
  friend Real operator*(long a, const Real& b) { return b * a; }
  friend Real operator-(long a, const Real& b) {
    Real r(b.precision());
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(long a, const Real& b) {
    Real r(b.precision());
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
  friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
  friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
  friend bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
  friend bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }

  // Direct access for implementation code.
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  mpfr_t v_;
};

Real sqrt(const Real& x);
Real cbrt(const Real& x);
Real abs(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow_si(const Real& x, long e);
Real hypot(const Real& x, const Real& y);
// x * 2^e
Real ldexp(const Real& x, long e);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

Real pi(mpfr_prec_t prec);
Real euler_gamma(mpfr_prec_t prec);
Real log2_const(mpfr_prec_t prec);

// Arithmetic-geometric mean of two positive reals, iterated to convergence
// at the stated precision.  Throws std::domain_error unless a, b > 0.
// Guard bits used: <= 4.
Real agm(const Real& a, const Real& b, mpfr_prec_t prec);

// Exponential integral E1(x) = int_x^inf e^(-t)/t dt for x > 0.
// Throws std::domain_error unless x > 0.  Guard bits used: <= 8.
Real exp_integral_e1(const Real& x, mpfr_prec_t prec);

// Complex value as a pair of Reals at a common working precision.
class Complex {
 public:
  Complex() = default;
  explicit Complex(mpfr_prec_t prec) : re_(prec), im_(prec) {}
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  Complex(double re, double im, mpfr_prec_t prec) : re_(re, prec), im_(im, prec) {}
  explicit Complex(const Real& re) : re_(re), im_(0L, re.precision()) {}

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  Real& re() { return re_; }
  Real& im() { return im_; }
  mpfr_prec_t precision() const { return std::max(re_.precision(), im_.precision()); }

  Complex conj() const { return Complex(re_, -im_); }
  Real norm() const { return re_ * re_ + im_ * im_; }
  Real abs() const { return hypot(re_, im_); }

  Complex operator-() const { return Complex(-re_, -im_); }
  friend Complex operator+(const Complex& a, const Complex& b) {
    return Complex(a.re_ + b.re_, a.im_ + b.im_);
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return Complex(a.re_ - b.re_, a.im_ - b.im_);
  }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return Complex(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
  }
  friend Complex operator*(const Real& a, const Complex& b) {
    return Complex(a * b.re_, a * b.im_);
  }
  friend Complex operator*(long a, const Complex& b) {
    return Complex(a * b.re_, a * b.im_);
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real n = b.norm();
    return Complex((a.re_ * b.re_ + a.im_ * b.im_) / n,
                   (a.im_ * b.re_ - a.re_ * b.im_) / n);
  }
  friend Complex operator/(const Complex& a, const Real& b) {
    return Complex(a.re_ / b, a.im_ / b);
  }
  Complex& operator+=(const Complex& b) {
    re_ += b.re_;
    im_ += b.im_;
    return *this;
  }
  Complex& operator-=(const Complex& b) {
    re_ -= b.re_;
    im_ -= b.im_;
    return *this;
  }

  std::string str(size_t digits = 20) const;

 private:
  Real re_, im_;
};

// Principal square root (branch cut along the negative real axis).
Complex sqrt(const Complex& z);
// exp(z) = e^re (cos im + i sin im)
Complex exp(const Complex& z);

// Complex AGM with the standard optimal choice of square-root branch
// (|a_n - b_n| <= |a_n + b_n|, ties broken toward Im(b/a) > 0).
Complex agm(const Complex& a, const Complex& b, mpfr_prec_t prec);

}  // namespace heegner
