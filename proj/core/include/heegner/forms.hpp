#pragma once

#include <gmpxx.h>

#include <compare>
#include <utility>
#include <vector>

#include "heegner/arith.hpp"

namespace heegner {

// Integral primitive positive-definite binary quadratic form
// f(x,y) = A x^2 + B xy + C y^2 with A > 0, gcd(A,B,C) = 1, B^2 - 4AC < 0.
struct QuadForm {
  mpz_class a, b, c;

  QuadForm() : a(1), b(0), c(1) {}
  QuadForm(mpz_class A, mpz_class B, mpz_class C);

  mpz_class discriminant() const { return b * b - 4 * a * c; }
  bool is_reduced() const;

  friend bool operator==(const QuadForm& f, const QuadForm& g) {
    return f.a == g.a && f.b == g.b && f.c == g.c;
  }
  friend bool operator<(const QuadForm& f, const QuadForm& g) {
    if (f.a != g.a) return f.a < g.a;
    if (f.b != g.b) return f.b < g.b;
    return f.c < g.c;
  }
  std::string str() const;
};

// Column-action matrix in SL2(Z).  Acting on a form: (f|U)(x,y) = f(ax+by, cx+dy),
// equivalently Gram(f|U) = U^T Gram(f) U.
struct Mat22 {
  mpz_class a, b, c, d;
  static Mat22 identity() { return {1, 0, 0, 1}; }
  mpz_class det() const { return a * d - b * c; }
  friend Mat22 operator*(const Mat22& m, const Mat22& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
            m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }
};

// f transformed by U (substitution x -> ax+by, y -> cx+dy).
QuadForm apply(const QuadForm& f, const Mat22& u);

// Reduced representative of the class of f together with the U in SL2(Z)
// such that apply(f, U) is the reduced form.  Reduction is the classical
// normalize/flip loop; the boundary conventions are |B| <= A <= C with
// B >= 0 when |B| = A or A = C.
std::pair<QuadForm, Mat22> reduce_form(const QuadForm& f);

QuadForm principal_form(const mpz_class& d);
// The inverse class representative (A, -B, C).
QuadForm inverse_form(const QuadForm& f);

// Gauss composition; result is reduced.  Throws std::invalid_argument when
// discriminants differ.
QuadForm compose(const QuadForm& f, const QuadForm& g);
QuadForm power(const QuadForm& f, const mpz_class& e);

struct ClassGroup {
  mpz_class d;                         // fundamental discriminant < 0
  std::vector<QuadForm> reduced_forms; // all reduced forms, sorted
  unsigned long h;                     // class number
  std::vector<unsigned long> structure;  // elementary divisors d1 | d2 | ...
};

// Full class group of a fundamental discriminant d < 0.
// Throws std::invalid_argument for non-fundamental d.
ClassGroup class_group(const mpz_class& d);

// Reduced-form enumeration only (no primitivity rejection shortcuts), used by
// class_group and handy for property checks.
std::vector<QuadForm> reduced_forms_of_discriminant(const mpz_class& d);

// S(D,N): all beta in [0, 2N) with beta^2 = D (mod 4N), ascending.
std::vector<mpz_class> sqrts_mod_4N(const mpz_class& d, const mpz_class& n);

// N | A and gcd(A/N, B, CN) = 1.
bool is_heegner(const QuadForm& f, const mpz_class& n);

// (A/N, -B, CN); requires N | A.
QuadForm conjugate_form(const QuadForm& f, const mpz_class& n);

}  // namespace heegner
