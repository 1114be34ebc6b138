#include "heegner/curve.hpp"

#include <algorithm>

namespace heegner {

std::string AffinePointQ::str() const {
  if (infinity) return "O";
  return "(" + x.get_str() + ", " + y.get_str() + ")";
}

std::string CurveQ::label() const {
  return "[" + a1_.get_str() + "," + a2_.get_str() + "," + a3_.get_str() + "," +
         a4_.get_str() + "," + a6_.get_str() + "]";
}

CurveQ CurveQ::from_coeffs(const mpz_class& a1, const mpz_class& a2, const mpz_class& a3,
                           const mpz_class& a4, const mpz_class& a6) {
  CurveQ e;
  e.a1_ = a1; e.a2_ = a2; e.a3_ = a3; e.a4_ = a4; e.a6_ = a6;
  e.b2_ = a1 * a1 + 4 * a2;
  e.b4_ = 2 * a4 + a1 * a3;
  e.b6_ = a3 * a3 + 4 * a6;
  e.b8_ = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  e.c4_ = e.b2_ * e.b2_ - 24 * e.b4_;
  e.c6_ = -e.b2_ * e.b2_ * e.b2_ + 36 * e.b2_ * e.b4_ - 216 * e.b6_;
  e.disc_ = -e.b2_ * e.b2_ * e.b8_ - 8 * e.b4_ * e.b4_ * e.b4_ - 27 * e.b6_ * e.b6_ +
            9 * e.b2_ * e.b4_ * e.b6_;
  if (e.disc_ == 0) throw SingularCurveError("curve " + e.label() + " is singular");
  if (e.c4_ * e.c4_ * e.c4_ - e.c6_ * e.c6_ != 1728 * e.disc_)
    throw std::logic_error("invariant identity c4^3 - c6^2 = 1728 disc failed");

  e.disc_fact_ = factor(e.disc_);
  e.n_ = 1;
  for (const auto& [p, v] : e.disc_fact_) {
    TateResult tr = tate_local_any(a1, a2, a3, a4, a6, p);
    if (tr.u_exponent > 0)
      throw NonMinimalModelError(
          "curve " + e.label() + " is not minimal at p = " + p.get_str(), p);
    if (tr.local.f == 0) continue;  // cannot happen on a minimal model, kept for safety
    // Ogg's relation ties the type, the conductor exponent and v(disc) together.
    if ((long)tr.local.vdelta != (long)tr.local.f + tr.local.kodaira.components() - 1)
      throw std::logic_error("local data at p = " + p.get_str() +
                             " violates v(disc) = f + m - 1");
    mpz_class pf;
    mpz_pow_ui(pf.get_mpz_t(), p.get_mpz_t(), tr.local.f);
    e.n_ *= pf;
    e.local_.push_back(tr.local);
  }
  std::sort(e.local_.begin(), e.local_.end(),
            [](const LocalData& x, const LocalData& y) { return x.p < y.p; });
  return e;
}

const LocalData* CurveQ::local_data_at(const mpz_class& p) const {
  for (const auto& ld : local_)
    if (ld.p == p) return &ld;
  return nullptr;
}

bool on_curve(const CurveQ& e, const AffinePointQ& pt) {
  if (pt.infinity) return true;
  const mpq_class& x = pt.x;
  const mpq_class& y = pt.y;
  mpq_class lhs = y * y + e.a1() * x * y + e.a3() * y;
  mpq_class rhs = x * x * x + e.a2() * x * x + e.a4() * x + e.a6();
  return lhs == rhs;
}

AffinePointQ point_neg(const CurveQ& e, const AffinePointQ& p) {
  if (p.infinity) return p;
  return AffinePointQ(p.x, -p.y - e.a1() * p.x - e.a3());
}

AffinePointQ point_add(const CurveQ& e, const AffinePointQ& p, const AffinePointQ& q) {
  if (p.infinity) return q;
  if (q.infinity) return p;
  const mpq_class &x1 = p.x, &y1 = p.y, &x2 = q.x, &y2 = q.y;
  mpq_class lambda;
  if (x1 == x2) {
    // either opposite points or a doubling
    if (y2 == -y1 - e.a1() * x1 - e.a3()) return AffinePointQ::at_infinity();
    mpq_class num = 3 * x1 * x1 + 2 * e.a2() * x1 + e.a4() - e.a1() * y1;
    mpq_class den = 2 * y1 + e.a1() * x1 + e.a3();
    lambda = num / den;
  } else {
    lambda = (y2 - y1) / (x2 - x1);
  }
  mpq_class nu = y1 - lambda * x1;
  mpq_class x3 = lambda * lambda + e.a1() * lambda - e.a2() - x1 - x2;
  mpq_class y3 = -(lambda + e.a1()) * x3 - nu - e.a3();
  return AffinePointQ(x3, y3);
}

AffinePointQ point_mul(const CurveQ& e, const mpz_class& n0, const AffinePointQ& p) {
  mpz_class n = n0;
  AffinePointQ base = p;
  if (n < 0) {
    base = point_neg(e, base);
    n = -n;
  }
  AffinePointQ acc = AffinePointQ::at_infinity();
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) acc = point_add(e, acc, base);
    base = point_add(e, base, base);
    n /= 2;
  }
  return acc;
}

}  // namespace heegner
