#include <algorithm>
#include <stdexcept>
#include <vector>

#include "heegner/curve.hpp"

namespace heegner {

std::string Kodaira::str() const {
  switch (type) {
    case KodairaType::I0: return "I0";
    case KodairaType::In: return "I" + std::to_string(n);
    case KodairaType::II: return "II";
    case KodairaType::III: return "III";
    case KodairaType::IV: return "IV";
    case KodairaType::I0star: return "I0*";
    case KodairaType::Instar: return "I" + std::to_string(n) + "*";
    case KodairaType::IVstar: return "IV*";
    case KodairaType::IIIstar: return "III*";
    case KodairaType::IIstar: return "II*";
  }
  return "?";
}

long Kodaira::components() const {
  switch (type) {
    case KodairaType::I0: return 1;
    case KodairaType::In: return n;
    case KodairaType::II: return 1;
    case KodairaType::III: return 2;
    case KodairaType::IV: return 3;
    case KodairaType::I0star: return 5;
    case KodairaType::Instar: return 5 + n;
    case KodairaType::IVstar: return 7;
    case KodairaType::IIIstar: return 8;
    case KodairaType::IIstar: return 9;
  }
  return 0;
}

namespace {

constexpr unsigned kValInf = 1u << 30;

void check(bool cond, const char* what) {
  if (!cond) throw std::logic_error(std::string("tate: internal invariant failed: ") + what);
}

unsigned vp(const mpz_class& x, const mpz_class& p) {
  if (x == 0) return kValInf;
  unsigned v = 0;
  mpz_class t = x;
  while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
    v++;
  }
  return v;
}

struct Model {
  mpz_class a1, a2, a3, a4, a6;

  mpz_class b2() const { return a1 * a1 + 4 * a2; }
  mpz_class b4() const { return 2 * a4 + a1 * a3; }
  mpz_class b6() const { return a3 * a3 + 4 * a6; }
  mpz_class b8() const {
    return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  }
  mpz_class disc() const {
    mpz_class B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
  }
  mpz_class c4() const {
    mpz_class B2 = b2();
    return B2 * B2 - 24 * b4();
  }

  // (x, y) -> (x + r, y + s x + t)
  void translate(const mpz_class& r, const mpz_class& s, const mpz_class& t) {
    mpz_class na1 = a1 + 2 * s;
    mpz_class na2 = a2 - s * a1 + 3 * r - s * s;
    mpz_class na3 = a3 + r * a1 + 2 * t;
    mpz_class na4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
    mpz_class na6 =
        a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
    a1 = na1; a2 = na2; a3 = na3; a4 = na4; a6 = na6;
  }
};

// ---- small polynomial arithmetic mod p (monic, low degree) --------------

using Poly = std::vector<mpz_class>;  // coefficients, index = degree

Poly poly_mod(const Poly& a, const mpz_class& p) {
  Poly r = a;
  for (auto& c : r) c = mod(c, p);
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

Poly poly_rem(Poly a, const Poly& b, const mpz_class& p) {
  // b nonzero; returns a mod b over F_p
  a = poly_mod(a, p);
  Poly bb = poly_mod(b, p);
  mpz_class lead_inv = invmod(bb.back(), p);
  while (a.size() >= bb.size() && !a.empty()) {
    mpz_class q = mod(a.back() * lead_inv, p);
    size_t shift = a.size() - bb.size();
    for (size_t i = 0; i < bb.size(); i++)
      a[i + shift] = mod(a[i + shift] - q * bb[i], p);
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b, const mpz_class& p) {
  a = poly_mod(a, p);
  b = poly_mod(b, p);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, const mpz_class& p) {
  Poly prod(a.size() + b.size() - 1, mpz_class(0));
  for (size_t i = 0; i < a.size(); i++)
    for (size_t j = 0; j < b.size(); j++) prod[i + j] += a[i] * b[j];
  return poly_rem(prod, m, p);
}

// T^p mod m over F_p
Poly poly_xpow_p(const Poly& m, const mpz_class& p) {
  Poly result{1};
  Poly base{0, 1};
  mpz_class e = p;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e /= 2;
  }
  return result;
}

// number of distinct roots of a squarefree monic polynomial in F_p
int count_roots_fp(const Poly& f, const mpz_class& p) {
  if (p < 16) {
    int cnt = 0;
    for (mpz_class x = 0; x < p; x++) {
      mpz_class v = 0;
      for (size_t i = f.size(); i-- > 0;) v = mod(v * x + f[i], p);
      if (v == 0) cnt++;
    }
    return cnt;
  }
  Poly xp = poly_xpow_p(f, p);
  // gcd(x^p - x, f)
  Poly diff = xp;
  if (diff.size() < 2) diff.resize(2, mpz_class(0));
  diff[1] = mod(diff[1] - 1, p);
  Poly g = poly_gcd(f, diff, p);
  return g.empty() ? 0 : (int)g.size() - 1;
}

struct CubicInfo {
  enum { kDistinct, kDouble, kTriple } kind;
  mpz_class rep;      // repeated root (double/triple case)
  int rational_roots; // distinct case: #roots in F_p
};

CubicInfo cubic_analyze(const mpz_class& A, const mpz_class& B, const mpz_class& C,
                        const mpz_class& p) {
  // monic T^3 + A T^2 + B T + C over F_p
  mpz_class a = mod(A, p), b = mod(B, p), c = mod(C, p);
  if (p <= 3) {
    // brute force with multiplicity via repeated synthetic division
    for (mpz_class r = 0; r < p; r++) {
      mpz_class v = mod(((r + a) * r + b) * r + c, p);
      if (v != 0) continue;
      // divide by (T - r): quotient T^2 + q1 T + q0
      mpz_class q1 = mod(a + r, p), q0 = mod(b + r * q1, p);
      if (mod(r * r + q1 * r + q0, p) == 0) {
        // at least double; triple iff the quotient is (T - r)^2
        bool triple = (mod(q1 + 2 * r, p) == 0) && (mod(q0 - r * r, p) == 0);
        return {triple ? CubicInfo::kTriple : CubicInfo::kDouble, r, 0};
      }
    }
    // no repeated root: count roots
    Poly f{c, b, a, 1};
    return {CubicInfo::kDistinct, 0, count_roots_fp(f, p)};
  }
  // discriminant of monic cubic
  mpz_class disc =
      18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b - 27 * c * c;
  if (mod(disc, p) != 0) {
    Poly f{c, b, a, 1};
    return {CubicInfo::kDistinct, 0, count_roots_fp(f, p)};
  }
  Poly f{c, b, a, 1};
  Poly fp{b, mod(2 * a, p), 3};
  Poly g = poly_gcd(f, fp, p);
  if (g.size() == 2) {
    mpz_class r = mod(-g[0] * invmod(g[1], p), p);
    return {CubicInfo::kDouble, r, 0};
  }
  // triple root: r = -A/3
  mpz_class r = mod(-a * invmod(mpz_class(3), p), p);
  return {CubicInfo::kTriple, r, 0};
}

// quadratic u Y^2 + v Y + w over F_p with u a unit
bool quad_separable(const mpz_class& u, const mpz_class& v, const mpz_class& w,
                    const mpz_class& p) {
  if (p == 2) return mod(v, p) != 0;
  return mod(v * v - 4 * u * w, p) != 0;
}
bool quad_has_root(const mpz_class& u, const mpz_class& v, const mpz_class& w,
                   const mpz_class& p) {
  if (p == 2) {
    for (mpz_class x = 0; x < 2; x++)
      if (mod(u * x * x + v * x + w, p) == 0) return true;
    return false;
  }
  mpz_class disc = mod(v * v - 4 * u * w, p);
  return disc == 0 || kronecker(disc, p) == 1;
}
mpz_class quad_double_root(const mpz_class& u, const mpz_class& v, const mpz_class& w,
                           const mpz_class& p) {
  if (p == 2) {
    // v even: u X^2 + w = 0 -> X^2 = w * u (inverses are trivial mod 2)
    mpz_class x0 = mod(w * u, p);
    check(mod(u * x0 * x0 + v * x0 + w, p) == 0, "p=2 double root");
    return x0;
  }
  return mod(-v * invmod(2 * u, p), p);
}

}  // namespace

TateResult tate_local_any(const mpz_class& A1, const mpz_class& A2, const mpz_class& A3,
                          const mpz_class& A4, const mpz_class& A6, const mpz_class& p) {
  Model m{A1, A2, A3, A4, A6};
  TateResult out;
  out.u_exponent = 0;

  for (;;) {  // restarted after a non-minimal rescale
    mpz_class delta = m.disc();
    if (delta == 0) throw SingularCurveError("tate: singular curve");
    unsigned n = vp(delta, p);
    LocalData& ld = out.local;
    ld.p = p;
    ld.vdelta = n;

    if (n == 0) {
      ld.kodaira = {KodairaType::I0, 0};
      ld.f = 0;
      ld.c = 1;
      return out;
    }

    // ---- move the singular point to (0, 0)
    if (p <= 3) {
      bool found = false;
      for (mpz_class x0 = 0; x0 < p && !found; x0++)
        for (mpz_class y0 = 0; y0 < p && !found; y0++) {
          mpz_class F = y0 * y0 + m.a1 * x0 * y0 + m.a3 * y0 - x0 * x0 * x0 -
                        m.a2 * x0 * x0 - m.a4 * x0 - m.a6;
          mpz_class Fx = m.a1 * y0 - 3 * x0 * x0 - 2 * m.a2 * x0 - m.a4;
          mpz_class Fy = 2 * y0 + m.a1 * x0 + m.a3;
          if (mod(F, p) == 0 && mod(Fx, p) == 0 && mod(Fy, p) == 0) {
            m.translate(x0, 0, y0);
            found = true;
          }
        }
      if (!found) throw std::logic_error("tate: no singular point found mod p");
    } else {
      mpz_class b2v = m.b2(), b4v = m.b4(), b6v = m.b6();
      mpz_class c4v = m.c4();
      mpz_class inv12 = invmod(mpz_class(12), p);
      mpz_class x0;
      if (mod(c4v, p) != 0) {
        // node: the double root of 4x^3+b2x^2+2b4x+b6 solves 6x^2+b2x+b4 = 0
        auto s = sqrt_mod_p(c4v, p);
        if (!s) throw std::logic_error("tate: c4 not a square in the nodal case");
        x0 = mod((-b2v + *s) * inv12, p);
        mpz_class cube = mod(4 * x0 * x0 * x0 + b2v * x0 * x0 + 2 * b4v * x0 + b6v, p);
        if (cube != 0) x0 = mod((-b2v - *s) * inv12, p);
      } else {
        x0 = mod(-b2v * inv12, p);
      }
      mpz_class y0 = mod(-(m.a1 * x0 + m.a3) * invmod(mpz_class(2), p), p);
      m.translate(x0, 0, y0);
    }
    check(mod(m.a3, p) == 0 && mod(m.a4, p) == 0 && mod(m.a6, p) == 0,
          "singular point at origin");

    // ---- multiplicative?
    if (mod(m.b2(), p) != 0) {
      ld.kodaira = {KodairaType::In, (long)n};
      ld.f = 1;
      bool split;
      if (p == 2) {
        split = mod(m.a2, p) == 0;  // T^2 + T + a2 reducible over F_2
      } else {
        split = kronecker(m.b2(), p) == 1;  // tangent quadratic splits
      }
      ld.split = split;
      ld.c = split ? n : (n % 2 == 0 ? 2 : 1);
      return out;
    }

    // ---- additive types
    if (vp(m.a6, p) < 2) {
      ld.kodaira = {KodairaType::II, 0};
      ld.f = n;
      ld.c = 1;
      return out;
    }
    if (vp(m.b8(), p) < 3) {
      ld.kodaira = {KodairaType::III, 0};
      ld.f = n - 1;
      ld.c = 2;
      return out;
    }
    if (vp(m.b6(), p) < 3) {
      ld.kodaira = {KodairaType::IV, 0};
      ld.f = n - 2;
      ld.c = quad_has_root(1, m.a3 / p, -(m.a6 / (p * p)), p) ? 3 : 1;
      return out;
    }

    // ---- normalize so that p|a1,a2, p^2|a3,a4, p^3|a6
    if (p == 2) {
      mpz_class s = mod(m.a2, p);
      m.translate(0, s, 0);
      mpz_class t0 = mod(m.a3 / 2, mpz_class(2));
      bool done = false;
      for (mpz_class u = 0; u < 2 && !done; u++) {
        Model trial = m;
        trial.translate(0, 0, t0 + 2 * u);
        if (vp(trial.a6, p) >= 3 && vp(trial.a3, p) >= 2) {
          m = trial;
          done = true;
        }
      }
      if (!done) throw std::logic_error("tate: step-6 normalization failed at p=2");
    } else {
      mpz_class inv2 = invmod(mpz_class(2), p);
      mpz_class s = mod(-m.a1 * inv2, p);
      m.translate(0, s, 0);
      mpz_class t = mod(-m.a3 * inv2, p * p);
      m.translate(0, 0, t);
    }
    check(vp(m.a1, p) >= 1 && vp(m.a2, p) >= 1 && vp(m.a3, p) >= 2 &&
              vp(m.a4, p) >= 2 && vp(m.a6, p) >= 3,
          "step-6 normalization");

    // ---- the cubic T^3 + (a2/p) T^2 + (a4/p^2) T + (a6/p^3)
    mpz_class p2 = p * p, p3 = p2 * p;
    CubicInfo ci = cubic_analyze(m.a2 / p, m.a4 / p2, m.a6 / p3, p);

    if (ci.kind == CubicInfo::kDistinct) {
      ld.kodaira = {KodairaType::I0star, 0};
      ld.f = n - 4;
      ld.c = 1 + ci.rational_roots;
      return out;
    }

    if (ci.kind == CubicInfo::kDouble) {
      // translate the double root to 0 and run the I_m* chain
      m.translate(ci.rep * p, 0, 0);
      check(vp(m.a2, p) == 1 && vp(m.a3, p) >= 2 && vp(m.a4, p) >= 3 && vp(m.a6, p) >= 4,
            "I_m* entry state");
      long midx = 1;
      mpz_class my = p * p;  // p^(k+1)
      for (;;) {
        // Y^2 + (a3/my) Y - a6/my^2
        mpz_class alpha = m.a3 / my, gamma = m.a6 / (my * my);
        if (quad_separable(1, alpha, -gamma, p)) {
          ld.kodaira = {KodairaType::Instar, midx};
          ld.f = n - 4 - midx;
          ld.c = quad_has_root(1, alpha, -gamma, p) ? 4 : 2;
          return out;
        }
        mpz_class y0 = quad_double_root(1, alpha, -gamma, p);
        m.translate(0, 0, y0 * my);
        midx++;
        // (a2/p) X^2 + (a4/(p my)) X + a6/(p my^2)
        mpz_class u = m.a2 / p, v = m.a4 / (p * my), w = m.a6 / (p * my * my);
        if (quad_separable(u, v, w, p)) {
          ld.kodaira = {KodairaType::Instar, midx};
          ld.f = n - 4 - midx;
          ld.c = quad_has_root(u, v, w, p) ? 4 : 2;
          return out;
        }
        mpz_class x0 = quad_double_root(u, v, w, p);
        m.translate(x0 * my, 0, 0);
        midx++;
        my *= p;
        if ((unsigned)midx > n) throw std::logic_error("tate: I_m* chain did not terminate");
      }
    }

    // triple root: translate to 0
    m.translate(ci.rep * p, 0, 0);
    check(vp(m.a2, p) >= 2 && vp(m.a4, p) >= 3 && vp(m.a6, p) >= 4, "triple-root state");
    {
      mpz_class p4 = p2 * p2;
      mpz_class alpha = m.a3 / p2, gamma = m.a6 / p4;
      if (quad_separable(1, alpha, -gamma, p)) {
        ld.kodaira = {KodairaType::IVstar, 0};
        ld.f = n - 6;
        ld.c = quad_has_root(1, alpha, -gamma, p) ? 3 : 1;
        return out;
      }
      mpz_class y0 = quad_double_root(1, alpha, -gamma, p);
      m.translate(0, 0, y0 * p2);
    }
    if (vp(m.a4, p) < 4) {
      ld.kodaira = {KodairaType::IIIstar, 0};
      ld.f = n - 7;
      ld.c = 2;
      return out;
    }
    if (vp(m.a6, p) < 6) {
      ld.kodaira = {KodairaType::IIstar, 0};
      ld.f = n - 8;
      ld.c = 1;
      return out;
    }
    // non-minimal at p: rescale by u = p and restart
    check(vp(m.a1, p) >= 1 && vp(m.a2, p) >= 2 && vp(m.a3, p) >= 3 && vp(m.a4, p) >= 4,
          "non-minimal rescale state");
    m.a1 /= p;
    m.a2 /= p2;
    m.a3 /= p3;
    m.a4 /= p2 * p2;
    m.a6 /= p3 * p3;
    out.u_exponent++;
  }
}

LocalData tate_local(const CurveQ& e, const mpz_class& p) {
  if (const LocalData* ld = e.local_data_at(p)) return *ld;
  LocalData good;
  good.p = p;
  good.kodaira = {KodairaType::I0, 0};
  good.f = 0;
  good.c = 1;
  good.vdelta = 0;
  return good;
}

int local_root_number(const CurveQ& e, const mpz_class& p) {
  const LocalData* ld = e.local_data_at(p);
  if (!ld) throw std::invalid_argument("local_root_number: good reduction at p");
  if (ld->kodaira.type == KodairaType::In)
    return ld->split ? -1 : 1;  // -a_p
  if (p == 2 || p == 3)
    throw NeedsNumericSign("local_root_number: additive p in {2,3} is resolved numerically");
  // additive, p >= 5 (Rohrlich)
  if (ld->kodaira.type == KodairaType::Instar && ld->kodaira.n >= 1)
    return kronecker(mpz_class(-1), p);  // potentially multiplicative
  unsigned v = ld->vdelta % 12;
  unsigned g = std::gcd(v, 12u);
  unsigned ee = 12 / g;
  switch (ee) {
    case 2:
    case 6:
      return kronecker(mpz_class(-1), p);
    case 3:
      return kronecker(mpz_class(-3), p);
    case 4:
      return kronecker(mpz_class(-2), p);
    default:
      throw std::logic_error("local_root_number: unexpected ramification index");
  }
}

mpz_class twist_conductor(const CurveQ& e, const mpz_class& d) {
  // integral twist model y^2 = x^3 - 27 c4 d^2 x - 54 c6 d^3
  mpz_class a4 = -27 * e.c4() * d * d;
  mpz_class a6 = -54 * e.c6() * d * d * d;
  std::vector<mpz_class> primes{2, 3};
  for (const auto& [q, k] : e.disc_factorization()) primes.push_back(q);
  for (const auto& [q, k] : factor(d)) primes.push_back(q);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  mpz_class n = 1;
  for (const auto& q : primes) {
    TateResult tr = tate_local_any(0, 0, 0, a4, a6, q);
    mpz_class qf;
    mpz_pow_ui(qf.get_mpz_t(), q.get_mpz_t(), tr.local.f);
    n *= qf;
  }
  return n;
}

}  // namespace heegner
