#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "heegner/curve.hpp"

namespace heegner {

namespace {

using i64 = long long;
using i128 = __int128_t;

i64 mulmod(i64 a, i64 b, i64 p) { return (i64)((i128)a * b % p); }

i64 addm(i64 a, i64 b, i64 p) {
  a += b;
  return a >= p ? a - p : a;
}

i64 invmod_i64(i64 a, i64 p) {
  i64 t = 0, nt = 1, r = p, nr = a % p;
  if (nr < 0) nr += p;
  while (nr != 0) {
    i64 q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw std::domain_error("invmod_i64: not invertible");
  return t < 0 ? t + p : t;
}

// affine point on y^2 = x^3 + Ax + B over F_p; (0,0,true) = infinity
struct PtFp {
  i64 x = 0, y = 0;
  bool inf = true;
};

PtFp pt_add(const PtFp& P, const PtFp& Q, i64 A, i64 p) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  i64 lam;
  if (P.x == Q.x) {
    if ((P.y + Q.y) % p == 0) return {};
    i64 num = addm(mulmod(3, mulmod(P.x, P.x, p), p), A % p < 0 ? A % p + p : A % p, p);
    lam = mulmod(num, invmod_i64(addm(P.y, P.y, p), p), p);
  } else {
    i64 dx = (Q.x - P.x) % p;
    if (dx < 0) dx += p;
    i64 dy = (Q.y - P.y) % p;
    if (dy < 0) dy += p;
    lam = mulmod(dy, invmod_i64(dx, p), p);
  }
  i64 x3 = (mulmod(lam, lam, p) - P.x - Q.x) % p;
  if (x3 < 0) x3 += p;
  i64 y3 = (mulmod(lam, (P.x - x3 + p) % p, p) - P.y) % p;
  if (y3 < 0) y3 += p;
  return {x3, y3, false};
}

PtFp pt_mul(i64 n, PtFp P, i64 A, i64 p) {
  PtFp acc;
  while (n > 0) {
    if (n & 1) acc = pt_add(acc, P, A, p);
    P = pt_add(P, P, A, p);
    n >>= 1;
  }
  return acc;
}

// all m in [lo, hi] with m*P = O, via baby-step giant-step; always returns a
// non-empty set of positive multiples of ord(P) (not necessarily in range).
std::vector<i64> bsgs_kill_multiples(const PtFp& P, i64 lo, i64 hi, i64 A, i64 p) {
  i64 len = hi - lo + 1;
  i64 s = 1;
  while (s * s < len) s++;
  std::map<i64, std::vector<i64>> baby;  // x-coordinate -> offsets j
  PtFp R = pt_mul(lo, P, A, p);
  std::vector<i64> found;
  for (i64 j = 0; j < s; j++) {
    if (R.inf) found.push_back(lo + j);
    else baby[R.x].push_back(j);
    R = pt_add(R, P, A, p);
  }
  PtFp G = pt_mul(s, P, A, p);
  PtFp C = G;
  for (i64 k = 1; k * s <= len + s; k++) {
    if (C.inf) found.push_back(k * s);
    else if (auto it = baby.find(C.x); it != baby.end()) {
      for (i64 j : it->second) {
        // (lo+j)P = +-C
        PtFp Bj = pt_mul(lo + j, P, A, p);
        if (Bj.x == C.x) {
          if ((Bj.y + C.y) % p == 0) found.push_back(lo + j + k * s);
          if (Bj.y == C.y && lo + j - k * s > 0) found.push_back(lo + j - k * s);
        }
      }
    }
    C = pt_add(C, G, A, p);
  }
  return found;
}

i64 exact_order(const PtFp& P, i64 multiple, i64 A, i64 p) {
  // factor the known multiple, then peel primes while the quotient kills P
  std::vector<i64> primes;
  i64 m = multiple;
  for (i64 q = 2; q * q <= m; q++)
    if (m % q == 0) {
      primes.push_back(q);
      while (m % q == 0) m /= q;
    }
  if (m > 1) primes.push_back(m);
  i64 ord = multiple;
  for (i64 q : primes)
    while (ord % q == 0 && pt_mul(ord / q, P, A, p).inf) ord /= q;
  return ord;
}

i64 gcd_i64(i64 a, i64 b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a < 0 ? -a : a;
}

// #E(F_p) for y^2 = x^3 + Ax + B by exhaustive chi-sum
i64 count_points_exhaustive(i64 p, i64 A, i64 B) {
  thread_local std::vector<uint8_t> is_qr;
  is_qr.assign(p, 0);
  i64 sq = 0;
  for (i64 y = 0; y <= p / 2; y++) {
    is_qr[sq] = 1;
    sq += 2 * y + 1;
    while (sq >= p) sq -= p;
  }
  i64 f = B % p, d1 = (1 + A) % p, d2 = 6 % p;
  if (f < 0) f += p;
  if (d1 < 0) d1 += p;
  i64 s = 0;
  for (i64 x = 0; x < p; x++) {
    if (f != 0) s += is_qr[f] ? 1 : -1;
    f += d1;
    if (f >= p) f -= p;
    d1 += d2;
    if (d1 >= p) d1 -= p;
    d2 += 6;
    if (d2 >= p) d2 -= p;
  }
  return p + 1 + s;
}

// Shanks-Mestre: #E(F_p) via random point orders on the curve and its twist.
i64 count_points_bsgs(i64 p, i64 A, i64 B) {
  i64 w = 1;
  while ((w + 1) * (w + 1) <= 4 * p) w++;  // w = floor(2 sqrt p)
  i64 lo = p + 1 - w, hi = p + 1 + w;

  // quadratic non-residue for the twist
  mpz_class pz(std::to_string(p));
  i64 g = 2;
  while (kronecker(mpz_class(g), pz) != -1) g++;
  i64 g2 = mulmod(g, g, p), g3 = mulmod(g2, g, p);
  i64 At = mulmod((A % p + p) % p, g2, p), Bt = mulmod((B % p + p) % p, g3, p);

  i64 lcmE = 1, lcmT = 1;
  // deterministic x-walk seeded by p
  i64 x = (p / 3 + 12345) % p;
  auto next_point = [&](bool twist) -> PtFp {
    for (;;) {
      x = addm(mulmod(x % p, 22695477 % p, p), 1, p);
      i64 Aa = twist ? At : (A % p + p) % p;
      i64 Bb = twist ? Bt : (B % p + p) % p;
      i64 rhs = addm(mulmod(addm(mulmod(x, x, p), Aa, p), x, p), Bb, p);
      if (rhs == 0) continue;
      mpz_class r(std::to_string(rhs));
      auto sq = sqrt_mod_p(r, pz);
      if (!sq) continue;
      return {x, (i64)mpz_class(*sq).get_si(), false};
    }
  };

  std::vector<i64> candE;
  for (int iter = 0; iter < 64; iter++) {
    bool twist = iter % 2 == 1;
    i64 Aa = twist ? At : (A % p + p) % p;
    PtFp P = next_point(twist);
    auto kills = bsgs_kill_multiples(P, lo, hi, Aa, p);
    if (kills.empty()) throw std::logic_error("bsgs: no multiple found in Hasse interval");
    i64 m0 = 0;
    for (i64 m : kills) m0 = gcd_i64(m0, m);
    i64 ord = exact_order(P, m0, Aa, p);
    (twist ? lcmT : lcmE) = (twist ? lcmT : lcmE) / gcd_i64(twist ? lcmT : lcmE, ord) * ord;

    // candidates for #E from both sides
    candE.clear();
    for (i64 m = ((lo + lcmE - 1) / lcmE) * lcmE; m <= hi; m += lcmE) {
      // twist constraint: 2p + 2 - m must be a multiple of lcmT in [lo, hi]
      i64 mt = 2 * p + 2 - m;
      if (mt < lo || mt > hi) continue;
      if (mt % lcmT != 0) continue;
      candE.push_back(m);
    }
    if (candE.size() == 1) return candE[0];
  }
  // extremely unlikely fallback
  return count_points_exhaustive(p, A, B);
}

i64 count_points_brute_full(const CurveQ& e, i64 p) {
  i64 a1 = mpz_fdiv_ui(e.a1().get_mpz_t(), p), a2 = mpz_fdiv_ui(e.a2().get_mpz_t(), p),
      a3 = mpz_fdiv_ui(e.a3().get_mpz_t(), p), a4 = mpz_fdiv_ui(e.a4().get_mpz_t(), p),
      a6 = mpz_fdiv_ui(e.a6().get_mpz_t(), p);
  i64 count = 1;
  for (i64 xx = 0; xx < p; xx++)
    for (i64 yy = 0; yy < p; yy++) {
      i64 lhs = (yy * yy + a1 * xx * yy + a3 * yy) % p;
      i64 rhs = (((xx + a2) * xx + a4) % p * xx + a6) % p;
      if (lhs == rhs) count++;
    }
  return count;
}

}  // namespace

long ap(const CurveQ& e, const mpz_class& pz, unsigned long exhaustive_threshold) {
  if (!is_prime(pz)) throw std::invalid_argument("ap: p must be prime");
  if (const LocalData* ld = e.local_data_at(pz)) {
    if (ld->kodaira.type == KodairaType::In) return ld->split ? 1 : -1;
    return 0;  // additive
  }
  if (!pz.fits_slong_p()) throw std::invalid_argument("ap: p too large");
  i64 p = pz.get_si();
  i64 count;
  if (p < 50) {
    count = count_points_brute_full(e, p);
  } else {
    i64 A = mpz_fdiv_ui(e.c4().get_mpz_t(), p);
    i64 B = mpz_fdiv_ui(e.c6().get_mpz_t(), p);
    A = (p - A) % p;  // -c4 mod p
    B = (p - B) % p;
    A = mulmod(27, A, p);
    B = mulmod(54, B, p);
    if ((unsigned long)p <= exhaustive_threshold)
      count = count_points_exhaustive(p, A, B);
    else
      count = count_points_bsgs(p, A, B);
  }
  long a = (long)(p + 1 - count);
  if ((i128)a * a > (i128)4 * p)
    throw std::logic_error("ap: Hasse bound violated; counting bug");
  return a;
}

}  // namespace heegner
