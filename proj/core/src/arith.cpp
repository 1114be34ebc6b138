#include "heegner/arith.hpp"

#include <algorithm>
#include <stdexcept>

namespace heegner {

bool is_prime(const mpz_class& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

namespace {

mpz_class pollard_rho(const mpz_class& n) {
  // Brent cycle detection; n odd composite, not a prime power of small prime.
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(0x9e3779b9UL);
  while (true) {
    mpz_class y = rng.get_z_range(n - 3) + 2;
    mpz_class c = rng.get_z_range(n - 2) + 1;
    mpz_class x = y, d = 1, q = 1, ys = y;
    unsigned long r = 1, m = 128;
    while (d == 1) {
      x = y;
      for (unsigned long i = 0; i < r; i++) y = (y * y + c) % n;
      unsigned long k = 0;
      while (k < r && d == 1) {
        ys = y;
        unsigned long lim = std::min(m, r - k);
        for (unsigned long i = 0; i < lim; i++) {
          y = (y * y + c) % n;
          q = q * abs(x - y) % n;
        }
        mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
      if (r > (1UL << 24)) break;
    }
    if (d == n || d == 1) {
      // backtrack
      d = 1;
      while (d == 1) {
        ys = (ys * ys + c) % n;
        mpz_class t = abs(x - ys);
        mpz_gcd(d.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      }
    }
    if (d != n && d != 1) return d;
  }
}

void factor_into(mpz_class n, Factorization& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.emplace_back(n, 1);
    return;
  }
  // perfect power?
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    for (unsigned e = 2; e <= mpz_sizeinbase(n.get_mpz_t(), 2); e++) {
      mpz_class r;
      if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), e) != 0) {
        Factorization sub;
        factor_into(r, sub);
        for (auto& [p, k] : sub) out.emplace_back(p, k * e);
        return;
      }
    }
  }
  mpz_class d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

Factorization factor(const mpz_class& n) {
  mpz_class m = abs(n);
  if (m <= 1) return {};
  Factorization out;
  for (unsigned long p : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL}) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      e++;
    }
    if (e) out.emplace_back(p, e);
  }
  for (unsigned long p = 17; p < 100000 && m > 1; p += 2) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      unsigned e = 0;
      do {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        e++;
      } while (mpz_divisible_ui_p(m.get_mpz_t(), p));
      out.emplace_back(p, e);
    }
    if (mpz_class(p) * p > m) break;
  }
  if (m > 1) {
    if (mpz_class(100000) * 100000 > m || is_prime(m)) {
      out.emplace_back(m, 1);
    } else {
      factor_into(m, out);
    }
  }
  // merge duplicates and sort
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Factorization merged;
  for (auto& [p, e] : out) {
    if (!merged.empty() && merged.back().first == p)
      merged.back().second += e;
    else
      merged.emplace_back(p, e);
  }
  return merged;
}

std::vector<mpz_class> divisors(const Factorization& f) {
  std::vector<mpz_class> out{1};
  for (const auto& [p, e] : f) {
    size_t base = out.size();
    mpz_class pk = 1;
    for (unsigned i = 1; i <= e; i++) {
      pk *= p;
      for (size_t j = 0; j < base; j++) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<mpz_class> divisors(const mpz_class& n) { return divisors(factor(n)); }

unsigned omega(const mpz_class& n) { return factor(n).size(); }

int kronecker(const mpz_class& a, const mpz_class& n) {
  return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}
int kronecker(const mpz_class& a, unsigned long n) {
  return mpz_kronecker_ui(a.get_mpz_t(), n);
}

mpz_class mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class invmod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
    throw std::domain_error("invmod: not invertible");
  return r;
}

std::optional<mpz_class> sqrt_mod_p(const mpz_class& a0, const mpz_class& p) {
  mpz_class a = mod(a0, p);
  if (a == 0) return mpz_class(0);
  if (kronecker(a, p) != 1) return std::nullopt;
  if (p % 4 == 3) {
    mpz_class r;
    mpz_class e = (p + 1) / 4;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r;
  }
  // Tonelli-Shanks
  mpz_class q = p - 1;
  unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), s);
  mpz_class z = 2;
  while (kronecker(z, p) != -1) z++;
  mpz_class m(s), c, t, r, e;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  e = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  while (t != 1) {
    mpz_class tt = t;
    unsigned long i = 0;
    while (tt != 1) {
      tt = tt * tt % p;
      i++;
    }
    mpz_class b = c;
    for (unsigned long j = 0; j + i + 1 < mpz_get_ui(m.get_mpz_t()); j++) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

std::vector<mpz_class> sqrts_mod_prime_power(const mpz_class& a0, const mpz_class& p,
                                             unsigned k) {
  mpz_class pk;
  mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k);
  mpz_class a = mod(a0, pk);

  if (a == 0) {
    // x = 0 mod p^ceil(k/2)
    unsigned h = (k + 1) / 2;
    mpz_class ph;
    mpz_pow_ui(ph.get_mpz_t(), p.get_mpz_t(), h);
    std::vector<mpz_class> out;
    for (mpz_class x = 0; x < pk; x += ph) out.push_back(x);
    return out;
  }

  unsigned v = 0;
  {
    mpz_class t = a;
    while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
      t /= p;
      v++;
    }
  }
  if (v > 0) {
    if (v % 2 != 0) return {};
    mpz_class pv2;
    mpz_pow_ui(pv2.get_mpz_t(), p.get_mpz_t(), v / 2);
    mpz_class pv;
    mpz_pow_ui(pv.get_mpz_t(), p.get_mpz_t(), v);
    auto sub = sqrts_mod_prime_power(a / pv, p, k - v);
    // x = p^(v/2) * y with y ranging over solutions mod p^(k-v), each lifted
    // by all multiples of p^(k - v/2) below p^k.
    mpz_class step;
    mpz_pow_ui(step.get_mpz_t(), p.get_mpz_t(), k - v / 2);
    std::vector<mpz_class> out;
    for (const auto& y : sub)
      for (mpz_class x = pv2 * y; x < pk; x += step) out.push_back(x);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  if (p == 2) {
    if (k == 1) return {mpz_class(1)};
    if (k == 2) return a == 1 ? std::vector<mpz_class>{1, 3} : std::vector<mpz_class>{};
    if (a % 8 != 1) return {};
    // lift from r^2 = a (mod 8), r = 1
    mpz_class r = 1;
    mpz_class mod_cur = 8;
    for (unsigned j = 3; j < k; j++) {
      mpz_class next = mod_cur * 2;
      if ((r * r - a) % next != 0) r += mod_cur / 2;
      mod_cur = next;
    }
    mpz_class half = pk / 2;
    std::vector<mpz_class> out{r, pk - r, mod(r + half, pk), mod(half - r, pk)};
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  auto r0 = sqrt_mod_p(a, p);
  if (!r0) return {};
  // Hensel: r <- r - (r^2 - a) / (2r) mod p^(2^j)
  mpz_class r = *r0;
  mpz_class mod_cur = p;
  while (mod_cur < pk) {
    mod_cur = mod_cur * mod_cur;
    if (mod_cur > pk) mod_cur = pk;
    mpz_class inv = invmod(2 * r, mod_cur);
    r = mod(r - (r * r - a) * inv, mod_cur);
  }
  r = mod(r, pk);
  std::vector<mpz_class> out{r, pk - r};
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<mpz_class> sqrts_mod(const mpz_class& a, const Factorization& m_fact) {
  std::vector<mpz_class> xs{0};
  mpz_class m_cur = 1;
  for (const auto& [p, k] : m_fact) {
    mpz_class pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k);
    auto ys = sqrts_mod_prime_power(a, p, k);
    if (ys.empty()) return {};
    std::vector<mpz_class> next;
    next.reserve(xs.size() * ys.size());
    // CRT combine x mod m_cur with y mod p^k
    mpz_class m_inv = invmod(m_cur % pk == 0 ? m_cur : mod(m_cur, pk), pk);
    for (const auto& x : xs)
      for (const auto& y : ys) {
        mpz_class t = mod((y - x) * m_inv, pk);
        next.push_back(x + m_cur * t);
      }
    xs = std::move(next);
    m_cur *= pk;
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

bool is_fundamental_discriminant(const mpz_class& d) {
  if (d >= 0) return false;
  auto squarefree = [](const mpz_class& m) {
    for (const auto& [p, e] : factor(m))
      if (e > 1) return false;
    return true;
  };
  mpz_class r = mod(d, 4);
  if (r == 1) return squarefree(-d);
  if (r == 0) {
    mpz_class k4 = mod(d / 4, 4);
    return (k4 == 2 || k4 == 3) && squarefree(-d / 4);
  }
  return false;
}

int unit_count(const mpz_class& d) {
  if (d == -3) return 6;
  if (d == -4) return 4;
  return 2;
}

}  // namespace heegner
