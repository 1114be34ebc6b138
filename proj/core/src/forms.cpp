#include "heegner/forms.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace heegner {

QuadForm::QuadForm(mpz_class A, mpz_class B, mpz_class C)
    : a(std::move(A)), b(std::move(B)), c(std::move(C)) {
  if (a <= 0) throw std::invalid_argument("QuadForm: leading coefficient must be positive");
  if (discriminant() >= 0) throw std::invalid_argument("QuadForm: discriminant must be negative");
  mpz_class g = gcd(gcd(a, b), c);
  if (g != 1) throw std::invalid_argument("QuadForm: form must be primitive");
}

bool QuadForm::is_reduced() const {
  mpz_class ab = abs(b);
  if (ab > a || a > c) return false;
  if ((ab == a || a == c) && b < 0) return false;
  return true;
}

std::string QuadForm::str() const {
  return "(" + a.get_str() + "," + b.get_str() + "," + c.get_str() + ")";
}

QuadForm apply(const QuadForm& f, const Mat22& u) {
  // Gram(f|U) = U^T Gram(f) U with Gram = [[a, b/2],[b/2, c]]; expanded to
  // avoid halves.
  mpz_class A = f.a * u.a * u.a + f.b * u.a * u.c + f.c * u.c * u.c;
  mpz_class B = 2 * f.a * u.a * u.b + f.b * (u.a * u.d + u.b * u.c) + 2 * f.c * u.c * u.d;
  mpz_class C = f.a * u.b * u.b + f.b * u.b * u.d + f.c * u.d * u.d;
  return QuadForm(A, B, C);
}

std::pair<QuadForm, Mat22> reduce_form(const QuadForm& f) {
  mpz_class a = f.a, b = f.b, c = f.c;
  Mat22 u = Mat22::identity();
  for (;;) {
    // normalize: b <- b + 2ak in (-a, a]
    if (b > a || b <= -a) {
      mpz_class k, r;
      // b + 2ak in (-a, a]  <=>  k = -floor((b + a - 1) / 2a) adjusted; use
      // rounded division of -b by 2a.
      mpz_class twoa = 2 * a;
      mpz_fdiv_qr(k.get_mpz_t(), r.get_mpz_t(), b.get_mpz_t(), twoa.get_mpz_t());
      // now b = 2a*k + r with r in [0, 2a); shift r into (-a, a]
      if (r > a) {
        r -= twoa;
        k += 1;
      }
      c = c - (b + r) / 2 * k;  // c <- c - k(b + r)/2 = c + a k^2 - b k ... derived below
      b = r;
      // Derivation: translation x -> x - k y gives (a, b - 2ak, a k^2 - b k + c).
      // With r = b - 2ak: a k^2 - bk + c = c - k(b + r)/2.
      u = u * Mat22{1, -k, 0, 1};
    }
    if (a > c) {
      // flip (x,y) -> (-y, x): (c, -b, a)
      std::swap(a, c);
      b = -b;
      u = u * Mat22{0, -1, 1, 0};
    } else {
      break;
    }
  }
  // The loop exits with b in (-a, a] and a <= c; the one remaining boundary
  // case is a == c with b < 0, fixed by a flip.
  if (a == c && b < 0) {
    std::swap(a, c);
    b = -b;
    u = u * Mat22{0, -1, 1, 0};
  }
  QuadForm g(a, b, c);
  return {g, u};
}

QuadForm principal_form(const mpz_class& d) {
  if (d >= 0 || mod(d, 4) > 1) throw std::invalid_argument("principal_form: bad discriminant");
  if (mod(d, 4) == 0) return QuadForm(1, 0, -d / 4);
  return QuadForm(1, 1, (1 - d) / 4);
}

QuadForm inverse_form(const QuadForm& f) { return QuadForm(f.a, -f.b, f.c); }

QuadForm compose(const QuadForm& f, const QuadForm& g) {
  if (f.discriminant() != g.discriminant())
    throw std::invalid_argument("compose: discriminants differ");
  const mpz_class D = f.discriminant();
  // Classical Dirichlet composition via the ideal product.
  mpz_class a1 = f.a, b1 = f.b, a2 = g.a, b2 = g.b;
  mpz_class d1, v, w;
  mpz_gcdext(d1.get_mpz_t(), v.get_mpz_t(), w.get_mpz_t(), a1.get_mpz_t(), a2.get_mpz_t());
  mpz_class a3 = a1 * a2;
  mpz_class b3 = v * a1 * (b2 - b1);
  if (d1 != 1) {
    mpz_class s = (b1 + b2) / 2;
    mpz_class d, v2, w2;
    mpz_gcdext(d.get_mpz_t(), v2.get_mpz_t(), w2.get_mpz_t(), d1.get_mpz_t(), s.get_mpz_t());
    b3 = (b3 * v2 + w2 * (D - b1 * b1) / 2) / d;
    a3 /= d * d;
  }
  b3 = mod(b3 + b1, 2 * a3);
  mpz_class c3 = (b3 * b3 - D) / (4 * a3);
  return reduce_form(QuadForm(a3, b3, c3)).first;
}

QuadForm power(const QuadForm& f, const mpz_class& e0) {
  mpz_class e = e0;
  QuadForm base = reduce_form(f).first;
  if (e < 0) {
    base = reduce_form(inverse_form(base)).first;
    e = -e;
  }
  QuadForm acc = principal_form(f.discriminant());
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) acc = compose(acc, base);
    base = compose(base, base);
    e /= 2;
  }
  return acc;
}

std::vector<QuadForm> reduced_forms_of_discriminant(const mpz_class& d) {
  if (d >= 0 || mod(d, 4) > 1)
    throw std::invalid_argument("reduced_forms_of_discriminant: bad discriminant");
  std::vector<QuadForm> out;
  mpz_class absd = -d;
  mpz_class bmax;
  mpz_sqrt(bmax.get_mpz_t(), mpz_class(absd / 3).get_mpz_t());
  for (mpz_class b = mod(d, 2); b <= bmax; b += 2) {
    mpz_class m4 = b * b + absd;  // = 4ac
    if (m4 % 4 != 0) continue;
    mpz_class m = m4 / 4;
    // a runs over divisors of m with b <= a <= sqrt(m)
    for (const auto& a : divisors(m)) {
      if (a < b) continue;
      mpz_class c = m / a;
      if (a > c) break;
      if (gcd(gcd(a, b), c) != 1) continue;
      out.emplace_back(a, b, c);
      if (b > 0 && b < a && a < c) out.emplace_back(a, -b, c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Elementary divisors of a finite abelian group given by its element list,
// recovered from the counts N(m) = #{x : x^m = 1}.
std::vector<unsigned long> abelian_structure(const std::vector<QuadForm>& els,
                                             const mpz_class& d) {
  const unsigned long h = els.size();
  if (h == 1) return {};
  // order of each element
  QuadForm id = principal_form(d);
  std::vector<unsigned long> orders;
  orders.reserve(h);
  for (const auto& f : els) {
    QuadForm acc = reduce_form(f).first;
    unsigned long o = 1;
    while (!(acc == id)) {
      acc = compose(acc, f);
      o++;
      if (o > h) throw std::logic_error("class_group: order exceeds group size");
    }
    orders.push_back(o);
  }
  unsigned long expo = 1;
  for (auto o : orders) expo = std::lcm(expo, o);
  // The counts N(p^j) = #{x : x^(p^j) = 1} determine the p-part of the
  // decomposition: #{cyclic factors with p-exponent >= j} = log_p of the
  // jump N(p^j)/N(p^(j-1)).
  std::map<unsigned long, std::vector<unsigned>> partitions;
  for (const auto& [pz, e] : factor(mpz_class(expo))) {
    unsigned long p = pz.get_ui();
    std::vector<unsigned> part;  // part[j-1] = #{factors with exponent >= j}
    unsigned long prev = 1, pj = 1;
    for (unsigned j = 1; j <= e; j++) {
      pj *= p;
      unsigned long cnt = 0;
      for (auto o : orders)
        if (pj % o == 0) cnt++;
      unsigned long ratio = cnt / prev;
      unsigned k = 0;
      while (ratio > 1) {
        ratio /= p;
        k++;
      }
      part.push_back(k);
      prev = cnt;
    }
    partitions[p] = part;
  }
  // assemble elementary divisors (largest first), then reverse to d1 | d2 | ...
  size_t rank = 0;
  for (auto& [p, part] : partitions) rank = std::max(rank, part.empty() ? 0 : (size_t)part[0]);
  std::vector<unsigned long> divs(rank, 1);
  for (auto& [p, part] : partitions) {
    // factor i (0-based, largest) gets p^(#{j : part[j] > i})
    for (size_t i = 0; i < rank; i++) {
      unsigned e = 0;
      for (unsigned j = 0; j < part.size(); j++)
        if (part[j] > i) e++;
      unsigned long pe = 1;
      for (unsigned t = 0; t < e; t++) pe *= p;
      divs[i] *= pe;
    }
  }
  std::reverse(divs.begin(), divs.end());
  return divs;
}

}  // namespace

ClassGroup class_group(const mpz_class& d) {
  if (!is_fundamental_discriminant(d))
    throw std::invalid_argument("class_group: discriminant must be fundamental and negative");
  ClassGroup g;
  g.d = d;
  g.reduced_forms = reduced_forms_of_discriminant(d);
  g.h = g.reduced_forms.size();
  g.structure = abelian_structure(g.reduced_forms, d);
  return g;
}

std::vector<mpz_class> sqrts_mod_4N(const mpz_class& d, const mpz_class& n) {
  mpz_class m = 4 * n;
  auto xs = sqrts_mod(d, factor(m));
  // project mod 2N and deduplicate
  mpz_class twon = 2 * n;
  for (auto& x : xs) x = mod(x, twon);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

bool is_heegner(const QuadForm& f, const mpz_class& n) {
  if (!mpz_divisible_p(f.a.get_mpz_t(), n.get_mpz_t())) return false;
  mpz_class g = gcd(gcd(mpz_class(f.a / n), f.b), mpz_class(f.c * n));
  return g == 1;
}

QuadForm conjugate_form(const QuadForm& f, const mpz_class& n) {
  if (!mpz_divisible_p(f.a.get_mpz_t(), n.get_mpz_t()))
    throw std::invalid_argument("conjugate_form: N does not divide A");
  return QuadForm(f.a / n, -f.b, f.c * n);
}

}  // namespace heegner
