#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "heegner/arith.hpp"

namespace heegner {

enum class KodairaType { I0, In, II, III, IV, I0star, Instar, IVstar, IIIstar, IIstar };

struct Kodaira {
  KodairaType type = KodairaType::I0;
  long n = 0;  // index for In / In*
  std::string str() const;
  friend bool operator==(const Kodaira& a, const Kodaira& b) {
    return a.type == b.type && a.n == b.n;
  }
  // number of irreducible components of the special fiber (over the algebraic
  // closure); enters the conductor bookkeeping through v(Delta) = f + m - 1
  long components() const;
};

struct LocalData {
  mpz_class p;
  Kodaira kodaira;
  unsigned f = 0;        // conductor exponent
  unsigned long c = 1;   // Tamagawa number
  unsigned vdelta = 0;   // v_p of the minimal discriminant
  bool split = false;    // split multiplicative reduction (only for In, n>=1)
};

// Result of Tate's algorithm run on an arbitrary integral model at p.
// u_exponent > 0 means the input model was non-minimal at p and the algorithm
// rescaled by u = p^u_exponent before classifying.
struct TateResult {
  LocalData local;
  unsigned u_exponent = 0;
};

TateResult tate_local_any(const mpz_class& a1, const mpz_class& a2, const mpz_class& a3,
                          const mpz_class& a4, const mpz_class& a6, const mpz_class& p);

struct AffinePointQ {
  mpq_class x, y;
  bool infinity = true;
  AffinePointQ() = default;
  AffinePointQ(mpq_class x0, mpq_class y0) : x(std::move(x0)), y(std::move(y0)), infinity(false) {}
  static AffinePointQ at_infinity() { return AffinePointQ(); }
  friend bool operator==(const AffinePointQ& p, const AffinePointQ& q) {
    if (p.infinity || q.infinity) return p.infinity == q.infinity;
    return p.x == q.x && p.y == q.y;
  }
  std::string str() const;
};

struct TorsionGroup {
  unsigned long order = 1;
  unsigned long exponent = 1;
  std::vector<unsigned long> structure;   // invariant factors d1 | d2
  std::vector<AffinePointQ> generators;
};

class SingularCurveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class NonMinimalModelError : public std::invalid_argument {
 public:
  NonMinimalModelError(const std::string& msg, mpz_class at)
      : std::invalid_argument(msg), prime(std::move(at)) {}
  mpz_class prime;
};
// Additive reduction at p = 2, 3: the local root number is not derived from
// tables here; the plan layer resolves it numerically.
class NeedsNumericSign : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integral Weierstrass model over Q, verified globally minimal, with local
// data at every bad prime.
class CurveQ {
 public:
  // Throws SingularCurveError when disc = 0, NonMinimalModelError (naming the
  // prime) when the model is not minimal, std::runtime_error when the
  // discriminant cannot be factored.
  static CurveQ from_coeffs(const mpz_class& a1, const mpz_class& a2, const mpz_class& a3,
                            const mpz_class& a4, const mpz_class& a6);

  const mpz_class& a1() const { return a1_; }
  const mpz_class& a2() const { return a2_; }
  const mpz_class& a3() const { return a3_; }
  const mpz_class& a4() const { return a4_; }
  const mpz_class& a6() const { return a6_; }
  const mpz_class& b2() const { return b2_; }
  const mpz_class& b4() const { return b4_; }
  const mpz_class& b6() const { return b6_; }
  const mpz_class& b8() const { return b8_; }
  const mpz_class& c4() const { return c4_; }
  const mpz_class& c6() const { return c6_; }
  const mpz_class& disc() const { return disc_; }
  const mpz_class& conductor() const { return n_; }
  const std::vector<LocalData>& local_data() const { return local_; }
  const LocalData* local_data_at(const mpz_class& p) const;
  const Factorization& disc_factorization() const { return disc_fact_; }

  // 2 when disc > 0, else 1 (number of real components).
  int real_components() const { return disc_ > 0 ? 2 : 1; }

  bool is_good(const mpz_class& p) const { return local_data_at(p) == nullptr; }

  std::string label() const;  // "[a1,a2,a3,a4,a6]"

 private:
  mpz_class a1_, a2_, a3_, a4_, a6_;
  mpz_class b2_, b4_, b6_, b8_, c4_, c6_, disc_, n_;
  Factorization disc_fact_;
  std::vector<LocalData> local_;
};

// Local data on the (already minimal) model of e.  Good primes return
// (I0, f=0, c=1, vdelta=0).
LocalData tate_local(const CurveQ& e, const mpz_class& p);

// Trace of Frobenius; good p by counting (exhaustive below the threshold,
// baby-step/giant-step order finding above), multiplicative p returns +-1,
// additive p returns 0.
long ap(const CurveQ& e, const mpz_class& p, unsigned long exhaustive_threshold = 1000000);

// Exact group law.
AffinePointQ point_neg(const CurveQ& e, const AffinePointQ& p);
AffinePointQ point_add(const CurveQ& e, const AffinePointQ& p, const AffinePointQ& q);
AffinePointQ point_mul(const CurveQ& e, const mpz_class& n, const AffinePointQ& p);
bool on_curve(const CurveQ& e, const AffinePointQ& p);

TorsionGroup torsion_structure(const CurveQ& e);

// Local root number at a bad prime.  Multiplicative: -a_p.  Additive p >= 5:
// residue-symbol formulas.  Additive p in {2,3}: throws NeedsNumericSign.
// Throws std::invalid_argument when p is a good prime.
int local_root_number(const CurveQ& e, const mpz_class& p);

// Conductor of the quadratic twist by a fundamental discriminant d, from an
// integral (not necessarily minimal) twist model via the rescaling form of
// Tate's algorithm.
mpz_class twist_conductor(const CurveQ& e, const mpz_class& d);

}  // namespace heegner
