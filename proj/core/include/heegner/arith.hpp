#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace heegner {

using Factorization = std::vector<std::pair<mpz_class, unsigned>>;

bool is_prime(const mpz_class& n);

// Factorization of |n| by trial division plus Pollard rho for the cofactor.
// Throws std::runtime_error if a composite cofactor resists the effort bound.
Factorization factor(const mpz_class& n);

// All positive divisors, ascending.
std::vector<mpz_class> divisors(const Factorization& f);
std::vector<mpz_class> divisors(const mpz_class& n);

// Number of distinct prime factors of |n| (omega(1) = 0).
unsigned omega(const mpz_class& n);

// Kronecker symbol (a|n).
int kronecker(const mpz_class& a, const mpz_class& n);
int kronecker(const mpz_class& a, unsigned long n);

// a mod m normalized into [0, m).
mpz_class mod(const mpz_class& a, const mpz_class& m);
mpz_class invmod(const mpz_class& a, const mpz_class& m);

// Square root of a modulo an odd prime p (Tonelli-Shanks); nullopt when a is
// a non-residue.  a may be any integer.
std::optional<mpz_class> sqrt_mod_p(const mpz_class& a, const mpz_class& p);

// All x in [0, p^k) with x^2 = a (mod p^k); handles p = 2 and p | a.
std::vector<mpz_class> sqrts_mod_prime_power(const mpz_class& a, const mpz_class& p,
                                             unsigned k);

// All x in [0, m) with x^2 = a (mod m), m = product over the factorization.
std::vector<mpz_class> sqrts_mod(const mpz_class& a, const Factorization& m_fact);

bool is_fundamental_discriminant(const mpz_class& d);

// Unit count of the order of discriminant d < 0: 6 for -3, 4 for -4, else 2.
int unit_count(const mpz_class& d);

}  // namespace heegner
