#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace torsionlab::arith {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

// Primes <= limit, ascending.  limit < 2 yields an empty vector.
std::vector<i64> sieve_primes(i64 limit);

// Smallest prime factor for every n <= limit (spf[0] = spf[1] = 0).
std::vector<std::uint32_t> spf_table(std::uint32_t limit);

// Kronecker symbol (D|n), completely multiplicative in n.
int kronecker(i64 D, u64 n);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime(u64 n);

struct Factorization {
  // (prime, exponent), primes strictly increasing
  std::vector<std::pair<u64, int>> pairs;

  u64 reconstruct() const;
  int omega() const { return static_cast<int>(pairs.size()); }
  int valuation(u64 p) const;
};

// Trial division for the small part, Pollard rho + Miller-Rabin above.
Factorization factorize(u64 n);

// Number of distinct prime divisors.
int omega(u64 n);

bool is_squarefree(u64 n);
bool is_fundamental_discriminant(i64 D);

// Ascending fundamental discriminants in [lo, hi].
std::vector<i64> fundamental_discriminants(i64 lo, i64 hi);

// squarefree[i] for i in [lo, hi], lo >= 1
std::vector<bool> squarefree_range(u64 lo, u64 hi);

i64 isqrt(i64 n);
u64 isqrt_u64(u64 n);
// floor(n^{1/k})
u64 iroot(u64 n, unsigned k);
mpz_class iroot(const mpz_class& n, unsigned k);

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);

// x with x^2 = a (mod p) for odd prime p and (a|p) = 1; Tonelli-Shanks.
u64 sqrt_mod(u64 a, u64 p);

// g = gcd(a,b) = x*a + y*b, g >= 0
void xgcd(i128 a, i128 b, i128& g, i128& x, i128& y);

}  // namespace torsionlab::arith
