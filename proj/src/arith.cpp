#include "torsionlab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace torsionlab::arith {

std::vector<i64> sieve_primes(i64 limit) {
  std::vector<i64> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(static_cast<size_t>(limit) + 1, false);
  for (i64 p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    primes.push_back(p);
    for (i64 q = p * p; q <= limit; q += p) composite[q] = true;
  }
  return primes;
}

std::vector<std::uint32_t> spf_table(std::uint32_t limit) {
  std::vector<std::uint32_t> spf(static_cast<size_t>(limit) + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf[i] == 0) {
      for (std::uint64_t j = i; j <= limit; j += i)
        if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
  }
  return spf;
}

int kronecker(i64 D, u64 n) {
  if (n == 0) return (D == 1 || D == -1) ? 1 : 0;
  int result = 1;
  if ((n & 1) == 0) {
    if ((D & 1) == 0) return 0;
    int r = static_cast<int>(((D % 8) + 8) % 8);
    int k2 = (r == 1 || r == 7) ? 1 : -1;
    int e = 0;
    while ((n & 1) == 0) {
      n >>= 1;
      ++e;
    }
    if (e & 1) result *= k2;
  }
  // Jacobi symbol (D|n) for odd n
  i64 a = D % static_cast<i64>(n);
  if (a < 0) a += static_cast<i64>(n);
  u64 A = static_cast<u64>(a), N = n;
  while (A != 0) {
    while ((A & 1) == 0) {
      A >>= 1;
      u64 r = N & 7;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(A, N);
    if ((A & 3) == 3 && (N & 3) == 3) result = -result;
    A %= N;
  }
  return N == 1 ? result : 0;
}

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = m == 1 ? 0 : 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

namespace {

u64 pollard_rho(u64 n) {
  if ((n & 1) == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    u64 power = 1, lam = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    // Brent cycle detection
    while (d == 1) {
      if (power == lam) {
        x = y;
        power <<= 1;
        lam = 0;
      }
      y = f(y);
      ++lam;
      u64 diff = x > y ? x - y : y - x;
      if (diff == 0) break;
      d = std::gcd(diff, n);
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_rec(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

u64 Factorization::reconstruct() const {
  u64 n = 1;
  for (auto [p, e] : pairs)
    for (int i = 0; i < e; ++i) n *= p;
  return n;
}

int Factorization::valuation(u64 p) const {
  for (auto [q, e] : pairs)
    if (q == p) return e;
  return 0;
}

Factorization factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  Factorization f;
  std::vector<u64> primes;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull}) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  // trial division up to 10^3.5ish, rho beyond
  for (u64 p = 37; p * p <= n && p < 3163; p += 2) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  if (n > 1) factor_rec(n, primes);
  std::sort(primes.begin(), primes.end());
  for (u64 p : primes) {
    if (!f.pairs.empty() && f.pairs.back().first == p)
      ++f.pairs.back().second;
    else
      f.pairs.push_back({p, 1});
  }
  return f;
}

int omega(u64 n) { return factorize(n).omega(); }

bool is_squarefree(u64 n) {
  if (n == 0) return false;
  auto f = factorize(n);
  for (auto [p, e] : f.pairs)
    if (e > 1) return false;
  return true;
}

bool is_fundamental_discriminant(i64 D) {
  if (D == 0 || D == 1) return false;
  i64 m = ((D % 4) + 4) % 4;
  if (m == 1) return is_squarefree(static_cast<u64>(D < 0 ? -D : D));
  if (m != 0) return false;
  i64 q = D / 4;
  i64 qm = ((q % 4) + 4) % 4;
  if (qm != 2 && qm != 3) return false;
  return is_squarefree(static_cast<u64>(q < 0 ? -q : q));
}

std::vector<bool> squarefree_range(u64 lo, u64 hi) {
  if (lo < 1) lo = 1;
  std::vector<bool> sf(hi - lo + 1, true);
  auto primes = sieve_primes(static_cast<i64>(isqrt_u64(hi)));
  for (i64 p : primes) {
    u64 p2 = static_cast<u64>(p) * static_cast<u64>(p);
    u64 start = ((lo + p2 - 1) / p2) * p2;
    for (u64 m = start; m <= hi; m += p2) sf[m - lo] = false;
  }
  return sf;
}

std::vector<i64> fundamental_discriminants(i64 lo, i64 hi) {
  std::vector<i64> out;
  if (lo > hi) return out;
  u64 bound = static_cast<u64>(std::max(std::llabs(lo), std::llabs(hi)));
  if (bound == 0) return out;
  auto sf = squarefree_range(1, bound);
  auto sfree = [&](i64 v) {
    u64 a = static_cast<u64>(v < 0 ? -v : v);
    return a >= 1 && a <= bound && sf[a - 1];
  };
  for (i64 D = lo; D <= hi; ++D) {
    if (D == 0 || D == 1) continue;
    i64 m = ((D % 4) + 4) % 4;
    if (m == 1) {
      if (sfree(D)) out.push_back(D);
    } else if (m == 0) {
      i64 q = D / 4;
      i64 qm = ((q % 4) + 4) % 4;
      if ((qm == 2 || qm == 3) && sfree(q)) out.push_back(D);
    }
  }
  return out;
}

i64 isqrt(i64 n) {
  if (n < 0) throw std::invalid_argument("isqrt: negative input");
  return static_cast<i64>(isqrt_u64(static_cast<u64>(n)));
}

u64 isqrt_u64(u64 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n && (r + 1) != 0) ++r;
  return r;
}

u64 iroot(u64 n, unsigned k) {
  if (k == 0) throw std::invalid_argument("iroot: k must be positive");
  if (k == 1 || n <= 1) return n;
  u64 r = static_cast<u64>(std::pow(static_cast<double>(n), 1.0 / k));
  auto pw = [&](u64 b) -> bool {
    // b^k <= n without overflow
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
      acc *= b;
      if (acc > n) return false;
    }
    return true;
  };
  while (r > 0 && !pw(r)) --r;
  while (pw(r + 1)) ++r;
  return r;
}

mpz_class iroot(const mpz_class& n, unsigned k) {
  mpz_class r;
  mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

u64 sqrt_mod(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return a;
  if (powmod(a, (p - 1) / 2, p) != 1)
    throw std::invalid_argument("sqrt_mod: not a quadratic residue");
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  // Tonelli-Shanks
  u64 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  u64 m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 t2 = t;
    u64 i = 0;
    while (t2 != 1) {
      t2 = mulmod(t2, t2, p);
      ++i;
    }
    u64 b = c;
    for (u64 j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

void xgcd(i128 a, i128 b, i128& g, i128& x, i128& y) {
  i128 old_r = a, r = b;
  i128 old_s = 1, s = 0;
  i128 old_t = 0, t = 1;
  while (r != 0) {
    i128 q = old_r / r;
    i128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  g = old_r;
  x = old_s;
  y = old_t;
}

}  // namespace torsionlab::arith
