#include "torsionlab/splitprimes.hpp"

#include <cmath>
#include <stdexcept>

#include "torsionlab/polynomials.hpp"

namespace torsionlab::splits {

SplitScanResult split_count_quadratic(i64 D, i64 Y, bool keep_primes) {
  if (Y < 2) throw std::invalid_argument("split_count_quadratic: Y >= 2 required");
  SplitScanResult r;
  r.D = D;
  r.Y = Y;
  for (i64 p : arith::sieve_primes(Y)) {
    if (arith::kronecker(D, static_cast<u64>(p)) == 1) {
      ++r.count;
      if (keep_primes) r.primes.push_back(p);
    }
  }
  return r;
}

namespace {

// x^p mod (f, p) for monic f over F_p, deg f = d
std::vector<u64> frobenius_x(const std::vector<u64>& f, u64 p) {
  size_t d = f.size() - 1;
  auto mulmodf = [&](const std::vector<u64>& A, const std::vector<u64>& B) {
    std::vector<u64> C(2 * d - 1, 0);
    for (size_t i = 0; i < A.size(); ++i) {
      if (!A[i]) continue;
      for (size_t j = 0; j < B.size(); ++j)
        C[i + j] = (C[i + j] + arith::mulmod(A[i], B[j], p)) % p;
    }
    // reduce mod monic f
    for (size_t i = C.size(); i-- > d;) {
      u64 coef = C[i];
      if (!coef) continue;
      C[i] = 0;
      for (size_t j = 0; j < d; ++j) {
        u64 sub = arith::mulmod(coef, f[j], p);
        C[i - d + j] = (C[i - d + j] + p - sub % p) % p;
      }
    }
    C.resize(d);
    return C;
  };
  std::vector<u64> result(d, 0);
  result[0] = 1;  // 1
  std::vector<u64> base(d, 0);
  base[1] = 1;  // x
  u64 e = p;
  while (e) {
    if (e & 1) result = mulmodf(result, base);
    base = mulmodf(base, base);
    e >>= 1;
  }
  return result;
}

}  // namespace

SplitScanResult split_count_poly(const std::vector<i64>& f, i64 Y, bool keep_primes) {
  if (Y < 2) throw std::invalid_argument("split_count_poly: Y >= 2 required");
  poly::ZPoly zf(f);
  if (zf.degree() < 1 || zf.degree() > 5)
    throw std::invalid_argument("split_count_poly: degree must be in [1,5]");
  if (!poly::is_irreducible(zf)) throw std::invalid_argument("split_count_poly: reducible polynomial");
  mpz_class disc = poly::discriminant(zf);
  size_t d = static_cast<size_t>(zf.degree());
  SplitScanResult r;
  r.poly = f;
  r.Y = Y;
  if (d == 1) {  // K = Q: every prime splits (trivially)
    for (i64 p : arith::sieve_primes(Y)) {
      ++r.count;
      if (keep_primes) r.primes.push_back(p);
    }
    return r;
  }
  for (i64 p : arith::sieve_primes(Y)) {
    u64 pu = static_cast<u64>(p);
    if (mpz_divisible_ui_p(disc.get_mpz_t(), pu)) continue;
    mpz_class lead = zf.coeffs.back();
    if (mpz_divisible_ui_p(lead.get_mpz_t(), pu)) continue;  // degree drops: cannot split into d linear factors
    // monic image of f mod p
    u64 linv = 0;
    {
      mpz_class lm = lead % p;
      if (lm < 0) lm += p;
      linv = arith::powmod(lm.get_ui(), pu - 2, pu);
    }
    std::vector<u64> fm(d + 1);
    for (size_t i = 0; i <= d; ++i) {
      mpz_class c = zf.coeffs[i] % p;
      if (c < 0) c += p;
      fm[i] = arith::mulmod(c.get_ui(), linv, pu);
    }
    fm[d] = 1;
    auto xp = frobenius_x(fm, pu);
    // split completely iff x^p = x mod (f, p) and p does not divide disc
    bool split = true;
    for (size_t i = 0; i < d; ++i) {
      u64 want = (i == 1) ? 1u : 0u;
      if (xp[i] != want) {
        split = false;
        break;
      }
    }
    if (split) {
      ++r.count;
      if (keep_primes) r.primes.push_back(p);
    }
  }
  return r;
}

bool bad_set_membership(i64 D, i64 X, i64 Y, const mpq_class& M) {
  i64 DK = D < 0 ? -D : D;
  if (!(X <= DK && DK < 2 * X)) return false;
  mpz_class mf = M.get_num() / M.get_den();  // floor for M >= 0
  i64 count = split_count_quadratic(D, Y).count;
  return mpz_class(count) <= mf;
}

i64 ipow_floor(i64 X, const mpq_class& delta) {
  // floor(X^{n/d}) = floor((X^n)^{1/d})
  mpz_class n = delta.get_num(), d = delta.get_den();
  if (n < 0) throw std::invalid_argument("ipow_floor: negative exponent");
  mpz_class Xp;
  mpz_pow_ui(Xp.get_mpz_t(), mpz_class(X).get_mpz_t(), n.get_ui());
  mpz_class r = arith::iroot(Xp, static_cast<unsigned>(d.get_ui()));
  return static_cast<i64>(r.get_si());
}

namespace {

BadSetScan scan_core(const std::vector<std::pair<i64, i64>>& fields /* (id, count) */, i64 X,
                     const mpq_class& delta, const mpq_class& c, i64 Y) {
  BadSetScan out;
  out.X = X;
  out.Y = Y;
  double Xd = static_cast<double>(X);
  double Yx = std::pow(Xd, mpq_get_d(delta.get_mpq_t()));
  out.M = mpq_get_d(c.get_mpq_t()) * Yx / std::log(Xd);
  i64 Mfloor = static_cast<i64>(std::floor(out.M));
  out.family_size = static_cast<i64>(fields.size());
  for (auto [id, count] : fields)
    if (count <= Mfloor) out.members.push_back(id);
  return out;
}

}  // namespace

BadSetScan bad_set_scan_quadratic(i64 X, const mpq_class& delta, const mpq_class& c, int sign) {
  if (X < 2) throw std::invalid_argument("bad_set_scan: X >= 2 required");
  i64 Y = std::max<i64>(2, ipow_floor(X, delta));
  std::vector<std::pair<i64, i64>> fields;
  auto consider = [&](i64 D) {
    fields.push_back({D, split_count_quadratic(D, Y).count});
  };
  for (i64 D : arith::fundamental_discriminants(-2 * X + 1, 2 * X - 1)) {
    i64 DK = D < 0 ? -D : D;
    if (DK < X || DK >= 2 * X) continue;
    if (sign < 0 && D > 0) continue;
    if (sign > 0 && D < 0) continue;
    consider(D);
  }
  return scan_core(fields, X, delta, c, Y);
}

BadSetScan bad_set_scan_polys(const std::vector<std::vector<i64>>& polys, i64 X,
                              const mpq_class& delta, const mpq_class& c) {
  if (X < 2) throw std::invalid_argument("bad_set_scan: X >= 2 required");
  i64 Y = std::max<i64>(2, ipow_floor(X, delta));
  std::vector<std::pair<i64, i64>> fields;
  for (size_t i = 0; i < polys.size(); ++i) {
    // window check uses |disc f| as the ordering invariant; callers supply
    // defining polynomials whose discriminant is the field discriminant
    poly::ZPoly f(polys[i]);
    mpz_class dk = abs(poly::discriminant(f));
    if (dk < X || dk >= 2 * X) continue;
    fields.push_back({static_cast<i64>(i), split_count_poly(polys[i], Y).count});
  }
  return scan_core(fields, X, delta, c, Y);
}

}  // namespace torsionlab::splits
