#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "torsionlab/arith.hpp"

namespace torsionlab::splits {

using arith::i64;
using arith::u64;

struct SplitScanResult {
  i64 D = 0;                           // quadratic case; 0 for polynomial input
  std::vector<i64> poly;               // polynomial case, ascending degree
  i64 Y = 0;
  i64 count = 0;
  std::vector<i64> primes;             // retained when requested
};

// Primes p <= Y with (D|p) = 1.
SplitScanResult split_count_quadratic(i64 D, i64 Y, bool keep_primes = false);

// Primes p <= Y, p not dividing disc(f), where f splits into distinct
// linear factors mod p.  f irreducible, degree <= 5, coefficients
// ascending (f[0] = constant term).
SplitScanResult split_count_poly(const std::vector<i64>& f, i64 Y, bool keep_primes = false);

// K in B_S(X; Y, M): X <= D_K < 2X and at most floor(M) primes p <= Y
// split completely.
bool bad_set_membership(i64 D, i64 X, i64 Y, const mpq_class& M);

struct BadSetScan {
  i64 X = 0;
  i64 Y = 0;
  double M = 0;  // c X^delta / log X
  std::vector<i64> members;  // discriminants in the bad set
  i64 family_size = 0;       // #S_X
};

// Quadratic family over X <= |D| < 2X with Y = floor(X^delta) and
// M = c X^delta / log X (natural log).
BadSetScan bad_set_scan_quadratic(i64 X, const mpq_class& delta, const mpq_class& c,
                                  int sign = 0 /* -1 imag, +1 real, 0 both */);

// Same bad-set scan over an explicit list of defining polynomials.
BadSetScan bad_set_scan_polys(const std::vector<std::vector<i64>>& polys, i64 X,
                              const mpq_class& delta, const mpq_class& c);

// floor(X^{num/den}) exactly
i64 ipow_floor(i64 X, const mpq_class& delta);

}  // namespace torsionlab::splits
