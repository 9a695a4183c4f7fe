#pragma once

#include <optional>
#include <vector>

#include "torsionlab/ideals.hpp"
#include "torsionlab/polynomials.hpp"

namespace torsionlab::eta {

using arith::i64;
using arith::u64;
using quad::QuadElement;
using quad::QuadVal;

struct EtaCertificate {
  i64 D = 0;
  int ell = 1;
  bool resolved = false;  // admissible pair found within the bound
  bool exact = false;     // minimality certified by the exhausted bound

  // value: integer in the imaginary case and in the balanced real case;
  // otherwise the exact algebraic value a + b sqrt(D) plus a rational bound
  bool value_integral = false;
  mpz_class value;
  QuadVal value_alg;
  mpq_class value_upper;

  i64 p1 = 0, p2 = 0;  // primes under the numerator / denominator ideals
  int sign1 = +1, sign2 = +1;
  QuadElement witness;
  mpz_class exhausted_bound;  // every pair with max norm <= this was scanned
  mpz_class lower_bound;      // eta > lower_bound when unresolved
};

// Minimal height over admissible prime-ideal pairs with
// max(N p1, N p2) <= search_bound.  Works for both signatures.
EtaCertificate eta_exact_quadratic(i64 D, int ell, i64 search_bound);

// Default search-bound policy: the 10th split prime, doubled until
// certification or the cap.
EtaCertificate eta_auto(i64 D, int ell, i64 cap = 1 << 20);

// Independent oracle, D < 0: enumerate alpha = beta/gamma over integral
// elements of norm <= height_bound^2, factor (alpha), filter the shape,
// return the minimal height <= height_bound.  Complete whenever
// height_bound >= sqrt(|D|/3) (so every ideal class has a representative
// within the enumeration radius).
std::optional<mpz_class> eta_brute_oracle(i64 D, int ell, i64 height_bound);

// Minimal polynomial of the witness; leading coefficient p2^ell and
// constant term +-p1^ell for admissible witnesses.
poly::ZPoly certificate_minpoly(const EtaCertificate& cert);

// All admissible-pair data with max norm strictly below `norm_cap`;
// used by the mechanism check.
struct PrimePair {
  i64 p1, p2;
  int sign1, sign2;
  bool ell_torsion_quotient;  // ([p1][p2]^{-1})^ell principal
};
std::vector<PrimePair> enumerate_pairs(i64 D, int ell, i64 norm_cap);

}  // namespace torsionlab::eta
