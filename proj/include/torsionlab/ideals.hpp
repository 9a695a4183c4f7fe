#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "torsionlab/arith.hpp"

namespace torsionlab::quad {

using arith::i64;
using arith::u64;

// alpha = (x + y sqrt(D))/z in lowest terms, z > 0
struct QuadElement {
  mpz_class x, y, z;
  i64 D = 0;

  void normalize();
  bool is_zero() const { return x == 0 && y == 0; }
  mpq_class norm() const;   // (x^2 - D y^2) / z^2
  mpq_class trace() const;  // 2x / z
  QuadElement conj() const;
  QuadElement mul(const QuadElement& o) const;
  QuadElement inv() const;
  bool operator==(const QuadElement&) const = default;
};

// a + b sqrt(D) with rational a, b; exact comparisons
struct QuadVal {
  mpq_class a, b;
  i64 D = 0;

  static QuadVal rational(const mpq_class& q, i64 D) { return QuadVal{q, 0, D}; }
  bool is_rational() const { return b == 0; }
  double to_double() const;
  int sign() const;
  bool operator<(const QuadVal& o) const;
  bool operator==(const QuadVal& o) const;
  QuadVal operator*(const mpq_class& q) const { return QuadVal{a * q, b * q, D}; }
  // rational upper bound within 1/2^k
  mpq_class upper_bound(unsigned k = 64) const;
};

// Integral O_K-ideal g * (a Z + ((b + sqrt(D))/2) Z); (a, b) primitive part.
struct QuadIdeal {
  mpz_class g = 1, a = 1, b = 0;
  i64 D = 0;

  mpz_class norm() const { return g * g * a; }
  QuadIdeal conj() const;
  bool operator==(const QuadIdeal&) const = default;
};

QuadIdeal whole_ring(i64 D);
QuadIdeal mul_ideal(const QuadIdeal& I, const QuadIdeal& J);
QuadIdeal pow_ideal(QuadIdeal I, unsigned e);

// Prime ideal above split or ramified p; which = +1 / -1 picks the
// conjugate for split p (ignored for ramified).
QuadIdeal prime_ideal(i64 D, i64 p, int which);

// Valuation of a nonzero element at the prime ideal above p given by
// root selection; p must be split or ramified.
int valuation(const QuadElement& beta, i64 p, int which);

// num / den of the fractional ideal (alpha), coprime
struct IdealFactor {
  QuadIdeal num, den;
};
IdealFactor principal_split(const QuadElement& alpha);

// Generator of a principal ideal, exact; nullopt if not principal.
// Imaginary: shortest vector.  Real: continued-fraction walk.
std::optional<QuadElement> generator(const QuadIdeal& I);

// Multiplicative Weil height H_K(alpha) relative to K = Q(sqrt(D)), exact.
QuadVal weil_height(const QuadElement& alpha);

// Fundamental unit as an element (x + y sqrt(D))/2, for D > 0.
QuadElement unit_element(i64 D);

// min over m in Z of H(alpha * eps^m); returns (value, argmin m).
std::pair<QuadVal, long> unit_orbit_min_height(const QuadElement& alpha);

}  // namespace torsionlab::quad
