#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "torsionlab/arith.hpp"

namespace torsionlab::poly {

using arith::i64;

// Dense integer polynomial, coeffs[i] = coefficient of x^i.
struct ZPoly {
  std::vector<mpz_class> coeffs;

  ZPoly() = default;
  explicit ZPoly(const std::vector<i64>& c);
  explicit ZPoly(std::vector<mpz_class> c) : coeffs(std::move(c)) { trim(); }

  void trim();
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  const mpz_class& lead() const { return coeffs.back(); }
  mpz_class at(size_t i) const { return i < coeffs.size() ? coeffs[i] : mpz_class(0); }
  mpz_class operator()(const mpz_class& x) const;
  mpq_class operator()(const mpq_class& x) const;

  bool operator==(const ZPoly&) const = default;
};

ZPoly operator*(const ZPoly& a, const ZPoly& b);
ZPoly operator+(const ZPoly& a, const ZPoly& b);
ZPoly operator-(const ZPoly& a, const ZPoly& b);

mpz_class content(const ZPoly& f);
ZPoly primitive_part(const ZPoly& f);
ZPoly derivative(const ZPoly& f);

// Exact division; throws when the division is not exact.
ZPoly divide_exact(const ZPoly& f, const ZPoly& g);
// true (and quotient) iff g | f over Q
bool divides(const ZPoly& g, const ZPoly& f);

mpz_class resultant(const ZPoly& f, const ZPoly& g);
mpz_class discriminant(const ZPoly& f);

// Monic integer polynomial a0^{d-1} f(x/a0) with the same splitting field.
ZPoly monicize(const ZPoly& f);

// Certified irreducibility over Q of a nonzero polynomial, degree <= 5.
bool is_irreducible(const ZPoly& f);

// all rational roots p/q in lowest terms
std::vector<mpq_class> rational_roots(const ZPoly& f);

std::string to_string(const ZPoly& f);
// parse "x^3 - 2*x + 1" style or comma-separated coefficient lists
ZPoly parse_poly(const std::string& s);

}  // namespace torsionlab::poly
