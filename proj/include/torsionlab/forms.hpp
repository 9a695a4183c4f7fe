#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "torsionlab/arith.hpp"

namespace torsionlab::cls {

using arith::i128;
using arith::i64;
using arith::u64;

// Primitive integral binary quadratic form a x^2 + b x y + c y^2
// of discriminant b^2 - 4ac.  Fits 64 bits for |D| < 2^62.
struct Form {
  i64 a = 0, b = 0, c = 0;

  bool operator==(const Form&) const = default;
  auto operator<=>(const Form&) const = default;
};

i128 form_disc(const Form& f);

Form principal_form(i64 D);

// ---- definite forms (D < 0) ----

bool is_reduced_imag(const Form& f);
Form reduce_imag(i128 a, i128 b, i128 c, i64 D);

// One reduced representative per class; |b| <= a <= c with the usual
// sign tie-breaks.  Sorted by (a, b, c).
std::vector<Form> reduced_forms_imag(i64 D);

// ---- indefinite forms (D > 0, non-square) ----

bool is_reduced_real(const Form& f, i64 D, i64 sq);
// rho reduction step; repeated application reaches and then cycles
// through the reduced forms equivalent to f.
Form rho_real(const Form& f, i64 D, i64 sq);
Form reduce_real(Form f, i64 D);
std::vector<Form> reduced_forms_real(i64 D);
// full rho-cycle through a reduced form
std::vector<Form> form_cycle(const Form& f, i64 D);

// ---- composition (sign-agnostic, caller reduces) ----

// Gauss composition of primitive forms of equal discriminant,
// not reduced. Shanks' variant of the textbook algorithm.
Form compose_raw(const Form& f, const Form& g, i64 D);

// compose + reduce, imaginary case
Form compose(const Form& f, const Form& g, i64 D);
Form inverse(const Form& f, i64 D);
Form form_pow(Form f, u64 e, i64 D);

// Prime form (p, b, *) for split or ramified p; nullopt when p is inert.
std::optional<Form> prime_form(i64 D, i64 p);

// floor((P + sqrt(D))/Q) for D > 0 non-square, Q != 0; exact.
i64 surd_floor(i128 P, i128 Q, i64 D, i64 sq);

}  // namespace torsionlab::cls
