#pragma once

#include <vector>

#include "torsionlab/forms.hpp"

namespace torsionlab::cls {

// Elementary divisor presentation d1 | d2 | ... | dr of the form class
// group, with one witness form of order d_i per divisor.
struct ClassGroupStructure {
  i64 D = 0;
  bool narrow = false;  // D > 0: Cl^+ when true, Cl otherwise; ignored for D < 0
  i64 h = 1;
  std::vector<i64> divisors;
  std::vector<Form> generators;
  int unit_norm = 0;  // +-1 for D > 0, 0 for D < 0
};

i64 torsion_count(const ClassGroupStructure& S, u64 ell);
int p_rank(const ClassGroupStructure& S, i64 p);

// Spec surface: one reduced form per class, D < 0 only.
std::vector<Form> reduced_forms(i64 D);

ClassGroupStructure class_group_structure(i64 D, bool narrow = false);

// (x + y sqrt(D))/2, minimal unit > 1 of the maximal order, D > 0.
struct FundamentalUnit {
  mpz_class x, y;
  int norm = 0;
};
FundamentalUnit fundamental_unit(i64 D);

// Norm of the fundamental unit from the continued-fraction period parity.
int unit_norm_cf(i64 D);

i64 class_number_imag(i64 D);

// Reduced forms of positive discriminant partitioned into rho-cycles.
struct RealCycles {
  std::vector<Form> forms;    // sorted
  std::vector<int> cycle_id;  // parallel to forms
  std::vector<Form> canon;    // lexicographic minimum of each cycle
  std::vector<Form> work;     // a > 0 representative of each cycle
  int principal = -1;
  int neg_principal = -1;  // class of (-1, sigma, (D - sigma^2)/4)
  i64 D = 0;

  i64 h_plus() const { return static_cast<i64>(canon.size()); }
  int id_of(const Form& reduced) const;
  int mul(int c1, int c2) const;
  int pow(int c, u64 e) const;
  int inv(int c) const;
};
RealCycles real_cycles(i64 D);

// ---- Sylow machinery shared with the bulk scans (imaginary fields) ----

// The full p-Sylow subgroup of Cl(D) as reduced forms; h = #Cl(D),
// v = v_p(h) >= 1.  Unconditional: falls back to full enumeration if
// small prime forms fail to generate.
std::vector<Form> sylow_set_imag(i64 D, i64 h, i64 p, int v);

// #Cl(D)[p^j] for prime p, j >= 1.
i64 torsion_ppow_imag(i64 D, i64 h, i64 p, int j);

// #Cl(D)[ell] for squarefree-free general ell (factors internally).
i64 torsion_imag(i64 D, i64 h, u64 ell);

}  // namespace torsionlab::cls
