#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "torsionlab/arith.hpp"

namespace torsionlab::expo {

using arith::i64;
using Rat = mpq_class;

struct ExponentResult {
  Rat exponent;
  std::string branch;   // which min/max branch was active
  std::string formula;  // rendered expression with "+eps"
};

// 1/2 + rho - min(delta0, rho/(ell*theta + 1))
ExponentResult exponent_prop31(const Rat& theta, const Rat& rho, const Rat& delta0, i64 ell);

// max(k/2 + rho - min(rho, rho*k/(ell*theta)), k/2 + tau)
ExponentResult exponent_prop32(const Rat& theta, const Rat& rho, const Rat& tau, i64 ell, const Rat& k);

struct GammaSequence {
  i64 N = 0;
  Rat q;                // k/(ell*theta)
  std::vector<Rat> Q;   // Q_0..Q_N, Q_i = sum q^r
  std::vector<Rat> gamma;  // gamma_0..gamma_N = gamma_0 * Q_i
  Rat gamma_tilde0;     // limit of gamma_0(N)
  bool plateau_ok = false;
};

GammaSequence gamma_sequence(const Rat& theta, const Rat& rho, i64 ell, const Rat& k, i64 N);

// smallest N with gamma_0(N)*theta <= gamma_tilde0*theta + eps
i64 choose_N(const Rat& theta, const Rat& rho, i64 ell, const Rat& k, const Rat& eps);

struct PresetRow {
  std::string label;     // "1.1" .. "1.8"
  std::string family;
  Rat theta, rho, tau, delta0;
  bool uses_prop31 = false;
  bool has_tau = false;
};

// Parameter table of the paper's theorems; theta depends on (d, ell).
std::vector<PresetRow> theorem_presets();

// Evaluate a theorem row at (ell, k); d, rho, tau override defaults where
// the theorem leaves them free.
ExponentResult theorem_exponent(const std::string& label, i64 ell, const Rat& k, i64 d = 0,
                                const Rat& rho = Rat(-1), const Rat& tau = Rat(-1));

// Corollary bounds for dihedral fields:
//  N(p, D_p, X):      3/(p-1) - 2/((p+2)(p-1))
//  N(2p, D_p(2p), X): 3/(2p) - 1/(p(p+2))
std::pair<Rat, Rat> dihedral_exponents(i64 p);

std::string rat_str(const Rat& r);

}  // namespace torsionlab::expo
