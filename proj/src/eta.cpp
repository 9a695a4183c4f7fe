#include "torsionlab/eta.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "torsionlab/classgroup.hpp"
#include "torsionlab/forms.hpp"

namespace torsionlab::eta {

using cls::Form;
using quad::QuadIdeal;

namespace {

std::vector<i64> split_primes_upto(i64 D, i64 bound) {
  std::vector<i64> out;
  for (i64 p : arith::sieve_primes(bound))
    if (arith::kronecker(D, static_cast<u64>(p)) == 1) out.push_back(p);
  return out;
}

struct PairSpec {
  i64 q, p;  // q = numerator prime (N p1), p = denominator prime (N p2)
  int s1, s2;
};

// pairs of distinct degree-1 unramified prime ideals with max norm P[j],
// enumerated deterministically
std::vector<PairSpec> pairs_at(const std::vector<i64>& P, size_t j) {
  std::vector<PairSpec> out;
  i64 p = P[j];
  out.push_back({p, p, +1, -1});  // the two conjugate ideals above p
  for (size_t i = 0; i < j; ++i) {
    out.push_back({P[i], p, +1, +1});
    out.push_back({P[i], p, +1, -1});
  }
  return out;
}

mpz_class mpz_pow(i64 base, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
  return r;
}

// witness for the admissible pair: generator of (p1,s1)^ell * conj((p2,s2))^ell
// divided by p2^ell
std::optional<QuadElement> build_witness(i64 D, int ell, const PairSpec& ps) {
  QuadIdeal I1 = quad::prime_ideal(D, ps.q, ps.s1);
  QuadIdeal I2 = quad::prime_ideal(D, ps.p, ps.s2);
  QuadIdeal J = quad::mul_ideal(quad::pow_ideal(I1, static_cast<unsigned>(ell)),
                                quad::pow_ideal(I2.conj(), static_cast<unsigned>(ell)));
  auto gen = quad::generator(J);
  if (!gen) return std::nullopt;
  QuadElement alpha = *gen;
  alpha.z *= mpz_pow(ps.p, ell);
  alpha.normalize();
  if (alpha.x < 0 || (alpha.x == 0 && alpha.y < 0)) {
    alpha.x = -alpha.x;
    alpha.y = -alpha.y;
  }
  // re-factor (alpha) and check the ideal shape exactly
  auto parts = quad::principal_split(alpha);
  if (!(parts.num == quad::pow_ideal(I1, static_cast<unsigned>(ell))) ||
      !(parts.den == quad::pow_ideal(I2, static_cast<unsigned>(ell))))
    throw std::runtime_error("eta witness: ideal re-factorization mismatch");
  return alpha;
}

}  // namespace

EtaCertificate eta_exact_quadratic(i64 D, int ell, i64 search_bound) {
  if (!arith::is_fundamental_discriminant(D))
    throw std::invalid_argument("eta: D must be a fundamental discriminant");
  if (ell < 1 || ell > 64) throw std::invalid_argument("eta: ell out of range [1,64]");
  if (search_bound < 2) throw std::invalid_argument("eta: search_bound >= 2 required");
  EtaCertificate cert;
  cert.D = D;
  cert.ell = ell;
  cert.exhausted_bound = search_bound;
  auto P = split_primes_upto(D, search_bound);

  if (D < 0) {
    for (size_t j = 0; j < P.size(); ++j) {
      for (const PairSpec& ps : pairs_at(P, j)) {
        auto w = build_witness(D, ell, ps);
        if (!w) continue;
        cert.resolved = true;
        cert.exact = true;
        cert.value_integral = true;
        cert.value = mpz_pow(P[j], ell);
        cert.value_alg = QuadVal::rational(mpq_class(cert.value), D);
        cert.value_upper = mpq_class(cert.value);
        cert.p1 = ps.q;
        cert.p2 = ps.p;
        cert.sign1 = ps.s1;
        cert.sign2 = ps.s2;
        cert.witness = *w;
        // closed form check: H(alpha) = max(p1, p2)^ell for imaginary D
        if (!(quad::weil_height(cert.witness) == cert.value_alg))
          throw std::runtime_error("eta: witness height differs from closed form");
        return cert;
      }
    }
    cert.lower_bound = mpz_pow(search_bound, ell);
    return cert;
  }

  // real quadratic: per-pair unit-orbit minimum, exact comparisons
  bool have = false;
  QuadVal best{0, 0, D};
  for (size_t j = 0; j < P.size(); ++j) {
    if (have) {
      QuadVal next_floor = QuadVal::rational(mpq_class(mpz_pow(P[j], ell)), D);
      if (!(next_floor < best)) break;  // heights of later pairs cannot beat the best
    }
    for (const PairSpec& ps : pairs_at(P, j)) {
      auto w0 = build_witness(D, ell, ps);
      if (!w0) continue;
      auto [hmin, m] = quad::unit_orbit_min_height(*w0);
      QuadElement w = *w0;
      if (m != 0) {
        QuadElement eps = quad::unit_element(D);
        QuadElement step = m > 0 ? eps : eps.inv();
        for (long k = 0; k < (m > 0 ? m : -m); ++k) w = w.mul(step);
      }
      if (!have || hmin < best) {
        have = true;
        best = hmin;
        cert.resolved = true;
        cert.p1 = ps.q;
        cert.p2 = ps.p;
        cert.sign1 = ps.s1;
        cert.sign2 = ps.s2;
        cert.witness = w;
      }
    }
  }
  if (cert.resolved) {
    cert.value_alg = best;
    cert.value_upper = best.upper_bound();
    if (best.is_rational() && best.a.get_den() == 1) {
      cert.value_integral = true;
      cert.value = best.a.get_num();
    }
    QuadVal bound_pow = QuadVal::rational(mpq_class(mpz_pow(search_bound, ell)), D);
    cert.exact = (best < bound_pow) || (best == bound_pow);
  } else {
    cert.lower_bound = mpz_pow(search_bound, ell);
  }
  return cert;
}

EtaCertificate eta_auto(i64 D, int ell, i64 cap) {
  // default bound: the 10th split prime of K
  i64 bound = 2;
  int found = 0;
  for (i64 p = 2; found < 10 && p < (1 << 22); ++p) {
    if (!arith::is_prime(static_cast<u64>(p))) continue;
    if (arith::kronecker(D, static_cast<u64>(p)) == 1) {
      ++found;
      bound = p;
    }
  }
  while (true) {
    EtaCertificate c = eta_exact_quadratic(D, ell, bound);
    if (c.resolved && c.exact) return c;
    if (bound >= cap) return c;
    bound = std::min<i64>(cap, bound * 2);
  }
}

std::optional<mpz_class> eta_brute_oracle(i64 D, int ell, i64 height_bound) {
  if (D >= 0) throw std::invalid_argument("eta_brute_oracle: D < 0 required");
  if (ell < 1 || ell > 16) throw std::invalid_argument("eta_brute_oracle: ell out of range");
  const mpz_class HB = height_bound;
  const mpz_class N_max = HB * HB;
  // integral elements (x + y sqrt(D))/2 bucketed by norm
  std::map<mpz_class, std::vector<QuadElement>> bucket;
  i64 absD = -D;
  i64 ymax = static_cast<i64>(arith::iroot(static_cast<u64>((4 * N_max.get_ui()) / static_cast<u64>(absD)), 2));
  for (i64 y = -ymax; y <= ymax; ++y) {
    // x^2 <= 4 N_max - |D| y^2
    mpz_class rhs = 4 * N_max - mpz_class(absD) * y * y;
    if (rhs < 0) continue;
    i64 xmax = static_cast<i64>(arith::iroot(rhs.get_ui(), 2));
    i64 xstart = -xmax;
    // parity x = y D (mod 2)
    i64 par = ((y * D) % 2 + 2) % 2;
    if (((xstart % 2) + 2) % 2 != par) ++xstart;
    for (i64 x = xstart; x <= xmax; x += 2) {
      if (x == 0 && y == 0) continue;
      mpz_class n = (mpz_class(x) * x + mpz_class(absD) * y * y) / 4;
      if (n == 0 || n > N_max) continue;
      QuadElement e{x, y, 2, D};
      e.normalize();
      bucket[n].push_back(e);
    }
  }
  // split primes with p^ell <= height_bound
  std::vector<i64> P;
  for (i64 p : arith::sieve_primes(height_bound))
    if (mpz_pow(p, ell) <= HB && arith::kronecker(D, static_cast<u64>(p)) == 1) P.push_back(p);
  std::set<std::array<long, 3>> seen;
  std::optional<mpz_class> bestH;
  auto consider = [&](const QuadElement& beta, const QuadElement& gamma, i64 q, i64 p) {
    QuadElement alpha = beta.mul(gamma.inv());
    std::array<long, 3> key{alpha.x.get_si(), alpha.y.get_si(), alpha.z.get_si()};
    if (seen.count(key)) return;
    seen.insert(key);
    // fractional valuations of (alpha) = (beta)/(gamma): must be exactly
    // +-ell at two distinct split degree-1 primes, 0 elsewhere
    mpz_class nb = abs(mpz_class(beta.norm().get_num()));
    mpz_class ng = abs(mpz_class(gamma.norm().get_num()));
    auto fac = arith::factorize(mpz_class(nb * ng).get_ui());
    int pos_hits = 0, neg_hits = 0;
    bool ok = true;
    i64 den_prime = 0;
    for (auto [pp, e] : fac.pairs) {
      (void)e;
      i64 pr = static_cast<i64>(pp);
      int chi = arith::kronecker(D, pp);
      if (chi != 1) {
        // ramified (e=2) and inert (f=2) places must cancel exactly
        int vb = 0, vg = 0;
        mpz_class tb = nb, tg = ng;
        while (mpz_divisible_ui_p(tb.get_mpz_t(), pp)) {
          tb /= pr;
          ++vb;
        }
        while (mpz_divisible_ui_p(tg.get_mpz_t(), pp)) {
          tg /= pr;
          ++vg;
        }
        if (vb != vg) {
          ok = false;
          break;
        }
        continue;
      }
      for (int which : {+1, -1}) {
        int v = quad::valuation(beta, pr, which) - quad::valuation(gamma, pr, which);
        if (v == 0) continue;
        if (v == ell) {
          ++pos_hits;
        } else if (v == -ell) {
          ++neg_hits;
          den_prime = pr;
        } else {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (!ok || pos_hits != 1 || neg_hits != 1) return;
    (void)q;
    (void)p;
    // H = N(den) * max(1, |N(alpha)|), both exact
    mpz_class denN = mpz_pow(den_prime, ell);
    mpq_class na = abs(alpha.norm());
    mpq_class H = mpq_class(denN) * (na > 1 ? na : mpq_class(1));
    if (H.get_den() != 1) return;  // admissible heights are integers for D < 0
    mpz_class Hz = H.get_num();
    if (Hz > HB) return;
    if (!bestH || Hz < *bestH) bestH = Hz;
  };
  for (i64 q : P)
    for (i64 p : P) {
      mpz_class qn = mpz_pow(q, ell), pn = mpz_pow(p, ell);
      for (mpz_class m = 1; qn * m <= N_max && pn * m <= N_max; ++m) {
        auto itb = bucket.find(qn * m);
        auto itg = bucket.find(pn * m);
        if (itb == bucket.end() || itg == bucket.end()) continue;
        for (const auto& beta : itb->second)
          for (const auto& gamma : itg->second) {
            if (beta == gamma) continue;
            consider(beta, gamma, q, p);
          }
      }
    }
  return bestH;
}

poly::ZPoly certificate_minpoly(const EtaCertificate& cert) {
  const QuadElement& w = cert.witness;
  if (!cert.resolved || w.y == 0)
    throw std::invalid_argument("certificate_minpoly: witness missing or not of admissible shape");
  mpz_class a0 = w.z * w.z;
  mpz_class a1 = -2 * w.x * w.z;
  mpz_class a2 = w.x * w.x - mpz_class(w.D) * w.y * w.y;
  poly::ZPoly f{std::vector<mpz_class>{a2, a1, a0}};
  return poly::primitive_part(f);
}

std::vector<PrimePair> enumerate_pairs(i64 D, int ell, i64 norm_cap) {
  if (D >= 0) throw std::invalid_argument("enumerate_pairs: imaginary fields only");
  std::vector<PrimePair> out;
  auto P = split_primes_upto(D, norm_cap);
  auto forms = cls::reduced_forms_imag(D);
  Form id = cls::principal_form(D);
  auto class_of = [&](i64 p, int sign) {
    auto pf = cls::prime_form(D, p);
    if (!pf) throw std::runtime_error("enumerate_pairs: no prime form");
    i64 b = sign >= 0 ? pf->b : -pf->b;
    return cls::reduce_imag(pf->a, b, (static_cast<arith::i128>(b) * b - D) / (4 * pf->a), D);
  };
  for (size_t j = 0; j < P.size(); ++j) {
    for (const PairSpec& ps : pairs_at(P, j)) {
      Form f1 = class_of(ps.q, ps.s1);
      Form f2 = class_of(ps.p, ps.s2);
      Form quot = cls::compose(f1, cls::inverse(f2, D), D);
      bool tors = cls::form_pow(quot, static_cast<u64>(ell), D) == id;
      out.push_back({ps.q, ps.p, ps.s1, ps.s2, tors});
    }
  }
  return out;
}

}  // namespace torsionlab::eta
