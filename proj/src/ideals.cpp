#include "torsionlab/ideals.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "torsionlab/classgroup.hpp"
#include "torsionlab/forms.hpp"

namespace torsionlab::quad {

// ---------- QuadElement ----------

void QuadElement::normalize() {
  if (z == 0) throw std::invalid_argument("QuadElement: zero denominator");
  if (z < 0) {
    x = -x;
    y = -y;
    z = -z;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
  if (g > 1) {
    x /= g;
    y /= g;
    z /= g;
  }
}

mpq_class QuadElement::norm() const {
  mpq_class n(x * x - mpz_class(D) * y * y, z * z);
  n.canonicalize();
  return n;
}

mpq_class QuadElement::trace() const {
  mpq_class t(2 * x, z);
  t.canonicalize();
  return t;
}

QuadElement QuadElement::conj() const { return QuadElement{x, -y, z, D}; }

QuadElement QuadElement::mul(const QuadElement& o) const {
  QuadElement r{x * o.x + mpz_class(D) * y * o.y, x * o.y + y * o.x, z * o.z, D};
  r.normalize();
  return r;
}

QuadElement QuadElement::inv() const {
  // 1/alpha = conj(alpha) * z^2 / (x^2 - D y^2)
  mpz_class n = x * x - mpz_class(D) * y * y;
  if (n == 0) throw std::invalid_argument("QuadElement::inv: zero element");
  QuadElement r{x * z, -y * z, n, D};
  r.normalize();
  return r;
}

// ---------- QuadVal ----------

double QuadVal::to_double() const {
  return a.get_d() + b.get_d() * std::sqrt(static_cast<double>(D));
}

int QuadVal::sign() const {
  int sa = sgn(a), sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // a and b have opposite signs: compare a^2 with b^2 D
  mpq_class a2 = a * a, b2 = b * b * D;
  int c = cmp(a2, b2);
  if (c == 0) return 0;  // only possible when D is a square
  return (c > 0) ? sa : sb;
}

bool QuadVal::operator<(const QuadVal& o) const {
  QuadVal diff{a - o.a, b - o.b, D};
  return diff.sign() < 0;
}

bool QuadVal::operator==(const QuadVal& o) const { return a == o.a && b == o.b; }

mpq_class QuadVal::upper_bound(unsigned k) const {
  if (b == 0) return a;
  // rational bracket of sqrt(D) to 2^-k
  mpz_class num = arith::iroot(mpz_class(D) << (2 * k), 2);  // floor(2^k sqrt(D))
  mpq_class lo(num, mpz_class(1) << k), hi(num + 1, mpz_class(1) << k);
  lo.canonicalize();
  hi.canonicalize();
  return a + b * (b > 0 ? hi : lo);
}

// ---------- ideals ----------

namespace {

// E = (D^2 - D)/4 = norm of w, w = (D + sqrt(D))/2
mpz_class ring_E(i64 D) {
  mpz_class d(D);
  return (d * d - d) / 4;
}

// floor((P + sqrt(D))/Q), arbitrary precision
mpz_class surd_floor_mpz(const mpz_class& P, const mpz_class& Q, i64 D, i64 sq) {
  auto below = [&](const mpz_class& m) {
    mpz_class x = m * Q - P;
    bool x_lt_sqrt = (x <= 0) || (x * x < D);
    return Q > 0 ? x_lt_sqrt : !x_lt_sqrt;
  };
  mpz_class n = (P + sq) / Q;
  while (!below(n)) --n;
  while (below(n + 1)) ++n;
  return n;
}

struct Vec2 {
  mpz_class u, v;  // u + v*w
};

// HNF [[n, s],[0, d]] of the module spanned by the columns
void hnf2(std::vector<Vec2> cols, mpz_class& n, mpz_class& s, mpz_class& d) {
  // clear second row to a single entry via column gcd steps
  while (true) {
    int piv = -1;
    for (size_t i = 0; i < cols.size(); ++i) {
      if (cols[i].v == 0) continue;
      if (piv < 0 || abs(cols[i].v) < abs(cols[static_cast<size_t>(piv)].v)) piv = static_cast<int>(i);
    }
    if (piv < 0) {
      d = 0;
      s = 0;
      break;
    }
    bool done = true;
    for (size_t i = 0; i < cols.size(); ++i) {
      if (static_cast<int>(i) == piv || cols[i].v == 0) continue;
      mpz_class q = cols[i].v / cols[static_cast<size_t>(piv)].v;
      cols[i].v -= q * cols[static_cast<size_t>(piv)].v;
      cols[i].u -= q * cols[static_cast<size_t>(piv)].u;
      if (cols[i].v != 0) done = false;
    }
    if (done) {
      if (cols[static_cast<size_t>(piv)].v < 0) {
        cols[static_cast<size_t>(piv)].v = -cols[static_cast<size_t>(piv)].v;
        cols[static_cast<size_t>(piv)].u = -cols[static_cast<size_t>(piv)].u;
      }
      d = cols[static_cast<size_t>(piv)].v;
      s = cols[static_cast<size_t>(piv)].u;
      cols.erase(cols.begin() + piv);
      break;
    }
  }
  n = 0;
  for (auto& c : cols) mpz_gcd(n.get_mpz_t(), n.get_mpz_t(), c.u.get_mpz_t());
  if (d != 0 && n != 0) {
    s %= n;
    if (s < 0) s += n;
  }
}

QuadIdeal ideal_from_hnf(const mpz_class& n, const mpz_class& s, const mpz_class& d, i64 D) {
  if (n == 0 || d == 0) throw std::invalid_argument("ideal_from_hnf: degenerate module");
  if (n % d != 0 || s % d != 0)
    throw std::runtime_error("ideal_from_hnf: module is not an O_K ideal");
  QuadIdeal I;
  I.D = D;
  I.g = d;
  I.a = n / d;
  // u + w with u = s/d; b = 2u + D reduced mod 2a
  mpz_class b = 2 * (s / d) + D;
  mpz_class twoa = 2 * I.a;
  b %= twoa;
  if (b < 0) b += twoa;
  I.b = b;
  return I;
}

std::pair<Vec2, Vec2> ideal_basis(const QuadIdeal& I) {
  // g*a and g*((b - D)/2 + w)
  Vec2 e1{I.g * I.a, 0};
  Vec2 e2{I.g * ((I.b - I.D) / 2), I.g};
  return {e1, e2};
}

}  // namespace

QuadIdeal whole_ring(i64 D) {
  return QuadIdeal{1, 1, mpz_class(((D % 2) + 2) % 2), D};
}

QuadIdeal QuadIdeal::conj() const {
  QuadIdeal J = *this;
  mpz_class twoa = 2 * a;
  J.b = (-b) % twoa;
  if (J.b < 0) J.b += twoa;
  return J;
}

QuadIdeal mul_ideal(const QuadIdeal& I, const QuadIdeal& J) {
  if (I.D != J.D) throw std::invalid_argument("mul_ideal: mixed fields");
  i64 D = I.D;
  mpz_class E = ring_E(D);
  auto [a1, b1] = ideal_basis(I);
  auto [a2, b2] = ideal_basis(J);
  auto mulvec = [&](const Vec2& p, const Vec2& q) {
    // (p.u + p.v w)(q.u + q.v w), w^2 = D w - E
    mpz_class uu = p.u * q.u - p.v * q.v * E;
    mpz_class vv = p.u * q.v + p.v * q.u + p.v * q.v * D;
    return Vec2{uu, vv};
  };
  std::vector<Vec2> cols{mulvec(a1, a2), mulvec(a1, b2), mulvec(b1, a2), mulvec(b1, b2)};
  mpz_class n, s, d;
  hnf2(std::move(cols), n, s, d);
  QuadIdeal R = ideal_from_hnf(n, s, d, D);
  if (R.norm() != I.norm() * J.norm()) throw std::runtime_error("mul_ideal: norm mismatch");
  return R;
}

QuadIdeal pow_ideal(QuadIdeal I, unsigned e) {
  QuadIdeal R = whole_ring(I.D);
  while (e) {
    if (e & 1) R = mul_ideal(R, I);
    if (e >>= 1) I = mul_ideal(I, I);
  }
  return R;
}

QuadIdeal prime_ideal(i64 D, i64 p, int which) {
  auto pf = cls::prime_form(D, p);
  if (!pf) throw std::invalid_argument("prime_ideal: inert prime");
  QuadIdeal I;
  I.D = D;
  I.g = 1;
  I.a = p;
  mpz_class b = which >= 0 ? pf->b : -pf->b;
  mpz_class twoa = 2 * I.a;
  b %= twoa;
  if (b < 0) b += twoa;
  I.b = b;
  return I;
}

namespace {

// root of x^2 - Dx + E mod p^k attached to the ideal (p, b): the element
// (b - D)/2 + w lies in the ideal, so w = (D - b)/2 mod p; Hensel-lift.
u64 lifted_root(i64 D, i64 p, const mpz_class& b, int k) {
  mpz_class r0 = (mpz_class(D) - b) / 2;
  mpz_class pk = 1;
  for (int i = 0; i < k; ++i) pk *= p;
  mpz_class E = (mpz_class(D) * D - D) / 4;
  mpz_class r = ((r0 % p) + p) % p;
  mpz_class mod = p;
  while (mod < pk) {
    mod *= p;
    // Newton: r -= g(r)/g'(r) mod `mod`,  g(x) = x^2 - Dx + E
    mpz_class g = ((r * r - D * r + E) % mod + mod) % mod;
    mpz_class gp = ((2 * r - D) % mod + mod) % mod;
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), gp.get_mpz_t(), mod.get_mpz_t()) == 0)
      throw std::runtime_error("lifted_root: non-invertible derivative (ramified lift)");
    r = ((r - g * inv) % mod + mod) % mod;
  }
  return static_cast<u64>(mpz_class(r % pk).get_ui());
}

}  // namespace

int valuation(const QuadElement& beta, i64 p, int which) {
  if (beta.is_zero()) throw std::invalid_argument("valuation: zero element");
  // write beta = (s + t w)/z with z a power-free handled by caller; here require integral
  if (beta.z != 1 && beta.z != 2)
    throw std::invalid_argument("valuation: expects integral-style element, clear denominators first");
  // beta = (x + y sqrt(D))/z: s + t w with t = 2y/z, s = (x - yD)/z
  mpz_class s = (beta.x - beta.y * beta.D), t = 2 * beta.y;
  if (beta.z == 2) {
    s /= 2;
    t /= 2;
  }
  // now beta = s' ... if z == 2 assumed parity holds (integral element)
  int chi = arith::kronecker(beta.D, static_cast<u64>(p));
  mpz_class Nb = s * s + mpz_class(beta.D) * s * t + ring_E(beta.D) * t * t;
  if (Nb == 0) throw std::invalid_argument("valuation: zero norm");
  int vN = 0;
  {
    mpz_class n = abs(Nb);
    while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
      n /= p;
      ++vN;
    }
  }
  if (vN == 0) return 0;
  if (chi == -1) {
    // inert: v = min(v_p(s), v_p(t)) in the field ideal (p)
    auto vp = [&](mpz_class m) {
      if (m == 0) return vN;
      int v = 0;
      m = abs(m);
      while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) {
        m /= p;
        ++v;
      }
      return v;
    };
    return std::min(vp(s), vp(t));
  }
  if (chi == 0) {
    // ramified: single prime above p with f = 1, v = v_p(N)
    return vN;
  }
  // split: test membership in powers of the chosen prime ideal
  QuadIdeal P = prime_ideal(beta.D, p, which);
  int v = 0;
  while (v < vN) {
    u64 r = lifted_root(beta.D, p, P.b, v + 1);
    mpz_class pk = 1;
    for (int i = 0; i <= v; ++i) pk *= p;
    mpz_class test = (s + t * mpz_class(r)) % pk;
    if (test != 0) break;
    ++v;
  }
  return v;
}

IdealFactor principal_split(const QuadElement& alpha) {
  if (alpha.is_zero()) throw std::invalid_argument("principal_split: zero element");
  i64 D = alpha.D;
  mpz_class E = ring_E(D);
  // (alpha) = ((x + y sqrt(D)) O) / (z); x + y sqrt(D) = (x - yD) + 2y w
  mpz_class s = alpha.x - alpha.y * D, t = 2 * alpha.y;
  Vec2 g1{s, t};
  Vec2 g2{-t * E, s + t * D};
  mpz_class n, ss, d;
  hnf2({g1, g2}, n, ss, d);
  QuadIdeal H = ideal_from_hnf(n, ss, d, D);
  QuadIdeal Z{alpha.z, 1, mpz_class(((D % 2) + 2) % 2), D};
  // gcd = H + zO via HNF of the combined columns
  auto [h1, h2] = ideal_basis(H);
  auto [z1c, z2c] = ideal_basis(Z);
  mpz_class n2, s2, d2;
  hnf2({h1, h2, z1c, z2c}, n2, s2, d2);
  QuadIdeal G = ideal_from_hnf(n2, s2, d2, D);
  // B | A here, so A/B = A * conj(B) / N(B) with the norm dividing the content
  auto divide = [&](const QuadIdeal& A, const QuadIdeal& B) {
    QuadIdeal t1 = mul_ideal(A, B.conj());
    mpz_class nb = B.norm();
    if (t1.g % nb != 0) throw std::runtime_error("ideal divide: not divisible");
    t1.g /= nb;
    return t1;
  };
  IdealFactor out;
  out.num = divide(H, G);
  out.den = divide(Z, G);
  return out;
}

std::optional<QuadElement> generator(const QuadIdeal& I) {
  i64 D = I.D;
  mpz_class E = ring_E(D);
  auto [e1, e2] = ideal_basis(I);
  auto Q = [&](const Vec2& v) -> mpz_class {
    return v.u * v.u + mpz_class(D) * v.u * v.v + E * v.v * v.v;
  };
  if (D < 0) {
    // Lagrange reduction on the rank-2 lattice with the (positive definite) norm form
    Vec2 va = e1, vb = e2;
    if (Q(va) > Q(vb)) std::swap(va, vb);
    while (true) {
      // B(va, vb) = (Q(va+vb) - Q(va) - Q(vb))/2
      Vec2 sum{va.u + vb.u, va.v + vb.v};
      mpz_class B = (Q(sum) - Q(va) - Q(vb)) / 2;
      // m = nearest integer to B/Q(va)
      mpz_class qa = Q(va);
      mpz_class m = (2 * B + qa) / (2 * qa);
      if ((2 * B + qa) < 0) m = -((-(2 * B + qa) + 2 * qa - 1) / (2 * qa));
      Vec2 nb{vb.u - m * va.u, vb.v - m * va.v};
      if (Q(nb) >= Q(va)) {
        vb = nb;
        break;
      }
      vb = va;
      va = nb;
    }
    if (Q(va) != I.norm()) return std::nullopt;
    // back to (x + y sqrt(D))/1: u + v w = (2u + vD)/2 + (v/2) sqrt(D)
    QuadElement gen{2 * va.u + va.v * D, va.v, 2, D};
    gen.normalize();
    return gen;
  }
  // real: continued-fraction walk on theta = (b + sqrt(D))/(2a) with
  // convergent tracking; |Q| = 2 state means the current module is O_K
  i64 sq = arith::isqrt(D);
  mpz_class P = I.b, Qd = 2 * I.a;
  // lambda_k = q_{k-1} theta_k + q_{k-2}, lambda_0 = 1
  mpz_class q_prev = 0, q_prev2 = 1;
  std::map<std::pair<mpz_class, mpz_class>, bool> seen;
  for (int steps = 0; steps < 1000000; ++steps) {
    if (Qd == 2 || Qd == -2) {
      // I = a (Z + theta_0 Z) = (g a / lambda_k) O_K
      // lambda = ((q_prev P + q_prev2 Qd) + q_prev sqrt(D)) / Qd
      mpz_class X = q_prev * P + q_prev2 * Qd;
      mpz_class Y = q_prev;
      mpz_class NN = X * X - Y * Y * D;
      QuadElement gen{I.g * I.a * Qd * X, -I.g * I.a * Qd * Y, NN, D};
      gen.normalize();
      // verify (gen) == I by comparing HNFs of (z*gen) O and z*I
      mpz_class s = gen.x - gen.y * D, t = 2 * gen.y;
      Vec2 g1{s, t};
      Vec2 g2{-t * E, s + t * D};
      mpz_class n, ss, d;
      hnf2({g1, g2}, n, ss, d);
      QuadIdeal scaled = I;
      scaled.g *= gen.z;
      auto [c1, c2] = ideal_basis(scaled);
      mpz_class n2, ss2, d2;
      hnf2({c1, c2}, n2, ss2, d2);
      if (n == n2 && ss == ss2 && d == d2) return gen;
      // otherwise keep walking
    }
    auto key = std::make_pair(P, Qd);
    if (seen.count(key)) return std::nullopt;  // full cycle, never principal
    seen[key] = true;
    mpz_class aq = surd_floor_mpz(P, Qd, D, sq);
    mpz_class Pn = aq * Qd - P;
    mpz_class Qn = (D - Pn * Pn) / Qd;
    mpz_class qq = aq * q_prev + q_prev2;
    q_prev2 = q_prev;
    q_prev = qq;
    P = Pn;
    Qd = Qn;
  }
  throw std::runtime_error("generator: walk did not terminate");
}

QuadVal weil_height(const QuadElement& alpha) {
  if (alpha.is_zero()) throw std::invalid_argument("weil_height: zero element");
  i64 D = alpha.D;
  auto parts = principal_split(alpha);
  mpz_class den_norm = parts.den.norm();
  if (D < 0) {
    // one complex place, d_v = 2: |alpha|^2 = N(alpha)
    mpq_class n = alpha.norm();
    if (n < 0) throw std::runtime_error("weil_height: negative norm for imaginary field");
    mpq_class arch = n > 1 ? n : mpq_class(1);
    return QuadVal::rational(mpq_class(den_norm) * arch, D);
  }
  // two real places: max(1, |a1|) * max(1, |a2|)
  // |a1| = |x + y sqrt(D)|/z, |a2| = |x - y sqrt(D)|/z
  auto abs_ge = [&](const QuadVal& v, const mpq_class& c) {
    // |v| >= c for v = a + b sqrt(D)
    QuadVal av = v.sign() >= 0 ? v : QuadVal{-v.a, -v.b, v.D};
    QuadVal diff{av.a - c, av.b, D};
    return diff.sign() >= 0;
  };
  mpq_class xz(alpha.x, alpha.z), yz(alpha.y, alpha.z);
  xz.canonicalize();
  yz.canonicalize();
  QuadVal a1{xz, yz, D}, a2{xz, -yz, D};
  bool g1 = abs_ge(a1, 1), g2 = abs_ge(a2, 1);
  QuadVal arch = QuadVal::rational(1, D);
  if (g1 && g2) {
    mpq_class n = abs(alpha.norm());
    arch = QuadVal::rational(n, D);
  } else if (g1) {
    arch = a1.sign() >= 0 ? a1 : QuadVal{-a1.a, -a1.b, D};
  } else if (g2) {
    arch = a2.sign() >= 0 ? a2 : QuadVal{-a2.a, -a2.b, D};
  }
  return arch * mpq_class(den_norm);
}

QuadElement unit_element(i64 D) {
  auto fu = cls::fundamental_unit(D);
  QuadElement e{fu.x, fu.y, 2, D};
  e.normalize();
  return e;
}

std::pair<QuadVal, long> unit_orbit_min_height(const QuadElement& alpha) {
  if (alpha.D <= 0) throw std::invalid_argument("unit_orbit_min_height: needs D > 0");
  QuadElement eps = unit_element(alpha.D);
  QuadElement epsinv = eps.inv();
  auto H = [&](const QuadElement& a) { return weil_height(a); };
  // walk from m = 0 in the decreasing direction; H is unimodal in m
  QuadVal h0 = H(alpha);
  QuadElement up = alpha.mul(eps), down = alpha.mul(epsinv);
  QuadVal hup = H(up), hdown = H(down);
  if (!(hup < h0) && !(hdown < h0)) return {h0, 0};
  int dir = hup < h0 ? +1 : -1;
  QuadElement cur = dir > 0 ? up : down;
  QuadVal hcur = dir > 0 ? hup : hdown;
  long m = dir;
  const QuadElement& step = dir > 0 ? eps : epsinv;
  while (true) {
    QuadElement nxt = cur.mul(step);
    QuadVal hn = H(nxt);
    if (hn < hcur) {
      cur = nxt;
      hcur = hn;
      m += dir;
    } else {
      break;
    }
  }
  return {hcur, m};
}

}  // namespace torsionlab::quad
