#include "torsionlab/forms.hpp"

#include <numeric>
#include <stdexcept>

namespace torsionlab::cls {

using arith::xgcd;

i128 form_disc(const Form& f) {
  return static_cast<i128>(f.b) * f.b - static_cast<i128>(4) * f.a * f.c;
}

Form principal_form(i64 D) {
  i64 b = ((D % 2) + 2) % 2;
  i64 c = static_cast<i64>((static_cast<i128>(b) * b - D) / 4);
  return Form{1, b, c};
}

bool is_reduced_imag(const Form& f) {
  i64 ab = f.b < 0 ? -f.b : f.b;
  if (!(ab <= f.a && f.a <= f.c)) return false;
  if ((ab == f.a || f.a == f.c) && f.b < 0) return false;
  return true;
}

Form reduce_imag(i128 a, i128 b, i128 c, i64 D) {
  while (true) {
    // normalize b into (-a, a]
    if (b > a || b <= -a) {
      i128 twoa = 2 * a;
      i128 r = b % twoa;
      if (r > a) r -= twoa;
      if (r <= -a) r += twoa;
      b = r;
      c = (b * b - D) / (4 * a);
    }
    if (a > c) {
      std::swap(a, c);
      b = -b;
    } else {
      break;
    }
  }
  if (a == c && b < 0) b = -b;
  return Form{static_cast<i64>(a), static_cast<i64>(b), static_cast<i64>(c)};
}

std::vector<Form> reduced_forms_imag(i64 D) {
  if (D >= 0) throw std::invalid_argument("reduced_forms_imag: needs D < 0");
  if (((D % 4) + 4) % 4 != 0 && ((D % 4) + 4) % 4 != 1)
    throw std::invalid_argument("not a discriminant");
  std::vector<Form> out;
  i64 amax = arith::isqrt((-D) / 3);
  for (i64 a = 1; a <= amax; ++a) {
    for (i64 b = (D % 2 == 0) ? 0 : 1; b <= a; b += 2) {
      i128 num = static_cast<i128>(b) * b - D;
      if (num % (4 * static_cast<i128>(a)) != 0) continue;
      i64 c = static_cast<i64>(num / (4 * a));
      if (c < a) continue;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      out.push_back(Form{a, b, c});
      if (b > 0 && b < a && a < c) out.push_back(Form{a, -b, c});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// floor((P + sqrt(D))/Q), D > 0 not a square, Q != 0
i64 surd_floor(i128 P, i128 Q, i64 D, i64 sq) {
  // below(m): m <= (P + sqrt(D))/Q
  auto below = [&](i128 m) {
    i128 x = m * Q - P;  // compare x with sqrt(D)
    bool x_lt_sqrt = (x <= 0) || (x * x < static_cast<i128>(D));
    return Q > 0 ? x_lt_sqrt : !x_lt_sqrt;
  };
  i128 n = (P + sq) / Q;  // rough start, fixed up below
  while (!below(n)) --n;
  while (below(n + 1)) ++n;
  return static_cast<i64>(n);
}

bool is_reduced_real(const Form& f, i64 D, i64 sq) {
  if (f.b <= 0 || f.b > sq) return false;
  i64 t2a = 2 * (f.a < 0 ? -f.a : f.a);
  // sqrt(D) - b < 2|a| < sqrt(D) + b, strict; D not a square
  // left: sq-ish comparison via squares
  i128 left = static_cast<i128>(t2a) + f.b;   // need > sqrt(D)
  i128 right = static_cast<i128>(t2a) - f.b;  // need < sqrt(D)
  if (!(left * left > D)) return false;
  if (right >= 0 && !(right * right < D)) return false;
  return true;
}

Form rho_real(const Form& f, i64 D, i64 sq) {
  i64 c = f.c;
  i64 ac = c < 0 ? -c : c;
  // r = -b mod 2|c|, placed in the standard window
  i128 twoc = 2 * static_cast<i128>(ac);
  i128 r = (-static_cast<i128>(f.b)) % twoc;
  if (r < 0) r += twoc;
  if (ac > sq) {
    // window (-|c|, |c|]
    if (r > ac) r -= twoc;
  } else {
    // window (sq - 2|c|, sq]
    while (r > sq) r -= twoc;
    while (r <= sq - twoc) r += twoc;
  }
  i128 nc = (static_cast<i128>(r) * r - D) / (4 * static_cast<i128>(c));
  return Form{c, static_cast<i64>(r), static_cast<i64>(nc)};
}

Form reduce_real(Form f, i64 D) {
  i64 sq = arith::isqrt(D);
  int guard = 0;
  while (!is_reduced_real(f, D, sq)) {
    f = rho_real(f, D, sq);
    if (++guard > 100000) throw std::runtime_error("reduce_real: no convergence");
  }
  return f;
}

std::vector<Form> reduced_forms_real(i64 D) {
  if (D <= 0) throw std::invalid_argument("reduced_forms_real: needs D > 0");
  i64 sq = arith::isqrt(D);
  if (sq * sq == D) throw std::invalid_argument("square discriminant");
  std::vector<Form> out;
  for (i64 b = (D % 2 == 0) ? 2 : 1; b <= sq; b += 2) {
    i64 m = static_cast<i64>((static_cast<i128>(D) - static_cast<i128>(b) * b) / 4);
    // 2|a| in (sq - b, sq + b)
    i64 lo = (sq - b) / 2 + 1;
    i64 hi = (sq + b + 1) / 2;  // 2|a| < sq + b + 1 covers strictness
    for (i64 t = std::max<i64>(1, lo); t <= hi; ++t) {
      if (m % t != 0) continue;
      Form f1{t, b, -(m / t)};
      if (!is_reduced_real(f1, D, sq)) continue;
      if (std::gcd(std::gcd(f1.a, f1.b), f1.c) != 1) continue;
      out.push_back(f1);
      out.push_back(Form{-t, b, m / t});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Form> form_cycle(const Form& f, i64 D) {
  i64 sq = arith::isqrt(D);
  std::vector<Form> cyc;
  Form g = f;
  do {
    cyc.push_back(g);
    g = rho_real(g, D, sq);
  } while (!(g == f));
  return cyc;
}

Form compose_raw(const Form& f, const Form& g, i64 D) {
  if (form_disc(f) != form_disc(g))
    throw std::invalid_argument("compose: mismatched discriminants");
  i128 a1 = f.a, b1 = f.b;
  i128 a2 = g.a, b2 = g.b;
  i128 d1, v, w;
  xgcd(a1, a2, d1, v, w);
  i128 b3 = v * a1 * (b2 - b1);
  i128 a3 = a1 * a2;
  if (d1 != 1) {
    i128 s = (b1 + b2) / 2;
    i128 e, v2, w2;
    xgcd(d1, s, e, v2, w2);
    b3 = (b3 * v2 + w2 * (static_cast<i128>(D) - b1 * b1) / 2) / e;
    a3 /= e * e;
  }
  i128 twoa3 = 2 * a3;
  b3 = (b3 + b1) % twoa3;
  if (b3 < 0) b3 += twoa3;
  i128 c3 = (b3 * b3 - D) / (4 * a3);
  return Form{static_cast<i64>(a3), static_cast<i64>(b3), static_cast<i64>(c3)};
}

Form compose(const Form& f, const Form& g, i64 D) {
  Form h = compose_raw(f, g, D);
  return reduce_imag(h.a, h.b, h.c, D);
}

Form inverse(const Form& f, i64 D) {
  return reduce_imag(f.a, -static_cast<i128>(f.b), f.c, D);
}

Form form_pow(Form f, u64 e, i64 D) {
  Form r = principal_form(D);
  while (e) {
    if (e & 1) r = compose(r, f, D);
    f = compose(f, f, D);
    e >>= 1;
  }
  return r;
}

std::optional<Form> prime_form(i64 D, i64 p) {
  i64 m4 = ((D % 4) + 4) % 4;
  if (m4 != 0 && m4 != 1) throw std::invalid_argument("prime_form: not a discriminant");
  int chi = arith::kronecker(D, static_cast<u64>(p));
  if (chi == -1) return std::nullopt;
  i64 b;
  if (p == 2) {
    if (chi == 1) {
      b = 1;  // D = 1 mod 8
    } else {
      i64 r8 = ((D % 8) + 8) % 8;
      if (r8 == 0) b = 0;
      else if (r8 == 4) b = 2;
      else return std::nullopt;  // D = 5 mod 8 inert handled by chi
    }
  } else {
    if (chi == 1) {
      u64 r = arith::sqrt_mod(static_cast<u64>(((D % p) + p) % p), static_cast<u64>(p));
      b = static_cast<i64>(r);
      if (((b % 2) + 2) % 2 != ((D % 2) + 2) % 2) b = p - b;  // fix parity mod 2p
    } else {
      // ramified: b = 0 or p, matching parity of D
      b = (D % 2 == 0) ? 0 : p;
      if ((static_cast<i128>(b) * b - D) % (4 * static_cast<i128>(p)) != 0) b = (b == 0) ? p : 0;
    }
  }
  i128 num = static_cast<i128>(b) * b - D;
  if (num % (4 * static_cast<i128>(p)) != 0) return std::nullopt;
  i64 c = static_cast<i64>(num / (4 * p));
  if (std::gcd(std::gcd(p, b), c) != 1) return std::nullopt;  // imprimitive (p^2 | D case)
  return Form{p, b, c};
}

}  // namespace torsionlab::cls
