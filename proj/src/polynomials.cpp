#include "torsionlab/polynomials.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace torsionlab::poly {

ZPoly::ZPoly(const std::vector<i64>& c) {
  coeffs.reserve(c.size());
  for (i64 v : c) coeffs.emplace_back(v);
  trim();
}

void ZPoly::trim() {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

mpz_class ZPoly::operator()(const mpz_class& x) const {
  mpz_class r = 0;
  for (size_t i = coeffs.size(); i-- > 0;) r = r * x + coeffs[i];
  return r;
}

mpq_class ZPoly::operator()(const mpq_class& x) const {
  mpq_class r = 0;
  for (size_t i = coeffs.size(); i-- > 0;) r = r * x + mpq_class(coeffs[i]);
  return r;
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero() || b.is_zero()) return ZPoly{};
  std::vector<mpz_class> c(a.coeffs.size() + b.coeffs.size() - 1, mpz_class(0));
  for (size_t i = 0; i < a.coeffs.size(); ++i)
    for (size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
  return ZPoly{std::move(c)};
}

ZPoly operator+(const ZPoly& a, const ZPoly& b) {
  std::vector<mpz_class> c(std::max(a.coeffs.size(), b.coeffs.size()), mpz_class(0));
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.at(i) + b.at(i);
  return ZPoly{std::move(c)};
}

ZPoly operator-(const ZPoly& a, const ZPoly& b) {
  std::vector<mpz_class> c(std::max(a.coeffs.size(), b.coeffs.size()), mpz_class(0));
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.at(i) - b.at(i);
  return ZPoly{std::move(c)};
}

mpz_class content(const ZPoly& f) {
  mpz_class g = 0;
  for (const auto& c : f.coeffs) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

ZPoly primitive_part(const ZPoly& f) {
  if (f.is_zero()) return f;
  mpz_class g = content(f);
  if (f.lead() < 0) g = -g;
  std::vector<mpz_class> c;
  c.reserve(f.coeffs.size());
  for (const auto& v : f.coeffs) c.push_back(v / g);
  return ZPoly{std::move(c)};
}

ZPoly derivative(const ZPoly& f) {
  if (f.degree() < 1) return ZPoly{};
  std::vector<mpz_class> c(f.coeffs.size() - 1);
  for (size_t i = 1; i < f.coeffs.size(); ++i) c[i - 1] = f.coeffs[i] * static_cast<long>(i);
  return ZPoly{std::move(c)};
}

bool divides(const ZPoly& g, const ZPoly& f) {
  if (g.is_zero()) return f.is_zero();
  // pseudo-division over Q via rational long division
  std::vector<mpq_class> rem(f.coeffs.size());
  for (size_t i = 0; i < f.coeffs.size(); ++i) rem[i] = mpq_class(f.at(i));
  int dg = g.degree();
  mpq_class glead{g.lead()};
  for (int i = static_cast<int>(rem.size()) - 1; i >= dg; --i) {
    mpq_class q = rem[static_cast<size_t>(i)] / glead;
    if (q == 0) continue;
    for (int j = 0; j <= dg; ++j)
      rem[static_cast<size_t>(i - dg + j)] -= q * mpq_class(g.at(static_cast<size_t>(j)));
  }
  for (int i = 0; i < dg; ++i)
    if (rem[static_cast<size_t>(i)] != 0) return false;
  return true;
}

ZPoly divide_exact(const ZPoly& f, const ZPoly& g) {
  if (g.is_zero()) throw std::invalid_argument("divide_exact: zero divisor");
  std::vector<mpq_class> rem(f.coeffs.size());
  for (size_t i = 0; i < f.coeffs.size(); ++i) rem[i] = mpq_class(f.at(i));
  int dg = g.degree();
  int dq = f.degree() - dg;
  if (dq < 0) throw std::invalid_argument("divide_exact: degree mismatch");
  std::vector<mpq_class> quot(static_cast<size_t>(dq) + 1);
  mpq_class glead{g.lead()};
  for (int i = f.degree(); i >= dg; --i) {
    mpq_class q = rem[static_cast<size_t>(i)] / glead;
    quot[static_cast<size_t>(i - dg)] = q;
    for (int j = 0; j <= dg; ++j)
      rem[static_cast<size_t>(i - dg + j)] -= q * mpq_class(g.at(static_cast<size_t>(j)));
  }
  for (auto& r : rem)
    if (r != 0) throw std::invalid_argument("divide_exact: not divisible");
  std::vector<mpz_class> zq(quot.size());
  for (size_t i = 0; i < quot.size(); ++i) {
    if (quot[i].get_den() != 1) throw std::invalid_argument("divide_exact: non-integer quotient");
    zq[i] = quot[i].get_num();
  }
  return ZPoly{std::move(zq)};
}

mpz_class resultant(const ZPoly& f, const ZPoly& g) {
  // Sylvester determinant with exact fraction-free Gaussian elimination (Bareiss)
  int m = f.degree(), n = g.degree();
  if (m < 0 || n < 0) return 0;
  if (m == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), f.coeffs[0].get_mpz_t(), static_cast<unsigned long>(n));
    return r;
  }
  if (n == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), g.coeffs[0].get_mpz_t(), static_cast<unsigned long>(m));
    return r;
  }
  int N = m + n;
  std::vector<std::vector<mpz_class>> M(static_cast<size_t>(N),
                                        std::vector<mpz_class>(static_cast<size_t>(N), mpz_class(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) M[static_cast<size_t>(i)][static_cast<size_t>(i + j)] = f.coeffs[static_cast<size_t>(m - j)];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j)
      M[static_cast<size_t>(n + i)][static_cast<size_t>(i + j)] = g.coeffs[static_cast<size_t>(n - j)];
  // Bareiss
  mpz_class sign = 1, prev = 1;
  for (int k = 0; k < N - 1; ++k) {
    if (M[static_cast<size_t>(k)][static_cast<size_t>(k)] == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < N; ++i)
        if (M[static_cast<size_t>(i)][static_cast<size_t>(k)] != 0) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return 0;
      std::swap(M[static_cast<size_t>(k)], M[static_cast<size_t>(swap_row)]);
      sign = -sign;
    }
    for (int i = k + 1; i < N; ++i) {
      for (int j = k + 1; j < N; ++j) {
        M[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            (M[static_cast<size_t>(k)][static_cast<size_t>(k)] * M[static_cast<size_t>(i)][static_cast<size_t>(j)] -
             M[static_cast<size_t>(i)][static_cast<size_t>(k)] * M[static_cast<size_t>(k)][static_cast<size_t>(j)]) /
            prev;
      }
      M[static_cast<size_t>(i)][static_cast<size_t>(k)] = 0;
    }
    prev = M[static_cast<size_t>(k)][static_cast<size_t>(k)];
  }
  return sign * M[static_cast<size_t>(N - 1)][static_cast<size_t>(N - 1)];
}

mpz_class discriminant(const ZPoly& f) {
  int d = f.degree();
  if (d < 1) throw std::invalid_argument("discriminant: degree >= 1 required");
  if (d == 1) return 1;
  mpz_class res = resultant(f, derivative(f));
  mpz_class num = res / f.lead();
  // (-1)^{d(d-1)/2} res / lead
  int s = (d * (d - 1) / 2) % 2;
  return s ? mpz_class(-num) : num;
}

ZPoly monicize(const ZPoly& f) {
  int d = f.degree();
  if (d < 1) throw std::invalid_argument("monicize: degree >= 1 required");
  const mpz_class& a0 = f.lead();
  if (a0 == 1) return f;
  // a0^{d-1} f(x/a0): coefficient of x^i gets a0^{d-1-i}
  std::vector<mpz_class> c(static_cast<size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) {
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), a0.get_mpz_t(), static_cast<unsigned long>(d - 1 - i >= 0 ? d - 1 - i : 0));
    c[static_cast<size_t>(i)] = f.coeffs[static_cast<size_t>(i)] * (i == d ? mpz_class(1) : p);
  }
  c[static_cast<size_t>(d)] = 1;
  return ZPoly{std::move(c)};
}

std::vector<mpq_class> rational_roots(const ZPoly& f) {
  std::vector<mpq_class> roots;
  ZPoly g = primitive_part(f);
  // strip x | f
  size_t shift = 0;
  while (shift < g.coeffs.size() && g.coeffs[shift] == 0) ++shift;
  if (shift > 0) {
    roots.push_back(mpq_class(0));
    g.coeffs.erase(g.coeffs.begin(), g.coeffs.begin() + static_cast<long>(shift));
  }
  if (g.degree() < 1) return roots;
  auto divisors = [](const mpz_class& n) {
    std::vector<mpz_class> out;
    mpz_class a = abs(n);
    for (mpz_class i = 1; i * i <= a; ++i) {
      if (a % i == 0) {
        out.push_back(i);
        if (i * i != a) out.push_back(a / i);
      }
    }
    return out;
  };
  for (const auto& r : divisors(g.coeffs.front()))
    for (const auto& s : divisors(g.lead())) {
      for (int sgn : {1, -1}) {
        mpq_class x(sgn * r, s);
        x.canonicalize();
        if (g(x) == 0) {
          if (std::find(roots.begin(), roots.end(), x) == roots.end()) roots.push_back(x);
        }
      }
    }
  return roots;
}

namespace {

// reducibility of a quartic with no rational root: product of two quadratics
bool quartic_splits_in_quadratics(const ZPoly& f) {
  // work with the monic transform; factorization type is preserved
  ZPoly m = monicize(primitive_part(f));
  mpq_class p{m.at(3)}, q{m.at(2)}, r{m.at(1)}, s{m.at(0)};
  // resolvent cubic y^3 - q y^2 + (pr - 4s) y - (p^2 s - 4 q s + r^2)
  mpq_class c2 = -q, c1 = p * r - 4 * s, c0 = -(p * p * s - 4 * q * s + r * r);
  // integer-cleared cubic for rational root search
  mpz_class den = 1;
  for (const auto& v : {c2, c1, c0})
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
  std::vector<mpz_class> cc(4);
  cc[3] = den;
  cc[2] = mpz_class(c2.get_num() * (den / c2.get_den()));
  cc[1] = mpz_class(c1.get_num() * (den / c1.get_den()));
  cc[0] = mpz_class(c0.get_num() * (den / c0.get_den()));
  ZPoly cubic{cc};
  for (const auto& beta : rational_roots(cubic)) {
    // (x^2+ax+b)(x^2+cx+d): b+d = beta, a+c = p, ac = q - beta, ad + bc = r, bd = s
    mpq_class disc1 = p * p - 4 * (q - beta);  // (a - c)^2
    mpq_class disc2 = beta * beta - 4 * s;     // (b - d)^2
    auto sqrt_rat = [](const mpq_class& v, mpq_class& out) {
      if (v < 0) return false;
      mpz_class n = v.get_num(), d = v.get_den();
      mpz_class rn, rd;
      if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
      if (mpz_perfect_square_p(d.get_mpz_t()) == 0) return false;
      mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
      mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
      out = mpq_class(rn, rd);
      out.canonicalize();
      return true;
    };
    mpq_class s1, s2;
    if (!sqrt_rat(disc1, s1)) continue;
    if (!sqrt_rat(disc2, s2)) continue;
    for (int e1 : {1, -1})
      for (int e2 : {1, -1}) {
        mpq_class a = (p + e1 * s1) / 2, c = (p - e1 * s1) / 2;
        mpq_class b = (beta + e2 * s2) / 2, d = (beta - e2 * s2) / 2;
        if (a * d + b * c == r) {
          // rational factorization found
          return true;
        }
      }
  }
  return false;
}

// reducibility of a quintic with no rational root: quadratic x cubic
bool quintic_splits(const ZPoly& f) {
  // try integral quadratic factors u x^2 + v x + w of the primitive part
  ZPoly g = primitive_part(f);
  // Mignotte-style bound on factor coefficients: 2^deg * ||g||_2
  mpz_class norm2 = 0;
  for (auto& c : g.coeffs) norm2 += c * c;
  mpz_class bound = 32 * (arith::iroot(norm2, 2) + 1);
  auto divisors = [](const mpz_class& n) {
    std::vector<mpz_class> out;
    mpz_class a = abs(n);
    for (mpz_class i = 1; i * i <= a; ++i)
      if (a % i == 0) {
        out.push_back(i);
        if (i * i != a) out.push_back(a / i);
      }
    return out;
  };
  for (const auto& u : divisors(g.lead()))
    for (const auto& w0 : divisors(g.coeffs.front()))
      for (int sw : {1, -1}) {
        mpz_class w = sw * w0;
        for (mpz_class v = -bound; v <= bound; ++v) {
          ZPoly quad{std::vector<mpz_class>{w, v, u}};
          if (quad.degree() == 2 && divides(quad, g)) return true;
        }
      }
  return false;
}

}  // namespace

bool is_irreducible(const ZPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("is_irreducible: zero polynomial");
  ZPoly g = primitive_part(f);
  int d = g.degree();
  if (d == 0) return false;
  if (d == 1) return true;
  if (d > 5) throw std::invalid_argument("is_irreducible: degree > 5 unsupported");
  if (g.coeffs.front() == 0) return false;  // x | g
  if (!rational_roots(g).empty()) return false;
  if (d <= 3) return true;
  if (d == 4) return !quartic_splits_in_quadratics(g);
  return !quintic_splits(g);
}

std::string to_string(const ZPoly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = f.degree(); i >= 0; --i) {
    const mpz_class& c = f.coeffs[static_cast<size_t>(i)];
    if (c == 0) continue;
    mpz_class a = abs(c);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    if (i == 0 || a != 1) os << a.get_str();
    if (i > 0 && a != 1) os << "*";
    if (i > 0) os << "x";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

namespace {

// parse a single monomial like "3x^2", "-x", "+17"
void add_monomial(std::vector<mpz_class>& c, const std::string& tok) {
  if (tok.empty()) return;
  std::string t = tok;
  int sign = 1;
  size_t i = 0;
  if (t[0] == '+') i = 1;
  else if (t[0] == '-') {
    sign = -1;
    i = 1;
  }
  std::string num;
  while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) num += t[i++];
  if (i < t.size() && t[i] == '*') ++i;
  mpz_class coef = num.empty() ? mpz_class(1) : mpz_class(num);
  coef *= sign;
  size_t deg = 0;
  if (i < t.size() && (t[i] == 'x' || t[i] == 'X')) {
    ++i;
    deg = 1;
    if (i < t.size() && t[i] == '^') {
      ++i;
      std::string e;
      while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) e += t[i++];
      deg = std::stoul(e);
    }
  }
  if (i != t.size()) throw std::invalid_argument("parse_poly: bad token '" + tok + "'");
  if (c.size() <= deg) c.resize(deg + 1, mpz_class(0));
  c[deg] += coef;
}

}  // namespace

ZPoly parse_poly(const std::string& s) {
  // coefficient list form: "1,0,-2" (ascending)
  if (s.find(',') != std::string::npos) {
    std::vector<mpz_class> c;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
      c.emplace_back(item);
    }
    return ZPoly{std::move(c)};
  }
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  std::vector<mpz_class> c;
  std::string tok;
  for (size_t i = 0; i < t.size(); ++i) {
    if ((t[i] == '+' || t[i] == '-') && i > 0 && t[i - 1] != '^') {
      add_monomial(c, tok);
      tok.clear();
    }
    tok += t[i];
  }
  add_monomial(c, tok);
  return ZPoly{std::move(c)};
}

}  // namespace torsionlab::poly
