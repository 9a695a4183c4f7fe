#include "torsionlab/classgroup.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>

namespace torsionlab::cls {

i64 torsion_count(const ClassGroupStructure& S, u64 ell) {
  if (ell == 0) throw std::invalid_argument("torsion_count: ell must be positive");
  i64 t = 1;
  for (i64 d : S.divisors) t *= std::gcd(static_cast<u64>(d), ell);
  return t;
}

int p_rank(const ClassGroupStructure& S, i64 p) {
  if (!arith::is_prime(static_cast<u64>(p))) throw std::invalid_argument("p_rank: p not prime");
  int r = 0;
  for (i64 d : S.divisors)
    if (d % p == 0) ++r;
  return r;
}

std::vector<Form> reduced_forms(i64 D) {
  if (D >= 0)
    throw std::invalid_argument(
        "reduced_forms: D > 0 unsupported here; use class_group_structure for real fields");
  return reduced_forms_imag(D);
}

i64 class_number_imag(i64 D) { return static_cast<i64>(reduced_forms_imag(D).size()); }

// ---------- real cycles ----------

int RealCycles::id_of(const Form& reduced) const {
  auto it = std::lower_bound(forms.begin(), forms.end(), reduced);
  if (it == forms.end() || !(*it == reduced)) throw std::runtime_error("id_of: form not reduced/known");
  return cycle_id[static_cast<size_t>(it - forms.begin())];
}

int RealCycles::mul(int c1, int c2) const {
  Form h = compose_raw(work[c1], work[c2], D);
  return id_of(reduce_real(h, D));
}

int RealCycles::pow(int c, u64 e) const {
  int r = principal;
  int b = c;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

int RealCycles::inv(int c) const {
  const Form& f = work[c];
  return id_of(reduce_real(Form{f.a, -f.b, f.c}, D));
}

RealCycles real_cycles(i64 D) {
  RealCycles rc;
  rc.D = D;
  rc.forms = reduced_forms_real(D);
  rc.cycle_id.assign(rc.forms.size(), -1);
  i64 sq = arith::isqrt(D);
  auto index_of = [&](const Form& f) {
    auto it = std::lower_bound(rc.forms.begin(), rc.forms.end(), f);
    return static_cast<size_t>(it - rc.forms.begin());
  };
  for (size_t i = 0; i < rc.forms.size(); ++i) {
    if (rc.cycle_id[i] >= 0) continue;
    int id = static_cast<int>(rc.canon.size());
    Form start = rc.forms[i];
    Form g = start;
    Form mn = start;
    Form pos = g.a > 0 ? g : Form{0, 0, 0};
    do {
      rc.cycle_id[index_of(g)] = id;
      if (g < mn) mn = g;
      if (g.a > 0 && pos.a == 0) pos = g;
      g = rho_real(g, D, sq);
    } while (!(g == start));
    rc.canon.push_back(mn);
    rc.work.push_back(pos);
  }
  rc.principal = rc.id_of(reduce_real(principal_form(D), D));
  i64 sigma = ((D % 2) + 2) % 2;
  i64 c = static_cast<i64>((static_cast<i128>(D) - sigma * sigma) / 4);
  rc.neg_principal = rc.id_of(reduce_real(Form{-1, sigma, c}, D));
  return rc;
}

// ---------- generic structure of a finite abelian group given all elements ----------

namespace {

struct PartitionedSylow {
  i64 p;
  std::vector<int> parts;  // descending
};

// partition of v from torsion counts N_j = p^{sum_i min(j, part_i)}
std::vector<int> partition_from_counts(i64 p, int v, const std::vector<i64>& N) {
  std::vector<int> rj;  // rj[j-1] = #parts >= j
  i64 prev = 1;
  for (int j = 1; j <= v; ++j) {
    i64 ratio = N[static_cast<size_t>(j)] / prev;
    prev = N[static_cast<size_t>(j)];
    int r = 0;
    i64 t = ratio;
    while (t > 1) {
      t /= p;
      ++r;
    }
    rj.push_back(r);
  }
  std::vector<int> parts;
  for (int i = 1; i <= rj[0]; ++i) {
    int len = 0;
    for (int j = 0; j < static_cast<int>(rj.size()); ++j)
      if (rj[static_cast<size_t>(j)] >= i) len = j + 1;
    parts.push_back(len);
  }
  return parts;  // descending since rj is nonincreasing
}

std::vector<i64> merge_divisors(const std::vector<PartitionedSylow>& sylows) {
  size_t r = 0;
  for (auto& s : sylows) r = std::max(r, s.parts.size());
  std::vector<i64> divisors(r, 1);
  // divisors ascending: largest parts align with the last divisor
  for (auto& s : sylows) {
    for (size_t k = 0; k < s.parts.size(); ++k) {
      i64 pk = 1;
      for (int i = 0; i < s.parts[k]; ++i) pk *= s.p;
      divisors[r - 1 - k] *= pk;
    }
  }
  return divisors;
}

}  // namespace

// ---------- imaginary Sylow machinery ----------

namespace {

i64 ipow(i64 b, int e) {
  i64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

void close_under(std::set<Form>& S, const Form& x, i64 D) {
  std::vector<Form> xpow;
  Form y = x;
  Form id = principal_form(D);
  while (!(y == id)) {
    xpow.push_back(y);
    y = compose(y, x, D);
  }
  std::vector<Form> base(S.begin(), S.end());
  for (const Form& s : base)
    for (const Form& xp : xpow) S.insert(compose(s, xp, D));
}

}  // namespace

std::vector<Form> sylow_set_imag(i64 D, i64 h, i64 p, int v) {
  const i64 target = ipow(p, v);
  const u64 cofactor = static_cast<u64>(h / target);
  Form id = principal_form(D);
  std::set<Form> S{id};
  // prime forms up to the Minkowski bound generate the class group
  i64 qmax = static_cast<i64>(2.0 / 3.141592653589793 * std::sqrt(static_cast<double>(-D))) + 2;
  for (i64 q = 2; q <= qmax && static_cast<i64>(S.size()) < target; ++q) {
    if (!arith::is_prime(static_cast<u64>(q))) continue;
    auto pf = prime_form(D, q);
    if (!pf) continue;
    Form x = form_pow(reduce_imag(pf->a, pf->b, pf->c, D), cofactor, D);
    if (x == id || S.count(x)) continue;
    close_under(S, x, D);
  }
  if (static_cast<i64>(S.size()) != target) {
    // exhaustive fallback: {f^cofactor} is exactly the p-Sylow subgroup
    S.clear();
    for (const Form& f : reduced_forms_imag(D)) S.insert(form_pow(f, cofactor, D));
    if (static_cast<i64>(S.size()) != target)
      throw std::runtime_error("sylow_set_imag: order mismatch against class number");
  }
  return std::vector<Form>(S.begin(), S.end());
}

i64 torsion_ppow_imag(i64 D, i64 h, i64 p, int j) {
  int v = 0;
  i64 hh = h;
  while (hh % p == 0) {
    hh /= p;
    ++v;
  }
  if (v == 0) return 1;
  if (v == 1) return p;  // cyclic Sylow of order p: #Cl[p^j] = p for all j >= 1
  auto S = sylow_set_imag(D, h, p, v);
  u64 pj = 1;
  for (int i = 0; i < j; ++i) pj *= static_cast<u64>(p);
  i64 count = 0;
  for (const Form& x : S)
    if (form_pow(x, pj, D) == principal_form(D)) ++count;
  return count;
}

i64 torsion_imag(i64 D, i64 h, u64 ell) {
  if (ell == 0) throw std::invalid_argument("torsion_imag: ell must be positive");
  i64 t = 1;
  for (auto [p, e] : arith::factorize(ell).pairs)
    t *= torsion_ppow_imag(D, h, static_cast<i64>(p), e);
  return t;
}

// ---------- full structure ----------

namespace {

ClassGroupStructure structure_imag(i64 D) {
  ClassGroupStructure S;
  S.D = D;
  S.narrow = false;
  auto forms = reduced_forms_imag(D);
  S.h = static_cast<i64>(forms.size());
  Form id = principal_form(D);
  auto fac = arith::factorize(static_cast<u64>(S.h));
  std::vector<PartitionedSylow> sylows;
  std::vector<std::pair<i64, std::vector<Form>>> sylow_sets;
  for (auto [pu, v] : fac.pairs) {
    i64 p = static_cast<i64>(pu);
    auto set = sylow_set_imag(D, S.h, p, v);
    std::vector<i64> N(static_cast<size_t>(v) + 1);
    for (int j = 0; j <= v; ++j) {
      u64 pj = static_cast<u64>(ipow(p, j));
      i64 cnt = 0;
      for (const Form& x : set)
        if (form_pow(x, pj, D) == id) ++cnt;
      N[static_cast<size_t>(j)] = cnt;
    }
    sylows.push_back({p, partition_from_counts(p, v, N)});
    sylow_sets.push_back({p, std::move(set)});
  }
  S.divisors = merge_divisors(sylows);
  // witness of order d for each divisor: product of exact-order elements
  auto order_of = [&](const Form& f) {
    Form g = f;
    i64 o = 1;
    while (!(g == id)) {
      g = compose(g, f, D);
      ++o;
    }
    return o;
  };
  for (i64 d : S.divisors) {
    Form gen = id;
    for (auto& [p, set] : sylow_sets) {
      i64 pe = 1;
      i64 dd = d;
      while (dd % p == 0) {
        dd /= p;
        pe *= p;
      }
      if (pe == 1) continue;
      bool found = false;
      for (const Form& x : set) {
        if (order_of(x) == pe) {
          gen = compose(gen, x, D);
          found = true;
          break;
        }
      }
      if (!found) throw std::runtime_error("structure_imag: missing exact-order element");
    }
    S.generators.push_back(gen);
  }
  return S;
}

// structure of an abelian group presented by an element list with a mul map
struct ListGroup {
  std::vector<int> elems;  // ids
  int id;
  std::function<int(int, int)> mul;
};

int list_pow(const ListGroup& G, int x, u64 e) {
  int r = G.id;
  int b = x;
  while (e) {
    if (e & 1) r = G.mul(r, b);
    b = G.mul(b, b);
    e >>= 1;
  }
  return r;
}

void structure_from_list(const ListGroup& G, std::vector<i64>& divisors, std::vector<int>& gen_ids) {
  i64 h = static_cast<i64>(G.elems.size());
  auto fac = arith::factorize(static_cast<u64>(h));
  std::vector<PartitionedSylow> sylows;
  std::vector<std::pair<i64, int>> wanted;  // filled later
  for (auto [pu, v] : fac.pairs) {
    i64 p = static_cast<i64>(pu);
    std::vector<i64> N(static_cast<size_t>(v) + 1);
    for (int j = 0; j <= v; ++j) {
      u64 pj = static_cast<u64>(ipow(p, j));
      i64 cnt = 0;
      for (int x : G.elems)
        if (list_pow(G, x, pj) == G.id) ++cnt;
      N[static_cast<size_t>(j)] = cnt;
    }
    sylows.push_back({p, partition_from_counts(p, v, N)});
  }
  divisors = merge_divisors(sylows);
  auto order_of = [&](int x) {
    int g = x;
    i64 o = 1;
    while (g != G.id) {
      g = G.mul(g, x);
      ++o;
    }
    return o;
  };
  for (i64 d : divisors) {
    // element of exact order d: combine exact p-power orders via products
    int gen = G.id;
    i64 rem = d;
    for (auto [pu, v] : fac.pairs) {
      (void)v;
      i64 p = static_cast<i64>(pu);
      i64 pe = 1;
      while (rem % p == 0) {
        rem /= p;
        pe *= p;
      }
      if (pe == 1) continue;
      i64 cof = h;
      while (cof % p == 0) cof /= p;
      bool found = false;
      for (int x : G.elems) {
        int y = list_pow(G, x, static_cast<u64>(cof));  // y in p-Sylow
        if (order_of(y) == pe) {
          gen = G.mul(gen, y);
          found = true;
          break;
        }
      }
      if (!found) throw std::runtime_error("structure_from_list: missing exact-order element");
    }
    gen_ids.push_back(gen);
  }
  (void)wanted;
}

ClassGroupStructure structure_real(i64 D, bool narrow) {
  RealCycles rc = real_cycles(D);
  int un = unit_norm_cf(D);
  bool quotient = !narrow && un == +1;
  // consistency between the two independently computed signals
  bool neg_trivial = rc.neg_principal == rc.principal;
  if (neg_trivial != (un == -1))
    throw std::runtime_error("structure_real: unit norm vs narrow class of -1 mismatch");

  std::vector<int> elems;
  std::function<int(int, int)> mul;
  std::vector<int> coset_rep;  // for quotient mode: cycle id -> canonical coset id
  if (!quotient) {
    for (int i = 0; i < static_cast<int>(rc.h_plus()); ++i) elems.push_back(i);
    mul = [rcp = std::make_shared<RealCycles>(rc)](int a, int b) { return rcp->mul(a, b); };
  } else {
    int n = static_cast<int>(rc.h_plus());
    coset_rep.assign(static_cast<size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
      int j = rc.mul(i, rc.neg_principal);
      coset_rep[static_cast<size_t>(i)] = std::min(i, j);
    }
    for (int i = 0; i < n; ++i)
      if (coset_rep[static_cast<size_t>(i)] == i) elems.push_back(i);
    auto reps = coset_rep;
    mul = [rcp = std::make_shared<RealCycles>(rc), reps](int a, int b) {
      return reps[static_cast<size_t>(rcp->mul(a, b))];
    };
  }
  ListGroup G{elems, quotient ? coset_rep[static_cast<size_t>(rc.principal)] : rc.principal, mul};
  ClassGroupStructure S;
  S.D = D;
  S.narrow = narrow;
  S.h = static_cast<i64>(elems.size());
  S.unit_norm = un;
  std::vector<int> gen_ids;
  if (S.h > 1) structure_from_list(G, S.divisors, gen_ids);
  for (int g : gen_ids) S.generators.push_back(rc.canon[static_cast<size_t>(g)]);
  return S;
}

}  // namespace

ClassGroupStructure class_group_structure(i64 D, bool narrow) {
  if (!arith::is_fundamental_discriminant(D))
    throw std::invalid_argument("class_group_structure: D not fundamental");
  if (D < 0) {
    ClassGroupStructure S = structure_imag(D);
    S.narrow = narrow;
    return S;
  }
  return structure_real(D, narrow);
}

// ---------- fundamental unit ----------

int unit_norm_cf(i64 D) {
  if (D <= 0) throw std::invalid_argument("unit_norm_cf: needs D > 0");
  i64 sq = arith::isqrt(D);
  if (sq * sq == D) throw std::invalid_argument("square discriminant");
  i64 P = (D % 2 == 0) ? 0 : 1, Q = 2;
  std::map<std::pair<i64, i64>, i64> seen;
  i64 t = 0;
  while (true) {
    auto key = std::make_pair(P, Q);
    auto it = seen.find(key);
    if (it != seen.end()) {
      i64 period = t - it->second;
      return (period % 2 == 1) ? -1 : +1;
    }
    seen[key] = t;
    i64 a = surd_floor(P, Q, D, sq);
    i64 Pn = a * Q - P;
    i64 Qn = static_cast<i64>((static_cast<i128>(D) - static_cast<i128>(Pn) * Pn) / Q);
    P = Pn;
    Q = Qn;
    ++t;
  }
}

FundamentalUnit fundamental_unit(i64 D) {
  if (D <= 0) throw std::invalid_argument("fundamental_unit: imaginary fields have no fundamental unit");
  if (!arith::is_fundamental_discriminant(D))
    throw std::invalid_argument("fundamental_unit: D not fundamental");
  i64 sq = arith::isqrt(D);
  i64 P = (D % 2 == 0) ? 0 : 1, Q = 2;
  std::map<std::pair<i64, i64>, i64> seen;
  std::vector<std::pair<i64, i64>> steps;
  i64 t = 0, start = -1;
  while (true) {
    auto key = std::make_pair(P, Q);
    auto it = seen.find(key);
    if (it != seen.end()) {
      start = it->second;
      break;
    }
    seen[key] = t;
    steps.push_back(key);
    i64 a = surd_floor(P, Q, D, sq);
    i64 Pn = a * Q - P;
    i64 Qn = static_cast<i64>((static_cast<i128>(D) - static_cast<i128>(Pn) * Pn) / Q);
    P = Pn;
    Q = Qn;
    ++t;
  }
  // unit = product of the complete quotients over one period
  mpz_class U = 1, V = 0, W = 1;
  i64 period = t - start;
  for (i64 i = start; i < t; ++i) {
    auto [Pp, Qq] = steps[static_cast<size_t>(i)];
    // (U + V sqrt(D)) * (P + sqrt(D)) = (U P + V D) + (U + V P) sqrt(D)
    mpz_class nU = U * Pp + V * D;
    mpz_class nV = U + V * Pp;
    U = nU;
    V = nV;
    W *= Qq;
  }
  FundamentalUnit fu;
  mpz_class x = 2 * U, y = 2 * V;
  if (x % W != 0 || y % W != 0) throw std::runtime_error("fundamental_unit: non-integral product");
  fu.x = x / W;
  fu.y = y / W;
  if (fu.x < 0) {
    fu.x = -fu.x;
    fu.y = -fu.y;
  }
  fu.norm = (period % 2 == 1) ? -1 : +1;
  mpz_class check = (fu.x * fu.x - D * fu.y * fu.y) / 4;
  if (check != fu.norm) throw std::runtime_error("fundamental_unit: norm check failed");
  return fu;
}

}  // namespace torsionlab::cls
