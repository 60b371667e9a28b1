#pragma once

// Independent test-only oracles and generators. Nothing here is used by the library.

#include "mackey/characters.hpp"
#include "mackey/lattice.hpp"
#include "mackey/skew.hpp"
#include "mackey/smith.hpp"

#include <random>
#include <set>

namespace oracle {

using namespace mackey;

inline const std::vector<std::string>& catalog() {
  static const std::vector<std::string> names{"C1", "C2", "C3", "C4", "C6", "S3", "D4", "Q8", "A4"};
  return names;
}

/// Every subset of G of size dividing |G| that is closed under multiplication.
inline std::set<std::vector<int>> subgroups_by_subsets(const FiniteGroup& g) {
  const int n = g.order();
  std::set<std::vector<int>> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (!(mask & 1u)) continue;
    const int size = __builtin_popcount(mask);
    if (n % size != 0) continue;
    bool closed = true;
    for (int a = 0; a < n && closed; ++a)
      if (mask >> a & 1u)
        for (int b = 0; b < n && closed; ++b)
          if ((mask >> b & 1u) && !(mask >> g.mul(a, b) & 1u)) closed = false;
    if (!closed) continue;
    std::vector<int> e;
    for (int a = 0; a < n; ++a)
      if (mask >> a & 1u) e.push_back(a);
    out.insert(e);
  }
  return out;
}

/// Tables equal up to relabeling, by exhaustive search over bijections fixing the identity.
inline bool isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return false;
  const int n = a.order();
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  do {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      for (int y = 0; y < n && ok; ++y)
        if (perm[a.mul(x, y)] != b.mul(perm[x], perm[y])) ok = false;
    if (ok) return true;
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return false;
}

/// Number of K x L orbits on G acting by (k, l) . x = k x l^{-1}.
inline int double_coset_count(const FiniteGroup& g, const std::vector<int>& k, const std::vector<int>& l) {
  std::vector<bool> seen(g.order(), false);
  int count = 0;
  for (int x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    ++count;
    for (int a : k)
      for (int b : l) seen[g.mul(g.mul(a, x), g.inv(b))] = true;
  }
  return count;
}

inline Rat random_rat(std::mt19937& rng, int bound = 5, int den_bound = 3) {
  std::uniform_int_distribution<int> num(-bound, bound), den(1, den_bound);
  return make_rat(num(rng), den(rng));
}

inline IntMatrix random_int_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int bound = 6) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

/// Random invertible rational matrix as a product of elementary operations.
inline RatMatrix random_invertible(std::mt19937& rng, std::size_t n) {
  RatMatrix m = RatMatrix::identity(n);
  if (n < 2) {
    if (n == 1) m(0, 0) = Rat(std::uniform_int_distribution<int>(1, 3)(rng));
    return m;
  }
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (int step = 0; step < 3 * static_cast<int>(n); ++step) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    RatMatrix e = RatMatrix::identity(n);
    e(i, j) = random_rat(rng, 2, 2);
    m = e * m;
  }
  return m;
}

/// Determinant by cofactor expansion over the integers.
inline Int cofactor_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Int d = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = m(r, c);
      }
    Int term = m(0, j) * cofactor_det(minor);
    d += (j % 2 == 0) ? term : Int(-term);
  }
  return d;
}

/// Homomorphisms G -> mu_e (as exponents of zeta_e) by trying every assignment on a greedy generating set.
inline std::vector<std::vector<int>> linear_characters(const FiniteGroup& g) {
  const int e = g.exponent();
  std::vector<int> gens;
  std::vector<int> span{0};
  for (int x = 0; x < g.order(); ++x)
    if (std::find(span.begin(), span.end(), x) == span.end()) {
      gens.push_back(x);
      span = generated_subgroup(g, gens);
    }
  std::vector<std::vector<int>> out;
  std::vector<int> choice(gens.size(), 0);
  for (;;) {
    std::vector<int> value(g.order(), -1);
    value[0] = 0;
    std::vector<int> queue{0};
    bool ok = true;
    for (std::size_t head = 0; head < queue.size() && ok; ++head)
      for (std::size_t i = 0; i < gens.size() && ok; ++i) {
        const int y = g.mul(queue[head], gens[i]);
        const int v = (value[queue[head]] + choice[i]) % e;
        if (value[y] < 0) {
          value[y] = v;
          queue.push_back(y);
        } else if (value[y] != v) {
          ok = false;
        }
      }
    if (ok) out.push_back(value);
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == e) choice[i++] = 0;
    if (i == choice.size()) break;
  }
  return out;
}

/// Irreducible characters without Dixon: induce linear characters of cyclic subgroups,
/// strip known irreducibles by inner products, keep what has norm 1. Complete once
/// the squared degrees sum to |G|.
inline std::vector<ClassFunction> irreducibles_by_induction(const FiniteGroup& g) {
  const auto cc = conjugacy_classes(g);
  const int n = g.exponent();
  auto ip = [&](const ClassFunction& a, const ClassFunction& b) {
    Cyclotomic s(n);
    for (int k = 0; k < cc.count(); ++k) s += a.values[k] * b.values[k].conj() * Rat(cc.sizes[k]);
    return s * Rat(1, g.order());
  };
  std::vector<ClassFunction> found;
  for (const auto& lin : linear_characters(g)) {
    ClassFunction f;
    for (int k = 0; k < cc.count(); ++k) f.values.push_back(Cyclotomic::root_power(n, lin[cc.reps[k]]));
    found.push_back(f);
  }
  auto degree_square_sum = [&] {
    Rat s = 0;
    for (const auto& f : found) s += f.values[0].rational_part() * f.values[0].rational_part();
    return s;
  };
  std::vector<ClassFunction> pending;
  for (int x = 0; x < g.order(); ++x) {
    const int o = g.element_order(x);
    for (int j = 0; j < o; ++j) {
      // linear character of <x> sending x to zeta_o^j, induced to G
      ClassFunction f;
      for (int k = 0; k < cc.count(); ++k) {
        const int y = cc.reps[k];
        Cyclotomic s(n);
        for (int t = 0; t < g.order(); ++t) {
          const int c = g.mul(g.mul(g.inv(t), y), t);
          for (int e = 0; e < o; ++e)
            if (g.power(x, e) == c) s += Cyclotomic::root_power(n, static_cast<long long>(n / o) * j * e);
        }
        f.values.push_back(s * Rat(1, o));
      }
      pending.push_back(f);
    }
  }
  std::set<std::pair<std::size_t, std::size_t>> used_pairs;
  bool progress = true;
  while (progress && degree_square_sum() != g.order()) {
    progress = false;
    for (auto& f : pending) {
      for (const auto& chi : found) {
        Cyclotomic m = ip(f, chi);
        for (int k = 0; k < cc.count(); ++k) f.values[k] -= chi.values[k] * m.rational_part();
      }
      bool zero = true;
      for (const auto& v : f.values) zero = zero && v.is_zero();
      if (zero) continue;
      if (ip(f, f) == Cyclotomic::rational(n, 1) && f.values[0].rational_part() > 0) {
        found.push_back(f);
        progress = true;
      }
    }
    // products with known irreducibles yield new constituents
    if (!progress)
      for (std::size_t a = 0; a < found.size(); ++a)
        for (std::size_t b = a; b < found.size(); ++b)
          if (used_pairs.insert({a, b}).second) {
            pending.push_back(pointwise_product(found[a], found[b]));
            progress = true;
          }
  }
  return found;
}

/// Conjugacy classes of cyclic subgroups, from the subsets that are subgroups generated by one element.
inline int cyclic_class_count_by_subsets(const FiniteGroup& g) {
  std::set<std::set<std::vector<int>>> classes;
  for (const auto& h : subgroups_by_subsets(g)) {
    bool cyclic = false;
    for (int x : h) cyclic = cyclic || g.element_order(x) == static_cast<int>(h.size());
    if (!cyclic) continue;
    std::set<std::vector<int>> orbit;
    for (int a = 0; a < g.order(); ++a) {
      std::vector<int> c;
      for (int x : h) c.push_back(g.conjugate(a, x));
      std::sort(c.begin(), c.end());
      orbit.insert(c);
    }
    classes.insert(orbit);
  }
  return static_cast<int>(classes.size());
}

/// Classes of elements under x ~ y iff y is conjugate to a generator of <x>.
inline int generation_class_count(const FiniteGroup& g) {
  const int n = g.order();
  std::vector<int> label(n, -1);
  int count = 0;
  for (int x = 0; x < n; ++x) {
    if (label[x] >= 0) continue;
    const int o = g.element_order(x);
    for (int k = 1; k <= o; ++k) {
      if (std::gcd(k, o) != 1) continue;
      const int y = g.power(x, k);
      for (int a = 0; a < n; ++a) label[g.conjugate(a, y)] = count;
    }
    ++count;
  }
  return count;
}

/// Basis of Hom(a, b) over the skew group ring, as b.dim x a.dim matrices.
inline std::vector<RatMatrix> skew_hom_space(const SkewGroupRing& r, const SkewModule& a, const SkewModule& b) {
  const std::size_t p = b.dim, q = a.dim;
  std::vector<const RatMatrix*> as, bs;
  for (std::size_t i = 0; i < r.base.dim; ++i) {
    as.push_back(&a.s_action[i]);
    bs.push_back(&b.s_action[i]);
  }
  for (int w = 0; w < r.weyl.order(); ++w) {
    as.push_back(&a.phi[w]);
    bs.push_back(&b.phi[w]);
  }
  // f A - B f = 0 with f_{ij} at index i q + j
  RatMatrix eqs(as.size() * p * q, p * q);
  for (std::size_t t = 0; t < as.size(); ++t)
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < q; ++j) {
        const std::size_t row = (t * p + i) * q + j;
        for (std::size_t k = 0; k < q; ++k) eqs(row, i * q + k) += (*as[t])(k, j);
        for (std::size_t k = 0; k < p; ++k) eqs(row, k * q + j) -= (*bs[t])(i, k);
      }
  const RatMatrix ker = kernel(eqs);
  std::vector<RatMatrix> out;
  for (std::size_t c = 0; c < ker.cols(); ++c) {
    RatMatrix f(p, q);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < q; ++j) f(i, j) = ker(i * q + j, c);
    out.push_back(std::move(f));
  }
  return out;
}

/// Searches Hom(a, b) for an invertible intertwiner among random integer combinations of a basis.
/// A singular combination is a root of det, a nonzero polynomial of degree dim when a and b are
/// isomorphic, so each try fails with probability at most dim / 81.
inline std::optional<RatMatrix> find_intertwiner(const SkewGroupRing& r, const SkewModule& a, const SkewModule& b, unsigned seed = 7,
                                                 int tries = 64) {
  if (a.dim != b.dim) return std::nullopt;
  if (a.dim == 0) return RatMatrix(0, 0);
  const auto basis = skew_hom_space(r, a, b);
  if (basis.empty()) return std::nullopt;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coeff(-40, 40);
  for (int t = 0; t < tries; ++t) {
    RatMatrix f(b.dim, a.dim);
    for (const auto& m : basis) f += m * Rat(coeff(rng));
    if (determinant(f) != 0) {
      if (!is_skew_morphism(r, a, b, f)) throw Error("find_intertwiner: kernel element is not a morphism");
      return f;
    }
  }
  return std::nullopt;
}

/// Over a semisimple algebra, dim Hom(a,a) = dim Hom(a,b) = dim Hom(b,b) forces a = b (sum of d_i (a_i - b_i)^2).
inline bool hom_dimension_test(const SkewGroupRing& r, const SkewModule& a, const SkewModule& b) {
  const auto ab = skew_hom_space(r, a, b).size();
  return skew_hom_space(r, a, a).size() == ab && skew_hom_space(r, b, b).size() == ab;
}

/// Modules of dimension at most max_dim: permutation modules S (x) Q[W/U], their twists by
/// sign characters of W, and direct sums of these, each in a random basis.
inline std::vector<SkewModule> skew_corpus(const SkewGroupRing& r, std::size_t max_dim, std::mt19937& rng, std::size_t cap = 24) {
  const std::size_t d = r.base.dim;
  const auto lat = make_lattice(r.weyl);
  std::vector<std::vector<int>> signs;
  for (const auto& chi : linear_characters(r.weyl)) {
    const int e = r.weyl.exponent();
    bool rational = true;
    for (int v : chi) rational = rational && (2 * v) % e == 0;
    if (rational) signs.push_back(chi);
  }
  std::vector<SkewModule> simple;
  for (int u : lat->class_reps()) {
    const auto x = coset_space(*lat, u);
    if (d * static_cast<std::size_t>(x.size()) > max_dim) continue;
    const auto id = RatMatrix::identity(static_cast<std::size_t>(x.size()));
    for (const auto& chi : signs) {
      SkewModule v;
      v.dim = d * x.size();
      for (std::size_t i = 0; i < d; ++i) v.s_action.push_back(kronecker(id, r.base.left[i]));
      for (int w = 0; w < r.weyl.order(); ++w) {
        RatMatrix perm(x.size(), x.size());
        for (int p = 0; p < x.size(); ++p) perm(x.action[w][p], p) = chi[w] == 0 ? 1 : -1;
        v.phi.push_back(kronecker(perm, r.alpha[w]));
      }
      simple.push_back(std::move(v));
    }
  }
  std::vector<SkewModule> all{zero_skew_module(r)};
  for (std::size_t i = 0; i < simple.size(); ++i) {
    all.push_back(simple[i]);
    for (std::size_t j = i; j < simple.size(); ++j) {
      if (simple[i].dim + simple[j].dim > max_dim) continue;
      all.push_back(direct_sum(simple[i], simple[j]));
      for (std::size_t k = j; k < simple.size(); ++k)
        if (simple[i].dim + simple[j].dim + simple[k].dim <= max_dim) all.push_back(direct_sum(direct_sum(simple[i], simple[j]), simple[k]));
    }
  }
  std::shuffle(all.begin() + 1, all.end(), rng);
  if (all.size() > cap) all.resize(cap);
  for (auto& v : all)
    if (v.dim > 0) v = change_basis(v, random_invertible(rng, v.dim));
  return all;
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
inline std::size_t integer_rank(IntMatrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  Int prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    for (std::size_t k = 0; k < cols; ++k) std::swap(m(r, k), m(p, k));
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t k = c + 1; k < cols; ++k) m(i, k) = (m(r, c) * m(i, k) - m(i, c) * m(r, k)) / prev;
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

}  // namespace oracle
