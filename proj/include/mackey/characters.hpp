#pragma once

#include "mackey/cyclotomic.hpp"
#include "mackey/group.hpp"

namespace mackey {

struct ConjugacyClasses {
  std::vector<std::vector<int>> classes;  // sorted, class 0 is {e}
  std::vector<int> class_of;              // element -> class
  std::vector<int> reps;                  // smallest element of each class
  std::vector<int> sizes;

  int count() const { return static_cast<int>(classes.size()); }
};

inline ConjugacyClasses conjugacy_classes(const FiniteGroup& g) {
  ConjugacyClasses c;
  c.class_of.assign(g.order(), -1);
  for (int x = 0; x < g.order(); ++x) {
    if (c.class_of[x] >= 0) continue;
    const int id = c.count();
    std::vector<int> cls;
    for (int y = 0; y < g.order(); ++y) {
      int z = g.conjugate(y, x);
      if (c.class_of[z] < 0) {
        c.class_of[z] = id;
        cls.push_back(z);
      }
    }
    std::sort(cls.begin(), cls.end());
    c.reps.push_back(cls.front());
    c.sizes.push_back(static_cast<int>(cls.size()));
    c.classes.push_back(std::move(cls));
  }
  return c;
}

/// A class function: one value per conjugacy class, all in a common cyclotomic field.
struct ClassFunction {
  std::vector<Cyclotomic> values;

  friend bool operator==(const ClassFunction& a, const ClassFunction& b) { return a.values == b.values; }
};

inline ClassFunction pointwise_product(const ClassFunction& a, const ClassFunction& b) {
  ClassFunction c;
  for (std::size_t i = 0; i < a.values.size(); ++i) c.values.push_back(a.values[i] * b.values[i]);
  return c;
}

struct CharacterTable {
  FiniteGroup group;
  ConjugacyClasses classes;
  int conductor = 1;                        // field of the stored values
  std::vector<ClassFunction> irreducibles;  // irreducibles[0] is the trivial character

  int size() const { return static_cast<int>(irreducibles.size()); }

  const Cyclotomic& value(int chi, int element) const { return irreducibles[chi].values[classes.class_of[element]]; }

  std::vector<int> degrees() const {
    std::vector<int> d;
    for (const auto& chi : irreducibles) d.push_back(static_cast<int>(chi.values[0].rational_part().get_num().get_si()));
    return d;
  }

  /// (1/|G|) sum_g f(g) conj(h(g))
  Cyclotomic inner_product(const ClassFunction& f, const ClassFunction& h) const {
    Cyclotomic s(conductor);
    for (int k = 0; k < classes.count(); ++k) s += f.values[k] * h.values[k].conj() * Rat(classes.sizes[k]);
    return s * Rat(1, group.order());
  }

  /// Multiplicities of the irreducibles in a virtual character; throws if f is not one.
  std::vector<Int> decompose(const ClassFunction& f) const {
    std::vector<Int> m;
    for (const auto& chi : irreducibles) {
      Cyclotomic ip = inner_product(f, chi);
      if (!ip.is_rational() || !is_integral(ip.rational_part()))
        throw Error("decompose: inner product " + ip.str() + " is not an integer; not a virtual character");
      m.push_back(ip.rational_part().get_num());
    }
    return m;
  }

  ClassFunction compose(const std::vector<Int>& multiplicities) const {
    ClassFunction f{std::vector<Cyclotomic>(classes.count(), Cyclotomic(conductor))};
    for (int i = 0; i < size(); ++i)
      if (multiplicities[i] != 0)
        for (int k = 0; k < classes.count(); ++k) f.values[k] += irreducibles[i].values[k] * Rat(multiplicities[i]);
    return f;
  }
};

namespace detail {

using ModVec = std::vector<long long>;

/// Basis (columns, as vectors) of the kernel of an r x s matrix mod p.
inline std::vector<ModVec> mod_kernel(std::vector<ModVec> m, std::size_t cols, long long p) {
  const std::size_t rows = m.size();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < rows; ++c) {
    std::size_t r = row;
    while (r < rows && m[r][c] == 0) ++r;
    if (r == rows) continue;
    std::swap(m[r], m[row]);
    long long inv = inv_mod(m[row][c], p);
    for (auto& x : m[row]) x = x * inv % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || m[i][c] == 0) continue;
      long long f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = mod_pos(m[i][j] - f * m[row][j], p);
    }
    pivots.push_back(c);
    ++row;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<ModVec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    ModVec v(cols, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = mod_pos(-m[r][f], p);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline long long primitive_root(long long p) {
  std::vector<long long> qs;
  long long n = p - 1;
  for (long long q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      qs.push_back(q);
      while (n % q == 0) n /= q;
    }
  if (n > 1) qs.push_back(n);
  for (long long r = 2; r < p; ++r) {
    bool ok = true;
    for (auto q : qs)
      if (pow_mod(r, (p - 1) / q, p) == 1) ok = false;
    if (ok) return r;
  }
  throw Error("primitive_root: none found");
}

}  // namespace detail

/// Irreducible complex characters by the Burnside-Dixon method.
///
/// Central characters are common eigenvectors of the class multiplication matrices
/// over F_p with p = 1 (mod exp G); exact values are recovered from the eigenvalue
/// multiplicities of each element, computed mod p and lifted to nonnegative integers.
/// Values live in Q(zeta_N) where N = conductor (default: the exponent of G).
inline CharacterTable character_table(const FiniteGroup& g, int conductor = 0) {
  const int exp = g.exponent();
  if (conductor == 0) conductor = exp;
  if (conductor % exp != 0) throw Error("character_table: conductor must be a multiple of the exponent");
  CharacterTable t;
  t.group = g;
  t.classes = conjugacy_classes(g);
  t.conductor = conductor;
  const auto& cc = t.classes;
  const int r = cc.count();
  const long long order = g.order();

  long long p = 2 * order + 1;
  while (!((p - 1) % exp == 0 && is_prime(p))) ++p;
  const long long z_e = pow_mod(detail::primitive_root(p), (p - 1) / exp, p);

  // c[i][j][k] = #{x in C_i : x^{-1} z_k in C_j}
  std::vector<std::vector<std::vector<long long>>> c(r, std::vector<std::vector<long long>>(r, std::vector<long long>(r, 0)));
  for (int k = 0; k < r; ++k)
    for (int x = 0; x < g.order(); ++x) {
      int y = g.mul(g.inv(x), cc.reps[k]);
      ++c[cc.class_of[x]][cc.class_of[y]][k];
    }

  std::vector<std::vector<detail::ModVec>> spaces;  // each a list of basis vectors
  {
    std::vector<detail::ModVec> full;
    for (int i = 0; i < r; ++i) {
      detail::ModVec v(r, 0);
      v[i] = 1;
      full.push_back(v);
    }
    spaces.push_back(full);
  }
  for (int i = 1; i < r; ++i) {
    std::vector<std::vector<detail::ModVec>> next;
    for (auto& space : spaces) {
      if (space.size() == 1) {
        next.push_back(space);
        continue;
      }
      std::size_t covered = 0;
      for (long long lambda = 0; lambda < p && covered < space.size(); ++lambda) {
        // (A_i - lambda) B y = 0 where (A_i)_{jk} = c[i][j][k]
        std::vector<detail::ModVec> m(r, detail::ModVec(space.size(), 0));
        for (int j = 0; j < r; ++j)
          for (std::size_t s = 0; s < space.size(); ++s) {
            long long acc = 0;
            for (int k = 0; k < r; ++k) acc += c[i][j][k] % p * space[s][k];
            acc -= lambda * space[s][j];
            m[j][s] = mod_pos(acc, p);
          }
        auto ker = detail::mod_kernel(m, space.size(), p);
        if (ker.empty()) continue;
        std::vector<detail::ModVec> sub;
        for (const auto& y : ker) {
          detail::ModVec v(r, 0);
          for (std::size_t s = 0; s < space.size(); ++s)
            for (int k = 0; k < r; ++k) v[k] = (v[k] + y[s] * space[s][k]) % p;
          sub.push_back(v);
        }
        covered += sub.size();
        next.push_back(std::move(sub));
      }
      if (covered != space.size()) throw Error("character_table: class matrices not diagonalizable mod p");
    }
    spaces = std::move(next);
  }
  if (static_cast<int>(spaces.size()) != r) throw Error("character_table: failed to separate central characters");

  // power map: class of x^j for class reps
  std::vector<ClassFunction> chars;
  for (auto& space : spaces) {
    detail::ModVec v = space[0];
    if (v[0] == 0) throw Error("character_table: eigenvector vanishes at the identity");
    const long long norm = inv_mod(v[0], p);
    for (auto& x : v) x = x * norm % p;
    long long s = 0;
    for (int k = 0; k < r; ++k) {
      int kinv = cc.class_of[g.inv(cc.reps[k])];
      s = (s + v[k] * v[kinv] % p * inv_mod(cc.sizes[k], p)) % p;
    }
    const long long target = order % p * inv_mod(s, p) % p;
    long long degree = 0;
    for (long long d = 1; d * d <= order; ++d)
      if (d * d % p == target) degree = d;
    if (degree == 0) throw Error("character_table: no degree matches");
    std::vector<long long> modval(r);
    for (int k = 0; k < r; ++k) modval[k] = degree * v[k] % p * inv_mod(cc.sizes[k], p) % p;

    ClassFunction chi;
    for (int k = 0; k < r; ++k) {
      const int x = cc.reps[k];
      const int o = g.element_order(x);
      const long long z = pow_mod(z_e, exp / o, p);
      std::vector<Rat> poly(conductor);
      for (int i = 0; i < o; ++i) {
        long long acc = 0;
        for (int j = 0; j < o; ++j) {
          long long val = modval[cc.class_of[g.power(x, j)]];
          acc = (acc + val * pow_mod(z, mod_pos(-static_cast<long long>(i) * j, o), p)) % p;
        }
        long long mult = acc * inv_mod(o, p) % p;
        if (mult > degree) throw Error("character_table: eigenvalue multiplicity out of range");
        poly[static_cast<std::size_t>(conductor / o) * i] += static_cast<long>(mult);
      }
      chi.values.push_back(Cyclotomic::reduce(conductor, std::move(poly)));
    }
    chars.push_back(std::move(chi));
  }

  auto is_trivial = [&](const ClassFunction& f) {
    for (const auto& v : f.values)
      if (v != Cyclotomic::rational(conductor, 1)) return false;
    return true;
  };
  auto key_less = [&](const ClassFunction& a, const ClassFunction& b) {
    if (is_trivial(a) != is_trivial(b)) return is_trivial(a);
    const Rat& da = a.values[0].rational_part();
    const Rat& db = b.values[0].rational_part();
    if (da != db) return da < db;
    for (std::size_t k = 0; k < a.values.size(); ++k)
      for (std::size_t i = 0; i < a.values[k].coords().size(); ++i) {
        const Rat& x = a.values[k].coords()[i];
        const Rat& y = b.values[k].coords()[i];
        if (x != y) return x < y;
      }
    return false;
  };
  std::sort(chars.begin(), chars.end(), key_less);
  t.irreducibles = std::move(chars);

  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Cyclotomic ip = t.inner_product(t.irreducibles[i], t.irreducibles[j]);
      if (ip != Cyclotomic::rational(conductor, i == j ? 1 : 0)) throw Error("character_table: orthogonality check failed");
    }
  return t;
}

/// Induction from a subgroup, given by the subgroup's table and its embedding into the ambient group's elements.
/// The result uses the ambient table's classes and conductor.
inline ClassFunction induce(const CharacterTable& ambient, const CharacterTable& sub, const std::vector<int>& sub_to_ambient,
                            const ClassFunction& f) {
  const auto& g = ambient.group;
  std::vector<int> to_local(g.order(), -1);
  for (std::size_t i = 0; i < sub_to_ambient.size(); ++i) to_local[sub_to_ambient[i]] = static_cast<int>(i);
  ClassFunction out;
  for (int k = 0; k < ambient.classes.count(); ++k) {
    const int x = ambient.classes.reps[k];
    Cyclotomic s(ambient.conductor);
    for (int y = 0; y < g.order(); ++y) {
      int local = to_local[g.mul(g.mul(g.inv(y), x), y)];
      if (local >= 0) s += f.values[sub.classes.class_of[local]].embed(ambient.conductor);
    }
    out.values.push_back(s * Rat(1, sub.group.order()));
  }
  return out;
}

/// Restriction to a subgroup; the result uses the subgroup table's classes and conductor.
inline ClassFunction restrict_to(const CharacterTable& ambient, const CharacterTable& sub, const std::vector<int>& sub_to_ambient,
                                 const ClassFunction& f) {
  ClassFunction out;
  for (int k = 0; k < sub.classes.count(); ++k) {
    const Cyclotomic& v = f.values[ambient.classes.class_of[sub_to_ambient[sub.classes.reps[k]]]];
    if (sub.conductor % v.conductor() != 0) throw Error("restrict_to: subgroup table must use a multiple of the ambient conductor");
    out.values.push_back(v.embed(sub.conductor));
  }
  return out;
}

}  // namespace mackey
