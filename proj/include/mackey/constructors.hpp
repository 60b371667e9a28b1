#pragma once

#include "mackey/characters.hpp"
#include "mackey/mackey.hpp"
#include "mackey/smith.hpp"

namespace mackey {

namespace detail {

/// Position of the H-class of K <= H among local_class_reps(h).
struct LocalIndex {
  std::vector<std::vector<int>> reps;
  std::vector<std::map<int, int>> position;

  explicit LocalIndex(const SubgroupLattice& l) : reps(l.size()), position(l.size()) {
    for (int h = 0; h < l.size(); ++h) {
      reps[h] = l.local_class_reps(h);
      for (std::size_t i = 0; i < reps[h].size(); ++i) position[h][reps[h][i]] = static_cast<int>(i);
    }
  }
  int of(const SubgroupLattice& l, int h, int k) const { return position[h].at(l.local_rep(h, k)); }
};

}  // namespace detail

/// B(H) is free on the H-conjugacy classes [H/L] of subgroups L <= H, in local_class_reps order.
inline GreenFunctor burnside_green(LatticePtr lattice) {
  const auto& l = *lattice;
  const detail::LocalIndex idx(l);
  std::vector<std::size_t> rank;
  for (int h = 0; h < l.size(); ++h) rank.push_back(idx.reps[h].size());
  GreenFunctor r;
  r.name = "B";
  r.mackey = MackeyFunctor::shaped(lattice, Base::Z, rank);
  auto& m = r.mackey;
  for (int h = 0; h < l.size(); ++h)
    for (int k = 0; k < l.size(); ++k) {
      if (!l.leq(k, h)) continue;
      for (std::size_t i = 0; i < rank[h]; ++i)
        for (const auto& dc : double_cosets(l, h, k, idx.reps[h][i])) m.res[h][k](idx.of(l, k, dc.left_meet), i) += 1;
      for (std::size_t j = 0; j < rank[k]; ++j) m.ind[h][k](idx.of(l, h, idx.reps[k][j]), j) = 1;
    }
  for (int x = 0; x < l.group().order(); ++x)
    for (int h = 0; h < l.size(); ++h) {
      const int xh = l.conjugate(x, h);
      for (std::size_t i = 0; i < rank[h]; ++i) m.conj[x][h](idx.of(l, xh, l.conjugate(x, idx.reps[h][i])), i) = 1;
    }
  r.mult.resize(l.size());
  r.one.resize(l.size());
  for (int h = 0; h < l.size(); ++h) {
    for (std::size_t i = 0; i < rank[h]; ++i) {
      RatMatrix left(rank[h], rank[h]);
      for (std::size_t j = 0; j < rank[h]; ++j)
        for (const auto& dc : double_cosets(l, h, idx.reps[h][i], idx.reps[h][j])) left(idx.of(l, h, dc.left_meet), j) += 1;
      r.mult[h].push_back(std::move(left));
    }
    r.one[h] = RatVector(rank[h]);
    r.one[h][idx.of(l, h, h)] = 1;
  }
  return r;
}

/// Table of marks of H: entry (K, L) = |(H/L)^K| over local class representatives.
inline IntMatrix marks_matrix(const SubgroupLattice& l, int h) {
  const auto reps = l.local_class_reps(h);
  const auto& g = l.group();
  IntMatrix m(reps.size(), reps.size());
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = 0; b < reps.size(); ++b) {
      long count = 0;
      for (int x : l[h].elements)
        if (l.leq(l.conjugate_by_inverse(x, reps[a]), reps[b])) ++count;
      m(a, b) = count / l[reps[b]].order();
    }
  (void)g;
  return m;
}

/// Integral representation of G; permutation representations keep their point action.
struct IntegralRepresentation {
  std::string name;
  std::size_t dim = 0;
  std::vector<IntMatrix> matrices;  // one per group element
  std::vector<std::vector<int>> points;  // points[g][p] when a permutation representation

  bool is_permutation() const { return !points.empty() || dim == 0; }
};

inline IntegralRepresentation permutation_representation(const FiniteGroup& g, std::vector<std::vector<int>> action, std::string name) {
  IntegralRepresentation v;
  v.name = std::move(name);
  v.dim = action.empty() ? 0 : action[0].size();
  for (int x = 0; x < g.order(); ++x) {
    IntMatrix m(v.dim, v.dim);
    for (std::size_t p = 0; p < v.dim; ++p) m(action[x][p], p) = 1;
    v.matrices.push_back(std::move(m));
  }
  v.points = std::move(action);
  return v;
}

inline IntegralRepresentation trivial_representation(const FiniteGroup& g) {
  return permutation_representation(g, std::vector<std::vector<int>>(g.order(), std::vector<int>{0}), "trivial");
}

inline IntegralRepresentation regular_representation(const FiniteGroup& g) {
  std::vector<std::vector<int>> a(g.order(), std::vector<int>(g.order()));
  for (int x = 0; x < g.order(); ++x)
    for (int p = 0; p < g.order(); ++p) a[x][p] = g.mul(x, p);
  return permutation_representation(g, std::move(a), "regular");
}

/// Z[G/K].
inline IntegralRepresentation coset_representation(const SubgroupLattice& l, int k) {
  auto cs = coset_space(l, k);
  return permutation_representation(l.group(), cs.action, "coset" + std::to_string(k));
}

inline IntegralRepresentation zero_representation(const FiniteGroup& g) {
  IntegralRepresentation v;
  v.name = "zero";
  v.matrices.assign(g.order(), IntMatrix(0, 0));
  return v;
}

/// Throws unless the matrices form a homomorphism from G into GL(V).
inline void check_representation(const FiniteGroup& g, const IntegralRepresentation& v) {
  if (static_cast<int>(v.matrices.size()) != g.order()) throw Error("representation: need one matrix per group element");
  for (const auto& m : v.matrices)
    if (m.rows() != v.dim || m.cols() != v.dim) throw Error("representation: matrices must be dim x dim");
  if (v.matrices[0] != IntMatrix::identity(v.dim)) throw Error("representation: identity must act trivially");
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if (v.matrices[a] * v.matrices[b] != v.matrices[g.mul(a, b)]) throw Error("representation: not a homomorphism");
}

namespace detail {

/// Basis (columns) of V^H: orbit sums for permutation representations, else a saturated kernel basis.
inline IntMatrix fixed_basis(const SubgroupLattice& l, const IntegralRepresentation& v, int h) {
  if (!v.points.empty()) {
    std::vector<int> orbit_of(v.dim, -1);
    std::vector<std::vector<int>> orbits;
    for (std::size_t p = 0; p < v.dim; ++p) {
      if (orbit_of[p] >= 0) continue;
      std::vector<int> o;
      for (int x : l[h].elements) {
        int q = v.points[x][p];
        if (orbit_of[q] < 0) {
          orbit_of[q] = static_cast<int>(orbits.size());
          o.push_back(q);
        }
      }
      orbits.push_back(o);
    }
    IntMatrix b(v.dim, orbits.size());
    for (std::size_t o = 0; o < orbits.size(); ++o)
      for (int p : orbits[o]) b(p, o) = 1;
    return b;
  }
  IntMatrix stacked(0, v.dim);
  for (int x : l[h].elements) stacked = vstack(stacked, v.matrices[x] - IntMatrix::identity(v.dim));
  if (stacked.rows() == 0 || v.dim == 0) return IntMatrix::identity(v.dim);
  return lattice_basis(integer_kernel(stacked));
}

}  // namespace detail

/// FP_V: level H is V^H, res is inclusion, ind is the relative trace, conj is the action.
inline MackeyFunctor fixed_point_mackey(LatticePtr lattice, const IntegralRepresentation& v) {
  const auto& l = *lattice;
  const auto& g = l.group();
  check_representation(g, v);
  std::vector<RatMatrix> basis, coords;
  std::vector<std::size_t> rank;
  for (int h = 0; h < l.size(); ++h) {
    basis.push_back(to_rat(detail::fixed_basis(l, v, h)));
    coords.push_back(basis.back().cols() == 0 ? RatMatrix(0, v.dim) : left_inverse(basis.back()));
    rank.push_back(basis.back().cols());
  }
  std::vector<RatMatrix> rho;
  for (const auto& m : v.matrices) rho.push_back(to_rat(m));
  MackeyFunctor m = MackeyFunctor::shaped(lattice, Base::Z, rank);
  for (int h = 0; h < l.size(); ++h)
    for (int k = 0; k < l.size(); ++k) {
      if (!l.leq(k, h)) continue;
      m.res[h][k] = coords[k] * basis[h];
      RatMatrix trace(v.dim, v.dim);
      std::vector<bool> seen(g.order(), false);
      for (int t : l[h].elements) {
        if (seen[t]) continue;
        for (int y : l[k].elements) seen[g.mul(t, y)] = true;
        trace += rho[t];
      }
      m.ind[h][k] = coords[h] * trace * basis[k];
    }
  for (int x = 0; x < g.order(); ++x)
    for (int h = 0; h < l.size(); ++h) m.conj[x][h] = coords[l.conjugate(x, h)] * rho[x] * basis[h];
  return m;
}

/// For a permutation representation Z[X], pointwise multiplication of functions makes FP_V a Green functor.
inline GreenFunctor fixed_point_green(LatticePtr lattice, const IntegralRepresentation& v) {
  if (!v.is_permutation()) throw Error("fixed_point_green: needs a permutation representation");
  GreenFunctor r;
  r.name = "FP(" + v.name + ")";
  r.mackey = fixed_point_mackey(lattice, v);
  r.mult.resize(lattice->size());
  r.one.resize(lattice->size());
  for (int h = 0; h < lattice->size(); ++h) {
    const std::size_t n = r.rank(h);
    for (std::size_t i = 0; i < n; ++i) {
      RatMatrix e(n, n);
      e(i, i) = 1;
      r.mult[h].push_back(e);
    }
    r.one[h] = RatVector(n, Rat(1));
  }
  return r;
}

/// Irreducible characters of every subgroup, in the field of the ambient exponent.
struct SubgroupCharacters {
  std::vector<LocalGroup> locals;
  std::vector<CharacterTable> tables;
};

inline SubgroupCharacters subgroup_characters(const SubgroupLattice& l) {
  SubgroupCharacters sc;
  const int conductor = l.group().exponent();
  for (int h = 0; h < l.size(); ++h) {
    sc.locals.push_back(local_group(l, h));
    sc.tables.push_back(character_table(sc.locals.back().group, conductor));
  }
  return sc;
}

/// Rep(H) is free on the irreducible characters of H; structure maps by character calculus.
inline GreenFunctor rep_green(LatticePtr lattice) {
  const auto& l = *lattice;
  const auto& g = l.group();
  const auto sc = subgroup_characters(l);
  std::vector<std::size_t> rank;
  for (const auto& t : sc.tables) rank.push_back(t.size());
  GreenFunctor r;
  r.name = "Rep";
  r.mackey = MackeyFunctor::shaped(lattice, Base::Z, rank);
  auto& m = r.mackey;
  auto column = [](RatMatrix& target, std::size_t j, const std::vector<Int>& mult) {
    for (std::size_t i = 0; i < mult.size(); ++i) target(i, j) = Rat(mult[i]);
  };
  for (int h = 0; h < l.size(); ++h)
    for (int k = 0; k < l.size(); ++k) {
      if (!l.leq(k, h)) continue;
      std::vector<int> emb;
      for (int y : sc.locals[k].to_global) emb.push_back(sc.locals[h].to_local[y]);
      for (std::size_t j = 0; j < rank[h]; ++j)
        column(m.res[h][k], j, sc.tables[k].decompose(restrict_to(sc.tables[h], sc.tables[k], emb, sc.tables[h].irreducibles[j])));
      for (std::size_t j = 0; j < rank[k]; ++j)
        column(m.ind[h][k], j, sc.tables[h].decompose(induce(sc.tables[h], sc.tables[k], emb, sc.tables[k].irreducibles[j])));
    }
  for (int x = 0; x < g.order(); ++x)
    for (int h = 0; h < l.size(); ++h) {
      const int xh = l.conjugate(x, h);
      const auto& th = sc.tables[h];
      const auto& txh = sc.tables[xh];
      for (std::size_t j = 0; j < rank[h]; ++j) {
        // (c_x chi)(y) = chi(x^{-1} y x)
        ClassFunction f;
        for (int c = 0; c < txh.classes.count(); ++c) {
          const int y = sc.locals[xh].to_global[txh.classes.reps[c]];
          const int back = sc.locals[h].to_local[g.mul(g.mul(g.inv(x), y), x)];
          f.values.push_back(th.irreducibles[j].values[th.classes.class_of[back]]);
        }
        column(m.conj[x][h], j, txh.decompose(f));
      }
    }
  r.mult.resize(l.size());
  r.one.resize(l.size());
  for (int h = 0; h < l.size(); ++h) {
    const auto& t = sc.tables[h];
    for (std::size_t i = 0; i < rank[h]; ++i) {
      RatMatrix left(rank[h], rank[h]);
      for (std::size_t j = 0; j < rank[h]; ++j) column(left, j, t.decompose(pointwise_product(t.irreducibles[i], t.irreducibles[j])));
      r.mult[h].push_back(std::move(left));
    }
    r.one[h] = RatVector(rank[h]);
    r.one[h][0] = 1;
  }
  return r;
}

/// [H/L] . m = ind^H_L res^H_L m; b must be the Burnside functor of the same lattice (over the same base).
inline MackeyModule canonical_burnside_action(const MackeyFunctor& m, GreenPtr b, std::string name = "M") {
  const auto& l = m.lat();
  MackeyModule out;
  out.ring = std::move(b);
  out.mackey = m;
  out.name = std::move(name);
  out.act.resize(l.size());
  for (int h = 0; h < l.size(); ++h)
    for (int rep : l.local_class_reps(h)) out.act[h].push_back(m.ind[h][rep] * m.res[h][rep]);
  if (out.ring->rank(0) != 1 || static_cast<int>(out.ring->mult.size()) != l.size())
    throw Error("canonical_burnside_action: ring does not look like a Burnside functor of this lattice");
  return out;
}

}  // namespace mackey
