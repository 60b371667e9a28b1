#pragma once

#include "mackey/algebra.hpp"
#include "mackey/lattice.hpp"

namespace mackey {

enum class Base { Z, Q };

inline std::string base_name(Base b) { return b == Base::Z ? "Z" : "Q"; }

/// Mackey functor in the subgroups picture.
///
/// res[h][k] : M(h) -> M(k) and ind[h][k] : M(k) -> M(h) are set for k <= h (empty matrices otherwise);
/// conj[g][h] : M(h) -> M(g h g^{-1}) for every group element g.
struct MackeyFunctor {
  LatticePtr lattice;
  Base base = Base::Z;
  std::vector<std::size_t> rank;
  std::vector<std::vector<RatMatrix>> res;
  std::vector<std::vector<RatMatrix>> ind;
  std::vector<std::vector<RatMatrix>> conj;

  const SubgroupLattice& lat() const { return *lattice; }
  const FiniteGroup& group() const { return lattice->group(); }
  int levels() const { return lattice->size(); }

  /// Zero-initialized structure maps of the right shapes for the given ranks.
  static MackeyFunctor shaped(LatticePtr lattice, Base base, std::vector<std::size_t> rank) {
    MackeyFunctor m;
    m.lattice = std::move(lattice);
    m.base = base;
    m.rank = std::move(rank);
    const auto& l = *m.lattice;
    const int n = l.size();
    m.res.assign(n, std::vector<RatMatrix>(n));
    m.ind.assign(n, std::vector<RatMatrix>(n));
    for (int h = 0; h < n; ++h)
      for (int k = 0; k < n; ++k)
        if (l.leq(k, h)) {
          m.res[h][k] = RatMatrix(m.rank[k], m.rank[h]);
          m.ind[h][k] = RatMatrix(m.rank[h], m.rank[k]);
        }
    m.conj.assign(l.group().order(), std::vector<RatMatrix>(n));
    for (int g = 0; g < l.group().order(); ++g)
      for (int h = 0; h < n; ++h) m.conj[g][h] = RatMatrix(m.rank[l.conjugate(g, h)], m.rank[h]);
    return m;
  }
};

/// Green functor: a Mackey functor with levelwise rings; mult[h][i] is left multiplication by basis element i.
struct GreenFunctor {
  MackeyFunctor mackey;
  std::vector<std::vector<RatMatrix>> mult;
  std::vector<RatVector> one;
  std::string name;

  const SubgroupLattice& lat() const { return mackey.lat(); }
  std::size_t rank(int h) const { return mackey.rank[h]; }

  RatMatrix left_multiplication(int h, const RatVector& r) const {
    RatMatrix m(rank(h), rank(h));
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i] != 0) m += mult[h][i] * r[i];
    return m;
  }
  RatMatrix right_multiplication(int h, const RatVector& r) const {
    RatMatrix m(rank(h), rank(h));
    for (std::size_t j = 0; j < rank(h); ++j) {
      auto col = mult[h][j].apply(r);
      for (std::size_t i = 0; i < rank(h); ++i) m(i, j) = col[i];
    }
    return m;
  }
  RatVector multiply(int h, const RatVector& a, const RatVector& b) const { return left_multiplication(h, a).apply(b); }

  FiniteDimAlgebra algebra(int h) const { return FiniteDimAlgebra{rank(h), mult[h], one[h]}; }

  bool is_commutative() const {
    for (int h = 0; h < lat().size(); ++h)
      if (!algebra(h).is_commutative()) return false;
    return true;
  }
};

using GreenPtr = std::shared_ptr<const GreenFunctor>;

/// Mackey module over a Green functor; act[h][i] is the action of basis element i of R(h).
struct MackeyModule {
  GreenPtr ring;
  MackeyFunctor mackey;
  std::vector<std::vector<RatMatrix>> act;
  std::string name;

  const SubgroupLattice& lat() const { return mackey.lat(); }
  std::size_t rank(int h) const { return mackey.rank[h]; }

  RatMatrix action(int h, const RatVector& r) const {
    RatMatrix m(rank(h), rank(h));
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i] != 0) m += act[h][i] * r[i];
    return m;
  }
};

using ModulePtr = std::shared_ptr<const MackeyModule>;

/// Levelwise components f[h] : M(h) -> N(h).
struct MackeyMorphism {
  std::vector<RatMatrix> components;
};

struct Violation {
  std::string axiom;
  int h = -1, k = -1, g = -1;
  std::string detail;

  std::string str() const {
    std::string s = axiom + " (H=" + std::to_string(h) + ", K=" + std::to_string(k) + ", g=" + std::to_string(g) + ")";
    if (!detail.empty()) s += ": " + detail;
    return s;
  }
};

/// Structural errors are shape problems found before axioms are checked; an empty report means valid.
struct ValidationReport {
  std::vector<std::string> structural;
  std::vector<Violation> violations;
  std::size_t total_violations = 0;

  static constexpr std::size_t kKeep = 64;

  bool ok() const { return structural.empty() && total_violations == 0; }
  void add(Violation v) {
    ++total_violations;
    if (violations.size() < kKeep) violations.push_back(std::move(v));
  }
  void merge(const ValidationReport& o, const std::string& prefix) {
    for (const auto& s : o.structural) structural.push_back(prefix + s);
    for (auto v : o.violations) {
      v.axiom = prefix + v.axiom;
      if (violations.size() < kKeep) violations.push_back(std::move(v));
    }
    total_violations += o.total_violations;
  }
  std::string summary() const {
    if (ok()) return "valid";
    std::string s;
    for (const auto& e : structural) s += "structural: " + e + "\n";
    for (const auto& v : violations) s += v.str() + "\n";
    if (total_violations > violations.size())
      s += "... " + std::to_string(total_violations - violations.size()) + " more\n";
    return s;
  }
};

namespace detail {

inline bool shape_is(const RatMatrix& m, std::size_t r, std::size_t c) { return m.rows() == r && m.cols() == c; }

}  // namespace detail

inline ValidationReport validate_mackey(const MackeyFunctor& m) {
  ValidationReport rep;
  if (!m.lattice) {
    rep.structural.push_back("missing lattice");
    return rep;
  }
  const auto& l = m.lat();
  const auto& g = m.group();
  const int n = l.size();
  if (static_cast<int>(m.rank.size()) != n || static_cast<int>(m.res.size()) != n || static_cast<int>(m.ind.size()) != n ||
      static_cast<int>(m.conj.size()) != g.order()) {
    rep.structural.push_back("table sizes do not match the lattice");
    return rep;
  }
  for (int h = 0; h < n; ++h) {
    if (static_cast<int>(m.res[h].size()) != n || static_cast<int>(m.ind[h].size()) != n) {
      rep.structural.push_back("res/ind rows have the wrong length at H=" + std::to_string(h));
      continue;
    }
    for (int k = 0; k < n; ++k) {
      if (!l.leq(k, h)) continue;
      if (!detail::shape_is(m.res[h][k], m.rank[k], m.rank[h]))
        rep.structural.push_back("res shape mismatch at H=" + std::to_string(h) + ", K=" + std::to_string(k));
      if (!detail::shape_is(m.ind[h][k], m.rank[h], m.rank[k]))
        rep.structural.push_back("ind shape mismatch at H=" + std::to_string(h) + ", K=" + std::to_string(k));
      if (m.base == Base::Z && (!is_integral(m.res[h][k]) || !is_integral(m.ind[h][k])))
        rep.structural.push_back("non-integral res/ind over Z at H=" + std::to_string(h) + ", K=" + std::to_string(k));
    }
  }
  for (int x = 0; x < g.order(); ++x) {
    if (static_cast<int>(m.conj[x].size()) != n) {
      rep.structural.push_back("conj row has the wrong length at g=" + std::to_string(x));
      continue;
    }
    for (int h = 0; h < n; ++h) {
      if (!detail::shape_is(m.conj[x][h], m.rank[l.conjugate(x, h)], m.rank[h]))
        rep.structural.push_back("conj shape mismatch at g=" + std::to_string(x) + ", H=" + std::to_string(h));
      if (m.base == Base::Z && !is_integral(m.conj[x][h]))
        rep.structural.push_back("non-integral conj over Z at g=" + std::to_string(x) + ", H=" + std::to_string(h));
    }
  }
  if (!rep.structural.empty()) return rep;

  for (int h = 0; h < n; ++h) {
    const auto id = RatMatrix::identity(m.rank[h]);
    if (m.res[h][h] != id) rep.add({"res identity", h, h, -1, ""});
    if (m.ind[h][h] != id) rep.add({"ind identity", h, h, -1, ""});
    for (int x : l[h].elements)
      if (m.conj[x][h] != id) rep.add({"conj by element of H is identity", h, -1, x, ""});
  }
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k) {
      if (!l.leq(k, h)) continue;
      for (int q = 0; q < n; ++q) {
        if (!l.leq(q, k)) continue;
        if (m.res[k][q] * m.res[h][k] != m.res[h][q]) rep.add({"res transitivity", h, q, -1, "through " + std::to_string(k)});
        if (m.ind[h][k] * m.ind[k][q] != m.ind[h][q]) rep.add({"ind transitivity", h, q, -1, "through " + std::to_string(k)});
      }
    }
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      for (int h = 0; h < n; ++h)
        if (m.conj[a][l.conjugate(b, h)] * m.conj[b][h] != m.conj[g.mul(a, b)][h])
          rep.add({"conj composition", h, -1, a, "with " + std::to_string(b)});
  for (int x = 0; x < g.order(); ++x)
    for (int h = 0; h < n; ++h)
      for (int k = 0; k < n; ++k) {
        if (!l.leq(k, h)) continue;
        const int xh = l.conjugate(x, h), xk = l.conjugate(x, k);
        if (m.conj[x][h] * m.ind[h][k] != m.ind[xh][xk] * m.conj[x][k]) rep.add({"conj/ind equivariance", h, k, x, ""});
        if (m.conj[x][k] * m.res[h][k] != m.res[xh][xk] * m.conj[x][h]) rep.add({"conj/res equivariance", h, k, x, ""});
      }
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k) {
      if (!l.leq(k, h)) continue;
      for (int q = 0; q < n; ++q) {
        if (!l.leq(q, h)) continue;
        RatMatrix rhs(m.rank[k], m.rank[q]);
        for (const auto& dc : double_cosets(l, h, k, q))
          rhs += m.ind[k][dc.left_meet] * m.conj[dc.rep][dc.right_meet] * m.res[q][dc.right_meet];
        if (m.res[h][k] * m.ind[h][q] != rhs) rep.add({"double coset formula", h, k, -1, "L=" + std::to_string(q)});
      }
    }
  return rep;
}

inline ValidationReport validate_green(const GreenFunctor& r) {
  ValidationReport rep = validate_mackey(r.mackey);
  if (!rep.structural.empty()) return rep;
  const auto& l = r.lat();
  const auto& g = l.group();
  const int n = l.size();
  if (static_cast<int>(r.mult.size()) != n || static_cast<int>(r.one.size()) != n) {
    rep.structural.push_back("multiplication tables do not match the lattice");
    return rep;
  }
  for (int h = 0; h < n; ++h) {
    if (r.mult[h].size() != r.rank(h) || r.one[h].size() != r.rank(h)) {
      rep.structural.push_back("multiplication table has the wrong size at H=" + std::to_string(h));
      continue;
    }
    for (const auto& mm : r.mult[h])
      if (!detail::shape_is(mm, r.rank(h), r.rank(h)))
        rep.structural.push_back("multiplication matrix has the wrong shape at H=" + std::to_string(h));
  }
  if (!rep.structural.empty()) return rep;
  for (int h = 0; h < n; ++h)
    if (auto err = r.algebra(h).check_axioms()) rep.add({"ring axioms", h, -1, -1, *err});
  auto ring_map = [&](const RatMatrix& f, int from, int to, const std::string& what, int h, int k, int x) {
    if (f.apply(r.one[from]) != r.one[to]) rep.add({what + " preserves one", h, k, x, ""});
    for (std::size_t i = 0; i < r.rank(from); ++i) {
      // f(e_i e_j) = f(e_i) f(e_j) for all j at once
      if (f * r.mult[from][i] != r.left_multiplication(to, f.col(i)) * f) {
        rep.add({what + " is multiplicative", h, k, x, "basis element " + std::to_string(i)});
        break;
      }
    }
  };
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k)
      if (l.leq(k, h)) ring_map(r.mackey.res[h][k], h, k, "res", h, k, -1);
  for (int x = 0; x < g.order(); ++x)
    for (int h = 0; h < n; ++h) ring_map(r.mackey.conj[x][h], h, l.conjugate(x, h), "conj", h, -1, x);
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k) {
      if (!l.proper(k, h)) continue;
      const auto& res = r.mackey.res[h][k];
      const auto& ind = r.mackey.ind[h][k];
      for (std::size_t i = 0; i < r.rank(h); ++i) {
        const RatVector e = r.algebra(h).basis_vector(i);
        // ind(res(r) r') = r ind(r')
        if (ind * r.left_multiplication(k, res.apply(e)) != r.mult[h][i] * ind)
          rep.add({"left Frobenius relation", h, k, -1, "basis element " + std::to_string(i)});
        // ind(r' res(r)) = ind(r') r
        if (ind * r.right_multiplication(k, res.apply(e)) != r.right_multiplication(h, e) * ind)
          rep.add({"right Frobenius relation", h, k, -1, "basis element " + std::to_string(i)});
      }
    }
  return rep;
}

/// Module axioms only; the ring is assumed valid (validate it separately).
inline ValidationReport validate_module(const MackeyModule& m) {
  ValidationReport rep;
  if (!m.ring) {
    rep.structural.push_back("module has no ring");
    return rep;
  }
  const GreenFunctor& r = *m.ring;
  if (m.mackey.lattice != r.mackey.lattice && m.mackey.lattice && r.mackey.lattice &&
      m.mackey.group().table() != r.mackey.group().table())
    rep.structural.push_back("module and ring live over different groups");
  if (m.mackey.base != r.mackey.base) rep.structural.push_back("module and ring have different base rings");
  rep.merge(validate_mackey(m.mackey), "");
  if (!rep.structural.empty()) return rep;
  const auto& l = m.lat();
  const auto& g = l.group();
  const int n = l.size();
  if (static_cast<int>(m.act.size()) != n) {
    rep.structural.push_back("action table does not match the lattice");
    return rep;
  }
  for (int h = 0; h < n; ++h) {
    if (m.act[h].size() != r.rank(h)) {
      rep.structural.push_back("action table has the wrong size at H=" + std::to_string(h));
      continue;
    }
    for (const auto& a : m.act[h]) {
      if (!detail::shape_is(a, m.rank(h), m.rank(h)))
        rep.structural.push_back("action matrix has the wrong shape at H=" + std::to_string(h));
      else if (m.mackey.base == Base::Z && !is_integral(a))
        rep.structural.push_back("non-integral action over Z at H=" + std::to_string(h));
    }
  }
  if (!rep.structural.empty()) return rep;
  for (int h = 0; h < n; ++h) {
    if (m.action(h, r.one[h]) != RatMatrix::identity(m.rank(h))) rep.add({"unital action", h, -1, -1, ""});
    for (std::size_t i = 0; i < r.rank(h); ++i)
      for (std::size_t j = 0; j < r.rank(h); ++j)
        if (m.act[h][i] * m.act[h][j] != m.action(h, r.mult[h][i].col(j)))
          rep.add({"associative action", h, -1, -1, "basis pair " + std::to_string(i) + "," + std::to_string(j)});
  }
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k) {
      if (!l.leq(k, h)) continue;
      const auto& rres = r.mackey.res[h][k];
      const auto& rind = r.mackey.ind[h][k];
      const auto& mres = m.mackey.res[h][k];
      const auto& mind = m.mackey.ind[h][k];
      for (std::size_t i = 0; i < r.rank(h); ++i) {
        const RatVector e = r.algebra(h).basis_vector(i);
        const RatVector re = rres.apply(e);
        if (mres * m.act[h][i] != m.action(k, re) * mres) rep.add({"res commutes with action", h, k, -1, "basis element " + std::to_string(i)});
        if (mind * m.action(k, re) != m.act[h][i] * mind) rep.add({"module Frobenius ind(res(r) m) = r ind(m)", h, k, -1, "basis element " + std::to_string(i)});
      }
      for (std::size_t j = 0; j < r.rank(k); ++j) {
        const RatVector e = r.algebra(k).basis_vector(j);
        if (mind * m.act[k][j] * mres != m.action(h, rind.apply(e)))
          rep.add({"module Frobenius ind(r res(m)) = ind(r) m", h, k, -1, "basis element " + std::to_string(j)});
      }
    }
  for (int x = 0; x < g.order(); ++x)
    for (int h = 0; h < n; ++h) {
      const int xh = l.conjugate(x, h);
      for (std::size_t i = 0; i < r.rank(h); ++i) {
        const RatVector ce = r.mackey.conj[x][h].col(i);
        if (m.mackey.conj[x][h] * m.act[h][i] != m.action(xh, ce) * m.mackey.conj[x][h])
          rep.add({"conj commutes with action", h, -1, x, "basis element " + std::to_string(i)});
      }
    }
  return rep;
}

/// Commutation with res, ind, conj and R-linearity of each component.
inline ValidationReport validate_morphism(const MackeyModule& src, const MackeyModule& dst, const MackeyMorphism& f) {
  ValidationReport rep;
  const auto& l = src.lat();
  const int n = l.size();
  if (dst.lat().size() != n || static_cast<int>(f.components.size()) != n) {
    rep.structural.push_back("morphism does not match the lattice");
    return rep;
  }
  for (int h = 0; h < n; ++h)
    if (!detail::shape_is(f.components[h], dst.rank(h), src.rank(h)))
      rep.structural.push_back("component has the wrong shape at H=" + std::to_string(h));
  if (src.ring->mult.size() != dst.ring->mult.size()) rep.structural.push_back("modules over different rings");
  if (!rep.structural.empty()) return rep;
  const auto& f_ = f.components;
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k) {
      if (!l.leq(k, h)) continue;
      if (f_[k] * src.mackey.res[h][k] != dst.mackey.res[h][k] * f_[h]) rep.add({"commutes with res", h, k, -1, ""});
      if (f_[h] * src.mackey.ind[h][k] != dst.mackey.ind[h][k] * f_[k]) rep.add({"commutes with ind", h, k, -1, ""});
    }
  for (int x = 0; x < l.group().order(); ++x)
    for (int h = 0; h < n; ++h)
      if (f_[l.conjugate(x, h)] * src.mackey.conj[x][h] != dst.mackey.conj[x][h] * f_[h]) rep.add({"commutes with conj", h, -1, x, ""});
  for (int h = 0; h < n; ++h)
    for (std::size_t i = 0; i < src.ring->rank(h); ++i)
      if (f_[h] * src.act[h][i] != dst.act[h][i] * f_[h])
        rep.add({"R(H)-linear", h, -1, -1, "basis element " + std::to_string(i)});
  return rep;
}

inline MackeyMorphism identity_morphism(const MackeyModule& m) {
  MackeyMorphism f;
  for (int h = 0; h < m.lat().size(); ++h) f.components.push_back(RatMatrix::identity(m.rank(h)));
  return f;
}

/// second after first
inline MackeyMorphism compose(const MackeyMorphism& second, const MackeyMorphism& first) {
  MackeyMorphism f;
  for (std::size_t h = 0; h < first.components.size(); ++h) f.components.push_back(second.components[h] * first.components[h]);
  return f;
}

inline bool is_isomorphism(const MackeyMorphism& f) {
  for (const auto& c : f.components)
    if (!c.is_square() || (c.rows() > 0 && determinant(c) == 0)) return false;
  return true;
}

/// The same data over Q.
inline MackeyFunctor scalar_extend(MackeyFunctor m) {
  m.base = Base::Q;
  return m;
}

inline GreenFunctor scalar_extend(GreenFunctor r) {
  r.mackey.base = Base::Q;
  r.name += "_Q";
  return r;
}

/// Extends a module and its ring; pass an already extended ring to share it between modules.
inline MackeyModule scalar_extend(const MackeyModule& m, GreenPtr extended_ring = nullptr) {
  MackeyModule out = m;
  out.mackey.base = Base::Q;
  out.ring = extended_ring ? extended_ring : std::make_shared<const GreenFunctor>(scalar_extend(*m.ring));
  out.name += "_Q";
  return out;
}

/// The ring as a module over itself.
inline MackeyModule regular_module(GreenPtr r) {
  MackeyModule m;
  m.ring = r;
  m.mackey = r->mackey;
  m.act = r->mult;
  m.name = r->name;
  return m;
}

/// Levelwise block sums; both modules must share the ring.
inline MackeyModule direct_sum(const MackeyModule& a, const MackeyModule& b) {
  if (a.ring != b.ring) throw Error("direct_sum: modules over different rings");
  MackeyModule s;
  s.ring = a.ring;
  s.name = a.name + "+" + b.name;
  const auto& l = a.lat();
  std::vector<std::size_t> rank;
  for (int h = 0; h < l.size(); ++h) rank.push_back(a.rank(h) + b.rank(h));
  s.mackey = MackeyFunctor::shaped(a.mackey.lattice, a.mackey.base, rank);
  for (int h = 0; h < l.size(); ++h)
    for (int k = 0; k < l.size(); ++k)
      if (l.leq(k, h)) {
        s.mackey.res[h][k] = block_diagonal(a.mackey.res[h][k], b.mackey.res[h][k]);
        s.mackey.ind[h][k] = block_diagonal(a.mackey.ind[h][k], b.mackey.ind[h][k]);
      }
  for (int x = 0; x < l.group().order(); ++x)
    for (int h = 0; h < l.size(); ++h) s.mackey.conj[x][h] = block_diagonal(a.mackey.conj[x][h], b.mackey.conj[x][h]);
  s.act.resize(l.size());
  for (int h = 0; h < l.size(); ++h)
    for (std::size_t i = 0; i < a.ring->rank(h); ++i) s.act[h].push_back(block_diagonal(a.act[h][i], b.act[h][i]));
  return s;
}

/// Swap of the two summands of M (+) M.
inline MackeyMorphism swap_morphism(const MackeyModule& m) {
  MackeyMorphism f;
  for (int h = 0; h < m.lat().size(); ++h) {
    const std::size_t r = m.rank(h);
    RatMatrix s(2 * r, 2 * r);
    s.set_block(0, r, RatMatrix::identity(r));
    s.set_block(r, 0, RatMatrix::identity(r));
    f.components.push_back(s);
  }
  return f;
}

/// The zero module over a ring.
inline MackeyModule zero_module(GreenPtr r) {
  MackeyModule z;
  z.ring = r;
  z.name = "0";
  z.mackey = MackeyFunctor::shaped(r->mackey.lattice, r->mackey.base, std::vector<std::size_t>(r->lat().size(), 0));
  z.act.resize(r->lat().size());
  for (int h = 0; h < r->lat().size(); ++h) z.act[h].assign(r->rank(h), RatMatrix(0, 0));
  return z;
}

}  // namespace mackey
