#pragma once

#include "mackey/brauer.hpp"

namespace mackey {

/// Level K of a box product: (+)_{L <= K} M(L) (x) N(L) modulo the relations.
struct BoxLevel {
  std::vector<int> subs;            // L <= K
  std::vector<std::size_t> offset;  // ambient offset of each L, indexed by subgroup (npos when L is not below K)
  std::size_t ambient = 0;
  RatMatrix relations;
  std::optional<AbelianPresentation> integral;  // over Z; torsion is recorded, the free part is the level
  RatMatrix projection;
  RatMatrix section;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// M (x)_R N with its presentation; generator [m (x) n]_L at level K stands for ind^K_L(m (x) n).
struct BoxProduct {
  MackeyModule module;
  std::vector<BoxLevel> levels;
  std::vector<std::size_t> left_ranks, right_ranks;

  /// Ambient index of [e_i (x) e_j]_L at level K.
  std::size_t generator(int k, int l, std::size_t i, std::size_t j) const {
    return levels[k].offset[l] + i * right_ranks[l] + j;
  }
  bool has_torsion() const {
    for (const auto& lv : levels)
      if (lv.integral && !lv.integral->torsion.empty()) return true;
    return false;
  }
};

namespace detail {

/// A small generating set of a subgroup.
inline std::vector<int> subgroup_generators(const SubgroupLattice& l, int k) {
  std::vector<int> gens;
  std::vector<int> span{0};
  for (int x : l[k].elements) {
    if (std::binary_search(span.begin(), span.end(), x)) continue;
    gens.push_back(x);
    span = generated_subgroup(l.group(), gens);
  }
  return gens;
}

/// Places a block into the rows of subgroup L at level K.
inline void add_rows(RatMatrix& target, const BoxLevel& lv, int l, std::size_t col, const RatMatrix& block) {
  for (std::size_t i = 0; i < block.rows(); ++i)
    for (std::size_t j = 0; j < block.cols(); ++j)
      if (block(i, j) != 0) target(lv.offset[l] + i, col + j) += block(i, j);
}

}  // namespace detail

inline BoxProduct box_product(const MackeyModule& m, const MackeyModule& n) {
  if (m.ring != n.ring) throw Error("box_product: modules over different rings");
  const auto& r = *m.ring;
  if (!r.is_commutative()) throw Error("box_product: ring is not commutative");
  const auto& l = m.lat();
  const int levels = l.size();
  const bool integral = m.mackey.base == Base::Z;
  BoxProduct b;
  b.left_ranks = m.mackey.rank;
  b.right_ranks = n.mackey.rank;
  auto tensor_rank = [&](int x) { return m.rank(x) * n.rank(x); };
  for (int k = 0; k < levels; ++k) {
    BoxLevel lv;
    lv.offset.assign(levels, BoxLevel::npos);
    for (int x = 0; x < levels; ++x)
      if (l.leq(x, k)) {
        lv.subs.push_back(x);
        lv.offset[x] = lv.ambient;
        lv.ambient += tensor_rank(x);
      }
    std::vector<RatMatrix> cols;
    for (int x : lv.subs)
      for (int y : l.maximal_subgroups_of(x)) {
        // [ind m' (x) n]_x = [m' (x) res n]_y and [res m (x) n']_y = [m (x) ind n']_x
        RatMatrix a(lv.ambient, m.rank(y) * n.rank(x));
        detail::add_rows(a, lv, x, 0, kronecker(m.mackey.ind[x][y], RatMatrix::identity(n.rank(x))));
        detail::add_rows(a, lv, y, 0, -kronecker(RatMatrix::identity(m.rank(y)), n.mackey.res[x][y]));
        cols.push_back(std::move(a));
        RatMatrix c(lv.ambient, m.rank(x) * n.rank(y));
        detail::add_rows(c, lv, x, 0, kronecker(RatMatrix::identity(m.rank(x)), n.mackey.ind[x][y]));
        detail::add_rows(c, lv, y, 0, -kronecker(m.mackey.res[x][y], RatMatrix::identity(n.rank(y))));
        cols.push_back(std::move(c));
      }
    for (int g : detail::subgroup_generators(l, k))
      for (int x : lv.subs) {
        RatMatrix a(lv.ambient, tensor_rank(x));
        detail::add_rows(a, lv, l.conjugate(g, x), 0, kronecker(m.mackey.conj[g][x], n.mackey.conj[g][x]));
        detail::add_rows(a, lv, x, 0, -RatMatrix::identity(tensor_rank(x)));
        cols.push_back(std::move(a));
      }
    for (int x : lv.subs)
      for (std::size_t i = 0; i < r.rank(x); ++i) {
        RatMatrix a(lv.ambient, tensor_rank(x));
        detail::add_rows(a, lv, x, 0,
                         kronecker(m.act[x][i], RatMatrix::identity(n.rank(x))) - kronecker(RatMatrix::identity(m.rank(x)), n.act[x][i]));
        cols.push_back(std::move(a));
      }
    lv.relations = RatMatrix(lv.ambient, 0);
    for (const auto& c : cols) lv.relations = hstack(lv.relations, c);
    if (integral) {
      lv.integral = cokernel(to_int(lv.relations));
      lv.projection = to_rat(lv.integral->free_projection());
      lv.section = to_rat(lv.integral->free_section);
    } else {
      auto q = rational_quotient(lv.ambient, lv.relations);
      lv.projection = std::move(q.projection);
      lv.section = std::move(q.section);
    }
    b.levels.push_back(std::move(lv));
  }

  std::vector<std::size_t> rank;
  for (const auto& lv : b.levels) rank.push_back(lv.projection.rows());
  auto& out = b.module;
  out.ring = m.ring;
  out.name = "(" + m.name + "x" + n.name + ")";
  out.mackey = MackeyFunctor::shaped(m.mackey.lattice, m.mackey.base, rank);
  auto descend = [&](int src, int dst, const RatMatrix& ambient_map, const std::string& what) {
    const auto& s = b.levels[src];
    const auto& d = b.levels[dst];
    const RatMatrix to = d.projection * ambient_map;
    if (!(to * s.relations).is_zero()) throw Error("box_product: " + what + " does not descend");
    return to * s.section;
  };
  for (int k = 0; k < levels; ++k) {
    const auto& big = b.levels[k];
    for (int k2 = 0; k2 < levels; ++k2) {
      if (!l.leq(k2, k)) continue;
      const auto& small = b.levels[k2];
      RatMatrix ind(big.ambient, small.ambient);
      for (int x : small.subs) ind.set_block(big.offset[x], small.offset[x], RatMatrix::identity(tensor_rank(x)));
      out.mackey.ind[k][k2] = descend(k2, k, ind, "induction");
      // [m (x) n]_x restricts to the double coset sum over K2 \ K / x
      RatMatrix res(small.ambient, big.ambient);
      for (int x : big.subs)
        for (const auto& dc : double_cosets(l, k, k2, x)) {
          const int meet = dc.right_meet;
          const auto cm = m.mackey.conj[dc.rep][meet] * m.mackey.res[x][meet];
          const auto cn = n.mackey.conj[dc.rep][meet] * n.mackey.res[x][meet];
          RatMatrix block(small.ambient, tensor_rank(x));
          detail::add_rows(block, small, dc.left_meet, 0, kronecker(cm, cn));
          res.set_block(0, big.offset[x], res.block(0, big.offset[x], small.ambient, tensor_rank(x)) + block);
        }
      out.mackey.res[k][k2] = descend(k, k2, res, "restriction");
    }
  }
  for (int g = 0; g < l.group().order(); ++g)
    for (int k = 0; k < levels; ++k) {
      const int gk = l.conjugate(g, k);
      const auto& src = b.levels[k];
      const auto& dst = b.levels[gk];
      RatMatrix c(dst.ambient, src.ambient);
      for (int x : src.subs) c.set_block(dst.offset[l.conjugate(g, x)], src.offset[x], kronecker(m.mackey.conj[g][x], n.mackey.conj[g][x]));
      out.mackey.conj[g][k] = descend(k, gk, c, "conjugation");
    }
  out.act.resize(levels);
  for (int k = 0; k < levels; ++k) {
    const auto& lv = b.levels[k];
    for (std::size_t i = 0; i < r.rank(k); ++i) {
      const auto e = standard_basis_vector(r.rank(k), i);
      RatMatrix a(lv.ambient, lv.ambient);
      for (int x : lv.subs)
        a.set_block(lv.offset[x], lv.offset[x], kronecker(m.action(x, r.mackey.res[k][x].apply(e)), RatMatrix::identity(n.rank(x))));
      out.act[k].push_back(descend(k, k, a, "the ring action"));
    }
  }
  return b;
}

/// f (x) g between box products.
inline MackeyMorphism box_morphism(const BoxProduct& src, const BoxProduct& dst, const MackeyMorphism& f, const MackeyMorphism& g) {
  MackeyMorphism out;
  for (std::size_t k = 0; k < src.levels.size(); ++k) {
    const auto& s = src.levels[k];
    const auto& d = dst.levels[k];
    RatMatrix a(d.ambient, s.ambient);
    for (int x : s.subs) a.set_block(d.offset[x], s.offset[x], kronecker(f.components[x], g.components[x]));
    const RatMatrix to = d.projection * a;
    if (!(to * s.relations).is_zero()) throw Error("box_morphism: map does not descend");
    out.components.push_back(to * s.section);
  }
  return out;
}

/// Certification of a levelwise map: bijective over Q, and over Z unimodular with torsion-free source and target.
struct IsoCertificate {
  bool well_defined = true;
  bool is_morphism = false;
  bool rational_iso = false;
  std::optional<bool> integral_iso;
  std::string detail;

  bool ok() const { return well_defined && is_morphism && rational_iso && integral_iso.value_or(true); }
};

namespace detail {

inline bool invertible(const RatMatrix& m) { return m.is_square() && (m.rows() == 0 || determinant(m) != 0); }

inline bool unimodular(const RatMatrix& m) {
  if (!m.is_square() || !is_integral(m)) return false;
  if (m.rows() == 0) return true;
  const Rat d = determinant(m);
  return d == 1 || d == -1;
}

}  // namespace detail

/// R (x)_R M -> M, [r (x) m]_L |-> ind^K_L(r m).
struct UnitIso {
  BoxProduct box;
  MackeyMorphism map;
  IsoCertificate certificate;
};

inline UnitIso box_unit_iso(const MackeyModule& m) {
  UnitIso u;
  u.box = box_product(regular_module(m.ring), m);
  const auto& l = m.lat();
  bool integral = m.mackey.base == Base::Z;
  for (int k = 0; k < l.size(); ++k) {
    const auto& lv = u.box.levels[k];
    RatMatrix a(m.rank(k), lv.ambient);
    for (int x : lv.subs)
      for (std::size_t i = 0; i < m.ring->rank(x); ++i)
        a.set_block(0, lv.offset[x] + i * m.rank(x), m.mackey.ind[k][x] * m.act[x][i]);
    if (!(a * lv.relations).is_zero()) {
      u.certificate.well_defined = false;
      u.certificate.detail = "level " + std::to_string(k) + " does not descend";
    }
    u.map.components.push_back(a * lv.section);
  }
  u.certificate.is_morphism = validate_morphism(u.box.module, m, u.map).ok();
  u.certificate.rational_iso = std::all_of(u.map.components.begin(), u.map.components.end(), detail::invertible);
  if (integral)
    u.certificate.integral_iso = !u.box.has_torsion() && std::all_of(u.map.components.begin(), u.map.components.end(), detail::unimodular);
  return u;
}

/// M (x) N -> N (x) M, [m (x) n]_L |-> [n (x) m]_L.
inline MackeyMorphism box_swap(const BoxProduct& mn, const BoxProduct& nm) {
  MackeyMorphism out;
  for (std::size_t k = 0; k < mn.levels.size(); ++k) {
    const auto& s = mn.levels[k];
    const auto& d = nm.levels[k];
    RatMatrix p(d.ambient, s.ambient);
    for (int x : s.subs)
      for (std::size_t i = 0; i < mn.left_ranks[x]; ++i)
        for (std::size_t j = 0; j < mn.right_ranks[x]; ++j) p(nm.generator(k, x, j, i), mn.generator(k, x, i, j)) = 1;
    const RatMatrix to = d.projection * p;
    if (!(to * s.relations).is_zero()) throw Error("box_swap: map does not descend");
    out.components.push_back(to * s.section);
  }
  return out;
}

/// The monoidal comparison M-bar(H) (x) N-bar(H) -> (M (x) N)-bar(H), [m] (x) [n] |-> [[m (x) n]_H].
struct MonoidalMap {
  int subgroup = -1;
  SkewTensor source;
  BrauerComponent target;
  RatMatrix map;
  IsoCertificate certificate;
};

inline MonoidalMap br_monoidal_map(const BrauerRing& rbar, const MackeyModule& m, const MackeyModule& n, const BoxProduct& mn) {
  const int h = rbar.subgroup;
  MonoidalMap out;
  out.subgroup = h;
  const auto bm = brauer_quotient(rbar, m);
  const auto bn = brauer_quotient(rbar, n);
  out.source = skew_tensor(rbar.skew, bm.module, bn.module);
  out.target = brauer_quotient(rbar, mn.module);
  const auto& lv = mn.levels[h];
  RatMatrix embed(lv.ambient, m.rank(h) * n.rank(h));
  embed.set_block(lv.offset[h], 0, RatMatrix::identity(m.rank(h) * n.rank(h)));
  // from M(H) (x) N(H) to the target quotient
  const RatMatrix lift = out.target.quotient.projection * lv.projection * embed;
  auto& cert = out.certificate;
  if (!(lift * kronecker(bm.quotient.killed, RatMatrix::identity(n.rank(h)))).is_zero() ||
      !(lift * kronecker(RatMatrix::identity(m.rank(h)), bn.quotient.killed)).is_zero()) {
    cert.well_defined = false;
    cert.detail = "induced elements do not map to zero";
  }
  const RatMatrix on_tensor = lift * kronecker(bm.quotient.section, bn.quotient.section);
  if (!(on_tensor * out.source.relations).is_zero()) {
    cert.well_defined = false;
    cert.detail = "map is not balanced over the Brauer ring";
  }
  out.map = on_tensor * out.source.quotient.section;
  cert.is_morphism = is_skew_morphism(rbar.skew, out.source.module, out.target.module, out.map);
  cert.rational_iso = detail::invertible(out.map);
  if (m.mackey.base == Base::Z) {
    // integral tensor of the free parts, modulo the balance relations
    const bool torsion_free = bm.quotient.integral->torsion.empty() && bn.quotient.integral->torsion.empty() &&
                              out.target.quotient.integral->torsion.empty() && !mn.has_torsion() && is_integral(out.source.relations);
    if (torsion_free) {
      const auto tz = cokernel(to_int(out.source.relations));
      cert.integral_iso = tz.torsion.empty() && detail::unimodular(on_tensor * to_rat(tz.free_section));
    } else if (cert.detail.empty()) {
      // the free-part presentation cannot see torsion classes, so the integral question stays open
      cert.detail = "integral comparison undecided: torsion in a Brauer quotient";
    }
  }
  return out;
}

}  // namespace mackey
