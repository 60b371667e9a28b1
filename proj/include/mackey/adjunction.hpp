#pragma once

#include "mackey/brauer.hpp"

namespace mackey {

/// Level K of Phi_H(V): W-equivariant maps (G/K)^H -> V, stored by their values on orbit representatives.
struct PhiLevel {
  FixedPointSet points;
  std::vector<RatMatrix> orbit_basis;  // basis of V^{stab(x)} per orbit
  RatMatrix embed;                     // all point values (points * dim V) from level coordinates
  RatMatrix extract;                   // level coordinates from all point values
};

struct PhiModule {
  int subgroup = -1;
  SkewModule v;
  std::vector<PhiLevel> levels;
  MackeyModule module;
};

namespace detail {

inline PhiLevel phi_level(const SubgroupLattice& l, const WeylGroup& weyl, const SkewModule& v, int k) {
  PhiLevel lv;
  lv.points = fixed_points(l, weyl, k);
  const auto& fp = lv.points;
  const std::size_t d = v.dim;
  std::size_t rank = 0;
  for (std::size_t o = 0; o < fp.orbits.size(); ++o) {
    std::vector<RatMatrix> stab;
    for (int w : fp.stabilizers[o]) stab.push_back(v.phi[w]);
    lv.orbit_basis.push_back(common_fixed_space(stab, d));
    rank += lv.orbit_basis.back().cols();
  }
  lv.embed = RatMatrix(fp.size() * d, rank);
  lv.extract = RatMatrix(rank, fp.size() * d);
  std::size_t col = 0;
  for (std::size_t o = 0; o < fp.orbits.size(); ++o) {
    const auto& basis = lv.orbit_basis[o];
    const int x0 = fp.orbits[o].front();
    std::vector<bool> placed(fp.size(), false);
    for (int w = 0; w < weyl.order(); ++w) {
      const int p = fp.weyl_action[w][x0];
      if (placed[p]) continue;
      placed[p] = true;
      lv.embed.set_block(static_cast<std::size_t>(p) * d, col, v.phi[w] * basis);
    }
    lv.extract.set_block(col, static_cast<std::size_t>(x0) * d, left_inverse(basis));
    col += basis.cols();
  }
  return lv;
}

/// Point of (G/K)^H containing the coset g K, as an index into the fixed-point list.
inline int fixed_point_of(const PhiLevel& lv, int g) {
  const int p = lv.points.local_of[lv.points.ambient.point_of[g]];
  if (p < 0) throw Error("phi: coset is not fixed by H");
  return p;
}

/// The H-coset representative of each fixed point, so that H^g <= K.
inline int point_rep(const PhiLevel& lv, int p) { return lv.points.ambient.reps[lv.points.points[p]]; }

}  // namespace detail

/// Phi_H(V) as a Mackey module over the rational ring; rbar must be the Brauer ring of that ring at H.
inline PhiModule phi(GreenPtr ring, const BrauerRing& rbar, const SkewModule& v) {
  if (auto err = validate_skew_module(rbar.skew, v)) throw Error("phi: " + *err);
  const auto& l = ring->lat();
  const auto& g = l.group();
  const int h = rbar.subgroup;
  const std::size_t d = v.dim;
  const auto id = RatMatrix::identity(d);
  PhiModule out;
  out.subgroup = h;
  out.v = v;
  for (int k = 0; k < l.size(); ++k) out.levels.push_back(detail::phi_level(l, rbar.weyl, v, k));
  std::vector<std::size_t> rank;
  for (const auto& lv : out.levels) rank.push_back(lv.embed.cols());
  auto& m = out.module;
  m.ring = ring;
  m.name = "Phi_" + std::to_string(h);
  m.mackey = MackeyFunctor::shaped(ring->mackey.lattice, Base::Q, rank);
  for (int k = 0; k < l.size(); ++k) {
    const auto& big = out.levels[k];
    for (int k2 = 0; k2 < l.size(); ++k2) {
      if (!l.leq(k2, k)) continue;
      const auto& small = out.levels[k2];
      // restriction copies f(gK) to the point gK2; induction sums over the fibre
      RatMatrix copy(small.points.size() * d, big.points.size() * d);
      for (int p = 0; p < small.points.size(); ++p) {
        const int q = detail::fixed_point_of(big, detail::point_rep(small, p));
        copy.set_block(static_cast<std::size_t>(p) * d, static_cast<std::size_t>(q) * d, id);
      }
      m.mackey.res[k][k2] = small.extract * copy * big.embed;
      m.mackey.ind[k][k2] = big.extract * copy.transpose() * small.embed;
    }
  }
  for (int x = 0; x < g.order(); ++x)
    for (int k = 0; k < l.size(); ++k) {
      const int xk = l.conjugate(x, k);
      const auto& src = out.levels[k];
      const auto& dst = out.levels[xk];
      // (c_x f)(y xK) = f(y x K)
      RatMatrix pull(dst.points.size() * d, src.points.size() * d);
      for (int p = 0; p < dst.points.size(); ++p) {
        const int q = detail::fixed_point_of(src, g.mul(detail::point_rep(dst, p), x));
        pull.set_block(static_cast<std::size_t>(p) * d, static_cast<std::size_t>(q) * d, id);
      }
      m.mackey.conj[x][k] = dst.extract * pull * src.embed;
    }
  m.act.resize(l.size());
  for (int k = 0; k < l.size(); ++k) {
    const auto& lv = out.levels[k];
    for (std::size_t i = 0; i < ring->rank(k); ++i) {
      const auto e = standard_basis_vector(ring->rank(k), i);
      // (r f)(gK) = [c_g res^K_{H^g} r] f(gK)
      RatMatrix pointwise(lv.points.size() * d, lv.points.size() * d);
      for (int p = 0; p < lv.points.size(); ++p) {
        const int rep = detail::point_rep(lv, p);
        const int hg = l.conjugate_by_inverse(rep, h);
        const auto r = ring->mackey.conj[rep][hg].apply(ring->mackey.res[k][hg].apply(e));
        pointwise.set_block(static_cast<std::size_t>(p) * d, static_cast<std::size_t>(p) * d, v.s_act(rbar.project(r)));
      }
      m.act[k].push_back(lv.extract * pointwise * lv.embed);
    }
  }
  return out;
}

/// Phi_H applied to a skew-module map f: V -> V'.
inline MackeyMorphism phi_morphism(const PhiModule& a, const PhiModule& b, const RatMatrix& f) {
  MackeyMorphism out;
  for (std::size_t k = 0; k < a.levels.size(); ++k) {
    const std::size_t n = a.levels[k].points.size();
    RatMatrix pointwise(n * b.v.dim, n * a.v.dim);
    for (std::size_t p = 0; p < n; ++p) pointwise.set_block(p * b.v.dim, p * a.v.dim, f);
    out.components.push_back(b.levels[k].extract * pointwise * a.levels[k].embed);
  }
  return out;
}

/// All point values gK -> [c_g res^K_{H^g} m] of the unit at level K, before extraction.
inline RatMatrix unit_point_values(const MackeyModule& m, const BrauerComponent& c, const PhiLevel& lv, int k) {
  const auto& l = m.lat();
  const int h = c.subgroup;
  const std::size_t d = c.quotient.dim;
  RatMatrix values(lv.points.size() * d, m.rank(k));
  for (int p = 0; p < lv.points.size(); ++p) {
    const int rep = detail::point_rep(lv, p);
    const int hg = l.conjugate_by_inverse(rep, h);
    values.set_block(static_cast<std::size_t>(p) * d, 0, c.quotient.projection * m.mackey.conj[rep][hg] * m.mackey.res[k][hg]);
  }
  return values;
}

/// The H-component M -> Phi_H(Br_H M) of the unit; throws if the values are not W-equivariant.
inline MackeyMorphism unit_component(const MackeyModule& m, const BrauerComponent& c, const PhiModule& target) {
  MackeyMorphism out;
  for (int k = 0; k < m.lat().size(); ++k) {
    const auto& lv = target.levels[k];
    const RatMatrix values = unit_point_values(m, c, lv, k);
    RatMatrix comp = lv.extract * values;
    if (lv.embed * comp != values) throw Error("unit: point values are not Weyl-equivariant at K=" + std::to_string(k));
    out.components.push_back(std::move(comp));
  }
  return out;
}

/// Counit Br_H(Phi_H V) -> V, f |-> f(eH); c must be Br_H of the Phi module.
inline RatMatrix counit_eps(const PhiModule& p, const BrauerComponent& c) {
  const auto& lv = p.levels[p.subgroup];
  const int e = detail::fixed_point_of(lv, 0);
  const std::size_t d = p.v.dim;
  return lv.embed.block(static_cast<std::size_t>(e) * d, 0, d, lv.embed.cols()) * c.quotient.section;
}

/// The full adjunction data for one module: Br M, each Phi_H(Br_H M), their sum, and the unit.
struct UnitData {
  std::vector<BrauerRing> rings;  // of the rational ring, per class
  SplitFamily family;
  std::vector<PhiModule> phis;
  MackeyModule target;            // direct sum of the Phi modules
  MackeyModule source;            // M over the rational ring
  std::vector<MackeyMorphism> parts;  // eta's component into each Phi module
  MackeyMorphism eta;
};

/// ring_q must be the rational extension of m's ring; all Phi modules are over it.
inline UnitData unit_eta(const MackeyModule& m, GreenPtr ring_q, const std::vector<BrauerRing>& rings) {
  UnitData u;
  u.rings = rings;
  u.family = br(rings, m);
  u.source = m.mackey.base == Base::Q && m.ring == ring_q ? m : scalar_extend(m, ring_q);
  u.target = zero_module(ring_q);
  auto& parts = u.parts;
  for (std::size_t c = 0; c < rings.size(); ++c) {
    u.phis.push_back(phi(ring_q, rings[c], u.family.components[c].module));
    u.target = direct_sum(u.target, u.phis.back().module);
    parts.push_back(unit_component(m, u.family.components[c], u.phis.back()));
  }
  u.target.name = "PhiBr(" + m.name + ")";
  for (int k = 0; k < m.lat().size(); ++k) {
    RatMatrix stacked(0, m.rank(k));
    for (const auto& part : parts) stacked = vstack(stacked, part.components[k]);
    u.eta.components.push_back(std::move(stacked));
  }
  return u;
}

/// Integral analysis of eta at one level: target (+)_x X_x / I with X_x = {v : (c_w - 1) v in I for w in W_x}.
struct IntegralEtaLevel {
  IntMatrix matrix;        // eta in X-coordinates
  IntMatrix relations;     // the killed spans in X-coordinates
  AbelianPresentation target;
  IntMatrix free_matrix;   // eta followed by the projection onto the target's free part
  std::size_t kernel_rank = 0;
  AbelianPresentation cokernel;
};

inline IntegralEtaLevel integral_eta(const MackeyModule& m, const std::vector<BrauerRing>& rings, const SplitFamily& family, int k) {
  if (m.mackey.base != Base::Z) throw Error("integral_eta: module is not integral");
  const auto& l = m.lat();
  IntegralEtaLevel out;
  out.matrix = IntMatrix(0, m.rank(k));
  std::vector<IntMatrix> rel_blocks;
  for (std::size_t c = 0; c < rings.size(); ++c) {
    const auto& rb = rings[c];
    const int h = rb.subgroup;
    const std::size_t r = m.rank(h);
    const IntMatrix killed = to_int(family.components[c].quotient.killed);
    const auto fp = fixed_points(l, rb.weyl, k);
    for (std::size_t o = 0; o < fp.orbits.size(); ++o) {
      const int rep = fp.ambient.reps[fp.points[fp.orbits[o].front()]];
      const auto& stab = fp.stabilizers[o];
      // preimage of I^{|stab|} under v |-> ((c_w - 1) v)_w
      IntMatrix a(0, r), blocks(0, 0);
      for (int w : stab) {
        a = vstack(a, to_int(m.mackey.conj[rb.weyl.section[w]][h]) - IntMatrix::identity(r));
        blocks = block_diagonal(blocks, killed);
      }
      IntMatrix x_basis = IntMatrix::identity(r);
      if (a.rows() > 0) {
        const IntMatrix sys = hstack(a, blocks * Int(-1));
        const IntMatrix ker = integer_kernel(sys);
        x_basis = lattice_basis(ker.block(0, 0, r, ker.cols()));
      }
      const int hg = l.conjugate_by_inverse(rep, h);
      const IntMatrix values = to_int(m.mackey.conj[rep][hg] * m.mackey.res[k][hg]);
      auto coords = solve_integral(x_basis, values);
      auto kcoords = solve_integral(x_basis, killed);
      if (!coords || !kcoords) throw Error("integral_eta: values leave the invariant lattice");
      out.matrix = vstack(out.matrix, *coords);
      rel_blocks.push_back(*kcoords);
    }
  }
  out.relations = IntMatrix(0, 0);
  for (const auto& b : rel_blocks) out.relations = block_diagonal(out.relations, b);
  if (out.relations.rows() == 0) out.relations = IntMatrix(out.matrix.rows(), 0);
  out.target = cokernel(out.relations);
  out.free_matrix = out.target.free_projection() * out.matrix;
  const IntMatrix all = hstack(out.matrix, out.relations);
  out.cokernel = cokernel(all);
  out.kernel_rank = m.rank(k) - (rank(to_rat(all)) - rank(to_rat(out.relations)));
  return out;
}

}  // namespace mackey
