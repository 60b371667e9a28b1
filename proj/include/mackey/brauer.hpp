#pragma once

#include "mackey/mackey.hpp"
#include "mackey/skew.hpp"

namespace mackey {

/// M(H) modulo the span of images of ind^H_{H'} over proper H' < H.
struct InducedQuotient {
  int subgroup = -1;
  Base base = Base::Z;
  RatMatrix killed;                              // spanning columns in M(H) coordinates
  std::optional<AbelianPresentation> integral;  // over Z only; torsion allowed
  std::size_t dim = 0;                           // free rank (the rational dimension)
  RatMatrix projection;                          // dim x rank M(H), onto the free part
  RatMatrix section;                             // rank M(H) x dim
};

inline InducedQuotient induced_quotient(const MackeyFunctor& m, int h) {
  const auto& l = m.lat();
  InducedQuotient q;
  q.subgroup = h;
  q.base = m.base;
  const std::size_t n = m.rank[h];
  q.killed = RatMatrix(n, 0);
  for (int k : l.maximal_subgroups_of(h)) q.killed = hstack(q.killed, m.ind[h][k]);
  if (m.base == Base::Z) {
    if (!is_integral(q.killed)) throw Error("induced_quotient: non-integral induction over Z");
    q.integral = cokernel(to_int(q.killed));
    q.dim = q.integral->free_rank;
    q.projection = to_rat(q.integral->free_projection());
    q.section = to_rat(q.integral->free_section);
  } else {
    auto rq = rational_quotient(n, q.killed);
    q.dim = rq.dim;
    q.projection = std::move(rq.projection);
    q.section = std::move(rq.section);
  }
  return q;
}

/// R-bar(H) with its Weyl action, as the skew group ring R-bar(H) x| W_G(H).
struct BrauerRing {
  int subgroup = -1;
  WeylGroup weyl;
  InducedQuotient quotient;
  SkewGroupRing skew;

  const FiniteDimAlgebra& algebra() const { return skew.base; }
  /// Class in R-bar(H) of an element of R(H).
  RatVector project(const RatVector& r) const { return quotient.projection.apply(r); }
};

inline BrauerRing brauer_ring(const GreenFunctor& r, int h) {
  const auto& l = r.lat();
  BrauerRing b;
  b.subgroup = h;
  b.weyl = weyl_group(l, h);
  b.quotient = induced_quotient(r.mackey, h);
  const auto& q = b.quotient;
  for (std::size_t i = 0; i < r.rank(h); ++i) {
    if (!(q.projection * r.mult[h][i] * q.killed).is_zero())
      throw Error("brauer_ring: induced span is not a left ideal at H=" + std::to_string(h));
    if (!(q.projection * r.right_multiplication(h, standard_basis_vector(r.rank(h), i)) * q.killed).is_zero())
      throw Error("brauer_ring: induced span is not a right ideal at H=" + std::to_string(h));
  }
  FiniteDimAlgebra alg;
  alg.dim = q.dim;
  for (std::size_t i = 0; i < q.dim; ++i) alg.left.push_back(q.projection * r.left_multiplication(h, q.section.col(i)) * q.section);
  alg.unit = q.projection.apply(r.one[h]);
  std::vector<RatMatrix> alpha;
  for (int w = 0; w < b.weyl.order(); ++w) {
    const auto& c = r.mackey.conj[b.weyl.section[w]][h];
    if (!(q.projection * c * q.killed).is_zero()) throw Error("brauer_ring: conjugation does not descend");
    alpha.push_back(q.projection * c * q.section);
  }
  b.skew = skew_group_ring(std::move(alg), b.weyl.quotient, std::move(alpha));
  return b;
}

/// One Brauer ring per conjugacy class representative, indexed by class.
inline std::vector<BrauerRing> brauer_rings(const GreenFunctor& r) {
  std::vector<BrauerRing> out;
  for (int h : r.lat().class_reps()) out.push_back(brauer_ring(r, h));
  return out;
}

/// M-bar(H) as a skew module over R-bar(H) x| W_G(H).
struct BrauerComponent {
  int subgroup = -1;
  InducedQuotient quotient;
  SkewModule module;
};

/// Descends the R(H)-action and the N_G(H)-conjugation to the quotient, checking both are well defined.
inline BrauerComponent brauer_quotient(const BrauerRing& rbar, const MackeyModule& m) {
  const int h = rbar.subgroup;
  BrauerComponent c;
  c.subgroup = h;
  c.quotient = induced_quotient(m.mackey, h);
  const auto& q = c.quotient;
  const auto& rq = rbar.quotient;
  for (std::size_t j = 0; j < rq.killed.cols(); ++j)
    if (!(q.projection * m.action(h, rq.killed.col(j))).is_zero())
      throw Error("brauer_quotient: induced part of the ring does not act by zero at H=" + std::to_string(h));
  for (std::size_t i = 0; i < m.ring->rank(h); ++i)
    if (!(q.projection * m.act[h][i] * q.killed).is_zero())
      throw Error("brauer_quotient: induced span is not a submodule at H=" + std::to_string(h));
  c.module.dim = q.dim;
  for (std::size_t i = 0; i < rq.dim; ++i) c.module.s_action.push_back(q.projection * m.action(h, rq.section.col(i)) * q.section);
  for (int w = 0; w < rbar.weyl.order(); ++w) {
    const auto& cm = m.mackey.conj[rbar.weyl.section[w]][h];
    if (!(q.projection * cm * q.killed).is_zero()) throw Error("brauer_quotient: conjugation does not descend");
    c.module.phi.push_back(q.projection * cm * q.section);
  }
  if (auto err = validate_skew_module(rbar.skew, c.module)) throw Error("brauer_quotient: " + *err);
  return c;
}

/// Br(M): components at the class representatives, in class order.
struct SplitFamily {
  std::vector<BrauerComponent> components;
};

inline SplitFamily br(const std::vector<BrauerRing>& rings, const MackeyModule& m) {
  SplitFamily f;
  for (const auto& rb : rings) f.components.push_back(brauer_quotient(rb, m));
  return f;
}

inline SplitFamily br(const MackeyModule& m) { return br(brauer_rings(*m.ring), m); }

/// Descended components of a morphism, each checked to be well defined and a skew-module map.
inline std::vector<RatMatrix> br_morphism(const std::vector<BrauerRing>& rings, const SplitFamily& src, const SplitFamily& dst,
                                          const MackeyMorphism& f) {
  std::vector<RatMatrix> out;
  for (std::size_t c = 0; c < rings.size(); ++c) {
    const int h = rings[c].subgroup;
    const auto& qs = src.components[c].quotient;
    const auto& qd = dst.components[c].quotient;
    if (!(qd.projection * f.components[h] * qs.killed).is_zero()) throw Error("br_morphism: map does not descend");
    RatMatrix m = qd.projection * f.components[h] * qs.section;
    if (!is_skew_morphism(rings[c].skew, src.components[c].module, dst.components[c].module, m))
      throw Error("br_morphism: descended map is not a skew-module morphism at H=" + std::to_string(h));
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace mackey
