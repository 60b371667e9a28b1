#pragma once

#include "mackey/algebra.hpp"
#include "mackey/group.hpp"
#include "mackey/smith.hpp"

namespace mackey {

/// S semidirect W over Q: basis s_i w at index i + dim(S) * w, with (s w)(s' w') = s alpha_w(s') w w'.
struct SkewGroupRing {
  FiniteDimAlgebra base;
  FiniteGroup weyl;
  std::vector<RatMatrix> alpha;  // ring automorphisms of S, one per Weyl element
  FiniteDimAlgebra algebra;

  std::size_t index(std::size_t i, int w) const { return i + base.dim * static_cast<std::size_t>(w); }
};

/// Builds the skew group ring after checking that alpha is a homomorphism into Aut(S).
inline SkewGroupRing skew_group_ring(FiniteDimAlgebra s, FiniteGroup w, std::vector<RatMatrix> alpha) {
  if (static_cast<int>(alpha.size()) != w.order()) throw Error("skew_group_ring: need one automorphism per group element");
  for (int a = 0; a < w.order(); ++a) {
    const auto& m = alpha[a];
    if (m.rows() != s.dim || m.cols() != s.dim) throw Error("skew_group_ring: automorphism has the wrong shape");
    if (s.dim > 0 && determinant(m) == 0) throw Error("skew_group_ring: alpha is not an automorphism (singular)");
    if (m.apply(s.unit) != s.unit) throw Error("skew_group_ring: alpha is not an automorphism (unit not fixed)");
    for (std::size_t i = 0; i < s.dim; ++i)
      if (m * s.left[i] != s.left_multiplication(m.col(i)) * m)
        throw Error("skew_group_ring: alpha is not an automorphism (not multiplicative)");
  }
  if (alpha[0] != RatMatrix::identity(s.dim)) throw Error("skew_group_ring: alpha is not a homomorphism (identity)");
  for (int a = 0; a < w.order(); ++a)
    for (int b = 0; b < w.order(); ++b)
      if (alpha[a] * alpha[b] != alpha[w.mul(a, b)]) throw Error("skew_group_ring: alpha is not a homomorphism");
  SkewGroupRing r{std::move(s), std::move(w), std::move(alpha), {}};
  const std::size_t d = r.base.dim;
  const int n = r.weyl.order();
  r.algebra.dim = d * n;
  for (int a = 0; a < n; ++a)
    for (std::size_t i = 0; i < d; ++i) {
      RatMatrix left(d * n, d * n);
      for (int b = 0; b < n; ++b)
        for (std::size_t j = 0; j < d; ++j) {
          // s_i alpha_a(s_j) at weyl element ab
          const RatVector prod = r.base.left[i].apply(r.alpha[a].col(j));
          const int ab = r.weyl.mul(a, b);
          for (std::size_t k = 0; k < d; ++k) left(r.index(k, ab), r.index(j, b)) = prod[k];
        }
      r.algebra.left.push_back(std::move(left));
    }
  r.algebra.unit = RatVector(d * n);
  for (std::size_t k = 0; k < d; ++k) r.algebra.unit[k] = r.base.unit[k];
  if (auto err = r.algebra.check_axioms()) throw Error("skew_group_ring: " + *err);
  return r;
}

/// A module over S semidirect W: an S-module with a covariant W-action.
struct SkewModule {
  std::size_t dim = 0;
  std::vector<RatMatrix> s_action;  // one per basis element of S
  std::vector<RatMatrix> phi;       // one per Weyl element

  RatMatrix s_act(const RatVector& s) const {
    RatMatrix m(dim, dim);
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] != 0) m += s_action[i] * s[i];
    return m;
  }
};

/// S-module axioms, W-action, and covariance phi_w(s v) = alpha_w(s) phi_w(v).
inline std::optional<std::string> validate_skew_module(const SkewGroupRing& r, const SkewModule& v) {
  if (v.s_action.size() != r.base.dim || static_cast<int>(v.phi.size()) != r.weyl.order()) return "wrong number of action matrices";
  for (const auto& m : v.s_action)
    if (m.rows() != v.dim || m.cols() != v.dim) return "S-action matrix has the wrong shape";
  for (const auto& m : v.phi)
    if (m.rows() != v.dim || m.cols() != v.dim) return "W-action matrix has the wrong shape";
  try {
    module_character(r.base, v.s_action);
  } catch (const Error& e) {
    return std::string("not an S-module: ") + e.what();
  }
  if (v.phi[0] != RatMatrix::identity(v.dim)) return "identity of W does not act trivially";
  for (int a = 0; a < r.weyl.order(); ++a)
    for (int b = 0; b < r.weyl.order(); ++b)
      if (v.phi[a] * v.phi[b] != v.phi[r.weyl.mul(a, b)]) return "W-action is not a homomorphism";
  for (int a = 0; a < r.weyl.order(); ++a)
    for (std::size_t i = 0; i < r.base.dim; ++i)
      if (v.phi[a] * v.s_action[i] != v.s_act(r.alpha[a].col(i)) * v.phi[a])
        return "covariance fails for w=" + std::to_string(a) + ", s_" + std::to_string(i);
  return std::nullopt;
}

/// Action matrices of the skew group ring's basis: s_i w acts by s_i phi_w.
inline std::vector<RatMatrix> algebra_action(const SkewGroupRing& r, const SkewModule& v) {
  std::vector<RatMatrix> out(r.algebra.dim);
  for (int w = 0; w < r.weyl.order(); ++w)
    for (std::size_t i = 0; i < r.base.dim; ++i) out[r.index(i, w)] = v.s_action[i] * v.phi[w];
  return out;
}

/// Traces of the skew group ring's basis elements: the isomorphism invariant over a semisimple ring.
inline RatVector skew_character(const SkewGroupRing& r, const SkewModule& v) { return module_character(r.algebra, algebra_action(r, v)); }

/// Whether a matrix is a morphism of skew modules.
inline bool is_skew_morphism(const SkewGroupRing& r, const SkewModule& a, const SkewModule& b, const RatMatrix& f) {
  if (f.rows() != b.dim || f.cols() != a.dim) return false;
  for (std::size_t i = 0; i < r.base.dim; ++i)
    if (f * a.s_action[i] != b.s_action[i] * f) return false;
  for (int w = 0; w < r.weyl.order(); ++w)
    if (f * a.phi[w] != b.phi[w] * f) return false;
  return true;
}

/// The tensor unit (S, alpha).
inline SkewModule unit_skew_module(const SkewGroupRing& r) {
  return SkewModule{r.base.dim, r.base.left, r.alpha};
}

/// The skew group ring acting on itself from the left.
inline SkewModule regular_skew_module(const SkewGroupRing& r) {
  SkewModule v;
  v.dim = r.algebra.dim;
  for (std::size_t i = 0; i < r.base.dim; ++i) v.s_action.push_back(r.algebra.left[r.index(i, 0)]);
  for (int w = 0; w < r.weyl.order(); ++w) {
    RatVector e(r.algebra.dim);
    for (std::size_t i = 0; i < r.base.dim; ++i) e[r.index(i, w)] = r.base.unit[i];
    v.phi.push_back(r.algebra.left_multiplication(e));
  }
  return v;
}

inline SkewModule zero_skew_module(const SkewGroupRing& r) {
  return SkewModule{0, std::vector<RatMatrix>(r.base.dim, RatMatrix(0, 0)), std::vector<RatMatrix>(r.weyl.order(), RatMatrix(0, 0))};
}

inline SkewModule direct_sum(const SkewModule& a, const SkewModule& b) {
  SkewModule s;
  s.dim = a.dim + b.dim;
  for (std::size_t i = 0; i < a.s_action.size(); ++i) s.s_action.push_back(block_diagonal(a.s_action[i], b.s_action[i]));
  for (std::size_t w = 0; w < a.phi.size(); ++w) s.phi.push_back(block_diagonal(a.phi[w], b.phi[w]));
  return s;
}

/// The same module written in a new basis: v_new = p^{-1} v_old.
inline SkewModule change_basis(const SkewModule& v, const RatMatrix& p) {
  const auto inv = inverse(p);
  if (!inv) throw Error("change_basis: singular matrix");
  SkewModule out = v;
  for (auto& m : out.s_action) m = *inv * m * p;
  for (auto& m : out.phi) m = *inv * m * p;
  return out;
}

/// V (x)_S V' with the diagonal W-action, presented as a quotient of V (x)_Q V'.
struct SkewTensor {
  SkewModule module;
  RatMatrix relations;        // spanning (s v) (x) v' - v (x) (s v')
  RationalQuotient quotient;  // of the dim(V) dim(V') ambient
};

inline SkewTensor skew_tensor(const SkewGroupRing& r, const SkewModule& a, const SkewModule& b) {
  if (!r.base.is_commutative()) throw Error("skew_tensor: base ring is not commutative");
  const std::size_t n = a.dim * b.dim;
  const auto ia = RatMatrix::identity(a.dim), ib = RatMatrix::identity(b.dim);
  RatMatrix rel(n, 0);
  for (std::size_t i = 0; i < r.base.dim; ++i) rel = hstack(rel, kronecker(a.s_action[i], ib) - kronecker(ia, b.s_action[i]));
  SkewTensor t;
  t.relations = rel;
  t.quotient = rational_quotient(n, rel);
  const auto& q = t.quotient;
  t.module.dim = q.dim;
  for (std::size_t i = 0; i < r.base.dim; ++i) t.module.s_action.push_back(q.projection * kronecker(a.s_action[i], ib) * q.section);
  for (int w = 0; w < r.weyl.order(); ++w) t.module.phi.push_back(q.projection * kronecker(a.phi[w], b.phi[w]) * q.section);
  return t;
}

/// f (x) g descended to the tensor products.
inline RatMatrix skew_tensor_map(const SkewTensor& src, const SkewTensor& dst, const RatMatrix& f, const RatMatrix& g) {
  const RatMatrix m = dst.quotient.projection * kronecker(f, g);
  if (!(m * src.relations).is_zero()) throw Error("skew_tensor_map: maps are not balanced");
  return m * src.quotient.section;
}

}  // namespace mackey
