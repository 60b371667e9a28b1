#pragma once

#include "mackey/brauer.hpp"
#include "mackey/characters.hpp"
#include "mackey/constructors.hpp"

namespace mackey {

/// One factor Q(zeta_n) semidirect W_G(H) of the cell model, for a cyclic class representative H.
struct CellFactor {
  int subgroup = -1;
  int generator = -1;
  int n = 1;
  WeylGroup weyl;
  std::vector<long long> m;  // m[w] in [1, n]: s(w)^{-1} g s(w) = g^{m[w]}
  SkewGroupRing algebra;
  SemisimplicityCertificate semisimple;
};

struct CellModelDescriptor {
  LatticePtr lattice;
  std::vector<CellFactor> factors;

  const FiniteGroup& group() const { return lattice->group(); }
};

inline CellModelDescriptor cell_model(LatticePtr lattice) {
  const auto& l = *lattice;
  const auto& g = l.group();
  CellModelDescriptor d;
  d.lattice = lattice;
  for (int h : l.class_reps()) {
    if (!l.is_cyclic(h)) continue;
    CellFactor f;
    f.subgroup = h;
    f.generator = l.cyclic_generator(h);
    f.n = l[h].order();
    f.weyl = weyl_group(l, h);
    for (int w = 0; w < f.weyl.order(); ++w) {
      const int s = f.weyl.section[w];
      const int target = g.mul(g.mul(g.inv(s), f.generator), s);
      long long m = 0;
      for (long long k = 1; k <= f.n && m == 0; ++k)
        if (g.power(f.generator, k) == target) m = k;
      if (m == 0) throw Error("cell_model: section does not normalize the cyclic subgroup");
      f.m.push_back(m);
    }
    for (int a = 0; a < f.weyl.order(); ++a)
      for (int b = 0; b < f.weyl.order(); ++b)
        if ((f.m[a] * f.m[b] - f.m[f.weyl.quotient.mul(a, b)]) % f.n != 0) throw Error("cell_model: m_H is not a homomorphism");
    std::vector<RatMatrix> alpha;
    for (long long m : f.m) alpha.push_back(galois_matrix(f.n, m));
    f.algebra = skew_group_ring(cyclotomic_algebra(f.n), f.weyl.quotient, std::move(alpha));
    f.semisimple = is_semisimple(f.algebra.algebra);
    d.factors.push_back(std::move(f));
  }
  return d;
}

/// Coordinates in the power basis of Q(zeta_n) of an element of a larger cyclotomic field lying in it.
inline std::optional<RatVector> descend_cyclotomic(const Cyclotomic& x, int n) {
  const int e = x.conductor();
  if (e % n != 0) return std::nullopt;
  const auto d = static_cast<std::size_t>(euler_phi(n));
  RatMatrix basis(x.degree(), d);
  for (std::size_t j = 0; j < d; ++j)
    basis.set_block(0, j, RatMatrix::column(Cyclotomic::root_power(n, static_cast<long long>(j)).embed(e).coords()));
  auto sol = solve(basis, RatMatrix::column(x.coords()));
  if (!sol) return std::nullopt;
  return sol->col(0);
}

struct RepBrauerEntry {
  int subgroup = -1;
  bool cyclic = false;
  int n = 0;
  std::size_t dim = 0;
  std::size_t expected = 0;
  std::optional<AbelianPresentation> integral;  // Rep(H) modulo induced, over Z
  // cyclic only
  int faithful_character = -1;
  RatMatrix iso;  // R-bar(H) -> Q(zeta_n), evaluation at the generator
  bool iso_bijective = false;
  bool iso_multiplicative = false;
  bool minimal_polynomial = false;  // the faithful class x has Phi_n(x) = 0 and 1, x, .. x^{phi-1} independent
  bool maps_to_root = false;        // iso(x) = zeta_n
  std::vector<long long> m;
  bool weyl_galois = false;

  bool passed() const {
    if (dim != expected) return false;
    if (!cyclic) return true;
    return iso_bijective && iso_multiplicative && minimal_polynomial && maps_to_root && weyl_galois;
  }
};

struct RepBrauerReport {
  std::vector<RepBrauerEntry> entries;
  bool passed() const {
    return std::all_of(entries.begin(), entries.end(), [](const RepBrauerEntry& e) { return e.passed(); });
  }
};

inline RepBrauerReport rep_brauer_check(LatticePtr lattice) {
  const auto& l = *lattice;
  const auto rep = rep_green(lattice);
  const auto rq = scalar_extend(rep);
  const auto sc = subgroup_characters(l);
  const auto model = cell_model(lattice);
  RepBrauerReport report;
  for (int h : l.class_reps()) {
    RepBrauerEntry e;
    e.subgroup = h;
    e.cyclic = l.is_cyclic(h);
    e.n = l[h].order();
    e.expected = e.cyclic ? static_cast<std::size_t>(euler_phi(e.n)) : 0;
    e.integral = induced_quotient(rep.mackey, h).integral;
    const auto rb = brauer_ring(rq, h);
    e.dim = rb.quotient.dim;
    if (!e.cyclic || e.dim != e.expected) {
      report.entries.push_back(std::move(e));
      continue;
    }
    const auto& factor = *std::find_if(model.factors.begin(), model.factors.end(), [&](const CellFactor& f) { return f.subgroup == h; });
    const auto& table = sc.tables[h];
    const int g = sc.locals[h].to_local[factor.generator];
    const auto& field = factor.algebra.base;
    const auto& rbar = rb.algebra();
    // evaluation at g of the lift of each basis class
    auto evaluate = [&](const RatVector& lifted) {
      Cyclotomic v(table.conductor);
      for (std::size_t j = 0; j < lifted.size(); ++j)
        if (lifted[j] != 0) v += table.value(static_cast<int>(j), g) * lifted[j];
      return v;
    };
    e.iso = RatMatrix(e.dim, e.dim);
    bool descended = true;
    for (std::size_t i = 0; i < e.dim; ++i) {
      auto c = descend_cyclotomic(evaluate(rb.quotient.section.col(i)), e.n);
      if (!c) {
        descended = false;
        break;
      }
      e.iso.set_block(0, i, RatMatrix::column(*c));
    }
    if (descended) {
      e.iso_bijective = determinant(e.iso) != 0;
      e.iso_multiplicative = e.iso.apply(rbar.unit) == field.unit;
      for (std::size_t i = 0; i < e.dim && e.iso_multiplicative; ++i)
        if (e.iso * rbar.left[i] != field.left_multiplication(e.iso.col(i)) * e.iso) e.iso_multiplicative = false;
    }
    const auto zeta = Cyclotomic::root_power(e.n, 1);
    for (int chi = 0; chi < static_cast<int>(table.size()); ++chi) {
      auto v = descend_cyclotomic(table.value(chi, g), e.n);
      if (v && *v == zeta.coords()) {
        e.faithful_character = chi;
        break;
      }
    }
    if (e.faithful_character >= 0) {
      const auto x = rb.project(standard_basis_vector(table.size(), static_cast<std::size_t>(e.faithful_character)));
      const IntPoly& phi = cyclotomic_polynomial(e.n);
      RatVector power = rbar.unit, value(e.dim);
      RatMatrix powers(e.dim, 0);
      for (std::size_t k = 0; k < phi.size(); ++k) {
        if (k < e.dim) powers = hstack(powers, RatMatrix::column(power));
        for (std::size_t i = 0; i < e.dim; ++i) value[i] += power[i] * Rat(phi[k]);
        power = rbar.multiply(power, x);
      }
      e.minimal_polynomial = value == RatVector(e.dim) && rank(powers) == e.dim;
      e.maps_to_root = descended && e.iso.apply(x) == zeta.coords();
    }
    e.m = factor.m;
    e.weyl_galois = descended && e.iso_bijective;
    for (int w = 0; w < factor.weyl.order() && e.weyl_galois; ++w)
      if (e.iso * rb.skew.alpha[w] != galois_matrix(e.n, factor.m[w]) * e.iso) e.weyl_galois = false;
    report.entries.push_back(std::move(e));
  }
  return report;
}

struct GradedSkewModule {
  SkewModule even, odd;
};

struct CellObject {
  std::vector<GradedSkewModule> parts;  // one per factor of the descriptor
};

/// Per factor and parity, the character of the module over the skew group ring.
struct CellInvariant {
  std::vector<std::array<RatVector, 2>> characters;
  friend bool operator==(const CellInvariant& a, const CellInvariant& b) { return a.characters == b.characters; }
  friend bool operator!=(const CellInvariant& a, const CellInvariant& b) { return !(a == b); }
};

inline void check_object(const CellModelDescriptor& d, const CellObject& x, const char* where) {
  if (x.parts.size() != d.factors.size())
    throw Error(std::string(where) + ": object has " + std::to_string(x.parts.size()) + " factors, descriptor has " +
                std::to_string(d.factors.size()));
  for (std::size_t i = 0; i < x.parts.size(); ++i)
    for (int parity = 0; parity < 2; ++parity) {
      const auto& v = parity == 0 ? x.parts[i].even : x.parts[i].odd;
      if (auto err = validate_skew_module(d.factors[i].algebra, v))
        throw Error(std::string(where) + ": factor " + std::to_string(i) + (parity == 0 ? " even" : " odd") + ": " + *err);
    }
}

inline CellInvariant classify_object(const CellModelDescriptor& d, const CellObject& x) {
  check_object(d, x, "classify_object");
  CellInvariant inv;
  for (std::size_t i = 0; i < x.parts.size(); ++i) {
    if (!d.factors[i].semisimple.semisimple) throw Error("classify_object: factor algebra is not semisimple");
    const auto& r = d.factors[i].algebra;
    inv.characters.push_back({skew_character(r, x.parts[i].even), skew_character(r, x.parts[i].odd)});
  }
  return inv;
}

inline bool iso_test(const CellModelDescriptor& d, const CellObject& x, const CellObject& y) {
  return classify_object(d, x) == classify_object(d, y);
}

inline CellObject zero_object(const CellModelDescriptor& d) {
  CellObject x;
  for (const auto& f : d.factors) x.parts.push_back({zero_skew_module(f.algebra), zero_skew_module(f.algebra)});
  return x;
}

/// The base field in even degree at every factor.
inline CellObject unit_object(const CellModelDescriptor& d) {
  CellObject x;
  for (const auto& f : d.factors) x.parts.push_back({unit_skew_module(f.algebra), zero_skew_module(f.algebra)});
  return x;
}

inline CellObject graded_tensor(const CellModelDescriptor& d, const CellObject& x, const CellObject& y) {
  check_object(d, x, "graded_tensor");
  check_object(d, y, "graded_tensor");
  CellObject out;
  for (std::size_t i = 0; i < d.factors.size(); ++i) {
    const auto& r = d.factors[i].algebra;
    const auto& a = x.parts[i];
    const auto& b = y.parts[i];
    out.parts.push_back({direct_sum(skew_tensor(r, a.even, b.even).module, skew_tensor(r, a.odd, b.odd).module),
                         direct_sum(skew_tensor(r, a.even, b.odd).module, skew_tensor(r, a.odd, b.even).module)});
  }
  return out;
}

/// a (x) b -> b (x) a on the tensor products over the base field.
inline RatMatrix skew_flip(const SkewTensor& ab, const SkewTensor& ba, std::size_t dim_a, std::size_t dim_b) {
  RatMatrix flip(dim_a * dim_b, dim_a * dim_b);
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_b; ++j) flip(j * dim_a + i, i * dim_b + j) = 1;
  return ba.quotient.projection * flip * ab.quotient.section;
}

struct GradedMap {
  RatMatrix even, odd;
};

/// The symmetry x (x) y -> y (x) x with the Koszul sign (-1)^{|a||b|}, one map per factor.
inline std::vector<GradedMap> graded_symmetry(const CellModelDescriptor& d, const CellObject& x, const CellObject& y) {
  check_object(d, x, "graded_symmetry");
  check_object(d, y, "graded_symmetry");
  std::vector<GradedMap> out;
  for (std::size_t i = 0; i < d.factors.size(); ++i) {
    const auto& r = d.factors[i].algebra;
    const auto& xe = x.parts[i].even;
    const auto& xo = x.parts[i].odd;
    const auto& ye = y.parts[i].even;
    const auto& yo = y.parts[i].odd;
    auto swap = [&](const SkewModule& a, const SkewModule& b) {
      return skew_flip(skew_tensor(r, a, b), skew_tensor(r, b, a), a.dim, b.dim);
    };
    GradedMap m;
    m.even = block_diagonal(swap(xe, ye), swap(xo, yo) * Rat(-1));
    const RatMatrix eo = swap(xe, yo), oe = swap(xo, ye);
    // x_e y_o lands in the second odd block of y (x) x, x_o y_e in the first
    m.odd = RatMatrix(oe.rows() + eo.rows(), eo.cols() + oe.cols());
    m.odd.set_block(oe.rows(), 0, eo);
    m.odd.set_block(0, eo.cols(), oe);
    out.push_back(std::move(m));
  }
  return out;
}

/// A module over R-bar(H) semidirect W rewritten over Q(zeta_n) semidirect W through iso: R-bar(H) -> Q(zeta_n).
inline SkewModule transport(const RatMatrix& iso, const SkewModule& v) {
  const auto inv = inverse(iso);
  if (!inv) throw Error("transport: map is not invertible");
  SkewModule out{v.dim, {}, v.phi};
  for (std::size_t j = 0; j < iso.rows(); ++j) {
    RatMatrix m(v.dim, v.dim);
    for (std::size_t i = 0; i < iso.cols(); ++i)
      if ((*inv)(i, j) != 0) m += v.s_action[i] * (*inv)(i, j);
    out.s_action.push_back(std::move(m));
  }
  return out;
}

/// br(M) of a module over the rational representation ring, placed in even degree.
inline CellObject rep_cell_object(const CellModelDescriptor& d, const MackeyModule& m) {
  if (m.ring->name.rfind("Rep", 0) != 0 || m.ring->mackey.base != Base::Q) throw Error("rep_cell_object: module must be over Rep tensored with Q");
  const auto report = rep_brauer_check(d.lattice);
  const auto family = br(m);
  CellObject x;
  for (const auto& f : d.factors) {
    const auto e = std::find_if(report.entries.begin(), report.entries.end(), [&](const RepBrauerEntry& r) { return r.subgroup == f.subgroup; });
    const auto c = std::find_if(family.components.begin(), family.components.end(), [&](const BrauerComponent& b) { return b.subgroup == f.subgroup; });
    if (e == report.entries.end() || c == family.components.end() || !e->passed()) throw Error("rep_cell_object: no certified isomorphism for a factor");
    x.parts.push_back({transport(e->iso, c->module), zero_skew_module(f.algebra)});
  }
  return x;
}

}  // namespace mackey
