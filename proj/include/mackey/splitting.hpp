#pragma once

#include "mackey/adjunction.hpp"
#include "mackey/constructors.hpp"

#include <sstream>

namespace mackey {

/// Outcome of one named verification.
struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

inline bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

template <class T>
std::string join(const std::vector<T>& v, const std::string& sep = ",") {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
  return os.str();
}

/// Primitive idempotents of B(G) (x) Q, one per class representative, in B(G) coordinates.
struct BurnsideIdempotents {
  std::vector<int> subgroups;  // class representatives, in class order
  std::vector<RatVector> e;
};

inline BurnsideIdempotents burnside_idempotents(const SubgroupLattice& l) {
  const int g = l.whole();
  const auto reps = l.local_class_reps(g);
  const auto marks = marks_matrix(l, g);
  const auto inv = inverse(to_rat(marks));
  if (!inv) throw Error("burnside_idempotents: singular marks matrix");
  BurnsideIdempotents out;
  for (int h : l.class_reps()) {
    std::size_t pos = reps.size();
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (l.class_of(reps[i]) == l.class_of(h)) pos = i;
    out.subgroups.push_back(h);
    out.e.push_back(inv->col(pos));
  }
  return out;
}

/// e_H^2 = e_H, e_H e_K = 0 for H, K not conjugate, and the e_H sum to one; b is B(G) over Q.
inline std::optional<std::string> check_idempotents(const GreenFunctor& b, const BurnsideIdempotents& ids) {
  const int g = b.lat().whole();
  RatVector sum(b.rank(g));
  for (std::size_t i = 0; i < ids.e.size(); ++i) {
    for (std::size_t j = 0; j < ids.e.size(); ++j) {
      const auto p = b.multiply(g, ids.e[i], ids.e[j]);
      if (p != (i == j ? ids.e[i] : RatVector(b.rank(g)))) return "product of e_" + std::to_string(ids.subgroups[i]) + " and e_" + std::to_string(ids.subgroups[j]);
    }
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += ids.e[i][k];
  }
  if (sum != b.one[g]) return std::string("idempotents do not sum to one");
  return std::nullopt;
}

/// A module's rational ring together with its Brauer rings.
struct RationalSetting {
  GreenPtr ring;
  std::vector<BrauerRing> rings;
};

inline RationalSetting rational_setting(const GreenPtr& ring) {
  RationalSetting s;
  s.ring = ring->mackey.base == Base::Q ? ring : std::make_shared<const GreenFunctor>(scalar_extend(*ring));
  s.rings = brauer_rings(*s.ring);
  return s;
}

/// M(G) -> prod_H M-bar(H)^{W_G(H)} with its rational verdict and, over Z, its integral kernel and cokernel.
struct BrauerHomomorphism {
  RatMatrix rational;
  bool rationally_bijective = false;
  std::optional<IntegralEtaLevel> integral;
  bool primes_divide_order = true;
};

inline BrauerHomomorphism brauer_homomorphism(const MackeyModule& m, const RationalSetting& s) {
  const auto u = unit_eta(m, s.ring, s.rings);
  BrauerHomomorphism b;
  const int g = m.lat().whole();
  b.rational = u.eta.components[g];
  b.rationally_bijective = b.rational.is_square() && (b.rational.rows() == 0 || determinant(b.rational) != 0);
  if (m.mackey.base == Base::Z) {
    b.integral = integral_eta(m, s.rings, u.family, g);
    b.primes_divide_order = b.integral->kernel_rank == 0 && primes_divide(b.integral->cokernel.torsion, m.lat().group().order());
  }
  return b;
}

inline BrauerHomomorphism brauer_homomorphism(const MackeyModule& m) { return brauer_homomorphism(m, rational_setting(m.ring)); }

struct SplittingReport {
  std::string module;
  std::vector<CheckResult> checks;
  std::vector<std::size_t> source_ranks;                  // per level
  std::vector<std::vector<std::size_t>> component_ranks;  // [class][level] ranks of Phi_H Br_H M
  std::vector<std::size_t> brauer_dims;                   // per class
  bool integral = false;
  std::vector<std::vector<Int>> cokernel_torsion;         // per level, over Z
  std::vector<std::size_t> kernel_ranks;                  // per level, over Z

  bool passed() const { return all_passed(checks); }
};

/// Unit, counit, triangle identities, integral sharpness and idempotent agreement for one module.
inline SplittingReport verify_splitting(const MackeyModule& m, const RationalSetting& s) {
  const auto& l = m.lat();
  const int n = l.size();
  const Int order = l.group().order();
  SplittingReport rep;
  rep.module = m.name;
  rep.integral = m.mackey.base == Base::Z;
  const auto u = unit_eta(m, s.ring, s.rings);
  rep.source_ranks = m.mackey.rank;
  for (const auto& c : u.family.components) rep.brauer_dims.push_back(c.quotient.dim);
  for (const auto& p : u.phis) rep.component_ranks.push_back(p.module.mackey.rank);

  {
    CheckResult c{"phi_modules_valid", true, ""};
    for (const auto& p : u.phis) {
      auto v = validate_module(p.module);
      if (!v.ok()) {
        c.passed = false;
        c.detail = p.module.name + ": " + v.summary();
        break;
      }
    }
    rep.checks.push_back(c);
  }
  {
    auto v = validate_morphism(u.source, u.target, u.eta);
    rep.checks.push_back({"eta_is_morphism", v.ok(), v.ok() ? "" : v.summary()});
  }
  {
    CheckResult c{"eta_rational_iso", true, ""};
    for (int k = 0; k < n; ++k) {
      const auto& e = u.eta.components[k];
      if (!e.is_square() || (e.rows() > 0 && determinant(e) == 0)) {
        c.passed = false;
        c.detail = "level " + std::to_string(k) + ": " + std::to_string(e.cols()) + " -> " + std::to_string(e.rows());
        break;
      }
    }
    rep.checks.push_back(c);
  }
  if (rep.integral) {
    CheckResult c{"eta_integral_primes", true, ""};
    for (int k = 0; k < n; ++k) {
      const auto lvl = integral_eta(m, s.rings, u.family, k);
      rep.cokernel_torsion.push_back(lvl.cokernel.torsion);
      rep.kernel_ranks.push_back(lvl.kernel_rank);
      const bool ok = lvl.kernel_rank == 0 && lvl.cokernel.free_rank == 0 && primes_divide(lvl.cokernel.torsion, order);
      if (!ok && c.passed) {
        c.passed = false;
        c.detail = "level " + std::to_string(k) + ": kernel rank " + std::to_string(lvl.kernel_rank) + ", cokernel free rank " +
                   std::to_string(lvl.cokernel.free_rank) + ", torsion " + join(lvl.cokernel.torsion);
      }
    }
    rep.checks.push_back(c);
  }
  {
    CheckResult counit{"counit_iso", true, ""}, tri_br{"triangle_br", true, ""}, tri_phi{"triangle_phi", true, ""};
    for (std::size_t c = 0; c < s.rings.size(); ++c) {
      const auto& rb = s.rings[c];
      const int h = rb.subgroup;
      const auto& ph = u.phis[c];
      const auto brphi = brauer_quotient(rb, ph.module);
      const auto eps = counit_eps(ph, brphi);
      const bool iso = eps.is_square() && (eps.rows() == 0 || determinant(eps) != 0) && is_skew_morphism(rb.skew, brphi.module, ph.v, eps);
      if (!iso && counit.passed) {
        counit.passed = false;
        counit.detail = "H=" + std::to_string(h);
      }
      // (eps Br) o (Br eta) = id on Br_H M
      const auto& mq = u.family.components[c].quotient;
      const RatMatrix br_eta = brphi.quotient.projection * u.parts[c].components[h] * mq.section;
      if (eps * br_eta != RatMatrix::identity(mq.dim) && tri_br.passed) {
        tri_br.passed = false;
        tri_br.detail = "H=" + std::to_string(h);
      }
      // (Phi eps) o (eta Phi) = id on Phi_H V
      const auto phi2 = phi(s.ring, rb, brphi.module);
      const auto eta_phi = unit_component(ph.module, brphi, phi2);
      const auto phi_eps = phi_morphism(phi2, ph, eps);
      if (compose(phi_eps, eta_phi).components != identity_morphism(ph.module).components && tri_phi.passed) {
        tri_phi.passed = false;
        tri_phi.detail = "H=" + std::to_string(h);
      }
    }
    rep.checks.push_back(counit);
    rep.checks.push_back(tri_br);
    rep.checks.push_back(tri_phi);
  }
  {
    CheckResult c{"idempotent_agreement", true, ""};
    auto bq = std::make_shared<const GreenFunctor>(scalar_extend(burnside_green(m.mackey.lattice)));
    const auto ids = burnside_idempotents(l);
    const auto act = canonical_burnside_action(u.source.mackey, bq);
    for (std::size_t i = 0; i < ids.e.size() && c.passed; ++i)
      for (int k = 0; k < n; ++k) {
        const auto e = bq->mackey.res[l.whole()][k].apply(ids.e[i]);
        const std::size_t dim = rank(act.action(k, e));
        if (dim != u.phis[i].module.rank(k)) {
          c.passed = false;
          c.detail = "H=" + std::to_string(ids.subgroups[i]) + ", K=" + std::to_string(k) + ": " + std::to_string(dim) + " vs " +
                     std::to_string(u.phis[i].module.rank(k));
          break;
        }
      }
    rep.checks.push_back(c);
  }
  return rep;
}

inline SplittingReport verify_splitting(const MackeyModule& m) { return verify_splitting(m, rational_setting(m.ring)); }

}  // namespace mackey
