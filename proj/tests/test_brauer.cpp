#include "mackey/splitting.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace mackey;

namespace {

int find_order(const SubgroupLattice& l, int order) {
  for (int h = 0; h < l.size(); ++h)
    if (l[h].order() == order) return h;
  return -1;
}

int class_index(const SubgroupLattice& l, int h) { return l.class_of(h); }

GreenPtr share(GreenFunctor g) { return std::make_shared<const GreenFunctor>(std::move(g)); }

SkewGroupRing cyclotomic_skew(int n, int m) {
  return skew_group_ring(cyclotomic_algebra(n), cyclic_group(2), {RatMatrix::identity(euler_phi(n)), galois_matrix(n, m)});
}

/// Random skew modules of dimension at most 4: sums of the unit and regular modules in a random basis.
std::vector<SkewModule> small_skew_modules(const SkewGroupRing& r, std::mt19937& rng) {
  std::vector<SkewModule> pieces{unit_skew_module(r)};
  if (r.algebra.dim <= 4) pieces.push_back(regular_skew_module(r));
  std::vector<SkewModule> out{zero_skew_module(r)};
  for (const auto& a : pieces) {
    out.push_back(a);
    for (const auto& b : pieces)
      if (a.dim + b.dim <= 4) out.push_back(direct_sum(a, b));
  }
  for (auto& v : out)
    if (v.dim > 0) v = change_basis(v, oracle::random_invertible(rng, v.dim));
  return out;
}

}  // namespace

TEST(SkewGroupRing, SpecExamples) {
  auto qc2 = skew_group_ring(cyclotomic_algebra(1), cyclic_group(2), {RatMatrix::identity(1), RatMatrix::identity(1)});
  EXPECT_EQ(qc2.algebra.dim, 2u);
  EXPECT_TRUE(qc2.algebra.is_commutative());
  // Q[C2]: the generator squares to one
  RatVector w{0, 1};
  EXPECT_EQ(qc2.algebra.multiply(w, w), (RatVector{1, 0}));

  auto z3 = cyclotomic_skew(3, 2);
  EXPECT_EQ(z3.algebra.dim, 4u);
  EXPECT_EQ(z3.algebra.center().cols(), 1u);
  EXPECT_TRUE(is_semisimple(z3.algebra).semisimple);
  EXPECT_FALSE(z3.algebra.is_commutative());

  auto s = cyclotomic_algebra(5);
  auto trivial = skew_group_ring(s, cyclic_group(1), {RatMatrix::identity(4)});
  EXPECT_EQ(trivial.algebra.left, s.left);
  EXPECT_EQ(trivial.algebra.unit, s.unit);
}

TEST(SkewGroupRing, RejectsBadActions) {
  auto s = cyclotomic_algebra(3);
  // zeta -> 2 zeta is linear but not multiplicative
  EXPECT_THROW(skew_group_ring(s, cyclic_group(2), {RatMatrix::identity(2), RatMatrix::identity(2) * Rat(2)}), Error);
  // galois(2) paired with the trivial group element fails the homomorphism check
  EXPECT_THROW(skew_group_ring(s, cyclic_group(2), {galois_matrix(3, 2), RatMatrix::identity(2)}), Error);
  EXPECT_THROW(skew_group_ring(s, cyclic_group(3), {RatMatrix::identity(2), RatMatrix::identity(2)}), Error);
}

TEST(SkewGroupRing, MaschkeOnCyclotomicFactors) {
  for (int n : {1, 2, 3, 4, 5, 6, 8, 12}) {
    const int phi_n = euler_phi(n);
    for (int m = 1; m < n || m == 1; ++m) {
      if (gcd_ll(m, n) != 1 || mod_pos(static_cast<long long>(m) * m, n) != 1 % n) continue;
      auto r = skew_group_ring(cyclotomic_algebra(n), cyclic_group(2), {RatMatrix::identity(phi_n), galois_matrix(n, m)});
      EXPECT_TRUE(is_semisimple(r.algebra).semisimple) << n << " " << m;
    }
  }
}

TEST(SkewModule, ValidationAndTensor) {
  auto r = cyclotomic_skew(3, 2);
  auto unit = unit_skew_module(r);
  EXPECT_FALSE(validate_skew_module(r, unit).has_value());
  auto reg = regular_skew_module(r);
  EXPECT_FALSE(validate_skew_module(r, reg).has_value());
  auto bad = unit;
  bad.phi[1] = RatMatrix::identity(2);
  EXPECT_TRUE(validate_skew_module(r, bad).has_value());

  // V (x) unit = V, unit (x) unit = unit
  auto t = skew_tensor(r, unit, unit).module;
  EXPECT_EQ(t.dim, unit.dim);
  EXPECT_EQ(skew_character(r, t), skew_character(r, unit));
  std::mt19937 rng(11);
  for (const auto& v : small_skew_modules(r, rng)) {
    auto vt = skew_tensor(r, v, unit).module;
    EXPECT_FALSE(validate_skew_module(r, vt).has_value());
    EXPECT_EQ(skew_character(r, vt), skew_character(r, v));
  }
  // ranks over the base multiply
  auto rr = skew_tensor(r, reg, reg).module;
  EXPECT_EQ(rr.dim / 2, (reg.dim / 2) * (reg.dim / 2));
  EXPECT_FALSE(validate_skew_module(r, rr).has_value());
}

TEST(BrauerQuotient, BurnsideHasRankOneEverywhere) {
  for (const auto& name : oracle::catalog()) {
    auto lat = make_lattice(build_group(name));
    auto b = burnside_green(lat);
    for (int h = 0; h < lat->size(); ++h) {
      // oracle: SNF of all induction matrices from proper subgroups, stacked
      IntMatrix stacked(b.rank(h), 0);
      for (int k = 0; k < lat->size(); ++k)
        if (lat->proper(k, h)) stacked = hstack(stacked, to_int(b.mackey.ind[h][k]));
      auto snf = smith_normal_form(stacked, false, false);
      EXPECT_EQ(b.rank(h) - snf.divisors.size(), 1u) << name;
      for (const auto& d : snf.divisors) EXPECT_EQ(d, 1) << name;
      auto q = induced_quotient(b.mackey, h);
      EXPECT_EQ(q.dim, 1u) << name;
      EXPECT_TRUE(q.integral->torsion.empty()) << name;
      auto one = q.projection.apply(b.one[h]);
      EXPECT_TRUE(one[0] == 1 || one[0] == -1) << name;
    }
  }
}

TEST(BrauerQuotient, RepDimensionsAreTotients) {
  for (const auto& name : oracle::catalog()) {
    auto lat = make_lattice(build_group(name));
    auto rq = scalar_extend(rep_green(lat));
    for (int h : lat->class_reps()) {
      auto q = induced_quotient(rq.mackey, h);
      const std::size_t expected = lat->is_cyclic(h) ? static_cast<std::size_t>(euler_phi((*lat)[h].order())) : 0u;
      EXPECT_EQ(q.dim, expected) << name << " H=" << h;
    }
  }
  auto c4 = make_lattice(build_group("C4"));
  EXPECT_EQ(induced_quotient(scalar_extend(rep_green(c4)).mackey, c4->whole()).dim, 2u);
  auto a4 = make_lattice(build_group("A4"));
  EXPECT_EQ(induced_quotient(scalar_extend(rep_green(a4)).mackey, find_order(*a4, 4)).dim, 0u);
}

TEST(BrauerQuotient, BrOfBurnsideOverS3) {
  auto lat = make_lattice(build_group("S3"));
  auto b = share(burnside_green(lat));
  auto fam = br(regular_module(b));
  ASSERT_EQ(fam.components.size(), 4u);
  for (const auto& c : fam.components) {
    EXPECT_EQ(c.module.dim, 1u);
    for (const auto& p : c.module.phi) EXPECT_EQ(p, RatMatrix::identity(1));
  }
}

TEST(BrauerQuotient, BrOfRepOverS3) {
  auto lat = make_lattice(build_group("S3"));
  auto r = share(scalar_extend(rep_green(lat)));
  auto fam = br(regular_module(r));
  std::vector<std::size_t> dims(4);
  for (const auto& c : fam.components) dims[(*lat)[c.subgroup].order() == 6 ? 3 : (*lat)[c.subgroup].order() - 1] = c.module.dim;
  // orders 1, 2, 3, 6
  EXPECT_EQ(dims, (std::vector<std::size_t>{1, 1, 2, 0}));
}

TEST(BrauerQuotient, IdentityAndSwapDescend) {
  for (const auto& name : {"C2", "S3", "Q8"}) {
    auto lat = make_lattice(build_group(name));
    auto b = share(burnside_green(lat));
    auto rings = brauer_rings(*b);
    auto m = regular_module(b);
    auto fam = br(rings, m);
    auto ids = br_morphism(rings, fam, fam, identity_morphism(m));
    for (std::size_t c = 0; c < ids.size(); ++c) EXPECT_EQ(ids[c], RatMatrix::identity(fam.components[c].module.dim));
    auto mm = direct_sum(m, m);
    auto fam2 = br(rings, mm);
    auto sw = br_morphism(rings, fam2, fam2, swap_morphism(m));
    for (const auto& s : sw) EXPECT_EQ(s * s, RatMatrix::identity(s.rows()));
  }
}

TEST(BrauerQuotient, CovarianceOnCatalog) {
  for (const auto& name : oracle::catalog()) {
    auto lat = make_lattice(build_group(name));
    for (auto ring : {share(burnside_green(lat)), share(scalar_extend(rep_green(lat)))}) {
      auto rings = brauer_rings(*ring);
      auto fam = br(rings, regular_module(ring));
      for (std::size_t c = 0; c < rings.size(); ++c)
        EXPECT_FALSE(validate_skew_module(rings[c].skew, fam.components[c].module).has_value()) << name;
    }
  }
}

TEST(Phi, SpecExamples) {
  auto s3 = make_lattice(build_group("S3"));
  auto r = share(scalar_extend(burnside_green(s3)));
  const int c3 = find_order(*s3, 3), c2 = find_order(*s3, 2);
  auto rings = brauer_rings(*r);
  const auto& rb = rings[class_index(*s3, c3)];
  auto p = phi(r, rb, unit_skew_module(rb.skew));
  EXPECT_EQ(p.module.rank(c2), 0u);
  EXPECT_EQ(p.module.rank(c3), 1u);
  EXPECT_TRUE(validate_module(p.module).ok()) << validate_module(p.module).summary();

  auto c2g = make_lattice(build_group("C2"));
  auto rc2 = share(scalar_extend(burnside_green(c2g)));
  auto rc = brauer_rings(*rc2);
  auto pc = phi(rc2, rc[class_index(*c2g, c2g->whole())], unit_skew_module(rc[class_index(*c2g, c2g->whole())].skew));
  EXPECT_EQ(pc.module.mackey.rank, (std::vector<std::size_t>{0, 1}));
}

TEST(Phi, RoundTripThroughCounit) {
  std::mt19937 rng(7);
  for (const auto& name : {"C2", "C4", "S3", "D4"}) {
    auto lat = make_lattice(build_group(name));
    for (auto ring : {share(scalar_extend(burnside_green(lat))), share(scalar_extend(rep_green(lat)))}) {
      auto rings = brauer_rings(*ring);
      for (const auto& rb : rings) {
        if (rb.skew.base.dim == 0) continue;
        for (const auto& v : small_skew_modules(rb.skew, rng)) {
          auto p = phi(ring, rb, v);
          ASSERT_TRUE(validate_module(p.module).ok()) << name << "\n" << validate_module(p.module).summary();
          EXPECT_EQ(p.module.rank(rb.subgroup), v.dim);
          auto c = brauer_quotient(rb, p.module);
          auto eps = counit_eps(p, c);
          ASSERT_TRUE(eps.is_square());
          if (eps.rows() > 0) EXPECT_NE(determinant(eps), 0);
          EXPECT_TRUE(is_skew_morphism(rb.skew, c.module, v, eps)) << name;
        }
      }
    }
  }
}

TEST(Unit, LevelGIsRestrictionThenProject) {
  auto lat = make_lattice(build_group("S3"));
  auto b = share(burnside_green(lat));
  auto s = rational_setting(b);
  auto m = regular_module(b);
  auto u = unit_eta(m, s.ring, s.rings);
  const int g = lat->whole();
  for (std::size_t c = 0; c < s.rings.size(); ++c) {
    const int h = s.rings[c].subgroup;
    const auto& lv = u.phis[c].levels[g];
    EXPECT_EQ(lv.embed * u.parts[c].components[g], u.family.components[c].quotient.projection * b->mackey.res[g][h]);
  }
  EXPECT_TRUE(validate_morphism(u.source, u.target, u.eta).ok());
}

TEST(BrauerHomomorphism, SpecExamples) {
  auto c2 = make_lattice(build_group("C2"));
  auto hb = brauer_homomorphism(regular_module(share(burnside_green(c2))));
  EXPECT_TRUE(hb.rationally_bijective);
  ASSERT_TRUE(hb.integral.has_value());
  EXPECT_EQ(hb.integral->cokernel.torsion, (std::vector<Int>{2}));
  EXPECT_EQ(hb.integral->cokernel.free_rank, 0u);
  EXPECT_EQ(hb.integral->kernel_rank, 0u);
  EXPECT_TRUE(hb.primes_divide_order);
  // the marks-type matrix has determinant +-2
  EXPECT_EQ(abs(determinant(to_rat(hb.integral->free_matrix))), 2);

  auto c1 = make_lattice(build_group("C1"));
  auto h1 = brauer_homomorphism(regular_module(share(burnside_green(c1))));
  EXPECT_EQ(h1.rational, RatMatrix::identity(1));
  EXPECT_TRUE(h1.integral->cokernel.torsion.empty());

  auto s3 = make_lattice(build_group("S3"));
  auto hr = brauer_homomorphism(regular_module(share(scalar_extend(rep_green(s3)))));
  EXPECT_TRUE(hr.rationally_bijective);
  EXPECT_EQ(hr.rational.rows(), 3u);
  EXPECT_FALSE(hr.integral.has_value());
}

TEST(Idempotents, SpecExamples) {
  auto c2 = make_lattice(build_group("C2"));
  auto ids = burnside_idempotents(*c2);
  const auto reps = c2->local_class_reps(c2->whole());
  ASSERT_EQ(ids.e.size(), 2u);
  // B(C2) basis in local order: [C2/1], [C2/C2]
  ASSERT_EQ(reps, (std::vector<int>{0, 1}));
  EXPECT_EQ(ids.e[0], (RatVector{Rat(1, 2), 0}));
  EXPECT_EQ(ids.e[1], (RatVector{Rat(-1, 2), 1}));
  auto c1 = make_lattice(build_group("C1"));
  EXPECT_EQ(burnside_idempotents(*c1).e, (std::vector<RatVector>{RatVector{1}}));
  for (const auto& name : oracle::catalog()) {
    auto lat = make_lattice(build_group(name));
    auto bq = scalar_extend(burnside_green(lat));
    auto e = burnside_idempotents(*lat);
    EXPECT_EQ(static_cast<int>(e.e.size()), lat->class_count());
    EXPECT_FALSE(check_idempotents(bq, e).has_value()) << name;
  }
}

TEST(Splitting, SpecExamples) {
  auto s3 = make_lattice(build_group("S3"));
  auto rep = verify_splitting(regular_module(share(burnside_green(s3))));
  EXPECT_TRUE(rep.passed());
  for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;

  auto c2 = make_lattice(build_group("C2"));
  auto r2 = verify_splitting(regular_module(share(burnside_green(c2))));
  EXPECT_TRUE(r2.passed());
  ASSERT_EQ(r2.cokernel_torsion.size(), 2u);
  EXPECT_EQ(r2.cokernel_torsion[c2->whole()], (std::vector<Int>{2}));

  auto c4 = make_lattice(build_group("C4"));
  auto r4 = verify_splitting(regular_module(share(scalar_extend(rep_green(c4)))));
  for (const auto& c : r4.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

TEST(Splitting, FixedPointModulesOnCatalog) {
  for (const auto& name : oracle::catalog()) {
    auto lat = make_lattice(build_group(name));
    auto b = share(burnside_green(lat));
    auto s = rational_setting(b);
    for (const auto& v : {trivial_representation(lat->group()), regular_representation(lat->group())}) {
      auto m = canonical_burnside_action(fixed_point_mackey(lat, v), b, v.name);
      auto rep = verify_splitting(m, s);
      for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << name << " " << v.name << " " << c.name << ": " << c.detail;
    }
  }
}
