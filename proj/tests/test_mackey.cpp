#include "mackey/constructors.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace mackey;

namespace {

int find_order(const SubgroupLattice& l, int order, int skip = 0) {
  for (int h = 0; h < l.size(); ++h)
    if (l[h].order() == order && skip-- == 0) return h;
  return -1;
}

RatVector unit_vector(std::size_t n, std::size_t i) {
  RatVector v(n);
  v[i] = 1;
  return v;
}

/// phi_K([H/L]) by counting fixed cosets directly on the coset space.
Int mark(const SubgroupLattice& l, int k, int lsub) { return fixed_points(l, lsub, k).size(); }

}  // namespace

TEST(Validators, ConstructorsAreValidOnCatalog) {
  for (const auto& name : oracle::catalog()) {
    auto lat = make_lattice(build_group(name));
    auto b = std::make_shared<const GreenFunctor>(burnside_green(lat));
    EXPECT_TRUE(validate_green(*b).ok()) << name << "\n" << validate_green(*b).summary();
    auto rep = std::make_shared<const GreenFunctor>(rep_green(lat));
    EXPECT_TRUE(validate_green(*rep).ok()) << name << "\n" << validate_green(*rep).summary();
    EXPECT_TRUE(validate_module(regular_module(rep)).ok()) << name;
    EXPECT_TRUE(validate_module(canonical_burnside_action(rep->mackey, b)).ok()) << name;
    for (const auto& v : {trivial_representation(lat->group()), regular_representation(lat->group()),
                          coset_representation(*lat, find_order(*lat, 2) >= 0 ? find_order(*lat, 2) : 0)}) {
      auto fp = fixed_point_mackey(lat, v);
      EXPECT_TRUE(validate_mackey(fp).ok()) << name << " " << v.name << "\n" << validate_mackey(fp).summary();
      auto fpr = fixed_point_green(lat, v);
      EXPECT_TRUE(validate_green(fpr).ok()) << name << " " << v.name;
      auto mod = canonical_burnside_action(fp, b);
      EXPECT_TRUE(validate_module(mod).ok()) << name << " " << v.name << "\n" << validate_module(mod).summary();
    }
  }
}

TEST(Validators, PerturbedInductionIsCaught) {
  auto lat = make_lattice(build_group("S3"));
  auto b = burnside_green(lat);
  const int c2 = find_order(*lat, 2);
  b.mackey.ind[lat->whole()][c2](0, 0) += 1;
  auto rep = validate_mackey(b.mackey);
  ASSERT_FALSE(rep.ok());
  bool double_coset = false;
  for (const auto& v : rep.violations) double_coset = double_coset || v.axiom == "double coset formula";
  EXPECT_TRUE(double_coset);
}

TEST(Validators, StructuralErrorsComeFirst) {
  auto lat = make_lattice(build_group("C2"));
  auto b = burnside_green(lat);
  b.mackey.res[1][0] = RatMatrix(3, 3);
  auto rep = validate_mackey(b.mackey);
  EXPECT_FALSE(rep.structural.empty());
  EXPECT_TRUE(rep.violations.empty());
  auto half = burnside_green(lat);
  half.mackey.ind[1][0] *= Rat(1, 2);
  EXPECT_FALSE(validate_mackey(half.mackey).structural.empty());
  EXPECT_TRUE(validate_mackey(scalar_extend(half.mackey)).structural.empty());
}

TEST(Burnside, SpecExamples) {
  auto lat = make_lattice(build_group("S3"));
  auto b = burnside_green(lat);
  const int g = lat->whole();
  EXPECT_EQ(b.rank(g), 4u);
  const auto reps = lat->local_class_reps(g);
  auto pos = [&](int order) {
    for (std::size_t i = 0; i < reps.size(); ++i)
      if ((*lat)[reps[i]].order() == order) return i;
    return reps.size();
  };
  auto prod = b.multiply(g, unit_vector(4, pos(2)), unit_vector(4, pos(3)));
  EXPECT_EQ(prod, unit_vector(4, pos(1)));
  auto trivial = make_lattice(build_group("C1"));
  auto b1 = burnside_green(trivial);
  EXPECT_EQ(b1.rank(0), 1u);
  EXPECT_EQ(b1.mult[0][0], RatMatrix::identity(1));
}

TEST(Burnside, MarksAreInjectiveRingMapsLevelwise) {
  for (const auto& name : oracle::catalog()) {
    auto lat = make_lattice(build_group(name));
    const auto& l = *lat;
    auto b = burnside_green(lat);
    for (int h = 0; h < l.size(); ++h) {
      const auto reps = l.local_class_reps(h);
      auto marks = marks_matrix(l, h);
      EXPECT_NE(determinant(to_rat(marks)), 0) << name;
      if (h == l.whole())
        for (std::size_t a = 0; a < reps.size(); ++a)
          for (std::size_t c = 0; c < reps.size(); ++c) EXPECT_EQ(marks(a, c), mark(l, reps[a], reps[c])) << name;
      // phi_K is multiplicative on basis products
      const auto m = to_rat(marks);
      for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = 0; j < reps.size(); ++j) {
          auto prod = m.apply(b.mult[h][i].col(j));
          for (std::size_t k = 0; k < reps.size(); ++k) EXPECT_EQ(prod[k], m(k, i) * m(k, j)) << name;
        }
    }
  }
}

TEST(Burnside, RestrictionPreservesMarks) {
  for (const auto& name : oracle::catalog()) {
    auto lat = make_lattice(build_group(name));
    const auto& l = *lat;
    auto b = burnside_green(lat);
    const int g = l.whole();
    const auto greps = l.local_class_reps(g);
    for (int h = 0; h < l.size(); ++h) {
      const auto hreps = l.local_class_reps(h);
      const auto mh = to_rat(marks_matrix(l, h));
      for (std::size_t i = 0; i < greps.size(); ++i) {
        auto r = mh.apply(b.mackey.res[g][h].col(i));
        for (std::size_t k = 0; k < hreps.size(); ++k) EXPECT_EQ(r[k], Rat(mark(l, hreps[k], greps[i]))) << name;
      }
    }
  }
}

TEST(FixedPoint, SpecExamples) {
  auto lat = make_lattice(build_group("S3"));
  auto fp = fixed_point_mackey(lat, trivial_representation(lat->group()));
  for (int h = 0; h < lat->size(); ++h)
    for (int k = 0; k < lat->size(); ++k)
      if (lat->leq(k, h)) {
        EXPECT_EQ(fp.ind[h][k], RatMatrix::identity(1) * Rat((*lat)[h].order() / (*lat)[k].order()));
        EXPECT_EQ(fp.res[h][k], RatMatrix::identity(1));
      }
  auto c2 = make_lattice(build_group("C2"));
  auto reg = fixed_point_mackey(c2, regular_representation(c2->group()));
  EXPECT_EQ(reg.rank, (std::vector<std::size_t>{2, 1}));
  auto zero = fixed_point_mackey(c2, zero_representation(c2->group()));
  EXPECT_EQ(zero.rank, (std::vector<std::size_t>{0, 0}));
  EXPECT_TRUE(validate_mackey(zero).ok());
}

TEST(FixedPoint, IndResIsIndexWhenKActsTrivially) {
  for (const auto& name : oracle::catalog()) {
    auto lat = make_lattice(build_group(name));
    const auto& l = *lat;
    for (int k = 0; k < l.size(); ++k) {
      // Z[G/N] with N normal containing K: K acts trivially when K <= N
      auto v = coset_representation(l, l.whole());
      auto fp = fixed_point_mackey(lat, v);
      for (int h = 0; h < l.size(); ++h)
        if (l.leq(k, h))
          EXPECT_EQ(fp.ind[h][k] * fp.res[h][k], RatMatrix::identity(fp.rank[h]) * Rat(l[h].order() / l[k].order()));
    }
  }
}

TEST(FixedPoint, RejectsNonRepresentation) {
  auto lat = make_lattice(build_group("C2"));
  auto v = trivial_representation(lat->group());
  v.matrices[1] = IntMatrix::identity(1) * Int(2);
  EXPECT_THROW(fixed_point_mackey(lat, v), Error);
}

TEST(Rep, SpecExamples) {
  auto c2 = make_lattice(build_group("C2"));
  EXPECT_EQ(rep_green(c2).rank(1), 2u);
  auto s3 = make_lattice(build_group("S3"));
  auto r = rep_green(s3);
  const int g = s3->whole();
  EXPECT_EQ(r.multiply(g, unit_vector(3, 2), unit_vector(3, 2)), (RatVector{1, 1, 1}));
  auto c4 = make_lattice(build_group("C4"));
  auto r4 = rep_green(c4);
  const int sub = find_order(*c4, 2);
  // nontrivial character of C2 induces to the sum of the two faithful characters of C4
  auto induced = r4.mackey.ind[c4->whole()][sub].col(1);
  auto t = character_table(c4->group());
  std::vector<Rat> expected(4);
  for (int i = 0; i < t.size(); ++i) {
    bool faithful = true;
    for (int x = 1; x < 4; ++x)
      if (t.value(i, x) == Cyclotomic::rational(4, 1)) faithful = false;
    if (faithful) expected[i] = 1;
  }
  EXPECT_EQ(induced, expected);
}

TEST(CanonicalAction, SpecExamples) {
  auto lat = make_lattice(build_group("C2"));
  auto b = std::make_shared<const GreenFunctor>(burnside_green(lat));
  auto fp = fixed_point_mackey(lat, trivial_representation(lat->group()));
  auto mod = canonical_burnside_action(fp, b);
  const int g = lat->whole();
  const auto reps = lat->local_class_reps(g);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (reps[i] == g) EXPECT_EQ(mod.act[g][i], RatMatrix::identity(1));
    if (reps[i] == 0) EXPECT_EQ(mod.act[g][i], RatMatrix::identity(1) * Rat(2));
  }
  for (const auto& name : oracle::catalog()) {
    auto l = make_lattice(build_group(name));
    auto bb = std::make_shared<const GreenFunctor>(burnside_green(l));
    auto self = canonical_burnside_action(bb->mackey, bb);
    for (int h = 0; h < l->size(); ++h) EXPECT_EQ(self.act[h], bb->mult[h]) << name;
  }
}

TEST(ScalarExtend, RanksPreserved) {
  auto lat = make_lattice(build_group("S3"));
  auto bq = scalar_extend(burnside_green(lat));
  EXPECT_EQ(bq.mackey.base, Base::Q);
  EXPECT_EQ(bq.rank(lat->whole()), 4u);
  EXPECT_TRUE(validate_green(bq).ok());
  auto c3 = make_lattice(build_group("C3"));
  EXPECT_EQ(scalar_extend(rep_green(c3)).rank(c3->whole()), 3u);
  auto rq = std::make_shared<const GreenFunctor>(scalar_extend(rep_green(c3)));
  EXPECT_TRUE(validate_module(regular_module(rq)).ok());
}

TEST(Morphisms, SumsIdentityAndSwap) {
  auto lat = make_lattice(build_group("S3"));
  auto b = std::make_shared<const GreenFunctor>(burnside_green(lat));
  auto m = regular_module(b);
  auto z = zero_module(b);
  auto mz = direct_sum(m, z);
  EXPECT_EQ(mz.mackey.rank, m.mackey.rank);
  EXPECT_TRUE(validate_module(mz).ok());
  EXPECT_TRUE(validate_morphism(mz, m, identity_morphism(m)).ok());
  EXPECT_TRUE(validate_morphism(m, m, identity_morphism(m)).ok());
  auto mm = direct_sum(m, m);
  EXPECT_TRUE(validate_module(mm).ok());
  auto sw = swap_morphism(m);
  EXPECT_TRUE(validate_morphism(mm, mm, sw).ok());
  EXPECT_TRUE(is_isomorphism(sw));
  EXPECT_EQ(compose(sw, sw).components, identity_morphism(mm).components);
  // a non-morphism: doubling one level only
  auto bad = identity_morphism(m);
  bad.components[0] *= Rat(2);
  EXPECT_FALSE(validate_morphism(m, m, bad).ok());
  auto rep = std::make_shared<const GreenFunctor>(rep_green(lat));
  EXPECT_THROW(direct_sum(m, regular_module(rep)), Error);
}
