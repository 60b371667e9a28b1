#include "mackey/algebra.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace mackey;

namespace {

IntMatrix im(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix m(rows.size(), rows.size() ? rows.begin()->size() : 0);
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (long x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

void expect_valid_smith(const IntMatrix& a, const SmithForm& s) {
  EXPECT_EQ(s.left * a * s.right, s.diagonal);
  EXPECT_EQ(s.left * s.left_inverse, IntMatrix::identity(a.rows()));
  Int du = oracle::cofactor_det(s.left), dv = oracle::cofactor_det(s.right);
  EXPECT_TRUE(du == 1 || du == -1);
  EXPECT_TRUE(dv == 1 || dv == -1);
  for (std::size_t i = 0; i < s.diagonal.rows(); ++i)
    for (std::size_t j = 0; j < s.diagonal.cols(); ++j)
      if (i != j) EXPECT_EQ(s.diagonal(i, j), 0);
  for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i) EXPECT_EQ(s.divisors[i + 1] % s.divisors[i], 0);
  for (const auto& d : s.divisors) EXPECT_GT(d, 0);
}

}  // namespace

TEST(Smith, SpecExamples) {
  auto a = im({{2, 4}, {6, 8}});
  auto s = smith_normal_form(a);
  expect_valid_smith(a, s);
  EXPECT_EQ(s.divisors, (std::vector<Int>{2, 4}));
  auto id = IntMatrix::identity(3);
  EXPECT_EQ(smith_normal_form(id).diagonal, id);
  auto z = IntMatrix(2, 3);
  auto sz = smith_normal_form(z);
  EXPECT_TRUE(sz.diagonal.is_zero());
  EXPECT_TRUE(sz.divisors.empty());
}

TEST(Smith, RandomMatricesProperty) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    auto a = oracle::random_int_matrix(rng, r, c);
    auto s = smith_normal_form(a);
    expect_valid_smith(a, s);
    if (r == c) {
      Int prod = 1;
      for (const auto& d : s.divisors) prod *= d;
      if (s.divisors.size() < r) prod = 0;
      Int det = oracle::cofactor_det(a);
      EXPECT_EQ(prod, det < 0 ? Int(-det) : det);
    }
  }
}

TEST(Cokernel, SpecExamples) {
  auto c1 = cokernel(im({{2}}));
  EXPECT_EQ(c1.free_rank, 0u);
  EXPECT_EQ(c1.torsion, (std::vector<Int>{2}));
  auto c2 = cokernel(IntMatrix(1, 0));
  EXPECT_EQ(c2.free_rank, 1u);
  EXPECT_TRUE(c2.torsion.empty());
  auto c3 = cokernel(im({{1, 1}, {0, 2}}));
  EXPECT_EQ(c3.free_rank, 0u);
  EXPECT_EQ(c3.torsion, (std::vector<Int>{2}));
}

TEST(Cokernel, KillsRelationsAndOrder) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 4, c = rng() % 5;
    auto a = oracle::random_int_matrix(rng, r, c, 4);
    auto p = cokernel(a);
    for (std::size_t j = 0; j < c; ++j) EXPECT_TRUE(p.kills(a.col(j)));
    auto free = p.free_projection();
    EXPECT_EQ(free * p.free_section, IntMatrix::identity(p.free_rank));
    auto s = smith_normal_form(a);
    Int prod = 1;
    for (const auto& d : s.divisors) prod *= d;
    EXPECT_EQ(p.torsion_order(), prod);
    EXPECT_EQ(p.free_rank, r - s.divisors.size());
  }
}

TEST(RationalQuotient, SpecExamples) {
  RatMatrix e1(2, 1);
  e1(0, 0) = 1;
  auto q = rational_quotient(2, e1);
  EXPECT_EQ(q.dim, 1u);
  auto full = rational_quotient(2, RatMatrix::identity(2));
  EXPECT_EQ(full.dim, 0u);
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = oracle::random_int_matrix(rng, 4, 2);
    auto span = to_rat(a);
    auto rq = rational_quotient(4, span);
    EXPECT_EQ(rq.dim, 4 - rank(span));
    EXPECT_EQ(rq.projection * rq.section, RatMatrix::identity(rq.dim));
    EXPECT_TRUE((rq.projection * span).is_zero());
  }
}

TEST(Cyclotomic, SpecExamples) {
  auto z4 = Cyclotomic::root_power(4, 1);
  EXPECT_EQ(z4 * z4, Cyclotomic::rational(4, -1));
  EXPECT_EQ(z4.galois(3), -z4);
  auto one = Cyclotomic::rational(3, 1);
  auto z3 = Cyclotomic::root_power(3, 1);
  EXPECT_EQ((one + z3) * (one + z3 * z3), one);
  EXPECT_THROW(Cyclotomic(4).inverse(), Error);
  EXPECT_THROW(z4.galois(2), Error);
}

TEST(Cyclotomic, PolynomialDegrees) {
  for (int n = 1; n <= 30; ++n) EXPECT_EQ(cyclotomic_polynomial(n).size(), static_cast<std::size_t>(euler_phi(n)) + 1) << n;
  EXPECT_EQ(cyclotomic_polynomial(6), (IntPoly{1, -1, 1}));
}

TEST(Cyclotomic, FieldAxiomsOnRandomElements) {
  std::mt19937 rng(5);
  for (int n : {1, 3, 4, 5, 8, 12}) {
    auto rnd = [&] {
      std::vector<Rat> c(euler_phi(n));
      for (auto& x : c) x = oracle::random_rat(rng);
      return Cyclotomic(n, c);
    };
    for (int trial = 0; trial < 10; ++trial) {
      auto a = rnd(), b = rnd(), c = rnd();
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a * b, b * a);
      if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), Cyclotomic::rational(n, 1));
      for (int k = 1; k < n; ++k) {
        if (gcd_ll(k, n) != 1) continue;
        EXPECT_EQ((a * b).galois(k), a.galois(k) * b.galois(k));
        for (int k2 = 1; k2 < n; ++k2)
          if (gcd_ll(k2, n) == 1) EXPECT_EQ(a.galois(k2).galois(k), a.galois(k * k2 % n));
      }
    }
  }
}

TEST(Cyclotomic, RootsOfUnityAndEmbedding) {
  for (int n : {1, 2, 6, 9, 12}) {
    for (int k = 0; k < 2 * n; ++k) EXPECT_EQ(Cyclotomic::root_power(n, k).pow(n), Cyclotomic::rational(n, 1));
    Cyclotomic sum(n);
    for (int k = 0; k < n; ++k) sum += Cyclotomic::root_power(n, k);
    EXPECT_EQ(sum, Cyclotomic::rational(n, n == 1 ? 1 : 0));
    EXPECT_EQ(Cyclotomic::root_power(n, 1).embed(2 * n), Cyclotomic::root_power(2 * n, 2));
  }
  EXPECT_EQ(Cyclotomic::root_power(3, 1).str(), "z");
  EXPECT_EQ(Cyclotomic::root_power(3, 2).str(), "-1-z");
}

TEST(Algebra, SemisimplicitySpecExamples) {
  // Q[C2] on basis (e, t)
  FiniteDimAlgebra qc2;
  qc2.dim = 2;
  qc2.left = {RatMatrix::identity(2), to_rat(im({{0, 1}, {1, 0}}))};
  qc2.unit = {1, 0};
  EXPECT_FALSE(qc2.check_axioms().has_value());
  auto c = is_semisimple(qc2);
  EXPECT_TRUE(c.semisimple);
  EXPECT_NE(c.gram_determinant, 0);
  auto dual = truncated_polynomial_algebra(IntPoly{0, 0, 1});
  auto d = is_semisimple(dual);
  EXPECT_FALSE(d.semisimple);
  ASSERT_EQ(d.radical_vector.size(), 2u);
  EXPECT_EQ(d.radical_vector[0], 0);
  EXPECT_NE(d.radical_vector[1], 0);
  EXPECT_TRUE(is_semisimple(cyclotomic_algebra(1)).semisimple);
}

TEST(Algebra, ModuleCharacterExamples) {
  FiniteDimAlgebra qc2;
  qc2.dim = 2;
  qc2.left = {RatMatrix::identity(2), to_rat(im({{0, 1}, {1, 0}}))};
  qc2.unit = {1, 0};
  EXPECT_EQ(module_character(qc2, qc2.left), (RatVector{2, 0}));
  EXPECT_EQ(module_character(qc2, {RatMatrix(0, 0), RatMatrix(0, 0)}), (RatVector{0, 0}));
  EXPECT_THROW(module_character(qc2, {RatMatrix::identity(1), RatMatrix::identity(1) * Rat(2)}), Error);
}

TEST(Algebra, CenterOfCyclotomicField) {
  for (int n : {1, 3, 4, 5}) EXPECT_EQ(cyclotomic_algebra(n).center().cols(), static_cast<std::size_t>(euler_phi(n)));
}
