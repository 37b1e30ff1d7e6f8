#include <gtest/gtest.h>

#include "bvk/algebra.hpp"
#include "printers.hpp"

using namespace bvk;

TEST(PolyAlgebra, OddGeneratorsAnticommute) {
  auto A = make_polynomial_superalgebra(1, 2, 3);
  Element t1 = A->odd_gen(0), t2 = A->odd_gen(1);
  EXPECT_EQ(A->multiply(t1, t2), -A->multiply(t2, t1));
  EXPECT_TRUE(A->multiply(t1, t1).is_zero());
  EXPECT_EQ(A->format(A->multiply(t2, t1)), "-1 * t1*t2");
}

TEST(PolyAlgebra, TruncatesAboveCap) {
  auto A = make_polynomial_superalgebra(2, 0, 2);
  Element x = A->even_gen(0);
  EXPECT_FALSE(A->multiply(x, x).is_zero());
  EXPECT_TRUE(A->multiply(A->multiply(x, x), x).is_zero());
}

TEST(PolyAlgebra, LawsHold) {
  auto A = make_polynomial_superalgebra(2, 2, 2);
  auto w = A->basis(3);
  EXPECT_FALSE(check_degree_additivity(*A, w));
  EXPECT_FALSE(check_supercommutative(*A, w));
  EXPECT_FALSE(check_associative(*A, w));
  EXPECT_FALSE(check_unit(*A, w));
}

TEST(StructAlgebra, RejectsDegreeViolation) {
  std::map<std::pair<int, int>, std::vector<Scalar>> t{{{0, 0}, {0, 1}}};
  EXPECT_THROW(make_structure_constant_algebra(t, {0, 1}), std::invalid_argument);
}

TEST(StructAlgebra, RandomIsNotAssociativeInGeneral) {
  int nonassoc = 0;
  for (std::uint64_t s = 0; s < 5; ++s) {
    auto A = random_structure_algebra(4, s);
    if (check_associative(*A, A->basis(1))) ++nonassoc;
  }
  EXPECT_GT(nonassoc, 0);
}

TEST(Rng, Deterministic) {
  Rng a(7), b(7);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.next(), b.next());
  Rng c(3);
  for (int i = 0; i < 1000; ++i) {
    int u = c.uniform(-2, 2);
    EXPECT_GE(u, -2);
    EXPECT_LE(u, 2);
  }
}
