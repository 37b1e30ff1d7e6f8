#include <gtest/gtest.h>

#include "bvk/lie.hpp"
#include "bvk/linalg.hpp"
#include "printers.hpp"

using namespace bvk;

namespace {
LieComplex homology_complex(LieAlgebraData g, int cap = 0) {
  auto mod = cap > 0 ? CoefficientModule::SymmetricAdjoint : CoefficientModule::Trivial;
  return LieComplex(std::move(g), ComplexSpec{ComplexCase::Homology, mod, cap});
}
LieComplex cohomology_complex(LieAlgebraData g) {
  return LieComplex(std::move(g), ComplexSpec{ComplexCase::Cohomology, CoefficientModule::Trivial, 0});
}
// product of the odd generators with the given indices, in order
Element wedge(const LieComplex& cx, std::vector<int> idx) {
  Element out = *cx.algebra()->unit();
  for (int i : idx) out = cx.algebra()->multiply(out, cx.algebra()->odd_gen(i));
  return out;
}
}  // namespace

TEST(LieData, Sl2IsSemisimple) {
  EXPECT_TRUE(sl2().semisimple);
  EXPECT_FALSE(abelian_lie(2).semisimple);
  EXPECT_FALSE(nonabelian2().semisimple);
}

TEST(LieData, JacobiViolationRejected) {
  // [e1,e2] = e2, [e1,e3] = e3, [e2,e3] = e1: the cyclic sum is -2 e1
  EXPECT_THROW(make_lie_algebra(3, {{0, 1, 1, 1}, {0, 2, 2, 1}, {1, 2, 0, 1}}), std::invalid_argument);
  EXPECT_THROW(make_lie_algebra(2, {{0, 0, 1, 1}}), std::invalid_argument);
}

TEST(Boundary, Sl2Values) {
  auto cx = homology_complex(sl2());
  LinOp d = chevalley_boundary(cx);
  EXPECT_EQ(d(wedge(cx, {0, 1})), wedge(cx, {2}));  // boundary(e f) = h
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(d(wedge(cx, {i})).is_zero());
  EXPECT_TRUE(d(wedge(cx, {0, 1, 2})).is_zero());
}

TEST(Coboundary, Sl2Values) {
  auto cx = cohomology_complex(sl2());
  auto g = cx.lie();
  LinOp d = chevalley_coboundary(cx);
  EXPECT_TRUE(d(*cx.algebra()->unit()).is_zero());
  // coefficient of e_i' e_j' (i < j) in d(e_k') is -c_ij^k
  for (int k = 0; k < 3; ++k) {
    Element dk = d(wedge(cx, {k}));
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        Word w = wedge(cx, {i, j}).terms().begin()->first;
        EXPECT_EQ(dk.coeff(w), -g.c[i][j][k]);
      }
  }
}

TEST(Complexes, SquareZero) {
  for (auto g : {sl2(), abelian_lie(2), nonabelian2()}) {
    for (auto cx : {homology_complex(g), cohomology_complex(g), homology_complex(g, 2)}) {
      LinOp d = cx.differential();
      EXPECT_FALSE(first_difference(compose(d, d), zero_op(), cx.words()));
    }
  }
}

TEST(Theta, RhoValues) {
  auto cx = homology_complex(sl2());
  EXPECT_EQ(cx.rho(2)(wedge(cx, {0})), Scalar(2) * wedge(cx, {0}));  // rho(h) e = 2e
  for (int i = 0; i < 3; ++i) {
    EXPECT_TRUE(cx.rho(i)(*cx.algebra()->unit()).is_zero());
    EXPECT_FALSE(first_difference(cx.rho(i), cx.theta(i), cx.words()));
  }
}

TEST(Cartan, AllComplexes) {
  for (auto g : {sl2(), abelian_lie(2), nonabelian2()}) {
    EXPECT_TRUE(cartan_identity_check(homology_complex(g)).passed);
    EXPECT_TRUE(cartan_identity_check(cohomology_complex(g)).passed);
    EXPECT_TRUE(cartan_identity_check(homology_complex(g, 2)).passed);
  }
  auto ab = cohomology_complex(abelian_lie(2));
  for (int i = 0; i < 2; ++i) EXPECT_FALSE(first_difference(ab.theta(i), zero_op(), ab.words()));
}

TEST(Order, BoundaryAndCoboundary) {
  auto h = check_boundary_order(homology_complex(sl2()));
  ASSERT_TRUE(h.order.order);
  EXPECT_EQ(*h.order.order, 2);
  EXPECT_TRUE(h.order_ok);
  EXPECT_TRUE(h.factorization.passed);
  // witness Phi^2(e, f) = h
  bool found = false;
  auto cx = homology_complex(sl2());
  for (const auto& w : h.order.witnesses)
    if (w.arity == 2) found = true;
  EXPECT_TRUE(found);
  Element e = wedge(cx, {0}), f = wedge(cx, {1});
  EXPECT_EQ(phi_form(*cx.algebra(), cx.differential(), {e, f}), wedge(cx, {2}));

  auto c = check_boundary_order(cohomology_complex(sl2()));
  EXPECT_EQ(c.order.order.value_or(-1), 1);
  auto ab = check_boundary_order(homology_complex(abelian_lie(2)));
  EXPECT_EQ(ab.order.order.value_or(-1), 0);
  auto sym = check_boundary_order(homology_complex(sl2(), 2));
  EXPECT_TRUE(sym.order_ok);
  EXPECT_TRUE(sym.factorization.passed);
}

TEST(Homology, Sl2Dims) {
  std::map<GradingKey, int> expect{{{0}, 1}, {{1}, 0}, {{2}, 0}, {{3}, 1}};
  EXPECT_EQ(homology(homology_complex(sl2())), expect);
  EXPECT_EQ(homology(cohomology_complex(sl2())), expect);
}

TEST(Homology, ZeroOperatorGivesBasisCounts) {
  auto cx = homology_complex(sl2());
  auto dims = homology(*cx.algebra(), zero_op(-1), cx.words(),
                       [&](const Word& w) { return GradingKey{cx.exterior_degree(w)}; });
  std::map<GradingKey, int> expect{{{0}, 1}, {{1}, 3}, {{2}, 3}, {{3}, 1}};
  EXPECT_EQ(dims, expect);
}

TEST(Homology, RejectsNonSquareZero) {
  auto A = make_polynomial_superalgebra(1, 1, 2);
  EXPECT_THROW(homology(*A, identity_op(), A->basis(3), [](const Word& w) { return GradingKey{w.deg}; }),
               HomologyError);
}

TEST(ContractionMultiplication, Sl2) {
  for (auto cx : {homology_complex(sl2()), cohomology_complex(sl2())})
    for (const auto& r : contraction_multiplication_check(cx)) EXPECT_TRUE(r.passed) << r.name;
  auto co = cohomology_complex(sl2());
  Element e1 = co.dual_mult(0)(*co.algebra()->unit());
  EXPECT_EQ(e1, wedge(co, {0}));
  auto ho = homology_complex(sl2());
  EXPECT_TRUE(ho.contraction(0)(wedge(ho, {0, 1, 2})).is_zero());
  EXPECT_EQ(ho.dual_mult(0)(wedge(ho, {0, 1, 2})), wedge(ho, {1, 2}));
}

TEST(ContractionMultiplication, NonSemisimpleReportedOnly) {
  auto reps = contraction_multiplication_check(homology_complex(nonabelian2()));
  EXPECT_EQ(reps.size(), 3u);
  EXPECT_FALSE(reps[2].note.empty());
}

TEST(Bracket, RecoversLieBracket) {
  for (auto g : {sl2(), nonabelian2(), abelian_lie(2)}) {
    EXPECT_TRUE(lie_bracket_recovery_check(homology_complex(g)).passed);
    EXPECT_TRUE(lie_bracket_recovery_check(cohomology_complex(g)).passed);
  }
}

TEST(Weil, Sl2) {
  for (int cap : {0, 1, 2}) {
    auto rep = truncated_weil_homology(sl2(), cap);
    EXPECT_TRUE(rep.square_zero);
    EXPECT_TRUE(rep.order_ok);
    EXPECT_TRUE(rep.matches) << "cap " << cap;
    EXPECT_EQ(rep.warnings.empty(), cap >= 2);
  }
  auto rep = truncated_weil_homology(sl2(), 2);
  EXPECT_EQ(rep.homology.at({2, 0}), 1);
  EXPECT_EQ(rep.homology.at({2, 3}), 1);
  EXPECT_EQ(rep.homology.at({1, 0}), 0);
  auto ab = truncated_weil_homology(abelian_lie(2), 1);
  EXPECT_TRUE(ab.matches);
}

TEST(Clifford, NormalizationConfluent) {
  Rng rng(99);
  for (auto kind : {ComplexCase::Homology, ComplexCase::Cohomology}) {
    auto cx = kind == ComplexCase::Homology ? homology_complex(sl2()) : cohomology_complex(sl2());
    for (int s = 0; s < 200; ++s) {
      CliffordWord w;
      int len = rng.uniform(0, 6);
      for (int k = 0; k < len; ++k) w.push_back({rng.uniform(0, 1) == 1, rng.uniform(0, 2)});
      CliffordElement e(w);
      auto l = normalize(e, kind, ReductionOrder::Leftmost);
      auto r = normalize(e, kind, ReductionOrder::Rightmost);
      EXPECT_EQ(l, r);
      for (const auto& [nw, c] : l.terms()) EXPECT_TRUE(is_normal(nw, kind));
      EXPECT_FALSE(first_difference(clifford_operator(cx, e), clifford_operator(cx, l), cx.words()));
    }
  }
}
