#include <gtest/gtest.h>

#include "bvk/diffops.hpp"
#include "printers.hpp"

using namespace bvk;

namespace {
std::shared_ptr<PolyAlgebra> poly22() { return make_polynomial_superalgebra(2, 2, 4); }
}  // namespace

TEST(Order, ClassicalBvHasOrderTwo) {
  auto A = poly22();
  auto rep = classify_order(*A, classical_bv_operator(A), 3, basis_domain(*A, 2, 4));
  ASSERT_TRUE(rep.order);
  EXPECT_EQ(*rep.order, 2);
}

TEST(Order, DerivationsHaveOrderOne) {
  auto A = poly22();
  for (int i = 0; i < 2; ++i) {
    auto r1 = classify_order(*A, partial_even(A, i), 2, basis_domain(*A, 2, 4));
    auto r2 = classify_order(*A, partial_odd(A, i), 2, basis_domain(*A, 2, 4));
    EXPECT_EQ(r1.order.value_or(-1), 1);
    EXPECT_EQ(r2.order.value_or(-1), 1);
  }
}

TEST(Order, MultiplicationHasOrderZero) {
  auto A = poly22();
  auto rep = classify_order(*A, left_multiplication(A, A->odd_gen(0)), 2, basis_domain(*A, 2, 3), true);
  EXPECT_EQ(rep.order.value_or(-1), 0);
}

TEST(PhiForms, KoszulMatchesRecursion) {
  auto A = poly22();
  auto D = classical_bv_operator(A);
  auto d3 = compose(D, compose(partial_even(A, 0), partial_even(A, 1)));
  Rng rng(11);
  auto pool = A->basis(2);
  for (int r = 1; r <= 4; ++r)
    for (int s = 0; s < 15; ++s) {
      std::vector<Element> args;
      for (int k = 0; k < r; ++k) args.push_back(random_homogeneous(*A, rng, pool));
      for (const auto* op : {&D, &d3}) EXPECT_EQ(phi_form(*A, *op, args), phi_form_koszul(*A, *op, args));
    }
}

TEST(PhiForms, ExplicitFourMatchesRecursion) {
  auto A = poly22();
  auto op = random_operator(A, 5, 1, 4, false);
  Rng rng(2);
  auto pool = A->basis(1);
  for (int s = 0; s < 20; ++s) {
    std::vector<Element> a;
    for (int k = 0; k < 4; ++k) a.push_back(random_homogeneous(*A, rng, pool));
    EXPECT_EQ(phi_form(*A, op, a), phi4_explicit(*A, op, a[0], a[1], a[2], a[3]));
  }
}

TEST(PhiForms, NonHomogeneousArgumentThrows) {
  auto A = poly22();
  Element mixed = A->even_gen(0) + A->odd_gen(0);
  EXPECT_THROW(phi_form(*A, classical_bv_operator(A), {mixed, A->even_gen(1)}), std::invalid_argument);
}

TEST(OrderLaws, CompositeAndBracket) {
  auto A = poly22();
  std::vector<std::pair<LinOp, int>> ops{{partial_even(A, 0), 1}, {partial_odd(A, 1), 1},
                                         {classical_bv_operator(A), 2}};
  auto rep = check_order_laws(*A, ops, basis_domain(*A, 2, 4));
  EXPECT_TRUE(rep.passed);
}

TEST(PhiForms, WordCacheMatchesRecursion) {
  auto A = poly22();
  auto S = random_structure_algebra(4, 9);
  std::vector<std::pair<AlgebraPtr, LinOp>> cases{{A, random_operator(A, 3, 1, 3, false)},
                                                  {S, random_operator(S, 5, 1, 1, false)}};
  for (Mutation m : {Mutation::None, Mutation::RecursionThirdTerm, Mutation::RecursionPrefixParity}) {
    ScopedMutation guard(m);
    for (auto& [alg, op] : cases) {
      PhiWordCache cache(*alg, op);
      std::optional<PhiWordCache> adjusted;
      if (alg->unit()) adjusted.emplace(*alg, op, true);
      auto pool = alg->basis(alg == A ? 2 : 1);
      Rng rng(17, 3);
      for (int s = 0; s < 60; ++s) {
        std::vector<Word> t;
        std::vector<Element> e;
        for (int i = 0; i < 1 + s % 4; ++i) {
          t.push_back(pool[rng.uniform(0, static_cast<int>(pool.size()) - 1)]);
          e.emplace_back(t.back());
        }
        EXPECT_EQ(cache(t), phi_form(*alg, op, e));
        if (adjusted) EXPECT_EQ((*adjusted)(t), phi_form(*alg, op, e, true));
      }
      EXPECT_GT(cache.size(), 0u);
    }
  }
}
