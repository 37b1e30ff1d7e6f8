#include <gtest/gtest.h>

#include "bvk/bv.hpp"
#include "printers.hpp"

using namespace bvk;

TEST(Bv, ClassicalIdentities) {
  auto A = make_polynomial_superalgebra(2, 2, 3);
  auto inst = make_gbva("classical", A, classical_bv_operator(A), basis_domain(*A, 5, 3));
  ASSERT_TRUE(inst.checked.all());
  auto reps = check_gbva_identities(inst, 200, 1);
  for (const auto& r : reps) EXPECT_TRUE(r.passed) << r.name;
}

TEST(Bv, BracketOfCoordinates) {
  auto A = make_polynomial_superalgebra(2, 2, 3);
  auto D = classical_bv_operator(A);
  // {x1, t1} and {t1, x1}
  Element b1 = bv_bracket(*A, D, A->even_gen(0), A->odd_gen(0));
  Element b2 = bv_bracket(*A, D, A->odd_gen(0), A->even_gen(0));
  EXPECT_EQ(b1, *A->unit());
  EXPECT_EQ(b2, -*A->unit());
}

TEST(Bv, GeneralIdentitiesOnStructureAlgebras) {
  for (std::uint64_t s = 0; s < 6; ++s) {
    auto A = random_structure_algebra(5, s);
    auto D = random_operator(A, s + 100, 1, 1, false);
    auto reps = check_general_identities(*A, D, basis_domain(*A, 1, std::nullopt), 0, s);
    for (const auto& r : reps)
      EXPECT_TRUE(r.passed) << "seed " << s << " " << r.name << ": "
                            << (r.counterexample ? r.counterexample->residual : "");
  }
}
