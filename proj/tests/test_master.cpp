#include <gtest/gtest.h>

#include "bvk/master.hpp"
#include "bvk/vosa.hpp"
#include "printers.hpp"

using namespace bvk;

namespace {

GbvaInstance classical(int pairs, int cap, int sweep_bound = 1) {
  auto A = make_polynomial_superalgebra(pairs, pairs, cap);
  return make_gbva("classical", A, classical_bv_operator(A), basis_domain(*A, sweep_bound, sweep_bound));
}

const PolyAlgebra& poly(const GbvaInstance& inst) { return static_cast<const PolyAlgebra&>(*inst.alg); }

Element mono(const GbvaInstance& inst, std::vector<int> e, unsigned mask, const Scalar& c = 1) {
  return poly(inst).monomial(e, mask, c);
}

// x3 t1t2 + x1 t3t4 - x1x3 t1t2t3t4, the logarithm of 1 + x3 t1t2 + x1 t3t4
Element fixture(const GbvaInstance& i44) {
  return mono(i44, {0, 0, 1, 0}, 0b0011) + mono(i44, {1, 0, 0, 0}, 0b1100) - mono(i44, {1, 0, 1, 0}, 0b1111);
}

std::vector<Element> search_monomials_44(const GbvaInstance& i) {
  return {mono(i, {0, 0, 0, 0}, 0b0011), mono(i, {0, 0, 0, 0}, 0b1100), mono(i, {0, 0, 1, 0}, 0b0011),
          mono(i, {1, 0, 0, 0}, 0b1100), mono(i, {1, 0, 1, 0}, 0b1111), mono(i, {0, 0, 0, 0}, 0b1111),
          mono(i, {1, 0, 1, 0}, 0)};
}

void expect_all(const std::vector<IdentityReport>& reps) {
  for (const auto& r : reps)
    EXPECT_TRUE(r.passed) << r.name << ": " << (r.counterexample ? r.counterexample->residual : r.note);
}

}  // namespace

TEST(Master, ZeroSolvesEverything) {
  auto inst = classical(2, 6);
  for (Scalar l : {Scalar(0), Scalar(3), Scalar(-2)}) {
    MasterCandidate c{Element(), l, inst};
    EXPECT_TRUE(satisfies_master(c));
    expect_all(check_power_identities(c, 5));
    EXPECT_TRUE(exp_check(c).passed);
  }
}

TEST(Master, NilpotentOddPair) {
  auto inst = classical(2, 6);
  Element W = mono(inst, {0, 0}, 0b11);
  EXPECT_TRUE(inst.delta(W).is_zero());
  EXPECT_TRUE(bracket_sum(inst, W, W).is_zero());
  EXPECT_TRUE(inst.alg->multiply(W, W).is_zero());
  for (Scalar l : {Scalar(0), Scalar(1), Scalar(-2), Scalar(5, 3)}) {
    MasterCandidate c{W, l, inst};
    expect_all(check_power_identities(c, 5));
    EXPECT_TRUE(exp_check(c).passed);
  }
  EXPECT_EQ(exp_nilpotent(*inst.alg, W), *inst.alg->unit() + W);
}

TEST(Master, SmallSearchFindsOnlyDegenerateSolutions) {
  auto inst = classical(2, 4);
  std::vector<Element> ms{*inst.alg->unit(),       mono(inst, {1, 0}, 0), mono(inst, {0, 1}, 0),
                          mono(inst, {2, 0}, 0),   mono(inst, {1, 1}, 0), mono(inst, {0, 2}, 0),
                          mono(inst, {0, 0}, 0b11)};
  auto rep = search_master_solutions(inst, ms, -2, 2, 4);
  EXPECT_EQ(rep.candidates, 78124);
  EXPECT_TRUE(rep.solutions.empty());
  EXPECT_GT(rep.degenerate, 0);
}

TEST(Master, FourPairFixtureSolves) {
  auto inst = classical(4, 10);
  Element W = fixture(inst);
  Element dW = inst.delta(W);
  EXPECT_FALSE(dW.is_zero());
  EXPECT_EQ(bracket_sum(inst, W, W), Scalar(-2) * dW);
  MasterCandidate c{W, -2, inst};
  EXPECT_TRUE(satisfies_master(c));
  MasterCandidate wrong{W, 2, inst};
  EXPECT_FALSE(satisfies_master(wrong));
}

TEST(Master, SearchFindsFixture) {
  auto inst = classical(4, 10);
  auto ms = search_monomials_44(inst);
  auto rep = search_master_solutions(inst, ms, -2, 2, 4);
  EXPECT_EQ(rep.candidates, 78124);
  ASSERT_FALSE(rep.solutions.empty());
  Element W = fixture(inst);
  bool found = false;
  for (const auto& s : rep.solutions) {
    MasterCandidate c{s.W, s.lambda, inst};
    ASSERT_TRUE(satisfies_master(c));
    EXPECT_FALSE(inst.delta(s.W).is_zero());
    if (s.W == W) {
      found = true;
      EXPECT_EQ(s.lambda, -2);
    }
  }
  EXPECT_TRUE(found);
  // independent of the job count
  auto rep1 = search_master_solutions(inst, ms, -2, 2, 1);
  ASSERT_EQ(rep1.solutions.size(), rep.solutions.size());
  for (std::size_t i = 0; i < rep.solutions.size(); ++i) EXPECT_EQ(rep1.solutions[i].W, rep.solutions[i].W);
}

TEST(Master, PowerIdentitiesOnSearchSolutions) {
  auto inst = classical(4, 10);
  auto rep = search_master_solutions(inst, search_monomials_44(inst), -2, 2, 4);
  int checked = 0;
  for (std::size_t i = 0; i < rep.solutions.size(); i += std::max<std::size_t>(1, rep.solutions.size() / 25)) {
    MasterCandidate c{rep.solutions[i].W, rep.solutions[i].lambda, inst};
    expect_all(check_power_identities(c, 5));
    ++checked;
  }
  EXPECT_GE(checked, 10);
  expect_all(check_power_identities({fixture(inst), -2, inst}, 5));
}

TEST(Master, ExponentialOnFixture) {
  auto inst = classical(4, 10);
  Element W = fixture(inst);
  auto e = exp_nilpotent(*inst.alg, W);
  // mu = -2 kills the exponential
  EXPECT_TRUE(inst.delta(e).is_zero());
  EXPECT_TRUE(exp_check({W, -2, inst}).passed);
  for (Scalar c : {Scalar(1, 2), Scalar(3), Scalar(-1)}) {
    MasterCandidate v{c * W, c * -2, inst};
    ASSERT_TRUE(satisfies_master(v));
    auto r = exp_check(v);
    EXPECT_TRUE(r.passed) << r.note;
    if (c != 1) EXPECT_FALSE(inst.delta(exp_nilpotent(*inst.alg, c * W)).is_zero());
  }
}

TEST(Master, RefusesBadInputs) {
  auto inst = classical(2, 4);
  Element x1 = mono(inst, {1, 0}, 0);
  EXPECT_THROW(exp_nilpotent(*inst.alg, x1), PreconditionError);
  EXPECT_THROW(check_power_identities({mono(inst, {0, 0}, 0b01), 1, inst}, 3), PreconditionError);
  // x1^2 to the fifth power would be truncated at cap 4
  EXPECT_THROW(check_power_identities({mono(inst, {2, 0}, 0), 0, inst}, 5), PreconditionError);
  // a non-solution is reported, not refused
  auto reps = check_power_identities({mono(inst, {1, 0}, 0b11), 1, inst}, 3);
  EXPECT_FALSE(reps[0].passed);
  ASSERT_TRUE(reps[0].counterexample);
  // non-classical algebras are refused
  auto S = random_structure_algebra(4, 3);
  auto gi = make_gbva("s", S, random_operator(S, 1, 1, 1, false), basis_domain(*S, 1, std::nullopt));
  EXPECT_THROW(check_power_identities({Element(), 1, gi}, 2), PreconditionError);
}

TEST(Master, ExpansionBySquareForm) {
  auto inst = classical(2, 6);
  const auto& A = *inst.alg;
  Element W = mono(inst, {1, 1}, 0) + mono(inst, {0, 0}, 0b11);
  EXPECT_TRUE(inst.delta(W).is_zero());
  Element W2 = A.multiply(W, W);
  Element phi2 = phi_form_multilinear(A, inst.delta, {W, W});
  EXPECT_FALSE(phi2.is_zero());
  EXPECT_EQ(inst.delta(W2), phi2);
  expect_all(phi_expansion_check(A, inst.delta, W, 4, basis_domain(A, 2, 3)));
  // x-only elements are killed termwise
  Element X = mono(inst, {2, 0}, 0);
  for (int k = 1; k <= 4; ++k)
    EXPECT_TRUE(phi_form_multilinear(A, inst.delta, std::vector<Element>(k, X)).is_zero());
  expect_all(phi_expansion_check(A, inst.delta, X, 4));
  EXPECT_THROW(phi_expansion_check(A, inst.delta, mono(inst, {0, 0}, 0b01), 2), std::invalid_argument);
}

TEST(Master, ExpansionForRandomOddOperators) {
  auto A = make_polynomial_superalgebra(2, 2, 4);
  bool higher = false;
  for (std::uint64_t s = 0; s < 12; ++s) {
    Rng rng(s, 5);
    auto pool = A->basis(2);
    Element W = random_homogeneous(*A, rng, pool, 0) + random_homogeneous(*A, rng, pool, 2);
    int deg = (s % 2 == 0) ? 1 : -1;
    auto D = random_operator(A, 1000 + s, deg, 4, false);
    expect_all(phi_expansion_check(*A, D, W, 4));
    higher = higher || !phi_form_multilinear(*A, D, {W, W, W}).is_zero();
  }
  EXPECT_TRUE(higher);
}

TEST(Master, ExponentialByFormsForNilpotentW) {
  auto inst = classical(4, 10);
  auto D = random_operator(inst.alg, 7, 1, 2, false);
  auto reps = phi_expansion_check(*inst.alg, D, fixture(inst), 4);
  ASSERT_EQ(reps.size(), 2u);
  expect_all(reps);
}

TEST(Master, DeformationByOddPair) {
  auto inst = classical(2, 4, 2);
  Element a = mono(inst, {0, 0}, 0b11);
  LinOp dp = deform_delta(inst, a);
  EXPECT_EQ(dp.parity(), 1);
  // {t1t2, .} is nonzero, so the deformation is not trivial
  EXPECT_FALSE(bracket_sum(inst, a, mono(inst, {1, 0}, 0)).is_zero());
  auto rep = check_deformation(inst, a, 200, 3);
  ASSERT_TRUE(rep.master_solution);
  expect_all(rep.checks);
  EXPECT_EQ(rep.checks.size(), 3u);
}

TEST(Master, DeformationByZeroAndWrongParity) {
  auto inst = classical(2, 4, 2);
  LinOp d0 = deform_delta(inst, Element());
  EXPECT_FALSE(first_difference(d0, inst.delta, inst.sweep.words));
  auto rep = check_deformation(inst, Element(), 50, 1);
  EXPECT_TRUE(rep.master_solution);
  expect_all(rep.checks);
  EXPECT_THROW(deform_delta(inst, mono(inst, {0, 0}, 0b01)), std::invalid_argument);
}

TEST(Master, DeformationRejectsNonSolution) {
  auto inst = classical(2, 4, 2);
  Element a = mono(inst, {1, 0}, 0b11);
  auto rep = check_deformation(inst, a, 50, 1);
  EXPECT_FALSE(rep.master_solution);
  EXPECT_FALSE(rep.residual.is_zero());
  EXPECT_TRUE(rep.checks.empty());
  EXPECT_NE(rep.note.find("not a master solution"), std::string::npos);
}

TEST(Master, DeformationRefusesTruncatedSweep) {
  auto A = make_polynomial_superalgebra(1, 1, 4);
  auto inst = make_gbva("q1", A, classical_bv_operator(A), basis_domain(*A, 4, 4));
  EXPECT_THROW(check_deformation(inst, A->monomial({2}, 0), 10, 1), PreconditionError);
}

TEST(Master, DeformationByFixture) {
  auto inst = classical(4, 10);
  Element a = fixture(inst);
  auto rep = check_deformation(inst, a, 100, 2);
  ASSERT_TRUE(rep.master_solution);
  expect_all(rep.checks);
}

TEST(Master, DeformationKeepsDifferentialCommutator) {
  auto A = make_polynomial_superalgebra(1, 1, 6);
  auto inst = make_gbva("q1", A, classical_bv_operator(A), basis_domain(*A, 2, 2));
  LinOp D = partial_odd(A, 0), L = zero_op(0);
  ASSERT_TRUE(check_d_derivation(inst, D, L, 50, 1).passed);
  Element a = mono(inst, {2}, 0);
  auto rep = check_deformation(inst, a, 50, 1, &D, &L);
  ASSERT_TRUE(rep.master_solution);
  EXPECT_EQ(rep.checks.size(), 4u);
  expect_all(rep.checks);
}

TEST(Master, ClassicalMasterWrapper) {
  auto inst = classical(2, 4);
  EXPECT_TRUE(classical_master_check(inst, mono(inst, {0, 0}, 0b11)).passed);
  EXPECT_FALSE(classical_master_check(inst, mono(inst, {1, 0}, 0) + mono(inst, {0, 0}, 0b11)).passed);
}

TEST(Master, LayeredForm) {
  auto i2 = classical(2, 4);
  expect_all(layered_master_check(i2, {mono(i2, {0, 0}, 0b11), Element()}, 1));
  auto bad = layered_master_check(i2, {mono(i2, {0, 0}, 0b11), mono(i2, {1, 0}, 0)}, 1);
  EXPECT_FALSE(bad[0].passed);
  EXPECT_FALSE(bad[1].passed);
  // W = h V with V the fixture: {W,W} = -2 h Delta(W)
  auto i4 = classical(4, 10);
  expect_all(layered_master_check(i4, {Element(), fixture(i4)}, -1));
  auto off = layered_master_check(i4, {Element(), fixture(i4)}, 1);
  EXPECT_FALSE(off[0].passed);
}

TEST(Master, WeightObstructionOnBc) {
  auto bc = make_bc_system();
  auto inst = bc_gbva(bc, 3);
  Element W = bc->wick(bc->b(), bc->c());
  ASSERT_EQ(W.grade(), 1);
  auto r1 = check_weight_obstruction(inst, W, 1);
  EXPECT_TRUE(r1.passed);
  EXPECT_NE(r1.note.find("obstructed"), std::string::npos);
  auto r0 = check_weight_obstruction(inst, bc->vacuum(), 1);
  EXPECT_TRUE(r0.passed);
  EXPECT_NE(r0.note.find("no obstruction"), std::string::npos);
  EXPECT_TRUE(bracket_sum(inst, bc->vacuum(), bc->vacuum()).is_zero());
  EXPECT_TRUE(inst.delta(bc->vacuum()).is_zero());
  // weight 0, ghost number 2
  Element V = bc->state({{'c', 1}, {'c', -1}});
  ASSERT_EQ(V.grade(), 0);
  auto rv = check_weight_obstruction(inst, V, 1);
  EXPECT_TRUE(rv.passed);
  EXPECT_NE(rv.note.find("no obstruction"), std::string::npos);
  EXPECT_THROW(check_weight_obstruction(inst, W + bc->vacuum(), 1), std::invalid_argument);
  auto ex = check_extreme_components(inst, bc->vacuum(), 1);
  EXPECT_TRUE(ex.passed);
}
