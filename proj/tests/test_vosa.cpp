#include <gtest/gtest.h>

#include "bvk/vosa.hpp"
#include "printers.hpp"

using namespace bvk;

namespace {
std::shared_ptr<const BcSystem> bc() {
  static auto sys = make_bc_system();
  return sys;
}
}  // namespace

TEST(Bc, IndexConversionsAreInverse) {
  for (int n = -6; n <= 6; ++n) {
    EXPECT_EQ(b_weight_to_standard(b_standard_to_weight(n)), n);
    EXPECT_EQ(c_weight_to_standard(c_standard_to_weight(n)), n);
  }
  // the generating states are the -1 modes on the vacuum
  EXPECT_EQ(bc()->mode(bc()->b(), -1, bc()->vacuum()), bc()->b());
  EXPECT_EQ(bc()->mode(bc()->c(), -1, bc()->vacuum()), bc()->c());
}

TEST(Bc, VacuumConditions) {
  auto v = bc()->vacuum();
  for (int n = -1; n <= 4; ++n) EXPECT_TRUE(bc()->apply_mode({'b', n}, v).is_zero());
  for (int m = 2; m <= 5; ++m) EXPECT_TRUE(bc()->apply_mode({'c', m}, v).is_zero());
  for (int n = 1; n <= 4; ++n) EXPECT_TRUE(bc()->mode(bc()->b(), n, v).is_zero());
}

TEST(Bc, Anticommutators) {
  auto words = bc()->basis(4);
  for (int m = -4; m <= 4; ++m)
    for (int n = -4; n <= 4; ++n) {
      LinOp bm = bc()->generator_op({'b', m}), cn = bc()->generator_op({'c', n});
      LinOp ac = supercommutator(bm, cn);
      LinOp expect = m + n == 0 ? identity_op() : zero_op(0);
      EXPECT_FALSE(first_difference(ac, expect, words)) << m << " " << n;
      EXPECT_FALSE(first_difference(supercommutator(bm, bc()->generator_op({'b', n})), zero_op(-2), words));
      EXPECT_FALSE(first_difference(supercommutator(cn, bc()->generator_op({'c', m})), zero_op(2), words));
    }
}

TEST(Bc, WickProducts) {
  auto B = bc()->b(), C = bc()->c(), v = bc()->vacuum();
  EXPECT_TRUE(bc()->wick(B, B).is_zero());
  EXPECT_EQ(bc()->wick(v, B), B);
  EXPECT_EQ(bc()->wick(B, v), B);
  Element bc_ = bc()->wick(B, C);
  EXPECT_EQ(bc_, bc()->state({{'b', -2}, {'c', 1}}));
  EXPECT_EQ(bc_.grade(), 1);
  EXPECT_EQ(bc_.degree(), 0);
  // canonical order puts c(1) first
  EXPECT_EQ(bc()->format(bc_), "-1 * c(1)b(-2)|0>");
}

TEST(Bc, ModeWeightBookkeeping) {
  auto sys = bc();
  auto words = sys->basis(3);
  std::vector<Element> us{sys->b(), sys->c(), sys->stress(), sys->state({{'b', -3}, {'c', 0}})};
  for (const auto& u : us)
    for (int n = -3; n <= 3; ++n) {
      LinOp op = sys->mode_op(u, n);  // the declared weight shift is verified on every application
      for (const auto& w : words) EXPECT_NO_THROW(op.on_word(w));
      EXPECT_EQ(*op.weight_shift(), *u.grade() - n - 1);
    }
}

TEST(Bc, CommutatorFormula) {
  auto sys = bc();
  std::vector<Element> us{sys->b(), sys->c(), sys->state({{'b', -2}, {'c', 0}}), sys->state({{'c', 0}, {'c', 1}})};
  for (const auto& u : us)
    for (const auto& v : us)
      for (int m = -2; m <= 2; ++m)
        for (int n = -2; n <= 2; ++n) {
          auto rep = commutator_check(*sys, u, m, v, n, 3);
          EXPECT_TRUE(rep.passed) << rep.name;
        }
}

TEST(Bc, StressTensor) {
  auto sys = bc();
  EXPECT_TRUE(check_stress_weight(*sys, 5).passed);
  EXPECT_TRUE(primary_check(*sys, 3, 4).passed);
}

TEST(Bc, HighModeFormsVanish) {
  auto sys = bc();
  auto r0 = check_mode_vanishing(sys, sys->b(), 0, 4);
  EXPECT_TRUE(r0.vanishing.passed);
  EXPECT_TRUE(r0.witness);
  auto r1 = check_mode_vanishing(sys, sys->b(), 1, 4);
  EXPECT_TRUE(r1.vanishing.passed);
  ASSERT_TRUE(r1.witness);
  EXPECT_EQ(r1.witness->arity, 2);
  for (int n : {-1, -2, -3}) EXPECT_TRUE(check_mode_vanishing(sys, sys->b(), n, 4).vanishing.passed);
  // modes of a composite state
  auto s = sys->state({{'b', -2}, {'c', 0}});
  EXPECT_TRUE(check_mode_vanishing(sys, s, 0, 3).vanishing.passed);
  EXPECT_TRUE(check_mode_vanishing(sys, s, 1, 3).vanishing.passed);
}

TEST(Bc, Phi2Expansion) {
  auto sys = bc();
  for (int r : {1, 2, 3}) {
    EXPECT_TRUE(check_phi2_expansion(sys, sys->b(), r, 0, 3).passed) << r;
    EXPECT_TRUE(check_phi2_expansion(sys, sys->stress(), r, 200, 4).passed) << r;
  }
  auto op = sys->mode_op(sys->b(), 2);
  EXPECT_TRUE(phi_form(*sys, op, {sys->vacuum(), sys->c()}).is_zero());
}

TEST(Bc, L0Derivation) {
  auto sys = bc();
  for (int n : {-2, -1, 0, 1}) EXPECT_TRUE(check_L0_derivation(sys, n, 200, 4).passed) << n;
}

TEST(Bc, ResiduesAreDerivations) {
  auto sys = bc();
  for (const auto& u : {sys->b(), sys->c(), sys->stress()})
    for (int n : {-2, -1, 0, 1}) EXPECT_TRUE(check_residue_derivation(sys, u, n, 150, 4).passed) << n;
}

TEST(Bc, G0SquareIdentitiesForB) {
  auto sys = bc();
  auto rep = check_g0_square_identity(*sys, sys->b(), 5);
  EXPECT_TRUE(rep.wick_square_mode.passed);
  EXPECT_TRUE(rep.first_mode.passed);
  EXPECT_TRUE(rep.linear_combination.passed);
  EXPECT_TRUE(rep.full_expansion.passed);
  EXPECT_TRUE(rep.l3_relation.passed);
  EXPECT_EQ(rep.weight_square, 4);
  EXPECT_EQ(rep.weight_l3, 1);
}

TEST(Bc, GbvaInstance) {
  auto sys = bc();
  auto inst = bc_gbva(sys, 3);
  EXPECT_TRUE(inst.checked.all());
  for (const auto& r : check_gbva_identities(inst, 300, 5)) EXPECT_TRUE(r.passed) << r.name;
}

TEST(Bc, ModeOrderLaws) {
  auto sys = bc();
  Domain dom = bc_domain(*sys, 1);
  std::vector<std::pair<LinOp, int>> ops;
  for (int n : {0, 1, 2}) ops.emplace_back(sys->mode_op(sys->b(), n).memoized(), n + 1);
  ops.emplace_back(sys->mode_op(sys->stress(), 1).memoized(), 2);
  ops.emplace_back(sys->mode_op(sys->stress(), 2).memoized(), 3);
  for (const auto& [op, claimed] : ops) {
    auto o = classify_order(*sys, op, claimed, dom, true);
    ASSERT_TRUE(o.order) << op.label();
    EXPECT_LE(*o.order, claimed) << op.label();
  }
  // brackets stay inside order r + s - 1
  for (const auto& [p, r] : ops)
    for (const auto& [q, s2] : ops) {
      auto o = classify_order(*sys, supercommutator(p, q), std::max(1, r + s2 - 1), dom, true);
      ASSERT_TRUE(o.order) << p.label() << " " << q.label();
      EXPECT_LE(*o.order, r + s2 - 1);
    }
  // [L_(2), b_(1)] = b_(2) is a nonzero bracket of order 3
  auto br = supercommutator(ops[4].first, ops[1].first);
  EXPECT_FALSE(first_difference(br, ops[2].first, dom.words));
}

TEST(Bc, CompositionOfModesLeavesClassicalBound) {
  // the Wick product is not associative, so the classical composition
  // bound fails: b_(0) b_(1) has a nonzero Phi^4
  auto sys = bc();
  auto op = compose(sys->mode_op(sys->b(), 0), sys->mode_op(sys->b(), 1));
  Element c1 = sys->c(), c10 = sys->state({{'c', 1}, {'c', 0}}), c10b = sys->state({{'c', 1}, {'c', 0}, {'b', -2}}),
          c1b = sys->state({{'c', 1}, {'b', -2}});
  Element v = phi_form(*sys, op, {c10, c10, c10b, c1b});
  EXPECT_EQ(v, Scalar(40) * sys->state({{'c', 1}, {'c', 0}, {'c', -2}}));
  EXPECT_TRUE(check_associative(*sys, sys->basis(1)));
}
