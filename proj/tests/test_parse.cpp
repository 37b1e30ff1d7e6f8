#include <gtest/gtest.h>

#include "bvk/parse.hpp"
#include "bvk/vosa.hpp"
#include "printers.hpp"

using namespace bvk;

namespace {

int error_column(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.column;
  }
  return -1;
}

}  // namespace

TEST(ParseElement, PolynomialTerms) {
  auto A = make_polynomial_superalgebra(2, 2, 5);
  Element e = parse_element(*A, "3/2 * x1^2*t1 - t1*t2 + 4");
  Element want = A->monomial({2, 0}, 0b01, Scalar(3, 2)) - A->monomial({0, 0}, 0b11) + A->monomial({0, 0}, 0, 4);
  EXPECT_EQ(e, want);
  EXPECT_EQ(parse_element(*A, "t2*t1"), -A->monomial({0, 0}, 0b11));
  EXPECT_EQ(parse_element(*A, "(x1 + x2)^2"), parse_element(*A, "x1^2 + 2*x1*x2 + x2^2"));
  EXPECT_TRUE(parse_element(*A, "t1*t1").is_zero());
  EXPECT_TRUE(parse_element(*A, "0").is_zero());
}

TEST(ParseElement, ErrorsCarryColumns) {
  auto A = make_polynomial_superalgebra(2, 2, 5);
  EXPECT_EQ(error_column([&] { parse_element(*A, "x1 + y7"); }), 6);
  EXPECT_EQ(error_column([&] { parse_element(*A, "x1 +"); }), 5);
  EXPECT_GT(error_column([&] { parse_element(*A, "1/0 * x1"); }), 0);
  EXPECT_GT(error_column([&] { parse_element(*A, "(x1"); }), 0);
}

TEST(ParseElement, FormatRoundTrip) {
  auto A = make_polynomial_superalgebra(2, 2, 6);
  auto S = random_structure_algebra(5, 3);
  auto bc = make_bc_system();
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Element a = random_element(*A, seed, 4);
    EXPECT_EQ(parse_element(*A, A->format(a)), a) << A->format(a);
    Element s = random_element(*S, seed, 1);
    EXPECT_EQ(parse_element(*S, S->format(s)), s) << S->format(s);
  }
  for (const Word& w : bc->basis(3)) {
    Element e = Scalar(-3, 7) * Element(w) + bc->vacuum();
    EXPECT_EQ(parse_element(*bc, bc->format(e)), e) << bc->format(e);
  }
}

TEST(ParseElement, FockStates) {
  auto bc = make_bc_system();
  EXPECT_EQ(parse_element(*bc, "|0>"), bc->vacuum());
  EXPECT_EQ(parse_element(*bc, "b(-2)|0>"), bc->b());
  EXPECT_EQ(parse_element(*bc, "c(1)|0>"), bc->c());
  EXPECT_EQ(parse_element(*bc, "b(-2)c(1)|0>"), -parse_element(*bc, "c(1)b(-2)|0>"));
  EXPECT_GT(error_column([&] { parse_element(*bc, "b(-2)"); }), 0);
}

TEST(ParseOperator, CompositesAndSums) {
  auto A = make_polynomial_superalgebra(1, 1, 6);
  LinOp bv = parse_operator(A, "bv");
  LinOp manual = parse_operator(A, "d/dx1 * d/dt1");
  for (const Word& w : A->basis(4)) EXPECT_EQ(bv(Element(w)), manual(Element(w)));
  LinOp m = parse_operator(A, "mult(x1^2) * d/dx1 + 1/2 * id");
  Element x3 = A->monomial({3}, 0);
  EXPECT_EQ(m(x3), A->monomial({4}, 0, 3) + A->monomial({3}, 0, Scalar(1, 2)));
  EXPECT_EQ(parse_operator(A, "rand(4,1,2,1)").parity(), 1);
  EXPECT_GT(error_column([&] { parse_operator(A, "d/dt1 + d/dx1"); }), 0);  // mixed parity
  EXPECT_EQ(error_column([&] { parse_operator(A, "d/dx1 * d/dz"); }), 12);
}

TEST(ParseOperator, BcModes) {
  auto bc = make_bc_system();
  LinOp b0 = parse_operator(bc, "b(0)");
  LinOp viaState = parse_operator(bc, "mode(b(-2)|0>,1)");
  for (const Word& w : bc->basis(3)) EXPECT_EQ(b0(Element(w)), viaState(Element(w)));
  LinOp L0 = parse_operator(bc, "L(0)");
  for (const Word& w : bc->basis(3)) EXPECT_EQ(L0(Element(w)), Scalar(w.grade) * Element(w));
}
