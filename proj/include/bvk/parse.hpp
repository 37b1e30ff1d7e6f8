#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "bvk/linop.hpp"

namespace bvk {

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, int column) : std::runtime_error(what), column(column) {}
  int column;  // 1-based position inside the parsed text
};

// Elements: sums of terms like "3/2 * x1^2*t1", "-t1*t2", "1".
// Generators are named as the algebra prints them (x1.., t1.. for
// polynomial algebras, e1.. for structure-constant algebras). Fock states
// of the bc system are written "2 * c(1)b(-2)|0> - |0>", modes in weight
// indexing, rightmost acting first.
Element parse_element(const Superalgebra& alg, std::string_view text);

// Operators: sums of scaled composites, "a*b" meaning a after b.
//   d/dx1, d/dt2       partial derivatives (polynomial algebras)
//   mult(<element>)    left multiplication
//   bv                 sum_i d/dx_i d/dt_i
//   id
//   rand(seed,degree,bound[,1])  random operator, trailing 1 kills the unit
//   b(m), c(m), L(m)   bc modes in weight indexing
//   mode(<state>,n)    the bc operator u_(n)
LinOp parse_operator(const AlgebraPtr& alg, std::string_view text);

}  // namespace bvk
