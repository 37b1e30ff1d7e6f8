#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "bvk/bv.hpp"

namespace bvk {

// Polynomial multivector fields on affine n-space: Q[x_1..x_n] (x) Lambda(d_1..d_n)
// with d_i = partial/partial x_i of superdegree 1.
class MultivectorSpace {
 public:
  MultivectorSpace(int n, int poly_cap);
  int dim() const { return n_; }
  std::shared_ptr<const PolyAlgebra> algebra() const { return alg_; }
  Element coordinate(int i) const { return alg_->even_gen(i); }  // x_i
  Element partial(int i) const { return alg_->odd_gen(i); }      // d_i
  Element wedge(const Element& a, const Element& b) const { return alg_->multiply(a, b); }
  // wedge degree when homogeneous
  std::optional<int> degree(const Element& u) const { return u.degree(); }
  Domain domain() const;

 private:
  int n_;
  std::shared_ptr<PolyAlgebra> alg_;
};

// contraction with dx_i
LinOp contract_dx(const MultivectorSpace& M, int i);
// divergence-type operator -sum_i contraction(dx_i) covariant derivative along d_i for the flat connection
LinOp divergence_operator(const MultivectorSpace& M);

Element vector_field_bracket(const MultivectorSpace& M, const Element& X, const Element& Y);
// [f, u] = -contraction(df) u, [u, f] = (-1)^{|u|+1} contraction(df) u, decomposable
// formula in higher degrees
Element sn_bracket(const MultivectorSpace& M, const Element& u, const Element& v);

struct SnGenerationReport {
  IdentityReport bracket;
  std::optional<int> global_sign;  // Phi-bracket = sign * SN bracket
  bool square_zero = false;
  OrderReport order;
  bool order_ok = false;
};
SnGenerationReport check_sn_generation(int n, int poly_cap, long samples, std::uint64_t seed);

std::vector<IdentityReport> check_gerstenhaber(int n, int poly_cap, long samples, std::uint64_t seed);

}  // namespace bvk
