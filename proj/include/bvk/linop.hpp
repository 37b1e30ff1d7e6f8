#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bvk/algebra.hpp"

namespace bvk {

// Homogeneous linear operator given by its action on basis words.
class LinOp {
 public:
  using Action = std::function<Element(const Word&)>;

  LinOp() = default;
  LinOp(std::string label, int degree, Action action, std::optional<int> weight_shift = std::nullopt);

  const std::string& label() const { return label_; }
  int degree() const { return degree_; }
  int parity() const { return ((degree_ % 2) + 2) % 2; }
  std::optional<int> weight_shift() const { return weight_shift_; }

  // image of one basis word; the superdegree shift is verified
  Element on_word(const Word& w) const;
  Element apply(const Element& a) const;
  Element operator()(const Element& a) const { return apply(a); }

  // false when only the parity of the shift is fixed
  bool z_graded() const { return z_graded_; }
  LinOp parity_graded() const;

  // caches images of basis words (thread safe)
  LinOp memoized() const;
  LinOp relabeled(std::string label) const;

 private:
  struct Memo;
  std::string label_ = "0";
  int degree_ = 0;
  Action action_;
  std::optional<int> weight_shift_;
  bool z_graded_ = true;
  std::shared_ptr<Memo> memo_;
};

Element apply_operator(const LinOp& op, const Element& a);

LinOp zero_op(int degree = 0);
LinOp identity_op();
LinOp compose(const LinOp& a, const LinOp& b);  // a after b
// degrees must agree, or only parities when either summand is parity graded
LinOp add(const LinOp& a, const LinOp& b);
LinOp scale(const Scalar& s, const LinOp& a);
LinOp sub(const LinOp& a, const LinOp& b);
// sum_k c_k op_k; every operator must have the given degree
LinOp linear_combination(std::string label, int degree, std::vector<std::pair<Scalar, LinOp>> terms);
// ab - (-1)^{|a||b|} ba
LinOp supercommutator(const LinOp& a, const LinOp& b);
LinOp left_multiplication(AlgebraPtr alg, const Element& p);

// operator equality on a list of basis words; first word where they differ
std::optional<Word> first_difference(const LinOp& a, const LinOp& b, const std::vector<Word>& words);

// Operators on polynomial superalgebras.
LinOp partial_even(std::shared_ptr<const PolyAlgebra> alg, int i);  // d/dx_i
LinOp partial_odd(std::shared_ptr<const PolyAlgebra> alg, int j);   // left d/dt_j
LinOp wedge_odd(std::shared_ptr<const PolyAlgebra> alg, int j);     // left mult by t_j
// sum_i d/dx_i d/dt_i
LinOp classical_bv_operator(std::shared_ptr<const PolyAlgebra> alg);

// random operator of the given superdegree on basis(bound); images are random
// combinations of words of the target degree inside the same pool
LinOp random_operator(AlgebraPtr alg, std::uint64_t seed, int degree, int bound, bool kills_unit,
                      int max_terms = 4);

}  // namespace bvk
