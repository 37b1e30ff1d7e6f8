#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "bvk/bv.hpp"
#include "bvk/diffops.hpp"
#include "bvk/report.hpp"

namespace bvk {

// Finite-dimensional Lie algebra by structure constants [e_i,e_j] = sum_k c[i][j][k] e_k.
struct LieAlgebraData {
  int dim = 0;
  std::vector<std::vector<std::vector<Scalar>>> c;
  std::vector<std::string> names;
  bool semisimple = false;  // nondegenerate Killing form

  std::vector<Scalar> bracket(int i, int j) const { return c[i][j]; }
};

// validates antisymmetry and Jacobi; computes the Killing form test
LieAlgebraData make_lie_algebra(int dim, const std::vector<std::tuple<int, int, int, Scalar>>& brackets,
                                std::vector<std::string> names = {});
LieAlgebraData sl2();               // e, f, h
LieAlgebraData abelian_lie(int n);  // all brackets zero
LieAlgebraData nonabelian2();       // [a, b] = b

enum class ComplexCase { Cohomology, Homology };
enum class CoefficientModule { Trivial, SymmetricAdjoint };

struct ComplexSpec {
  ComplexCase kind = ComplexCase::Homology;
  CoefficientModule module = CoefficientModule::Trivial;
  int degree_cap = 0;  // symmetric degree bound for the adjoint module
};

// The exterior factor (Lambda g or Lambda g') tensored with the coefficients,
// realized as a polynomial superalgebra: even generators S(e_i), odd
// generators e_i or e_i'.
class LieComplex {
 public:
  LieComplex(LieAlgebraData lie, ComplexSpec spec);

  const LieAlgebraData& lie() const { return lie_; }
  const ComplexSpec& spec() const { return spec_; }
  std::shared_ptr<const PolyAlgebra> algebra() const { return alg_; }
  const std::vector<Word>& words() const { return words_; }
  Domain domain() const;

  LinOp contraction(int i) const;     // substitution of e_i
  LinOp dual_mult(int i) const;  // multiplication by e_i'
  LinOp contraction_by(const std::vector<Scalar>& x) const;
  LinOp pi(int i) const;   // action on the coefficients
  LinOp rho(int i) const;  // normal-ordered Clifford part
  LinOp theta(int i) const;
  // d in the cohomology case, the boundary in the homology case
  LinOp differential() const;

  int symmetric_degree(const Word& w) const;
  int exterior_degree(const Word& w) const;

 private:
  LieAlgebraData lie_;
  ComplexSpec spec_;
  std::shared_ptr<PolyAlgebra> alg_;
  std::vector<Word> words_;
};

LinOp chevalley_boundary(const LieComplex& cx);
LinOp chevalley_coboundary(const LieComplex& cx);

// Words in the Clifford generators contraction(e_i), dual_mult(e_i').
struct CliffordLetter {
  bool eps = false;
  int index = 0;
  auto operator<=>(const CliffordLetter&) const = default;
};
using CliffordWord = std::vector<CliffordLetter>;

class CliffordElement {
 public:
  CliffordElement() = default;
  explicit CliffordElement(CliffordWord w, const Scalar& c = 1) { add(std::move(w), c); }
  void add(const CliffordWord& w, const Scalar& c);
  const std::map<CliffordWord, Scalar>& terms() const { return terms_; }
  bool operator==(const CliffordElement& o) const { return terms_ == o.terms_; }

 private:
  std::map<CliffordWord, Scalar> terms_;
};

enum class ReductionOrder { Leftmost, Rightmost };
// creation operators left of annihilation operators, each block sorted by
// index; which letters create depends on the case
CliffordElement normalize(const CliffordElement& e, ComplexCase kind, ReductionOrder order);
bool is_normal(const CliffordWord& w, ComplexCase kind);
// operator on the complex; the rightmost letter acts first
LinOp clifford_operator(const LieComplex& cx, const CliffordElement& e);

IdentityReport cartan_identity_check(const LieComplex& cx);

struct BoundaryOrderReport {
  OrderReport order;
  bool order_ok = false;
  IdentityReport factorization;
};
BoundaryOrderReport check_boundary_order(const LieComplex& cx);

struct HomologyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
using GradingKey = std::vector<int>;
using Grading = std::function<GradingKey(const Word&)>;
// dims of ker/im per grading value; throws HomologyError when op^2 != 0
std::map<GradingKey, int> homology(const Superalgebra& alg, const LinOp& op, const std::vector<Word>& words,
                                   const Grading& grading);
std::map<GradingKey, int> homology(const LieComplex& cx);  // by exterior degree

// dimension of the common kernel of the operators on span(words)
int common_kernel_dimension(const std::vector<LinOp>& ops, const std::vector<Word>& words);
std::vector<Element> common_kernel(const std::vector<LinOp>& ops, const std::vector<Word>& words);

std::vector<IdentityReport> contraction_multiplication_check(const LieComplex& cx);

// maps {x, y} for x, y in g against -[x, y]
IdentityReport lie_bracket_recovery_check(const LieComplex& cx);

struct WeilReport {
  bool square_zero = false;
  bool order_ok = false;
  std::map<GradingKey, int> homology;    // (symmetric degree, exterior degree)
  std::map<GradingKey, int> invariants;  // dim S^s invariants * dim Lambda^k invariants
  std::vector<std::string> warnings;
  bool matches = false;
};
WeilReport truncated_weil_homology(const LieAlgebraData& lie, int degree_cap);

}  // namespace bvk
