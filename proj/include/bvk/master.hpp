#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bvk/bv.hpp"

namespace bvk {

// An even W and a rational lambda; whether {W,W} = lambda Delta(W) holds is
// computed, never assumed.
struct MasterCandidate {
  Element W;
  Scalar lambda;
  GbvaInstance inst;
};

// the bracket extended bilinearly to inhomogeneous arguments
Element bracket_sum(const GbvaInstance& inst, const Element& a, const Element& b);
// {W,W} - lambda Delta(W)
Element master_residual(const MasterCandidate& cand);
bool satisfies_master(const MasterCandidate& cand);
// {S,S} = 0
IdentityReport classical_master_check(const GbvaInstance& inst, const Element& S);

// a b, refusing products that would reach past the degree cap
Element exact_product(const Superalgebra& alg, const Element& a, const Element& b);
Element exact_power(const Superalgebra& alg, const Element& a, int k);
// finite exponential series; refuses a non-nilpotent argument
Element exp_nilpotent(const Superalgebra& alg, const Element& V, int max_terms = 64);

// {W, W^k} = k lambda Delta(W) W^{k-1} and
// Delta(W^k) = k(k-1)/2 lambda Delta(W) W^{k-2} + k Delta(W) W^{k-1}, k = 1..k_max
std::vector<IdentityReport> check_power_identities(const MasterCandidate& cand, int k_max);
// Delta(exp V) = (mu/2 + 1) Delta(V) exp(V) with V = cand.W, mu = cand.lambda;
// Delta(exp V) = 0 when mu = -2
IdentityReport exp_check(const MasterCandidate& cand);

// Delta(W^k) = sum_j C(k,j) W^{k-j} Phi^j(W,..,W) for any odd Delta; when
// order_domain is given and Delta has order <= 2 there, also Phi^j(W..W) = 0
// for j >= 3; for nilpotent W, Delta(exp W) = exp(W) sum_k Phi^k(W..W)/k!
std::vector<IdentityReport> phi_expansion_check(const Superalgebra& alg, const LinOp& delta, const Element& W,
                                                int k_max, const std::optional<Domain>& order_domain = {});

// b -> Delta(b) + {a, b}, odd but graded only by parity
LinOp deform_delta(const GbvaInstance& inst, const Element& a);

struct DeformationReport {
  bool master_solution = false;  // Delta(a) + {a,a}/2 = 0
  Element residual;
  std::vector<IdentityReport> checks;  // empty unless master_solution
  std::string note;
};
// with D given and D(a) = 0, also [D, Delta'] = L on the sweep
DeformationReport check_deformation(const GbvaInstance& inst, const Element& a, long samples = 200,
                                    std::uint64_t seed = 1, const LinOp* D = nullptr, const LinOp* L = nullptr);

// Weight bookkeeping for an instance whose Delta shifts weight uniformly:
// {W,W} sits in weight 2w + s and Delta(W) in w + s, so a solution with
// lambda != 0 and Delta(W) != 0 needs w = 0. W must be weight homogeneous.
IdentityReport check_weight_obstruction(const GbvaInstance& inst, const Element& W, const Scalar& lambda);
// for a solution W, components of nonzero extreme weight satisfy {W',W'} = 0
IdentityReport check_extreme_components(const GbvaInstance& inst, const Element& W, const Scalar& lambda);

// W = sum_p h^p M_p against {W,W} = 2 kappa h Delta(W), order by order in h,
// in both the expanded and the solved-for-M_p forms
std::vector<IdentityReport> layered_master_check(const GbvaInstance& inst, const std::vector<Element>& M,
                                                 const Scalar& kappa);

struct MasterSolution {
  Element W;
  Scalar lambda;
  std::vector<int> coefficients;
};
struct MasterSearchReport {
  long candidates = 0;
  long degenerate = 0;  // Delta(W) = {W,W} = 0
  long classical = 0;   // {W,W} = 0 with Delta(W) != 0
  std::vector<MasterSolution> solutions;  // lambda != 0, Delta(W) != 0, in enumeration order
};
// every combination of the monomials with coefficients in [lo, hi]; the zero
// vector is skipped
MasterSearchReport search_master_solutions(const GbvaInstance& inst, const std::vector<Element>& monomials, int lo,
                                           int hi, int jobs = 1);

}  // namespace bvk
