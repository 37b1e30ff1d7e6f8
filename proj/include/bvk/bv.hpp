#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bvk/diffops.hpp"
#include "bvk/report.hpp"

namespace bvk {

struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GbvaFlags {
  bool delta_odd = false;
  bool delta_square_zero = false;
  bool delta_order_le_2 = false;
  bool kills_unit = false;
  bool all() const { return delta_odd && delta_square_zero && delta_order_le_2 && kills_unit; }
};

struct GbvaInstance {
  std::string name;
  AlgebraPtr alg;
  LinOp delta;
  Domain sweep;  // basis words and tuple admissibility used by every check
  GbvaFlags checked;
};

// computes the flags on the sweep domain
GbvaInstance make_gbva(std::string name, AlgebraPtr alg, LinOp delta, Domain sweep);

// (-1)^{|a|} Phi^2_Delta(a, b); b may be inhomogeneous
Element bv_bracket(const Superalgebra& alg, const LinOp& delta, const Element& a, const Element& b);
Element bv_bracket(const GbvaInstance& inst, const Element& a, const Element& b);
// [a,b] = ab - (-1)^{|a||b|} ba
Element commutator_product(const Superalgebra& alg, const Element& a, const Element& b);
// Phi^2 taken with respect to the commutator product
Element commutator_phi2(const Superalgebra& alg, const LinOp& delta, const Element& a, const Element& b);

// Sample tuples of homogeneous elements. With exhaustive set, every
// admissible tuple of basis words; otherwise random combinations whose total
// grade stays inside the budget.
std::vector<std::vector<Element>> sample_tuples(const Superalgebra& alg, const Domain& dom, int k,
                                                long samples, std::uint64_t seed, bool exhaustive);
// exhaustive when the basis is small (<= 12 words)
std::vector<std::vector<Element>> default_tuples(const Superalgebra& alg, const Domain& dom, int k,
                                                 long samples, std::uint64_t seed);

std::vector<IdentityReport> check_gbva_identities(const GbvaInstance& inst, long samples, std::uint64_t seed);
std::vector<IdentityReport> check_gbva_identities(const GbvaInstance& inst,
                                                  const std::vector<std::vector<Element>>& triples);

std::vector<IdentityReport> check_general_identities(const Superalgebra& alg, const LinOp& delta,
                                                     const std::vector<std::vector<Element>>& triples);
std::vector<IdentityReport> check_general_identities(const Superalgebra& alg, const LinOp& delta,
                                                     const Domain& dom, long samples, std::uint64_t seed);

IdentityReport check_d_derivation(const GbvaInstance& inst, const LinOp& D, const LinOp& L, long samples,
                                  std::uint64_t seed);

using Bracket = std::function<Element(const Element&, const Element&)>;
using DegreeFn = std::function<int(const Element&)>;
IdentityReport check_leibniz(const Superalgebra& alg, const Bracket& bracket, const DegreeFn& degree,
                             const std::vector<std::vector<Element>>& triples, std::string name = "leibniz");

struct DbvaReport {
  std::vector<IdentityReport> identities;
  std::map<std::string, int> cohomology_by_weight;  // weight -> dim
};

DbvaReport verify_dbva(const GbvaInstance& inst, const LinOp& D, const LinOp& L);

}  // namespace bvk
