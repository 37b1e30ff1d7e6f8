#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bvk/linop.hpp"

namespace bvk {

// Single-sign corruptions used by the mutation-sensitivity checks. None in
// normal operation; the active mutation is per thread.
enum class Mutation {
  None,
  RecursionSecondTerm,     // + instead of - on Phi(..,a_r) a_{r+1}
  RecursionThirdTerm,      // + instead of - on a_r Phi(..,a_{r+1})
  RecursionDeltaParity,    // drop |Delta| from the third-term exponent
  RecursionPrefixParity,   // drop |a_1|+..+|a_{r-1}| from the exponent
  BracketPrefactor,        // drop (-1)^{|a|}
  BracketOverallSign,      // negate the bracket
};

Mutation active_mutation();
void set_mutation(Mutation m);
const char* mutation_name(Mutation m);
std::vector<Mutation> all_mutations();

struct ScopedMutation {
  explicit ScopedMutation(Mutation m) : prev(active_mutation()) { set_mutation(m); }
  ~ScopedMutation() { set_mutation(prev); }
  Mutation prev;
};

struct Witness {
  int arity = 0;
  std::vector<Element> args;
  Element value;
};

struct OrderReport {
  std::string label;
  int r_max = 0;
  std::optional<int> order;  // nullopt: exceeds r_max
  std::vector<Witness> witnesses;  // one for each nonvanishing Phi^k
  std::string domain;
  long tuples_checked = 0;
};

// Phi^r_Delta(a_1..a_r) by the recursive definition; args must be homogeneous
Element phi_form(const Superalgebra& alg, const LinOp& delta, const std::vector<Element>& args,
                 bool unital_adjust = false);
// Phi^r on tuples of basis words, memoized; the recursion expands products
// into words so every sub-evaluation is cached. Meant for exhaustive sweeps
// where consecutive tuples share prefixes. The active mutation is read once.
class PhiWordCache {
 public:
  PhiWordCache(const Superalgebra& alg, const LinOp& delta, bool unital_adjust = false);
  Element operator()(const std::vector<Word>& args);
  void clear() { memo_.clear(); }
  std::size_t size() const { return memo_.size(); }

 private:
  const Superalgebra& alg_;
  const LinOp& delta_;
  bool adjust_;
  Element delta_one_;
  Mutation mut_;
  std::map<std::vector<std::vector<int>>, Element> memo_;
};

// splits arguments into homogeneous parts and sums
Element phi_form_multilinear(const Superalgebra& alg, const LinOp& delta,
                             const std::vector<Element>& args, bool unital_adjust = false);
// m (Delta (x) id) prod_i (a_i (x) 1 - 1 (x) a_i), classical algebras only
Element phi_form_koszul(const Superalgebra& alg, const LinOp& delta, const std::vector<Element>& args);
// the fifteen-term closed formula for r = 4
Element phi4_explicit(const Superalgebra& alg, const LinOp& delta, const Element& a, const Element& b,
                      const Element& c, const Element& d);

struct IdentityReport;
// recursion against the Koszul form, r = 1..r_max, samples tuples per r drawn
// from basis(pool_bound)
IdentityReport check_koszul_agreement(const Superalgebra& alg, const LinOp& delta, int r_max, long samples,
                                      std::uint64_t seed, int pool_bound);
// recursion against the closed four-argument formula
IdentityReport check_phi4_formula(const Superalgebra& alg, const LinOp& delta, long samples, std::uint64_t seed,
                                  int pool_bound);

// Sweep of argument tuples from a basis list; a tuple is admissible when the
// sum of word grades is at most max_total_grade.
struct Domain {
  std::vector<Word> words;
  std::optional<int> max_total_grade;
  std::string description;
};

Domain basis_domain(const Superalgebra& alg, int bound, std::optional<int> max_total_grade,
                    std::string description = "");

// visits admissible k-tuples in lexicographic order; stops when fn returns false
long for_each_tuple(const Domain& dom, int k, const std::function<bool(const std::vector<Word>&)>& fn);

OrderReport classify_order(const Superalgebra& alg, const LinOp& delta, int r_max, const Domain& domain,
                           bool unital_adjust = false);

struct OrderLawEntry {
  std::string first, second;
  int r = 0, s = 0;
  std::optional<int> composite_order, bracket_order;
  bool composite_ok = false, bracket_ok = false;
};

struct OrderLawReport {
  bool passed = true;
  std::vector<std::string> claim_failures;
  std::vector<OrderLawEntry> entries;
};

OrderLawReport check_order_laws(const Superalgebra& alg, const std::vector<std::pair<LinOp, int>>& ops,
                                const Domain& domain, bool unital_adjust = true);

}  // namespace bvk
