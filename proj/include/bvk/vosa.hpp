#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "bvk/bv.hpp"

namespace bvk {

// A creation or annihilation mode in weight indexing: b_m (field weight 2)
// or c_m (field weight -1), b(z) = sum b_m z^{-m-2}, c(z) = sum c_m z^{-m+1}.
struct Mode {
  char gen = 'b';  // 'b' or 'c'
  int index = 0;
  bool creates() const { return gen == 'b' ? index <= -2 : index <= 1; }
};

// standard indexing u_(n) of the generating fields
int b_standard_to_weight(int n);  // b_(n) = b_{n-1}
int c_standard_to_weight(int n);  // c_(n) = c_{n+2}
int b_weight_to_standard(int m);
int c_weight_to_standard(int m);

// The bc ghost system. Basis words are products of distinct creation modes
// applied to the vacuum in a fixed order; superdegree is #c - #b, the grade
// is the conformal weight. Every state has weight >= -1.
class BcSystem : public Superalgebra {
 public:
  BcSystem();

  Element vacuum() const;
  Element b() const;  // b_{-2}|0>
  Element c() const;  // c_1|0>
  // stress state -b_{-3}c_1|0> - 2 b_{-2}c_0|0>
  Element stress() const;

  // apply a generator mode (weight indexing)
  Element apply_mode(const Mode& m, const Element& v) const;
  // modes applied right to left to the vacuum
  Element state(const std::vector<Mode>& modes) const;

  // u_(n) v, exact
  Element mode(const Element& u, int n, const Element& v) const;
  Element wick(const Element& u, const Element& v) const { return mode(u, -1, v); }
  // the operator u_(n); u homogeneous in superdegree and weight
  LinOp mode_op(const Element& u, int n) const;
  LinOp generator_op(const Mode& m) const;
  LinOp weight_op() const;  // reads the conformal weight

  int weight(const Word& w) const { return w.grade; }
  std::optional<int> weight(const Element& u) const { return u.grade(); }
  std::vector<Mode> modes_of(const Word& w) const;
  Word word_of(std::vector<int> codes) const;

  Element mul(const Word& u, const Word& v) const override;
  std::optional<Element> unit() const override { return vacuum(); }
  std::vector<Word> basis(int bound) const override;  // weight <= bound
  int filtration(const Word& w) const override { return w.grade; }
  std::vector<Element> generators() const override { return {b(), c()}; }
  std::string format_word(const Word& w) const override;

  std::size_t memo_size() const;

 private:
  Element gen_on_word(const Mode& m, const Word& v) const;
  Element mode_word(const Word& u, int n, const Word& v) const;

  mutable std::mutex mu_;
  mutable std::map<std::tuple<std::vector<int>, int, std::vector<int>>, Element> memo_;
};

std::shared_ptr<const BcSystem> make_bc_system();

// binomial coefficient for any integer top
Scalar binomial(long top, long i);

// [u_(m), v_(n)] against sum_i C(m,i) (u_(i) v)_(m+n-i) on every basis state of weight <= cap
IdentityReport commutator_check(const BcSystem& bc, const Element& u, int m, const Element& v, int n, int weight_cap);
// [L_m, b_n] = (m - n) b_{m+n} in weight indexing, all |m|,|n| <= range
IdentityReport primary_check(const BcSystem& bc, int range, int weight_cap);

struct ModeVanishingReport {
  IdentityReport vanishing;        // Phi^{n+2} == 0, or the adjusted Phi^1 for n <= -1
  std::optional<Witness> witness;  // Phi^{n+1} != 0 inside the cap
  long tuples = 0;
};
ModeVanishingReport check_mode_vanishing(std::shared_ptr<const BcSystem> bc, const Element& u, int n, int weight_cap);

IdentityReport check_phi2_expansion(std::shared_ptr<const BcSystem> bc, const Element& u, int r, long samples,
                                    int weight_cap, std::uint64_t seed = 1);
IdentityReport check_L0_derivation(std::shared_ptr<const BcSystem> bc, int n, long samples, int weight_cap,
                                   std::uint64_t seed = 1);
// u_(0) is a derivation of the product a_(n) b
IdentityReport check_residue_derivation(std::shared_ptr<const BcSystem> bc, const Element& u, int n, long samples,
                                        int weight_cap, std::uint64_t seed = 1);
// L_(1) equals the weight operator
IdentityReport check_stress_weight(const BcSystem& bc, int weight_cap);

struct G0SquareReport {
  IdentityReport wick_square_mode;   // (G_{-2}G)_0 = -G_0^2 - [G_1, G_{-1}]
  IdentityReport first_mode;         // (G_1 G)_0 = 2(-2 G_0^2 + [G_1, G_{-1}])
  IdentityReport linear_combination; // 6 G_0^2 = -(2 (G_{-2}G)_0 + (G_1G)_0)
  IdentityReport full_expansion;     // the untruncated sum for (G_{-2}G)_0
  IdentityReport l3_relation;        // L_3 (G_{-2})^2|0> = 5 G_1 G_{-2}|0>
  int weight_square = 0, weight_l3 = 0;
};
// G odd of weight 2, modes in weight indexing G_k = G_(k+1)
G0SquareReport check_g0_square_identity(const BcSystem& bc, const Element& G, int weight_cap);

// the bc system with Delta = b_0 as a BV instance on the capped basis
GbvaInstance bc_gbva(std::shared_ptr<const BcSystem> bc, int weight_cap);
Domain bc_domain(const BcSystem& bc, int weight_cap);

}  // namespace bvk
