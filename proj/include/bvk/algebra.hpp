#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bvk/element.hpp"

namespace bvk {

struct AlgebraFlags {
  bool supercommutative = false;
  bool associative = false;
  bool unital = false;
};

class Superalgebra {
 public:
  Superalgebra(std::string name, AlgebraFlags flags, std::optional<int> cap)
      : name_(std::move(name)), flags_(flags), cap_(cap) {}
  virtual ~Superalgebra() = default;

  const std::string& name() const { return name_; }
  const AlgebraFlags& flags() const { return flags_; }
  std::optional<int> degree_cap() const { return cap_; }

  virtual Element mul(const Word& u, const Word& v) const = 0;
  virtual std::optional<Element> unit() const { return std::nullopt; }
  // every basis word w with filtration(w) <= bound
  virtual std::vector<Word> basis(int bound) const = 0;
  // size used by random generation and basis enumeration
  virtual int filtration(const Word& w) const { return w.grade; }
  virtual std::vector<Element> generators() const = 0;
  virtual std::string format_word(const Word& w) const = 0;

  Element multiply(const Element& a, const Element& b) const;
  std::string format(const Element& a) const;

 protected:
  void set_flags(AlgebraFlags f) { flags_ = f; }

 private:
  std::string name_;
  AlgebraFlags flags_;
  std::optional<int> cap_;
};

using AlgebraPtr = std::shared_ptr<const Superalgebra>;

// Q[x_1..x_n] (x) Lambda(t_1..t_m); products whose x-degree exceeds the cap
// are dropped.
class PolyAlgebra : public Superalgebra {
 public:
  PolyAlgebra(int n_even, int n_odd, int cap, std::vector<std::string> even_names = {},
              std::vector<std::string> odd_names = {});

  int n_even() const { return n_even_; }
  int n_odd() const { return n_odd_; }
  int cap() const { return cap_value_; }

  Word make_word(const std::vector<int>& exps, unsigned mask) const;
  std::vector<int> exps(const Word& w) const;
  unsigned mask(const Word& w) const;
  Word unit_word() const;

  Element even_gen(int i) const;  // 0-based
  Element odd_gen(int i) const;
  Element monomial(const std::vector<int>& exps, unsigned mask, const Scalar& c = 1) const;

  Element mul(const Word& u, const Word& v) const override;
  std::optional<Element> unit() const override;
  std::vector<Word> basis(int bound) const override;
  int filtration(const Word& w) const override;
  std::vector<Element> generators() const override;
  std::string format_word(const Word& w) const override;

  const std::vector<std::string>& even_names() const { return even_names_; }
  const std::vector<std::string>& odd_names() const { return odd_names_; }

  // all words with x-degree <= g (any odd part)
  std::vector<Word> words_up_to_grade(int g) const;

 private:
  int n_even_, n_odd_, cap_value_;
  std::vector<std::string> even_names_, odd_names_;
};

// Finite-dimensional algebra given by a multiplication table on generators.
class StructAlgebra : public Superalgebra {
 public:
  using Table = std::map<std::pair<int, int>, Element>;

  // table entries are expressed in the words gen_word(k); missing pairs are 0
  StructAlgebra(std::vector<int> degrees, std::vector<std::vector<std::vector<Scalar>>> table,
                std::optional<int> unit_index = std::nullopt, std::string name = "struct");

  int dim() const { return static_cast<int>(degrees_.size()); }
  const std::vector<int>& degrees() const { return degrees_; }
  Word gen_word(int i) const;
  Element gen(int i) const { return Element(gen_word(i)); }

  Element mul(const Word& u, const Word& v) const override;
  std::optional<Element> unit() const override;
  std::vector<Word> basis(int bound) const override;
  int filtration(const Word& w) const override;
  std::vector<Element> generators() const override;
  std::string format_word(const Word& w) const override;

  // declare which laws hold; they are re-verified exhaustively
  void declare_flags(AlgebraFlags f);

 private:
  std::vector<int> degrees_;
  std::vector<std::vector<std::vector<Scalar>>> table_;  // [i][j][k]
  std::optional<int> unit_index_;
};

std::shared_ptr<PolyAlgebra> make_polynomial_superalgebra(int n_even, int n_odd, int degree_cap);

// table maps (i,j) to a coefficient vector over generators
std::shared_ptr<StructAlgebra> make_structure_constant_algebra(
    const std::map<std::pair<int, int>, std::vector<Scalar>>& table, const std::vector<int>& degrees,
    std::optional<int> unit_index = std::nullopt);

// Deterministic splittable generator (splitmix64).
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);
  std::uint64_t next();
  int uniform(int lo, int hi);  // inclusive
  Rng split(std::uint64_t stream) const;

 private:
  std::uint64_t state_;
};

// coefficients uniform in [-coef, coef], at most max_terms terms
Element random_combination(Rng& rng, const std::vector<Word>& words, int max_terms = 6,
                           int coef = 5);
Element random_element(const Superalgebra& alg, std::uint64_t seed, int degree_bound);
// nonzero homogeneous element of the given superdegree when possible
Element random_homogeneous(const Superalgebra& alg, Rng& rng, const std::vector<Word>& pool,
                           std::optional<int> superdegree = std::nullopt);

std::shared_ptr<StructAlgebra> random_structure_algebra(int dim, std::uint64_t seed,
                                                        std::vector<int> degrees = {});

// exhaustive law checks on a list of basis words; return a description of
// the first violation
std::optional<std::string> check_degree_additivity(const Superalgebra& alg,
                                                   const std::vector<Word>& words);
std::optional<std::string> check_supercommutative(const Superalgebra& alg,
                                                  const std::vector<Word>& words);
std::optional<std::string> check_associative(const Superalgebra& alg,
                                             const std::vector<Word>& words);
std::optional<std::string> check_unit(const Superalgebra& alg, const std::vector<Word>& words);

}  // namespace bvk
