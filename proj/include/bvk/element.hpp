#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace bvk {

using Scalar = mpq_class;

std::string to_string(const Scalar& s);

// (-1)^p
inline int sign_of(long p) { return (p % 2 == 0) ? 1 : -1; }

// A canonical basis word. The key alone identifies the word inside its
// algebra; deg and grade are cached functions of the key.
struct Word {
  std::vector<int> key;
  int deg = 0;    // superdegree
  int grade = 0;  // polynomial degree or conformal weight, used for caps

  int parity() const { return ((deg % 2) + 2) % 2; }
  bool operator<(const Word& o) const { return key < o.key; }
  bool operator==(const Word& o) const { return key == o.key; }
  bool operator!=(const Word& o) const { return key != o.key; }
};

class Element {
 public:
  using Map = std::map<Word, Scalar>;

  Element() = default;
  explicit Element(const Word& w, const Scalar& c = 1);

  static Element zero() { return Element(); }

  void add(const Word& w, const Scalar& c);
  const Map& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Scalar coeff(const Word& w) const;

  // superdegree if all terms agree; nullopt for 0 or mixed
  std::optional<int> degree() const;
  std::optional<int> parity() const;
  std::optional<int> grade() const;
  std::set<int> degrees() const;
  std::set<int> grades() const;
  int max_grade() const;

  Element part_degree(int d) const;
  Element part_grade(int g) const;

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Scalar& s);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a) { return a *= Scalar(-1); }
  friend Element operator*(const Scalar& s, Element a) { return a *= s; }
  friend Element operator*(Element a, const Scalar& s) { return a *= s; }

  bool operator==(const Element& o) const { return terms_ == o.terms_; }
  bool operator!=(const Element& o) const { return !(*this == o); }

 private:
  Map terms_;
};

// Splits an element into its homogeneous superdegree parts.
std::vector<Element> homogeneous_parts(const Element& a);

}  // namespace bvk
