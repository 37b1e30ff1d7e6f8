#pragma once

#include <map>
#include <vector>

#include "bvk/element.hpp"

namespace bvk {

using Vec = std::vector<Scalar>;

// Coordinates of elements with respect to a fixed list of basis words.
class Coords {
 public:
  explicit Coords(std::vector<Word> words);
  std::size_t dim() const { return words_.size(); }
  const std::vector<Word>& words() const { return words_; }
  bool contains(const Word& w) const { return index_.count(w) != 0; }
  // throws if the element leaves the span
  Vec vec(const Element& e) const;
  Element elem(const Vec& v) const;

 private:
  std::vector<Word> words_;
  std::map<Word, std::size_t> index_;
};

// rank of a family of vectors by fraction-free (Bareiss) elimination
std::size_t rank(const std::vector<Vec>& vectors);
// basis of {x : sum_j x_j columns[j] = 0}
std::vector<Vec> kernel(const std::vector<Vec>& columns, std::size_t target_dim);
bool in_span(const std::vector<Vec>& vectors, const Vec& v);

}  // namespace bvk
