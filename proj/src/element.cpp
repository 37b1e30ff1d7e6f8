#include "bvk/element.hpp"

#include <algorithm>

namespace bvk {

std::string to_string(const Scalar& s) { return s.get_str(); }

Element::Element(const Word& w, const Scalar& c) { add(w, c); }

void Element::add(const Word& w, const Scalar& c) {
  if (c == 0) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Scalar Element::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar(0) : it->second;
}

std::optional<int> Element::degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = terms_.begin()->first.deg;
  for (const auto& [w, c] : terms_)
    if (w.deg != d) return std::nullopt;
  return d;
}

std::optional<int> Element::parity() const {
  if (terms_.empty()) return std::nullopt;
  int p = terms_.begin()->first.parity();
  for (const auto& [w, c] : terms_)
    if (w.parity() != p) return std::nullopt;
  return p;
}

std::optional<int> Element::grade() const {
  if (terms_.empty()) return std::nullopt;
  int g = terms_.begin()->first.grade;
  for (const auto& [w, c] : terms_)
    if (w.grade != g) return std::nullopt;
  return g;
}

std::set<int> Element::degrees() const {
  std::set<int> out;
  for (const auto& [w, c] : terms_) out.insert(w.deg);
  return out;
}

std::set<int> Element::grades() const {
  std::set<int> out;
  for (const auto& [w, c] : terms_) out.insert(w.grade);
  return out;
}

int Element::max_grade() const {
  int g = 0;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (first || w.grade > g) g = w.grade;
    first = false;
  }
  return g;
}

Element Element::part_degree(int d) const {
  Element out;
  for (const auto& [w, c] : terms_)
    if (w.deg == d) out.terms_.emplace(w, c);
  return out;
}

Element Element::part_grade(int g) const {
  Element out;
  for (const auto& [w, c] : terms_)
    if (w.grade == g) out.terms_.emplace(w, c);
  return out;
}

Element& Element::operator+=(const Element& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

Element& Element::operator*=(const Scalar& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= s;
  return *this;
}

std::vector<Element> homogeneous_parts(const Element& a) {
  std::vector<Element> out;
  for (int d : a.degrees()) out.push_back(a.part_degree(d));
  return out;
}

}  // namespace bvk
