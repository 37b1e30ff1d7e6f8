#include "bvk/linalg.hpp"

#include <stdexcept>

namespace bvk {

Coords::Coords(std::vector<Word> words) : words_(std::move(words)) {
  for (std::size_t i = 0; i < words_.size(); ++i) index_.emplace(words_[i], i);
}

Vec Coords::vec(const Element& e) const {
  Vec v(words_.size(), Scalar(0));
  for (const auto& [w, c] : e.terms()) {
    auto it = index_.find(w);
    if (it == index_.end()) throw std::out_of_range("element leaves the coordinate span");
    v[it->second] = c;
  }
  return v;
}

Element Coords::elem(const Vec& v) const {
  Element e;
  for (std::size_t i = 0; i < v.size(); ++i) e.add(words_[i], v[i]);
  return e;
}

namespace {
std::vector<std::vector<mpz_class>> integer_rows(const std::vector<Vec>& vectors) {
  std::vector<std::vector<mpz_class>> rows;
  for (const auto& v : vectors) {
    mpz_class l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<mpz_class> r;
    r.reserve(v.size());
    for (const auto& x : v) {
      mpq_class y = x * mpq_class(l);
      r.push_back(y.get_num());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}
}  // namespace

std::size_t rank(const std::vector<Vec>& vectors) {
  if (vectors.empty()) return 0;
  auto a = integer_rows(vectors);
  std::size_t m = a.size(), n = a[0].size();
  std::size_t r = 0;
  mpz_class prev = 1;
  for (std::size_t col = 0; col < n && r < m; ++col) {
    std::size_t piv = r;
    while (piv < m && a[piv][col] == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < m; ++i) {
      for (std::size_t j = col + 1; j < n; ++j) {
        mpz_class t = a[r][col] * a[i][j] - a[i][col] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][col] = 0;
    }
    prev = a[r][col];
    ++r;
  }
  return r;
}

std::vector<Vec> kernel(const std::vector<Vec>& columns, std::size_t target_dim) {
  std::size_t n = columns.size();
  // rows of the matrix whose columns are the given vectors
  std::vector<Vec> m(target_dim, Vec(n, Scalar(0)));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < target_dim; ++i) m[i][j] = columns[j][i];
  std::vector<int> pivot_of_col(n, -1);
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < target_dim; ++col) {
    std::size_t piv = r;
    while (piv < target_dim && m[piv][col] == 0) ++piv;
    if (piv == target_dim) continue;
    std::swap(m[piv], m[r]);
    Scalar inv = 1 / m[r][col];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < target_dim; ++i) {
      if (i == r || m[i][col] == 0) continue;
      Scalar f = m[i][col];
      for (std::size_t j = col; j < n; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_of_col[col] = static_cast<int>(r);
    ++r;
  }
  std::vector<Vec> out;
  for (std::size_t free = 0; free < n; ++free) {
    if (pivot_of_col[free] >= 0) continue;
    Vec x(n, Scalar(0));
    x[free] = 1;
    for (std::size_t col = 0; col < n; ++col)
      if (pivot_of_col[col] >= 0) x[col] = -m[pivot_of_col[col]][free];
    out.push_back(std::move(x));
  }
  return out;
}

bool in_span(const std::vector<Vec>& vectors, const Vec& v) {
  std::vector<Vec> with = vectors;
  with.push_back(v);
  return rank(with) == rank(vectors);
}

}  // namespace bvk
