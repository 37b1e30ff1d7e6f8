#include "bvk/algebra.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>

namespace bvk {

Element Superalgebra::multiply(const Element& a, const Element& b) const {
  Element out;
  for (const auto& [u, cu] : a.terms())
    for (const auto& [v, cv] : b.terms()) {
      Element p = mul(u, v);
      Scalar c = cu * cv;
      for (const auto& [w, cw] : p.terms()) out.add(w, c * cw);
    }
  return out;
}

std::string Superalgebra::format(const Element& a) const {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : a.terms()) {
    if (!first) os << " + ";
    first = false;
    os << to_string(c) << " * " << format_word(w);
  }
  return os.str();
}

// ---------------------------------------------------------------- PolyAlgebra

PolyAlgebra::PolyAlgebra(int n_even, int n_odd, int cap, std::vector<std::string> even_names,
                         std::vector<std::string> odd_names)
    : Superalgebra("poly(" + std::to_string(n_even) + "," + std::to_string(n_odd) + "," +
                       std::to_string(cap) + ")",
                   AlgebraFlags{true, true, true}, cap),
      n_even_(n_even),
      n_odd_(n_odd),
      cap_value_(cap),
      even_names_(std::move(even_names)),
      odd_names_(std::move(odd_names)) {
  if (n_even < 0 || n_odd < 0 || n_odd > 30) throw std::invalid_argument("poly: bad generator count");
  if (cap < 0) throw std::invalid_argument("poly: degree cap must be nonnegative");
  for (int i = static_cast<int>(even_names_.size()); i < n_even; ++i)
    even_names_.push_back("x" + std::to_string(i + 1));
  for (int i = static_cast<int>(odd_names_.size()); i < n_odd; ++i)
    odd_names_.push_back("t" + std::to_string(i + 1));
}

Word PolyAlgebra::make_word(const std::vector<int>& e, unsigned m) const {
  Word w;
  w.key = e;
  w.key.push_back(static_cast<int>(m));
  w.deg = std::popcount(m);
  int g = 0;
  for (int x : e) g += x;
  w.grade = g;
  return w;
}

std::vector<int> PolyAlgebra::exps(const Word& w) const {
  return std::vector<int>(w.key.begin(), w.key.begin() + n_even_);
}

unsigned PolyAlgebra::mask(const Word& w) const { return static_cast<unsigned>(w.key.back()); }

Word PolyAlgebra::unit_word() const { return make_word(std::vector<int>(n_even_, 0), 0); }

Element PolyAlgebra::even_gen(int i) const {
  std::vector<int> e(n_even_, 0);
  e.at(i) = 1;
  if (cap_value_ < 1) return Element();
  return Element(make_word(e, 0));
}

Element PolyAlgebra::odd_gen(int i) const {
  if (i < 0 || i >= n_odd_) throw std::out_of_range("odd generator index");
  return Element(make_word(std::vector<int>(n_even_, 0), 1u << i));
}

Element PolyAlgebra::monomial(const std::vector<int>& e, unsigned m, const Scalar& c) const {
  int g = 0;
  for (int x : e) g += x;
  if (g > cap_value_) return Element();
  return Element(make_word(e, m), c);
}

Element PolyAlgebra::mul(const Word& u, const Word& v) const {
  unsigned mu = mask(u), mv = mask(v);
  if (mu & mv) return Element();
  if (u.grade + v.grade > cap_value_) return Element();
  // sign of sorting the odd letters of u followed by those of v
  int inversions = 0;
  for (int j = 0; j < n_odd_; ++j)
    if (mv & (1u << j)) inversions += std::popcount(mu >> (j + 1));
  std::vector<int> e(n_even_);
  for (int i = 0; i < n_even_; ++i) e[i] = u.key[i] + v.key[i];
  return Element(make_word(e, mu | mv), sign_of(inversions));
}

std::optional<Element> PolyAlgebra::unit() const { return Element(unit_word()); }

std::vector<Word> PolyAlgebra::words_up_to_grade(int g) const {
  std::vector<Word> out;
  int top = std::min(g, cap_value_);
  std::vector<int> e(n_even_, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n_even_) {
      for (unsigned m = 0; m < (1u << n_odd_); ++m) out.push_back(make_word(e, m));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  if (top >= 0) rec(0, top);
  std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
    if (a.grade + a.deg != b.grade + b.deg) return a.grade + a.deg < b.grade + b.deg;
    return a.key < b.key;
  });
  return out;
}

std::vector<Word> PolyAlgebra::basis(int bound) const {
  std::vector<Word> out;
  for (const Word& w : words_up_to_grade(bound))
    if (filtration(w) <= bound) out.push_back(w);
  return out;
}

int PolyAlgebra::filtration(const Word& w) const { return w.grade + std::popcount(mask(w)); }

std::vector<Element> PolyAlgebra::generators() const {
  std::vector<Element> out;
  for (int i = 0; i < n_even_; ++i) out.push_back(even_gen(i));
  for (int i = 0; i < n_odd_; ++i) out.push_back(odd_gen(i));
  return out;
}

std::string PolyAlgebra::format_word(const Word& w) const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < n_even_; ++i) {
    int k = w.key[i];
    if (k == 0) continue;
    if (!first) os << "*";
    first = false;
    os << even_names_[i];
    if (k > 1) os << "^" << k;
  }
  unsigned m = mask(w);
  for (int j = 0; j < n_odd_; ++j) {
    if (!(m & (1u << j))) continue;
    if (!first) os << "*";
    first = false;
    os << odd_names_[j];
  }
  if (first) os << "1";
  return os.str();
}

std::shared_ptr<PolyAlgebra> make_polynomial_superalgebra(int n_even, int n_odd, int degree_cap) {
  if (degree_cap < 1) throw std::invalid_argument("degree_cap must be >= 1");
  return std::make_shared<PolyAlgebra>(n_even, n_odd, degree_cap);
}

// -------------------------------------------------------------- StructAlgebra

StructAlgebra::StructAlgebra(std::vector<int> degrees,
                             std::vector<std::vector<std::vector<Scalar>>> table,
                             std::optional<int> unit_index, std::string name)
    : Superalgebra(std::move(name), AlgebraFlags{}, std::nullopt),
      degrees_(std::move(degrees)),
      table_(std::move(table)),
      unit_index_(unit_index) {
  int n = dim();
  table_.resize(n);
  for (auto& row : table_) {
    row.resize(n);
    for (auto& cell : row) cell.resize(n, Scalar(0));
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (table_[i][j][k] != 0 && degrees_[k] != degrees_[i] + degrees_[j]) {
          std::ostringstream os;
          os << "table entry e" << i + 1 << "*e" << j + 1 << " has a term e" << k + 1
             << " of degree " << degrees_[k] << ", expected " << degrees_[i] + degrees_[j];
          throw std::invalid_argument(os.str());
        }
  if (unit_index_) {
    int u = *unit_index_;
    if (u < 0 || u >= n || degrees_[u] != 0) throw std::invalid_argument("bad unit index");
    auto words = basis(1);
    if (auto bad = check_unit(*this, words)) throw std::invalid_argument("unit: " + *bad);
    AlgebraFlags f = flags();
    f.unital = true;
    set_flags(f);
  }
}

Word StructAlgebra::gen_word(int i) const {
  Word w;
  w.key = {i};
  w.deg = degrees_.at(i);
  w.grade = 0;
  return w;
}

Element StructAlgebra::mul(const Word& u, const Word& v) const {
  Element out;
  const auto& cell = table_[u.key[0]][v.key[0]];
  for (int k = 0; k < dim(); ++k)
    if (cell[k] != 0) out.add(gen_word(k), cell[k]);
  return out;
}

std::optional<Element> StructAlgebra::unit() const {
  if (!unit_index_) return std::nullopt;
  return gen(*unit_index_);
}

std::vector<Word> StructAlgebra::basis(int bound) const {
  std::vector<Word> out;
  for (int i = 0; i < dim(); ++i) {
    Word w = gen_word(i);
    if (filtration(w) <= bound) out.push_back(w);
  }
  return out;
}

int StructAlgebra::filtration(const Word& w) const {
  return (unit_index_ && w.key[0] == *unit_index_) ? 0 : 1;
}

std::vector<Element> StructAlgebra::generators() const {
  std::vector<Element> out;
  for (int i = 0; i < dim(); ++i) out.push_back(gen(i));
  return out;
}

std::string StructAlgebra::format_word(const Word& w) const { return "e" + std::to_string(w.key[0] + 1); }

void StructAlgebra::declare_flags(AlgebraFlags f) {
  auto words = basis(1);
  if (f.supercommutative)
    if (auto bad = check_supercommutative(*this, words)) throw std::invalid_argument(*bad);
  if (f.associative)
    if (auto bad = check_associative(*this, words)) throw std::invalid_argument(*bad);
  if (f.unital && !unit_index_) throw std::invalid_argument("no unit declared");
  set_flags(f);
}

std::shared_ptr<StructAlgebra> make_structure_constant_algebra(
    const std::map<std::pair<int, int>, std::vector<Scalar>>& table, const std::vector<int>& degrees,
    std::optional<int> unit_index) {
  int n = static_cast<int>(degrees.size());
  std::vector<std::vector<std::vector<Scalar>>> t(
      n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar(0))));
  for (const auto& [ij, coeffs] : table) {
    auto [i, j] = ij;
    if (i < 0 || j < 0 || i >= n || j >= n) throw std::invalid_argument("table index out of range");
    for (int k = 0; k < n && k < static_cast<int>(coeffs.size()); ++k) t[i][j][k] = coeffs[k];
  }
  return std::make_shared<StructAlgebra>(degrees, t, unit_index);
}

// ------------------------------------------------------------------ random

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : state_(seed * 0x9E3779B97F4A7C15ULL + stream) {
  next();
}

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

int Rng::uniform(int lo, int hi) {
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t r;
  do r = next();
  while (r >= limit);
  return lo + static_cast<int>(r % span);
}

Rng Rng::split(std::uint64_t stream) const {
  Rng copy = *this;
  std::uint64_t s = copy.next();
  return Rng(s, stream + 1);
}

Element random_combination(Rng& rng, const std::vector<Word>& words, int max_terms, int coef) {
  Element out;
  if (words.empty()) return out;
  int terms = rng.uniform(1, max_terms);
  for (int t = 0; t < terms; ++t) {
    const Word& w = words[rng.uniform(0, static_cast<int>(words.size()) - 1)];
    out.add(w, Scalar(rng.uniform(-coef, coef)));
  }
  return out;
}

Element random_element(const Superalgebra& alg, std::uint64_t seed, int degree_bound) {
  Rng rng(seed);
  return random_combination(rng, alg.basis(degree_bound));
}

Element random_homogeneous(const Superalgebra& alg, Rng& rng, const std::vector<Word>& pool,
                           std::optional<int> superdegree) {
  (void)alg;
  std::map<int, std::vector<Word>> by_deg;
  for (const Word& w : pool) by_deg[w.deg].push_back(w);
  if (by_deg.empty()) return Element();
  const std::vector<Word>* words = nullptr;
  if (superdegree) {
    auto it = by_deg.find(*superdegree);
    if (it == by_deg.end()) return Element();
    words = &it->second;
  } else {
    int pick = rng.uniform(0, static_cast<int>(by_deg.size()) - 1);
    auto it = by_deg.begin();
    std::advance(it, pick);
    words = &it->second;
  }
  for (int attempt = 0; attempt < 16; ++attempt) {
    Element e = random_combination(rng, *words);
    if (!e.is_zero()) return e;
  }
  return Element((*words)[0]);
}

std::shared_ptr<StructAlgebra> random_structure_algebra(int dim, std::uint64_t seed,
                                                        std::vector<int> degrees) {
  Rng rng(seed, 77);
  if (degrees.empty()) {
    static const int pattern[] = {0, 1, -1, 1, 2, 0};
    for (int i = 0; i < dim; ++i) degrees.push_back(pattern[i % 6]);
  }
  int n = static_cast<int>(degrees.size());
  std::vector<std::vector<std::vector<Scalar>>> t(
      n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar(0))));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (degrees[k] == degrees[i] + degrees[j] && rng.uniform(0, 2) != 0)
          t[i][j][k] = rng.uniform(-3, 3);
  auto alg = std::make_shared<StructAlgebra>(degrees, t, std::nullopt,
                                             "random-struct(" + std::to_string(n) + "," +
                                                 std::to_string(seed) + ")");
  return alg;
}

// ------------------------------------------------------------- law checks

std::optional<std::string> check_degree_additivity(const Superalgebra& alg,
                                                   const std::vector<Word>& words) {
  for (const Word& u : words)
    for (const Word& v : words) {
      Element uv = alg.mul(u, v);
      for (const auto& [w, c] : uv.terms())
        if (w.deg != u.deg + v.deg)
          return alg.format_word(u) + " * " + alg.format_word(v) + " has a term of degree " +
                 std::to_string(w.deg);
    }
  return std::nullopt;
}

std::optional<std::string> check_supercommutative(const Superalgebra& alg,
                                                  const std::vector<Word>& words) {
  for (const Word& u : words)
    for (const Word& v : words) {
      Element lhs = alg.mul(u, v);
      Element rhs = Scalar(sign_of(u.parity() * v.parity())) * alg.mul(v, u);
      if (lhs != rhs) return "not supercommutative on " + alg.format_word(u) + ", " + alg.format_word(v);
    }
  return std::nullopt;
}

std::optional<std::string> check_associative(const Superalgebra& alg,
                                             const std::vector<Word>& words) {
  for (const Word& u : words)
    for (const Word& v : words)
      for (const Word& w : words) {
        Element U(u), V(v), W(w);
        if (alg.multiply(alg.multiply(U, V), W) != alg.multiply(U, alg.multiply(V, W)))
          return "not associative on " + alg.format_word(u) + ", " + alg.format_word(v) + ", " +
                 alg.format_word(w);
      }
  return std::nullopt;
}

std::optional<std::string> check_unit(const Superalgebra& alg, const std::vector<Word>& words) {
  auto one = alg.unit();
  if (!one) return std::string("algebra has no unit");
  for (const Word& u : words) {
    Element U(u);
    if (alg.multiply(*one, U) != U || alg.multiply(U, *one) != U)
      return "unit fails on " + alg.format_word(u);
  }
  return std::nullopt;
}

}  // namespace bvk
