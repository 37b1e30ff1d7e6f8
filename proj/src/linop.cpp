#include "bvk/linop.hpp"

#include <bit>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace bvk {

struct LinOp::Memo {
  std::mutex m;
  std::map<Word, Element> cache;
};

LinOp::LinOp(std::string label, int degree, Action action, std::optional<int> weight_shift)
    : label_(std::move(label)), degree_(degree), action_(std::move(action)), weight_shift_(weight_shift) {}

Element LinOp::on_word(const Word& w) const {
  if (!action_) return Element();
  if (memo_) {
    {
      std::lock_guard<std::mutex> lock(memo_->m);
      auto it = memo_->cache.find(w);
      if (it != memo_->cache.end()) return it->second;
    }
    Element img = action_(w);
    std::lock_guard<std::mutex> lock(memo_->m);
    memo_->cache.emplace(w, img);
    return img;
  }
  Element img = action_(w);
  for (const auto& [v, c] : img.terms()) {
    if (z_graded_ ? v.deg != w.deg + degree_ : (v.deg - w.deg - degree_) % 2 != 0) {
      std::ostringstream os;
      os << "operator " << label_ << " maps a word of degree " << w.deg << " to degree " << v.deg
         << " but declares shift " << degree_;
      throw std::logic_error(os.str());
    }
    if (weight_shift_ && v.grade != w.grade + *weight_shift_) {
      std::ostringstream os;
      os << "operator " << label_ << " violates its weight shift " << *weight_shift_;
      throw std::logic_error(os.str());
    }
  }
  return img;
}

Element LinOp::apply(const Element& a) const {
  Element out;
  for (const auto& [w, c] : a.terms()) {
    Element img = on_word(w);
    for (const auto& [v, cv] : img.terms()) out.add(v, c * cv);
  }
  return out;
}

LinOp LinOp::memoized() const {
  LinOp out = *this;
  // verify degrees through the plain path, then cache
  LinOp plain = *this;
  plain.memo_.reset();
  out.action_ = [plain](const Word& w) { return plain.on_word(w); };
  out.memo_ = std::make_shared<Memo>();
  return out;
}

LinOp LinOp::parity_graded() const {
  LinOp out = *this;
  out.degree_ = parity();
  out.z_graded_ = false;
  return out;
}

LinOp LinOp::relabeled(std::string label) const {
  LinOp out = *this;
  out.label_ = std::move(label);
  return out;
}

Element apply_operator(const LinOp& op, const Element& a) { return op.apply(a); }

LinOp zero_op(int degree) {
  return LinOp("0", degree, [](const Word&) { return Element(); }, std::nullopt);
}

LinOp identity_op() {
  return LinOp("id", 0, [](const Word& w) { return Element(w); }, 0);
}

namespace {
std::optional<int> sum_shift(const LinOp& a, const LinOp& b) {
  if (a.weight_shift() && b.weight_shift()) return *a.weight_shift() + *b.weight_shift();
  return std::nullopt;
}

LinOp graded_like(LinOp op, const LinOp& a, const LinOp& b) {
  return (a.z_graded() && b.z_graded()) ? op : op.parity_graded();
}
}  // namespace

LinOp compose(const LinOp& a, const LinOp& b) {
  return graded_like(LinOp("(" + a.label() + ")(" + b.label() + ")", a.degree() + b.degree(),
                           [a, b](const Word& w) { return a.apply(b.on_word(w)); }, sum_shift(a, b)),
                     a, b);
}

LinOp add(const LinOp& a, const LinOp& b) {
  bool z = a.z_graded() && b.z_graded();
  if (z ? a.degree() != b.degree() : a.parity() != b.parity())
    throw std::invalid_argument("adding operators of different degree");
  std::optional<int> ws;
  if (a.weight_shift() && b.weight_shift() && *a.weight_shift() == *b.weight_shift()) ws = a.weight_shift();
  return graded_like(LinOp(a.label() + " + " + b.label(), a.degree(),
                           [a, b](const Word& w) { return a.on_word(w) + b.on_word(w); }, ws),
                     a, b);
}

LinOp scale(const Scalar& s, const LinOp& a) {
  return graded_like(LinOp(to_string(s) + "*(" + a.label() + ")", a.degree(),
                           [s, a](const Word& w) { return s * a.on_word(w); }, a.weight_shift()),
                     a, a);
}

LinOp sub(const LinOp& a, const LinOp& b) { return add(a, scale(Scalar(-1), b)).relabeled(a.label() + " - " + b.label()); }

LinOp linear_combination(std::string label, int degree, std::vector<std::pair<Scalar, LinOp>> terms) {
  bool z = true;
  for (const auto& t : terms) z = z && t.second.z_graded();
  for (const auto& t : terms)
    if (z ? t.second.degree() != degree : (t.second.degree() - degree) % 2 != 0)
      throw std::invalid_argument("linear combination of operators of mixed degree");
  LinOp out(std::move(label), degree, [terms](const Word& w) {
    Element out;
    for (const auto& [c, op] : terms)
      if (c != 0) out += c * op.on_word(w);
    return out;
  });
  return z ? out : out.parity_graded();
}

LinOp supercommutator(const LinOp& a, const LinOp& b) {
  int s = sign_of(a.parity() * b.parity());
  LinOp ab = compose(a, b), ba = compose(b, a);
  return graded_like(LinOp("[" + a.label() + "," + b.label() + "]", a.degree() + b.degree(),
                           [ab, ba, s](const Word& w) { return ab.on_word(w) - Scalar(s) * ba.on_word(w); },
                           sum_shift(a, b)),
                     a, b);
}

LinOp left_multiplication(AlgebraPtr alg, const Element& p) {
  auto d = p.degree();
  if (!p.is_zero() && !d) throw std::invalid_argument("left multiplication by an inhomogeneous element");
  return LinOp("mult(" + alg->format(p) + ")", d.value_or(0),
               [alg, p](const Word& w) { return alg->multiply(p, Element(w)); });
}

std::optional<Word> first_difference(const LinOp& a, const LinOp& b, const std::vector<Word>& words) {
  for (const Word& w : words)
    if (a.on_word(w) != b.on_word(w)) return w;
  return std::nullopt;
}

LinOp partial_even(std::shared_ptr<const PolyAlgebra> alg, int i) {
  return LinOp("d/d" + alg->even_names().at(i), 0,
               [alg, i](const Word& w) {
                 auto e = alg->exps(w);
                 if (e[i] == 0) return Element();
                 Scalar c = e[i];
                 e[i] -= 1;
                 return Element(alg->make_word(e, alg->mask(w)), c);
               },
               -1);
}

LinOp partial_odd(std::shared_ptr<const PolyAlgebra> alg, int j) {
  return LinOp("d/d" + alg->odd_names().at(j), -1,
               [alg, j](const Word& w) {
                 unsigned m = alg->mask(w);
                 if (!(m & (1u << j))) return Element();
                 int before = std::popcount(m & ((1u << j) - 1));
                 return Element(alg->make_word(alg->exps(w), m & ~(1u << j)), sign_of(before));
               },
               0);
}

LinOp wedge_odd(std::shared_ptr<const PolyAlgebra> alg, int j) {
  return LinOp(alg->odd_names().at(j), 1,
               [alg, j](const Word& w) {
                 unsigned m = alg->mask(w);
                 if (m & (1u << j)) return Element();
                 int before = std::popcount(m & ((1u << j) - 1));
                 return Element(alg->make_word(alg->exps(w), m | (1u << j)), sign_of(before));
               },
               0);
}

LinOp classical_bv_operator(std::shared_ptr<const PolyAlgebra> alg) {
  int n = std::min(alg->n_even(), alg->n_odd());
  std::vector<LinOp> parts;
  for (int i = 0; i < n; ++i) parts.push_back(compose(partial_even(alg, i), partial_odd(alg, i)));
  return LinOp("bv", -1,
               [parts](const Word& w) {
                 Element out;
                 for (const auto& p : parts) out += p.on_word(w);
                 return out;
               },
               -1);
}

LinOp random_operator(AlgebraPtr alg, std::uint64_t seed, int degree, int bound, bool kills_unit,
                      int max_terms) {
  std::vector<Word> pool = alg->basis(bound);
  std::map<int, std::vector<Word>> by_deg;
  for (const Word& w : pool) by_deg[w.deg].push_back(w);
  std::map<Word, Element> table;
  Rng rng(seed, 991);
  auto one = alg->unit();
  for (const Word& w : pool) {
    auto it = by_deg.find(w.deg + degree);
    if (it == by_deg.end()) continue;
    if (kills_unit && one && Element(w) == *one) continue;
    table[w] = random_combination(rng, it->second, max_terms, 3);
  }
  return LinOp("rand(" + std::to_string(seed) + "," + std::to_string(degree) + ")", degree,
               [table](const Word& w) {
                 auto it = table.find(w);
                 return it == table.end() ? Element() : it->second;
               });
}

}  // namespace bvk
