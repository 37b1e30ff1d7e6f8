#include "bvk/parse.hpp"

#include <cctype>
#include <map>
#include <optional>

#include "bvk/vosa.hpp"

namespace bvk {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view t) : t_(t) {}

  void skip() {
    while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) ++i_;
  }
  bool done() {
    skip();
    return i_ >= t_.size();
  }
  char peek() {
    skip();
    return i_ < t_.size() ? t_[i_] : '\0';
  }
  bool accept(std::string_view s) {
    skip();
    if (t_.substr(i_, s.size()) != s) return false;
    i_ += s.size();
    return true;
  }
  void expect(std::string_view s) {
    if (!accept(s)) fail("expected '" + std::string(s) + "'");
  }
  [[noreturn]] void fail(const std::string& why) const { fail_at(i_, why); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& why) const {
    throw ParseError(why + " at column " + std::to_string(at + 1), static_cast<int>(at) + 1);
  }
  std::size_t pos() {
    skip();
    return i_;
  }
  bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }
  bool at_ident() {
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  long integer() {
    skip();
    bool neg = false;
    if (i_ < t_.size() && (t_[i_] == '-' || t_[i_] == '+')) neg = t_[i_++] == '-';
    std::size_t s = i_;
    while (i_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_]))) ++i_;
    if (s == i_) fail("expected an integer");
    long v = std::stol(std::string(t_.substr(s, i_ - s)));
    return neg ? -v : v;
  }
  // unsigned rational p or p/q
  Scalar number() {
    skip();
    std::size_t s = i_;
    while (i_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_]))) ++i_;
    if (s == i_) fail("expected a number");
    std::string num(t_.substr(s, i_ - s));
    std::size_t save = i_;
    skip();
    // "p/q" but not the start of "d/d..."; a slash after a number is a fraction
    if (i_ < t_.size() && t_[i_] == '/') {
      ++i_;
      skip();
      std::size_t d = i_;
      while (i_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_]))) ++i_;
      if (d == i_) fail("expected a denominator");
      Scalar q(num + "/" + std::string(t_.substr(d, i_ - d)));
      if (q.get_den() == 0) fail("zero denominator");
      q.canonicalize();
      return q;
    }
    i_ = save;
    return Scalar(num);
  }
  std::string ident() {
    skip();
    std::size_t s = i_;
    while (i_ < t_.size() && (std::isalnum(static_cast<unsigned char>(t_[i_])) || t_[i_] == '_' || t_[i_] == '\''))
      ++i_;
    if (s == i_) fail("expected a name");
    return std::string(t_.substr(s, i_ - s));
  }
  std::size_t pos() const { return i_; }
  std::string_view rest_from(std::size_t p) const { return t_.substr(p); }

  // text up to the matching close paren at depth 0, or a top-level comma
  std::string_view until_close(bool stop_at_comma) {
    std::size_t s = i_;
    int depth = 0;
    while (i_ < t_.size()) {
      char c = t_[i_];
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) break;
        --depth;
      }
      if (c == ',' && depth == 0 && stop_at_comma) break;
      ++i_;
    }
    if (i_ >= t_.size()) fail("unbalanced parentheses");
    return t_.substr(s, i_ - s);
  }

 private:
  std::string_view t_;
  std::size_t i_ = 0;
};

// rethrow with a column relative to the enclosing text
template <class F>
auto nested(Cursor& outer, std::size_t offset, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError& e) {
    std::string what = e.what();
    auto at = what.rfind(" at column ");
    int col = static_cast<int>(offset) + e.column;
    (void)outer;
    throw ParseError(what.substr(0, at) + " at column " + std::to_string(col), col);
  }
}

std::map<std::string, Element> generator_names(const Superalgebra& alg) {
  std::map<std::string, Element> names;
  for (const Element& g : alg.generators()) {
    if (g.size() != 1) continue;
    const auto& [w, c] = *g.terms().begin();
    if (c == 1) names[alg.format_word(w)] = g;
  }
  return names;
}

class ElementParser {
 public:
  ElementParser(const Superalgebra& alg, Cursor& cur) : alg_(alg), cur_(cur), names_(generator_names(alg)) {
    bc_ = dynamic_cast<const BcSystem*>(&alg);
  }

  Element expr() {
    Element out;
    bool first = true;
    while (true) {
      Scalar sign = 1;
      if (cur_.accept("+")) {
      } else if (cur_.accept("-")) {
        sign = -1;
      } else if (!first) {
        break;
      }
      out += sign * term();
      first = false;
      if (cur_.done()) break;
      char c = cur_.peek();
      if (c != '+' && c != '-') break;
    }
    return out;
  }

 private:
  Element one() {
    auto u = alg_.unit();
    if (!u) cur_.fail("this algebra has no unit");
    return *u;
  }

  Element term() {
    std::optional<Element> acc;
    Scalar coef = 1;
    do {
      if (cur_.accept("-")) coef = -coef;
      if (cur_.at_digit()) {
        coef *= cur_.number();
        continue;
      }
      Element f = factor();
      acc = acc ? alg_.multiply(*acc, f) : f;
    } while (cur_.accept("*"));
    if (!acc && coef == 0) return Element();
    return coef * (acc ? *acc : one());
  }

  Element factor() {
    if (cur_.accept("(")) {
      Element e = expr();
      cur_.expect(")");
      return power(e);
    }
    if (bc_ && (cur_.peek() == '|' || cur_.peek() == 'b' || cur_.peek() == 'c')) return fock();
    std::size_t at = cur_.pos();
    std::string n = cur_.ident();
    auto it = names_.find(n);
    if (it == names_.end()) cur_.fail_at(at, "unknown generator '" + n + "'");
    return power(it->second);
  }

  Element power(const Element& e) {
    if (!cur_.accept("^")) return e;
    long k = cur_.integer();
    if (k < 0) cur_.fail("negative exponent");
    Element p = one();
    for (long i = 0; i < k; ++i) p = alg_.multiply(p, e);
    return p;
  }

  Element fock() {
    std::vector<Mode> modes;
    while (!cur_.accept("|0>")) {
      char g = cur_.peek();
      if (g != 'b' && g != 'c') cur_.fail("expected a mode b(m), c(m) or |0>");
      cur_.accept(std::string(1, g));
      cur_.expect("(");
      int m = static_cast<int>(cur_.integer());
      cur_.expect(")");
      modes.push_back({g, m});
    }
    return bc_->state(modes);
  }

  const Superalgebra& alg_;
  Cursor& cur_;
  std::map<std::string, Element> names_;
  const BcSystem* bc_ = nullptr;
};

class OperatorParser {
 public:
  OperatorParser(AlgebraPtr alg, Cursor& cur) : alg_(std::move(alg)), cur_(cur) {
    poly_ = std::dynamic_pointer_cast<const PolyAlgebra>(alg_);
    bc_ = std::dynamic_pointer_cast<const BcSystem>(alg_);
  }

  LinOp expr() {
    std::vector<std::pair<Scalar, LinOp>> terms;
    bool first = true;
    std::size_t start = cur_.pos();
    while (true) {
      Scalar sign = 1;
      if (cur_.accept("+")) {
      } else if (cur_.accept("-")) {
        sign = -1;
      } else if (!first) {
        break;
      }
      auto [c, op] = term();
      terms.emplace_back(sign * c, op);
      first = false;
      if (cur_.done()) break;
      char ch = cur_.peek();
      if (ch != '+' && ch != '-') break;
    }
    if (terms.size() == 1 && terms[0].first == 1) return terms[0].second;
    LinOp acc = scale(terms[0].first, terms[0].second);
    for (std::size_t i = 1; i < terms.size(); ++i) {
      try {
        acc = add(acc, scale(terms[i].first, terms[i].second));
      } catch (const std::invalid_argument& e) {
        cur_.fail(std::string("cannot add: ") + e.what());
      }
    }
    return acc.relabeled(std::string(trim(cur_.rest_from(start).substr(0, cur_.pos() - start))));
  }

 private:
  static std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    return s;
  }

  std::pair<Scalar, LinOp> term() {
    Scalar coef = 1;
    std::optional<LinOp> acc;
    do {
      if (cur_.accept("-")) coef = -coef;
      if (cur_.at_digit()) {
        coef *= cur_.number();
        continue;
      }
      LinOp f = factor();
      acc = acc ? compose(*acc, f) : f;
    } while (cur_.accept("*"));
    if (!acc) acc = identity_op();
    return {coef, *acc};
  }

  Element element_arg(bool stop_at_comma) {
    std::size_t off = cur_.pos();
    std::string_view inner = cur_.until_close(stop_at_comma);
    return nested(cur_, off, [&] { return parse_element(*alg_, inner); });
  }

  LinOp factor() {
    if (cur_.accept("(")) {
      LinOp e = expr();
      cur_.expect(")");
      return e;
    }
    if (cur_.accept("d/d")) {
      if (!poly_) cur_.fail("partial derivatives need a polynomial algebra");
      std::size_t at = cur_.pos();
      std::string n = cur_.ident();
      for (int i = 0; i < poly_->n_even(); ++i)
        if (poly_->even_names()[i] == n) return partial_even(poly_, i);
      for (int j = 0; j < poly_->n_odd(); ++j)
        if (poly_->odd_names()[j] == n) return partial_odd(poly_, j);
      cur_.fail_at(at, "unknown generator '" + n + "'");
    }
    std::string n = cur_.ident();
    if (n == "id") return identity_op();
    if (n == "bv") {
      if (!poly_) cur_.fail("bv needs a polynomial algebra");
      return classical_bv_operator(poly_);
    }
    if (n == "mult") {
      cur_.expect("(");
      Element p = element_arg(false);
      cur_.expect(")");
      try {
        return left_multiplication(alg_, p);
      } catch (const std::invalid_argument& e) {
        cur_.fail(e.what());
      }
    }
    if (n == "rand") {
      cur_.expect("(");
      long seed = cur_.integer();
      cur_.expect(",");
      long deg = cur_.integer();
      cur_.expect(",");
      long bound = cur_.integer();
      bool kills = false;
      if (cur_.accept(",")) kills = cur_.integer() != 0;
      cur_.expect(")");
      return random_operator(alg_, static_cast<std::uint64_t>(seed), static_cast<int>(deg), static_cast<int>(bound),
                             kills);
    }
    if (bc_ && (n == "b" || n == "c" || n == "L")) {
      cur_.expect("(");
      int m = static_cast<int>(cur_.integer());
      cur_.expect(")");
      if (n == "L") return bc_->mode_op(bc_->stress(), m + 1).relabeled("L(" + std::to_string(m) + ")");
      return bc_->generator_op({n[0], m});
    }
    if (bc_ && n == "mode") {
      cur_.expect("(");
      Element u = element_arg(true);
      cur_.expect(",");
      int k = static_cast<int>(cur_.integer());
      cur_.expect(")");
      try {
        return bc_->mode_op(u, k);
      } catch (const std::invalid_argument& e) {
        cur_.fail(e.what());
      }
    }
    cur_.fail("unknown operator '" + n + "'");
  }

  AlgebraPtr alg_;
  Cursor& cur_;
  std::shared_ptr<const PolyAlgebra> poly_;
  std::shared_ptr<const BcSystem> bc_;
};

}  // namespace

Element parse_element(const Superalgebra& alg, std::string_view text) {
  Cursor cur(text);
  if (cur.done()) cur.fail("empty element");
  ElementParser p(alg, cur);
  Element e = p.expr();
  if (!cur.done()) cur.fail("unexpected text");
  return e;
}

LinOp parse_operator(const AlgebraPtr& alg, std::string_view text) {
  Cursor cur(text);
  if (cur.done()) cur.fail("empty operator");
  OperatorParser p(alg, cur);
  LinOp op = p.expr();
  if (!cur.done()) cur.fail("unexpected text");
  return op;
}

}  // namespace bvk
