#include "bvk/vosa.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace bvk {

int b_standard_to_weight(int n) { return n - 1; }
int c_standard_to_weight(int n) { return n + 2; }
int b_weight_to_standard(int m) { return m + 1; }
int c_weight_to_standard(int m) { return m - 2; }

namespace {
// b_m -> 2(-m) (even, >= 4); c_m -> 2(1-m)+1 (odd, >= 1)
int code_of(const Mode& m) { return m.gen == 'b' ? -2 * m.index : 2 * (1 - m.index) + 1; }
Mode mode_of(int code) {
  if (code % 2 == 0) return Mode{'b', -code / 2};
  return Mode{'c', 1 - (code - 1) / 2};
}
int field_weight(char g) { return g == 'b' ? 2 : -1; }
}  // namespace

Scalar binomial(long top, long i) {
  if (i < 0) return 0;
  Scalar r = 1;
  for (long t = 0; t < i; ++t) r = r * Scalar(top - t) / Scalar(t + 1);
  return r;
}

BcSystem::BcSystem() : Superalgebra("bc", AlgebraFlags{false, false, true}, std::nullopt) {}

Word BcSystem::word_of(std::vector<int> codes) const {
  Word w;
  int deg = 0, wt = 0;
  for (int code : codes) {
    Mode m = mode_of(code);
    deg += m.gen == 'c' ? 1 : -1;
    wt -= m.index;
  }
  w.key = std::move(codes);
  w.deg = deg;
  w.grade = wt;
  return w;
}

std::vector<Mode> BcSystem::modes_of(const Word& w) const {
  std::vector<Mode> out;
  for (int code : w.key) out.push_back(mode_of(code));
  return out;
}

Element BcSystem::vacuum() const { return Element(word_of({})); }
Element BcSystem::b() const { return Element(word_of({code_of({'b', -2})})); }
Element BcSystem::c() const { return Element(word_of({code_of({'c', 1})})); }

Element BcSystem::stress() const {
  Element out = -state({{'b', -3}, {'c', 1}});
  out -= Scalar(2) * state({{'b', -2}, {'c', 0}});
  return out;
}

Element BcSystem::gen_on_word(const Mode& m, const Word& v) const {
  const auto& key = v.key;
  if (m.creates()) {
    int code = code_of(m);
    auto it = std::lower_bound(key.begin(), key.end(), code);
    if (it != key.end() && *it == code) return Element();
    std::vector<int> nk(key.begin(), it);
    nk.push_back(code);
    nk.insert(nk.end(), it, key.end());
    return Element(word_of(std::move(nk)), sign_of(it - key.begin()));
  }
  // anticommute through; the only contraction is with the conjugate creation mode
  Mode partner{m.gen == 'b' ? 'c' : 'b', -m.index};
  if (!partner.creates()) return Element();
  int code = code_of(partner);
  auto it = std::lower_bound(key.begin(), key.end(), code);
  if (it == key.end() || *it != code) return Element();
  std::vector<int> nk(key.begin(), it);
  nk.insert(nk.end(), it + 1, key.end());
  return Element(word_of(std::move(nk)), sign_of(it - key.begin()));
}

Element BcSystem::apply_mode(const Mode& m, const Element& v) const {
  Element out;
  for (const auto& [w, c] : v.terms()) out += c * gen_on_word(m, w);
  return out;
}

Element BcSystem::state(const std::vector<Mode>& modes) const {
  Element v = vacuum();
  for (auto it = modes.rbegin(); it != modes.rend(); ++it) v = apply_mode(*it, v);
  return v;
}

Element BcSystem::mode_word(const Word& u, int n, const Word& v) const {
  if (u.key.empty()) return n == -1 ? Element(v) : Element();
  // u_(n) v has weight wt u + wt v - n - 1 >= -1
  if (n > u.grade + v.grade) return Element();
  auto key = std::make_tuple(u.key, n, v.key);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  Mode first = mode_of(u.key[0]);
  int j = first.gen == 'b' ? b_weight_to_standard(first.index) : c_weight_to_standard(first.index);
  auto std_mode = [&](int k) {
    return Mode{first.gen, first.gen == 'b' ? b_standard_to_weight(k) : c_standard_to_weight(k)};
  };
  Element out;
  if (u.key.size() == 1 && j == -1) {
    out = gen_on_word(std_mode(n), v);
  } else {
    // u = g_(j) w; (g_(j) w)_(n) v = sum_i (-1)^i C(j,i) [g_(j-i) (w_(n+i) v) - (-1)^{j+|w|} w_(j+n-i) (g_(i) v)]
    Word w = word_of(std::vector<int>(u.key.begin() + 1, u.key.end()));
    int gw = field_weight(first.gen);
    // both brackets vanish past this index by the weight bound
    long top = std::max<long>(static_cast<long>(w.grade) + v.grade - n, static_cast<long>(gw) + v.grade);
    int sw = sign_of(j + w.parity());
    for (long i = 0; i <= top; ++i) {
      Scalar coef = binomial(j, i);
      if (i % 2) coef = -coef;
      if (coef == 0) continue;
      Element inner;
      if (static_cast<long>(n) + i <= static_cast<long>(w.grade) + v.grade) {
        Element wv = mode_word(w, n + static_cast<int>(i), v);
        inner += apply_mode(std_mode(j - static_cast<int>(i)), wv);
      }
      if (i <= gw + v.grade) {
        Element gv = gen_on_word(std_mode(static_cast<int>(i)), v);
        for (const auto& [t, ct] : gv.terms()) inner -= Scalar(sw) * ct * mode_word(w, j + n - static_cast<int>(i), t);
      }
      out += coef * inner;
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  memo_.emplace(std::move(key), out);
  return out;
}

Element BcSystem::mode(const Element& u, int n, const Element& v) const {
  Element out;
  for (const auto& [a, ca] : u.terms())
    for (const auto& [b, cb] : v.terms()) out += ca * cb * mode_word(a, n, b);
  return out;
}

std::size_t BcSystem::memo_size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.size();
}

LinOp BcSystem::mode_op(const Element& u, int n) const {
  auto d = u.degree();
  auto wt = u.grade();
  if (!u.is_zero() && (!d || !wt)) throw std::invalid_argument("mode: state must be homogeneous in degree and weight");
  std::optional<int> shift;
  if (wt) shift = *wt - n - 1;
  std::ostringstream label;
  label << "(" << format(u) << ")_(" << n << ")";
  return LinOp(label.str(), d.value_or(0), [this, u, n](const Word& w) { return mode(u, n, Element(w)); }, shift);
}

LinOp BcSystem::generator_op(const Mode& m) const {
  std::ostringstream label;
  label << m.gen << "(" << m.index << ")";
  return LinOp(label.str(), m.gen == 'c' ? 1 : -1, [this, m](const Word& w) { return gen_on_word(m, w); }, -m.index);
}

LinOp BcSystem::weight_op() const {
  return LinOp("L0", 0, [](const Word& w) { return Scalar(w.grade) * Element(w); }, 0);
}

Element BcSystem::mul(const Word& u, const Word& v) const { return mode_word(u, -1, v); }

std::vector<Word> BcSystem::basis(int bound) const {
  // candidate creation modes: every mode of weight <= bound + 1 (only c_1 is negative)
  std::vector<int> codes;
  for (int wt = -1; wt <= bound + 1; ++wt) {
    if (wt >= 2) codes.push_back(code_of({'b', -wt}));
    codes.push_back(code_of({'c', -wt}));
  }
  std::sort(codes.begin(), codes.end());
  std::vector<Word> out;
  std::vector<int> cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int wt) {
    if (k == codes.size()) {
      if (wt <= bound) out.push_back(word_of(cur));
      return;
    }
    rec(k + 1, wt);
    // c_1 sorts first and is the only mode of negative weight, so later modes only add weight
    int mw = -mode_of(codes[k]).index;
    if (wt + mw <= bound) {
      cur.push_back(codes[k]);
      rec(k + 1, wt + mw);
      cur.pop_back();
    }
  };
  rec(0, 0);
  std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
    if (a.grade != b.grade) return a.grade < b.grade;
    return a.key < b.key;
  });
  return out;
}

std::string BcSystem::format_word(const Word& w) const {
  std::ostringstream os;
  for (const auto& m : modes_of(w)) os << m.gen << "(" << m.index << ")";
  os << "|0>";
  return os.str();
}

std::shared_ptr<const BcSystem> make_bc_system() { return std::make_shared<BcSystem>(); }

Domain bc_domain(const BcSystem& bc, int weight_cap) {
  return Domain{bc.basis(weight_cap), weight_cap, "bc states of weight <= " + std::to_string(weight_cap)};
}

// ---------------------------------------------------------------- checks

IdentityReport commutator_check(const BcSystem& bc, const Element& u, int m, const Element& v, int n, int weight_cap) {
  std::ostringstream name;
  name << "commutator formula (" << bc.format(u) << ")_(" << m << "), (" << bc.format(v) << ")_(" << n << ")";
  IdentityCheck chk(name.str(), &bc);
  int s = sign_of(u.parity().value_or(0) * v.parity().value_or(0));
  auto wu = u.grade(), wv = v.grade();
  for (const Word& w : bc.basis(weight_cap)) {
    Element x(w);
    Element lhs = bc.mode(u, m, bc.mode(v, n, x)) - Scalar(s) * bc.mode(v, n, bc.mode(u, m, x));
    Element rhs;
    // (u_(i) v) vanishes once i > wt u + wt v
    long top = (wu && wv) ? *wu + *wv : 64;
    for (long i = 0; i <= top; ++i) {
      Scalar cf = binomial(m, i);
      if (cf == 0) continue;
      Element uiv = bc.mode(u, static_cast<int>(i), v);
      rhs += cf * bc.mode(uiv, m + n - static_cast<int>(i), x);
    }
    chk.check(lhs, rhs, {{"state", x}});
  }
  return chk.report();
}

IdentityReport primary_check(const BcSystem& bc, int range, int weight_cap) {
  IdentityCheck chk("[L_m, b_n] = (m - n) b_{m+n}", &bc);
  Element L = bc.stress();
  auto words = bc.basis(weight_cap);
  for (int m = -range; m <= range; ++m)
    for (int n = -range; n <= range; ++n) {
      LinOp Lm = bc.mode_op(L, m + 1);
      LinOp bn = bc.generator_op({'b', n});
      LinOp comm = supercommutator(Lm, bn);
      LinOp rhs = scale(Scalar(m - n), bc.generator_op({'b', m + n}));
      for (const Word& w : words) chk.check(comm.on_word(w), rhs.on_word(w), {{"state", Element(w)}});
    }
  return chk.report();
}

ModeVanishingReport check_mode_vanishing(std::shared_ptr<const BcSystem> bc, const Element& u, int n, int weight_cap) {
  ModeVanishingReport rep;
  LinOp op = bc->mode_op(u, n).memoized();
  Domain dom = bc_domain(*bc, weight_cap);
  std::ostringstream name;
  name << "modes of " << bc->format(u) << ": n = " << n;
  IdentityCheck chk(name.str(), bc.get());
  int k = n >= 0 ? n + 2 : 1;
  bool adjust = n < 0;
  // cached sub-forms all start with the first entry, so drop them when it changes
  auto sweep = [&](int arity, bool adj, const std::function<bool(const std::vector<Word>&, const Element&)>& fn) {
    PhiWordCache phi(*bc, op, adj);
    std::optional<Word> first;
    return for_each_tuple(dom, arity, [&](const std::vector<Word>& t) {
      if (first != t[0]) phi.clear(), first = t[0];
      return fn(t, phi(t));
    });
  };
  rep.tuples += sweep(k, adjust, [&](const std::vector<Word>& t, const Element& v) {
    if (v.is_zero()) return chk.expect(true, "") || true;
    std::vector<std::pair<std::string, Element>> in;
    for (std::size_t i = 0; i < t.size(); ++i) in.emplace_back("a" + std::to_string(i + 1), Element(t[i]));
    return chk.check_zero(v, in) || true;
  });
  if (n >= 0) {
    rep.tuples += sweep(n + 1, false, [&](const std::vector<Word>& t, const Element& v) {
      std::vector<Element> args;
      for (const auto& w : t) args.emplace_back(w);
      if (v.is_zero()) return true;
      rep.witness = Witness{n + 1, args, v};
      return false;
    });
    if (rep.witness) chk.note("order exactly " + std::to_string(n + 1) + " inside the cap");
  }
  rep.vanishing = chk.report();
  return rep;
}

IdentityReport check_phi2_expansion(std::shared_ptr<const BcSystem> bc, const Element& u, int r, long samples,
                                    int weight_cap, std::uint64_t seed) {
  if (r < 1) throw std::invalid_argument("phi2 expansion needs r >= 1");
  LinOp op = bc->mode_op(u, r);
  Domain dom = bc_domain(*bc, weight_cap);
  IdentityCheck chk("Phi^2 expansion for r = " + std::to_string(r), bc.get());
  for (const auto& t : sample_tuples(*bc, dom, 2, samples, seed, samples <= 0)) {
    const Element &a = t[0], &b = t[1];
    Element rhs;
    for (int i = 1; i <= r; ++i) rhs += binomial(r, i) * bc->mode(bc->mode(u, r - i, a), i - 1, b);
    chk.check(phi_form(*bc, op, {a, b}), rhs, {{"a", a}, {"b", b}});
  }
  return chk.report();
}

IdentityReport check_L0_derivation(std::shared_ptr<const BcSystem> bc, int n, long samples, int weight_cap,
                                   std::uint64_t seed) {
  LinOp shifted = sub(bc->weight_op(), scale(Scalar(n + 1), identity_op()));
  Domain dom = bc_domain(*bc, weight_cap);
  IdentityCheck chk("L0 - (n+1) is a derivation of the n-th product, n = " + std::to_string(n), bc.get());
  for (const auto& t : default_tuples(*bc, dom, 2, samples, seed)) {
    const Element &a = t[0], &b = t[1];
    chk.check(shifted(bc->mode(a, n, b)), bc->mode(shifted(a), n, b) + bc->mode(a, n, shifted(b)),
              {{"a", a}, {"b", b}});
  }
  return chk.report();
}

IdentityReport check_residue_derivation(std::shared_ptr<const BcSystem> bc, const Element& u, int n, long samples,
                                        int weight_cap, std::uint64_t seed) {
  Domain dom = bc_domain(*bc, weight_cap);
  IdentityCheck chk("residue is a derivation of the product of index " + std::to_string(n), bc.get());
  int pu = u.parity().value_or(0);
  for (const auto& t : default_tuples(*bc, dom, 2, samples, seed)) {
    const Element &a = t[0], &b = t[1];
    Element lhs = bc->mode(u, 0, bc->mode(a, n, b));
    Element rhs = bc->mode(bc->mode(u, 0, a), n, b) +
                  Scalar(sign_of(pu * a.parity().value_or(0))) * bc->mode(a, n, bc->mode(u, 0, b));
    chk.check(lhs, rhs, {{"a", a}, {"b", b}});
  }
  return chk.report();
}

IdentityReport check_stress_weight(const BcSystem& bc, int weight_cap) {
  IdentityCheck chk("L_(1) reads the weight", &bc);
  LinOp l1 = bc.mode_op(bc.stress(), 1);
  LinOp w = bc.weight_op();
  for (const Word& x : bc.basis(weight_cap)) chk.check(l1.on_word(x), w.on_word(x), {{"state", Element(x)}});
  return chk.report();
}

G0SquareReport check_g0_square_identity(const BcSystem& bc, const Element& G, int weight_cap) {
  if (G.parity() != 1 || G.grade() != 2) throw PreconditionError("G must be odd of weight 2");
  G0SquareReport rep;
  auto Gk = [&](int k) { return bc.mode_op(G, k + 1); };  // weight indexing
  auto Gs = [&](int k) { return bc.mode_op(G, k); };      // standard indexing
  LinOp g0sq = compose(Gk(0), Gk(0));
  LinOp anti = supercommutator(Gk(1), Gk(-1));
  Element sq = bc.mode(G, -1, G);  // G_{-2}G
  Element g1g = bc.mode(G, 2, G);  // G_1 G
  LinOp sq0 = bc.mode_op(sq, 3), g1g0 = bc.mode_op(g1g, 0);
  IdentityCheck a("(G_{-2}G)_0 = -G_0^2 - [G_1,G_{-1}]", &bc), b("(G_1G)_0 = 2(-2G_0^2 + [G_1,G_{-1}])", &bc),
      lc("6 G_0^2 = -2 (G_{-2}G)_0 - (G_1G)_0", &bc), full("(G_{-2}G)_0 by the full expansion", &bc),
      l3("L_3 (G_{-2})^2|0> = 5 G_1 G_{-2}|0>", &bc);
  for (const Word& w : bc.basis(weight_cap)) {
    Element x(w);
    std::vector<std::pair<std::string, Element>> in{{"state", x}};
    Element s0 = sq0.on_word(w), q = g0sq.on_word(w), an = anti.on_word(w), f0 = g1g0.on_word(w);
    a.check(s0, -q - an, in);
    b.check(f0, Scalar(2) * (Scalar(-2) * q + an), in);
    lc.check(Scalar(6) * q, Scalar(-2) * s0 - f0, in);
    // sum_i (G_(-1-i) G_(3+i) - G_(2-i) G_(i)); both terms vanish past the weight bound
    Element e;
    for (int i = 0; i <= w.grade + 4; ++i) {
      e += Gs(-1 - i).apply(Gs(3 + i).on_word(w));
      e -= Gs(2 - i).apply(Gs(i).on_word(w));
    }
    full.check(s0, e, in);
  }
  Element sq_state = Gk(-2).apply(Gk(-2).apply(bc.vacuum()));
  LinOp L3 = bc.mode_op(bc.stress(), 4);
  l3.check(L3(sq_state), Scalar(5) * Gk(1).apply(Gk(-2).apply(bc.vacuum())), {{"G", G}});
  rep.weight_square = *Gk(-2).weight_shift() * 2;
  rep.weight_l3 = rep.weight_square + *L3.weight_shift();
  if (sq_state.is_zero()) l3.note("(G_{-2})^2|0> vanishes for this G");
  rep.wick_square_mode = a.report();
  rep.first_mode = b.report();
  rep.linear_combination = lc.report();
  rep.full_expansion = full.report();
  rep.l3_relation = l3.report();
  return rep;
}

GbvaInstance bc_gbva(std::shared_ptr<const BcSystem> bc, int weight_cap) {
  LinOp delta = bc->generator_op({'b', 0}).relabeled("b0").memoized();
  return make_gbva("bc", bc, delta, bc_domain(*bc, weight_cap));
}

}  // namespace bvk
