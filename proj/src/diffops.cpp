#include "bvk/diffops.hpp"
#include "bvk/report.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <stdexcept>

namespace bvk {

namespace {
thread_local Mutation g_mutation = Mutation::None;

int parity_of(const Element& a, std::size_t index) {
  auto p = a.parity();
  if (!p) {
    std::ostringstream os;
    os << "argument " << index + 1 << " is not homogeneous";
    throw std::invalid_argument(os.str());
  }
  auto d = a.degree();
  if (!d) {
    std::ostringstream os;
    os << "argument " << index + 1 << " mixes superdegrees";
    throw std::invalid_argument(os.str());
  }
  return *p;
}

Element phi_rec(const Superalgebra& alg, const LinOp& delta, const std::vector<Element>& args,
                const std::vector<int>& par, bool adjust, const Element* delta_one) {
  std::size_t r = args.size();
  if (r == 1) {
    Element out = delta.apply(args[0]);
    if (adjust) out -= alg.multiply(*delta_one, args[0]);
    return out;
  }
  const Element& x = args[r - 2];
  const Element& y = args[r - 1];
  std::vector<Element> head(args.begin(), args.end() - 2);
  std::vector<int> head_par(par.begin(), par.end() - 2);

  Mutation mut = g_mutation;

  Element xy = alg.multiply(x, y);
  Element t1;
  if (!xy.is_zero()) {
    auto a1 = head;
    a1.push_back(xy);
    auto p1 = head_par;
    p1.push_back((par[r - 2] + par[r - 1]) % 2);
    t1 = phi_rec(alg, delta, a1, p1, adjust, delta_one);
  }
  auto a2 = head;
  a2.push_back(x);
  auto p2 = head_par;
  p2.push_back(par[r - 2]);
  Element t2 = alg.multiply(phi_rec(alg, delta, a2, p2, adjust, delta_one), y);

  auto a3 = head;
  a3.push_back(y);
  auto p3 = head_par;
  p3.push_back(par[r - 1]);
  Element t3 = alg.multiply(x, phi_rec(alg, delta, a3, p3, adjust, delta_one));

  int prefix = 0;
  for (int p : head_par) prefix += p;
  if (mut == Mutation::RecursionPrefixParity) prefix = 0;
  int dpar = mut == Mutation::RecursionDeltaParity ? 0 : delta.parity();
  int s3 = sign_of(par[r - 2] * (prefix + dpar));

  Element out = t1;
  if (mut == Mutation::RecursionSecondTerm)
    out += t2;
  else
    out -= t2;
  if (mut == Mutation::RecursionThirdTerm) s3 = -s3;
  out -= Scalar(s3) * t3;
  return out;
}
}  // namespace

Mutation active_mutation() { return g_mutation; }
void set_mutation(Mutation m) { g_mutation = m; }

const char* mutation_name(Mutation m) {
  switch (m) {
    case Mutation::None: return "none";
    case Mutation::RecursionSecondTerm: return "recursion-second-term";
    case Mutation::RecursionThirdTerm: return "recursion-third-term";
    case Mutation::RecursionDeltaParity: return "recursion-delta-parity";
    case Mutation::RecursionPrefixParity: return "recursion-prefix-parity";
    case Mutation::BracketPrefactor: return "bracket-prefactor";
    case Mutation::BracketOverallSign: return "bracket-overall-sign";
  }
  return "?";
}

std::vector<Mutation> all_mutations() {
  return {Mutation::RecursionSecondTerm, Mutation::RecursionThirdTerm, Mutation::RecursionDeltaParity,
          Mutation::RecursionPrefixParity, Mutation::BracketPrefactor, Mutation::BracketOverallSign};
}

Element phi_form(const Superalgebra& alg, const LinOp& delta, const std::vector<Element>& args,
                 bool unital_adjust) {
  if (args.empty()) throw std::invalid_argument("phi_form needs at least one argument");
  for (const auto& a : args)
    if (a.is_zero()) return Element();
  std::vector<int> par;
  for (std::size_t i = 0; i < args.size(); ++i) par.push_back(parity_of(args[i], i));
  Element delta_one;
  if (unital_adjust) {
    auto one = alg.unit();
    if (!one) throw std::invalid_argument("unital adjustment on an algebra without unit");
    delta_one = delta.apply(*one);
  }
  return phi_rec(alg, delta, args, par, unital_adjust, &delta_one);
}

PhiWordCache::PhiWordCache(const Superalgebra& alg, const LinOp& delta, bool unital_adjust)
    : alg_(alg), delta_(delta), adjust_(unital_adjust), mut_(g_mutation) {
  if (adjust_) {
    auto one = alg.unit();
    if (!one) throw std::invalid_argument("unital adjustment on an algebra without unit");
    delta_one_ = delta.apply(*one);
  }
}

Element PhiWordCache::operator()(const std::vector<Word>& args) {
  std::size_t r = args.size();
  if (r == 0) throw std::invalid_argument("phi_form needs at least one argument");
  std::vector<std::vector<int>> key;
  key.reserve(r);
  for (const auto& w : args) key.push_back(w.key);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  Element out;
  if (r == 1) {
    out = delta_.apply(Element(args[0]));
    if (adjust_) out -= alg_.multiply(delta_one_, Element(args[0]));
  } else {
    const Word& x = args[r - 2];
    const Word& y = args[r - 1];
    std::vector<Word> sub(args.begin(), args.end() - 1);
    const Element xy = alg_.mul(x, y);
    for (const auto& [w, c] : xy.terms()) {
      sub.back() = w;
      out += c * (*this)(sub);
    }
    sub.back() = x;
    Element t2 = alg_.multiply((*this)(sub), Element(y));
    sub.back() = y;
    Element t3 = alg_.multiply(Element(x), (*this)(sub));

    int prefix = 0;
    for (std::size_t i = 0; i + 2 < r; ++i) prefix += args[i].parity();
    if (mut_ == Mutation::RecursionPrefixParity) prefix = 0;
    int dpar = mut_ == Mutation::RecursionDeltaParity ? 0 : delta_.parity();
    int s3 = sign_of(x.parity() * (prefix + dpar));
    if (mut_ == Mutation::RecursionSecondTerm)
      out += t2;
    else
      out -= t2;
    if (mut_ == Mutation::RecursionThirdTerm) s3 = -s3;
    out -= Scalar(s3) * t3;
  }
  memo_.emplace(std::move(key), out);
  return out;
}

Element phi_form_multilinear(const Superalgebra& alg, const LinOp& delta,
                             const std::vector<Element>& args, bool unital_adjust) {
  std::vector<std::vector<Element>> parts;
  for (const auto& a : args) parts.push_back(homogeneous_parts(a));
  Element out;
  std::vector<Element> pick(args.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == args.size()) {
      out += phi_form(alg, delta, pick, unital_adjust);
      return;
    }
    for (const auto& p : parts[i]) {
      pick[i] = p;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

Element phi_form_koszul(const Superalgebra& alg, const LinOp& delta, const std::vector<Element>& args) {
  const auto& f = alg.flags();
  if (!f.supercommutative || !f.associative || !f.unital)
    throw std::invalid_argument("Koszul forms need a supercommutative associative unital algebra");
  if (args.empty()) throw std::invalid_argument("phi_form_koszul needs at least one argument");
  std::vector<int> par;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i].is_zero()) return Element();
    par.push_back(parity_of(args[i], i));
  }
  using Tensor = std::map<std::pair<Word, Word>, Scalar>;
  auto add_to = [](Tensor& t, const Word& x, const Word& y, const Scalar& c) {
    if (c == 0) return;
    auto key = std::make_pair(x, y);
    auto it = t.find(key);
    if (it == t.end()) {
      t.emplace(key, c);
    } else {
      it->second += c;
      if (it->second == 0) t.erase(it);
    }
  };
  Element one = *alg.unit();
  Tensor acc;
  for (const auto& [w, c] : one.terms())
    for (const auto& [v, cv] : one.terms()) add_to(acc, w, v, c * cv);
  for (std::size_t i = 0; i < args.size(); ++i) {
    Tensor next;
    for (const auto& [xy, c] : acc) {
      const auto& [x, y] = xy;
      // (x (x) y)(a (x) 1) = (-1)^{|y||a|} xa (x) y
      for (const auto& [aw, ac] : args[i].terms()) {
        int s = sign_of(y.parity() * aw.parity());
        Element xa = alg.mul(x, aw);
        for (const auto& [p, pc] : xa.terms()) add_to(next, p, y, Scalar(s) * c * ac * pc);
        // -(x (x) y)(1 (x) a) = -x (x) ya
        Element ya = alg.mul(y, aw);
        for (const auto& [q, qc] : ya.terms()) add_to(next, x, q, -c * ac * qc);
      }
    }
    acc.swap(next);
  }
  Element out;
  for (const auto& [xy, c] : acc) {
    const auto& [x, y] = xy;
    out += c * alg.multiply(delta.on_word(x), Element(y));
  }
  return out;
}

Element phi4_explicit(const Superalgebra& alg, const LinOp& D, const Element& a, const Element& b,
                      const Element& c, const Element& d) {
  const auto& f = alg.flags();
  if (!f.supercommutative || !f.associative)
    throw std::invalid_argument("the closed formula needs a supercommutative associative algebra");
  std::vector<Element> args{a, b, c, d};
  for (const auto& x : args)
    if (x.is_zero()) return Element();
  int pa = parity_of(a, 0), pb = parity_of(b, 1), pc = parity_of(c, 2);
  parity_of(d, 3);
  int pD = D.parity();
  auto m = [&](const Element& x, const Element& y) { return alg.multiply(x, y); };
  auto S = [](int e) { return Scalar(sign_of(e)); };
  Element ab = m(a, b), ac = m(a, c), bc = m(b, c), ad = m(a, d), bd = m(b, d), cd = m(c, d);
  Element abc = m(ab, c), abd = m(ab, d), acd = m(ac, d), bcd = m(bc, d), abcd = m(abc, d);
  Element out;
  out += D(abcd);
  out -= S(pD * pa) * m(a, D(bcd));
  out -= S(pb * (pa + pD)) * m(b, D(acd));
  out -= S(pc * (pa + pb + pD)) * m(c, D(abd));
  out -= m(D(abc), d);
  out += S(pD * (pa + pb)) * m(ab, D(cd));
  out += S(pD * pa) * m(m(a, D(bc)), d);
  out += S(pb * (pa + pD)) * m(m(b, D(ac)), d);
  out += S(pc * (pD + pb) + pD * pa) * m(ac, D(bd));
  out += S((pb + pc) * (pD + pa)) * m(bc, D(ad));
  out += m(m(D(ab), c), d);
  out -= m(m(m(D(a), b), c), d);
  out -= S(pD * pa) * m(m(m(a, D(b)), c), d);
  out -= S(pD * (pa + pb)) * m(m(ab, D(c)), d);
  out -= S(pD * (pa + pb + pc)) * m(abc, D(d));
  return out;
}

IdentityReport check_koszul_agreement(const Superalgebra& alg, const LinOp& delta, int r_max, long samples,
                                      std::uint64_t seed, int pool_bound) {
  IdentityCheck chk("recursive and Koszul forms agree", &alg);
  Rng rng(seed, 301);
  auto pool = alg.basis(pool_bound);
  for (int r = 1; r <= r_max; ++r)
    for (long s = 0; s < samples; ++s) {
      std::vector<Element> args;
      std::vector<std::pair<std::string, Element>> named;
      for (int k = 0; k < r; ++k) {
        args.push_back(random_homogeneous(alg, rng, pool));
        named.emplace_back("a" + std::to_string(k + 1), args.back());
      }
      chk.check(phi_form(alg, delta, args), phi_form_koszul(alg, delta, args), named);
    }
  return chk.report();
}

IdentityReport check_phi4_formula(const Superalgebra& alg, const LinOp& delta, long samples, std::uint64_t seed,
                                  int pool_bound) {
  IdentityCheck chk("closed four-argument formula", &alg);
  Rng rng(seed, 302);
  auto pool = alg.basis(pool_bound);
  for (long s = 0; s < samples; ++s) {
    std::vector<Element> a;
    for (int k = 0; k < 4; ++k) a.push_back(random_homogeneous(alg, rng, pool));
    chk.check(phi_form(alg, delta, a), phi4_explicit(alg, delta, a[0], a[1], a[2], a[3]),
              {{"a", a[0]}, {"b", a[1]}, {"c", a[2]}, {"d", a[3]}});
  }
  return chk.report();
}

Domain basis_domain(const Superalgebra& alg, int bound, std::optional<int> max_total_grade,
                    std::string description) {
  Domain d;
  d.words = alg.basis(bound);
  d.max_total_grade = max_total_grade;
  if (description.empty()) {
    std::ostringstream os;
    os << alg.name() << " basis(" << bound << ")";
    if (max_total_grade) os << ", tuple grade <= " << *max_total_grade;
    description = os.str();
  }
  d.description = description;
  return d;
}

long for_each_tuple(const Domain& dom, int k, const std::function<bool(const std::vector<Word>&)>& fn) {
  if (dom.words.empty() || k <= 0) return 0;
  int min_grade = dom.words[0].grade;
  for (const auto& w : dom.words) min_grade = std::min(min_grade, w.grade);
  std::vector<Word> cur;
  long count = 0;
  bool stop = false;
  std::function<void(int, int)> rec = [&](int depth, int sum) {
    if (stop) return;
    if (depth == k) {
      ++count;
      if (!fn(cur)) stop = true;
      return;
    }
    for (const auto& w : dom.words) {
      if (dom.max_total_grade && sum + w.grade + (k - depth - 1) * min_grade > *dom.max_total_grade)
        continue;
      cur.push_back(w);
      rec(depth + 1, sum + w.grade);
      cur.pop_back();
      if (stop) return;
    }
  };
  rec(0, 0);
  return count;
}

OrderReport classify_order(const Superalgebra& alg, const LinOp& delta, int r_max, const Domain& domain,
                           bool unital_adjust) {
  if (r_max < 1) throw std::invalid_argument("r_max must be at least 1");
  OrderReport rep;
  rep.label = delta.label();
  rep.r_max = r_max;
  rep.domain = domain.description;
  for (int k = 1; k <= r_max + 1; ++k) {
    std::optional<Witness> wit;
    rep.tuples_checked += for_each_tuple(domain, k, [&](const std::vector<Word>& t) {
      std::vector<Element> args;
      for (const auto& w : t) args.emplace_back(w);
      Element v = phi_form(alg, delta, args, unital_adjust);
      if (!v.is_zero()) {
        wit = Witness{k, args, v};
        return false;
      }
      return true;
    });
    if (!wit) {
      rep.order = k - 1;
      return rep;
    }
    rep.witnesses.push_back(*wit);
  }
  return rep;
}

OrderLawReport check_order_laws(const Superalgebra& alg, const std::vector<std::pair<LinOp, int>>& ops,
                                const Domain& domain, bool unital_adjust) {
  OrderLawReport rep;
  for (const auto& [op, claimed] : ops) {
    auto o = classify_order(alg, op, std::max(1, claimed + 1), domain, unital_adjust);
    if (!o.order || *o.order > claimed) {
      rep.passed = false;
      rep.claim_failures.push_back(op.label() + " is not of order <= " + std::to_string(claimed));
    }
  }
  for (const auto& [p, r] : ops)
    for (const auto& [q, s] : ops) {
      OrderLawEntry e;
      e.first = p.label();
      e.second = q.label();
      e.r = r;
      e.s = s;
      int cb = r + s, bb = std::max(r + s - 1, 0);
      auto co = classify_order(alg, compose(p, q), std::max(1, cb), domain, unital_adjust);
      auto bo = classify_order(alg, supercommutator(p, q), std::max(1, bb), domain, unital_adjust);
      e.composite_order = co.order;
      e.bracket_order = bo.order;
      e.composite_ok = co.order && *co.order <= cb;
      e.bracket_ok = bo.order && *bo.order <= bb;
      if (!e.composite_ok || !e.bracket_ok) rep.passed = false;
      rep.entries.push_back(e);
    }
  return rep;
}

}  // namespace bvk
