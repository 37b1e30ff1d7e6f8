#include "bvk/bv.hpp"

#include <algorithm>
#include <sstream>

#include "bvk/linalg.hpp"

namespace bvk {

namespace {
int par(const Element& e) { return e.parity().value_or(0); }

using Inputs = std::vector<std::pair<std::string, Element>>;
}  // namespace

GbvaInstance make_gbva(std::string name, AlgebraPtr alg, LinOp delta, Domain sweep) {
  GbvaInstance inst{std::move(name), alg, delta, std::move(sweep), {}};
  inst.checked.delta_odd = delta.parity() == 1;
  LinOp sq = compose(delta, delta);
  inst.checked.delta_square_zero = true;
  for (const auto& w : inst.sweep.words)
    if (!sq.on_word(w).is_zero()) {
      inst.checked.delta_square_zero = false;
      break;
    }
  auto order = classify_order(*alg, delta, 2, inst.sweep);
  inst.checked.delta_order_le_2 = order.order && *order.order <= 2;
  auto one = alg->unit();
  inst.checked.kills_unit = !one || delta.apply(*one).is_zero();
  return inst;
}

Element bv_bracket(const Superalgebra& alg, const LinOp& delta, const Element& a, const Element& b) {
  if (a.is_zero() || b.is_zero()) return Element();
  auto pa = a.parity();
  if (!pa || !a.degree()) throw std::invalid_argument("bracket: first argument is not homogeneous");
  Mutation m = active_mutation();
  int s = sign_of(*pa);
  if (m == Mutation::BracketPrefactor) s = 1;
  if (m == Mutation::BracketOverallSign) s = -s;
  Element out;
  for (const auto& part : homogeneous_parts(b)) out += phi_form(alg, delta, {a, part});
  return Scalar(s) * out;
}

Element bv_bracket(const GbvaInstance& inst, const Element& a, const Element& b) {
  return bv_bracket(*inst.alg, inst.delta, a, b);
}

Element commutator_product(const Superalgebra& alg, const Element& a, const Element& b) {
  Element out;
  for (const auto& pa : homogeneous_parts(a))
    for (const auto& pb : homogeneous_parts(b)) {
      out += alg.multiply(pa, pb);
      out -= Scalar(sign_of(par(pa) * par(pb))) * alg.multiply(pb, pa);
    }
  return out;
}

Element commutator_phi2(const Superalgebra& alg, const LinOp& delta, const Element& a, const Element& b) {
  if (a.is_zero() || b.is_zero()) return Element();
  if (!a.degree() || !b.degree()) throw std::invalid_argument("commutator_phi2: arguments must be homogeneous");
  Element out = delta.apply(commutator_product(alg, a, b));
  out -= commutator_product(alg, delta.apply(a), b);
  out -= Scalar(sign_of(par(a) * delta.parity())) * commutator_product(alg, a, delta.apply(b));
  return out;
}

std::vector<std::vector<Element>> sample_tuples(const Superalgebra& alg, const Domain& dom, int k,
                                                long samples, std::uint64_t seed, bool exhaustive) {
  std::vector<std::vector<Element>> out;
  if (exhaustive) {
    for_each_tuple(dom, k, [&](const std::vector<Word>& t) {
      std::vector<Element> v;
      for (const auto& w : t) v.emplace_back(w);
      out.push_back(std::move(v));
      return true;
    });
    return out;
  }
  if (dom.words.empty()) return out;
  int min_grade = dom.words[0].grade;
  for (const auto& w : dom.words) min_grade = std::min(min_grade, w.grade);
  Rng rng(seed, 4242);
  for (long s = 0; s < samples; ++s) {
    std::vector<Element> tuple;
    int budget = dom.max_total_grade.value_or(1 << 20);
    for (int i = 0; i < k; ++i) {
      int room = budget - (k - i - 1) * min_grade;
      std::vector<Word> pool;
      for (const auto& w : dom.words)
        if (w.grade <= room) pool.push_back(w);
      Element e = random_homogeneous(alg, rng, pool);
      budget -= e.is_zero() ? min_grade : e.max_grade();
      tuple.push_back(std::move(e));
    }
    out.push_back(std::move(tuple));
  }
  return out;
}

std::vector<std::vector<Element>> default_tuples(const Superalgebra& alg, const Domain& dom, int k,
                                                 long samples, std::uint64_t seed) {
  return sample_tuples(alg, dom, k, samples, seed, dom.words.size() <= 12);
}

std::vector<IdentityReport> check_gbva_identities(const GbvaInstance& inst, long samples, std::uint64_t seed) {
  return check_gbva_identities(inst, default_tuples(*inst.alg, inst.sweep, 3, samples, seed));
}

std::vector<IdentityReport> check_gbva_identities(const GbvaInstance& inst,
                                                  const std::vector<std::vector<Element>>& triples) {
  const auto& f = inst.checked;
  if (!f.delta_odd) throw PreconditionError("delta is not odd");
  if (!f.delta_square_zero) throw PreconditionError("delta is not square zero on the sweep");
  if (!f.delta_order_le_2) throw PreconditionError("delta is not of order <= 2 on the sweep");
  if (!f.kills_unit) throw PreconditionError("delta does not kill the unit");
  const Superalgebra& A = *inst.alg;
  const LinOp& D = inst.delta;
  auto br = [&](const Element& a, const Element& b) { return bv_bracket(A, D, a, b); };
  auto S = [](int e) { return Scalar(sign_of(e)); };
  IdentityCheck skew("modified skew-symmetry", &A), leib("Leibniz rule", &A), pois("Poisson rule", &A),
      der("derivation rule for delta", &A);
  for (const auto& t : triples) {
    const Element &x = t[0], &a = t[1], &b = t[2];
    int px = par(x), pa = par(a), pb = par(b);
    Inputs in2{{"a", a}, {"b", b}}, in3{{"x", x}, {"a", a}, {"b", b}};
    skew.check(br(a, b) + S((pa + 1) * (pb + 1)) * br(b, a), S(pa) * commutator_phi2(A, D, a, b), in2);
    leib.check(br(x, br(a, b)), br(br(x, a), b) + S((px + 1) * (pa + 1)) * br(a, br(x, b)), in3);
    // Poisson on (a, b, c) = (x, a, b)
    Element lhs = br(x, A.multiply(a, b)) - A.multiply(br(x, a), b) -
                  S((px + 1) * pa) * A.multiply(a, br(x, b));
    Element rhs = S(px) * phi_form(A, D, {x, a, b});
    Inputs inp{{"a", x}, {"b", a}, {"c", b}};
    if (pois.check(lhs, rhs, inp)) pois.check_zero(rhs, inp);
    der.check(D(br(a, b)) - br(D(a), b) - S(pa + 1) * br(a, D(b)), Element(), in2);
  }
  return {skew.report(), leib.report(), pois.report(), der.report()};
}

std::vector<IdentityReport> check_general_identities(const Superalgebra& A, const LinOp& D,
                                                     const std::vector<std::vector<Element>>& triples) {
  if (D.parity() != 1) throw PreconditionError("delta must be odd");
  LinOp D2 = compose(D, D);
  auto br = [&](const Element& a, const Element& b) { return bv_bracket(A, D, a, b); };
  auto S = [](int e) { return Scalar(sign_of(e)); };
  auto phi3 = [&](const LinOp& op, const Element& u, const Element& v, const Element& w) {
    return phi_form(A, op, {u, v, w});
  };
  IdentityCheck skew("modified skew-symmetry", &A), leib("modified Leibniz rule", &A),
      pois("modified Poisson rule", &A), der("modified derivation rule for delta", &A);
  for (const auto& t : triples) {
    const Element &x = t[0], &a = t[1], &b = t[2];
    int px = par(x), pa = par(a), pb = par(b);
    Inputs in2{{"a", a}, {"b", b}}, in3{{"x", x}, {"a", a}, {"b", b}};
    skew.check(br(a, b) + S((pa + 1) * (pb + 1)) * br(b, a), S(pa) * commutator_phi2(A, D, a, b), in2);

    Element lhs = br(br(x, a), b) + S((px + 1) * (pa + 1)) * br(a, br(x, b)) - br(x, br(a, b));
    Element rhs = D(phi3(D, x, a, b)) - phi3(D2, x, a, b) + phi3(D, D(x), a, b) +
                  S(px) * phi3(D, x, D(a), b) + S(px + pa) * phi3(D, x, a, D(b));
    leib.check(lhs, S(pa) * rhs, in3);

    Element pl = br(x, A.multiply(a, b)) - A.multiply(br(x, a), b) - S((px + 1) * pa) * A.multiply(a, br(x, b));
    pois.check(pl, S(px) * phi3(D, x, a, b), {{"a", x}, {"b", a}, {"c", b}});

    der.check(D(br(a, b)) - br(D(a), b) - S(pa + 1) * br(a, D(b)), S(pa) * phi_form(A, D2, {a, b}), in2);
  }
  return {skew.report(), leib.report(), pois.report(), der.report()};
}

std::vector<IdentityReport> check_general_identities(const Superalgebra& alg, const LinOp& delta,
                                                     const Domain& dom, long samples, std::uint64_t seed) {
  return check_general_identities(alg, delta, default_tuples(alg, dom, 3, samples, seed));
}

IdentityReport check_d_derivation(const GbvaInstance& inst, const LinOp& D, const LinOp& L, long samples,
                                  std::uint64_t seed) {
  const Superalgebra& A = *inst.alg;
  const LinOp& Dl = inst.delta;
  if (D.parity() != 1) throw PreconditionError("D must be odd");
  LinOp anti = supercommutator(D, Dl);
  if (auto w = first_difference(anti, L, inst.sweep.words))
    throw PreconditionError("D Delta + Delta D differs from L on " + A.format_word(*w));
  for (const auto* op : {&D, &L}) {
    std::optional<std::string> bad;
    for_each_tuple(inst.sweep, 2, [&](const std::vector<Word>& t) {
      if (!phi_form(A, *op, {Element(t[0]), Element(t[1])}).is_zero()) {
        bad = A.format_word(t[0]) + ", " + A.format_word(t[1]);
        return false;
      }
      return true;
    });
    if (bad) throw PreconditionError(op->label() + " is not a derivation: Phi^2 nonzero on " + *bad);
  }
  auto S = [](int e) { return Scalar(sign_of(e)); };
  auto br = [&](const Element& a, const Element& b) { return bv_bracket(A, Dl, a, b); };
  IdentityCheck chk("D is a derivation of the bracket", &A);
  for (const auto& t : default_tuples(A, inst.sweep, 2, samples, seed)) {
    const Element &a = t[0], &b = t[1];
    chk.check(D(br(a, b)), br(D(a), b) + S(par(a) + 1) * br(a, D(b)), {{"a", a}, {"b", b}});
  }
  return chk.report();
}

IdentityReport check_leibniz(const Superalgebra& alg, const Bracket& bracket, const DegreeFn& degree,
                             const std::vector<std::vector<Element>>& triples, std::string name) {
  IdentityCheck chk(std::move(name), &alg);
  for (const auto& t : triples) {
    const Element &x = t[0], &y = t[1], &z = t[2];
    if (x.is_zero() || y.is_zero() || z.is_zero()) continue;
    int s = sign_of(degree(x) * degree(y));
    chk.check(bracket(x, bracket(y, z)), bracket(bracket(x, y), z) + Scalar(s) * bracket(y, bracket(x, z)),
              {{"x", x}, {"y", y}, {"z", z}});
  }
  return chk.report();
}

DbvaReport verify_dbva(const GbvaInstance& inst, const LinOp& D, const LinOp& L) {
  const Superalgebra& A = *inst.alg;
  const LinOp& Dl = inst.delta;
  const auto& words = inst.sweep.words;
  std::map<Scalar, std::vector<Word>> eig;
  for (const auto& w : words) {
    Element img = L.on_word(w);
    Scalar lam = img.coeff(w);
    if (img != lam * Element(w)) throw PreconditionError("basis word " + A.format_word(w) + " is not an L-eigenvector");
    eig[lam].push_back(w);
  }
  DbvaReport rep;
  IdentityCheck anti("D Delta + Delta D = L", &A), dsq("D^2 = 0", &A), dunit("D(1) = 0", &A),
      ld("[L,D] = 0", &A), ldl("[L,Delta] = 0", &A), wt0("cohomology only in weight 0", &A),
      desc("Delta descends to cohomology", &A), exact("closed elements of nonzero weight are exact", &A);
  LinOp ac = supercommutator(D, Dl), d2 = compose(D, D), cld = supercommutator(L, D),
        cldl = supercommutator(L, Dl);
  for (const auto& w : words) {
    Inputs in{{"w", Element(w)}};
    anti.check(ac.on_word(w), L.on_word(w), in);
    dsq.check_zero(d2.on_word(w), in);
    ld.check_zero(cld.on_word(w), in);
    ldl.check_zero(cldl.on_word(w), in);
  }
  if (auto one = A.unit()) dunit.check_zero(D(*one), {{"1", *one}});
  for (const auto& [lam, group] : eig) {
    Coords co(group);
    std::vector<Vec> cols;
    for (const auto& w : group) cols.push_back(co.vec(D.on_word(w)));
    auto ker = kernel(cols, group.size());
    std::size_t im = rank(cols);
    int h = static_cast<int>(ker.size()) - static_cast<int>(im);
    rep.cohomology_by_weight[to_string(lam)] = h;
    if (lam != 0) {
      if (h != 0) wt0.fail("weight " + to_string(lam) + " carries cohomology of dimension " + std::to_string(h));
      for (const auto& z : ker) {
        Element a = co.elem(z);
        exact.check(D(Dl(a)), lam * a, {{"a", a}});
      }
    } else {
      wt0.note("weight-0 cohomology dimension " + std::to_string(h));
      for (const auto& z : ker) {
        Element a = co.elem(z);
        desc.check_zero(D(Dl(a)), {{"closed", a}});
      }
      for (const auto& w : group) {
        Element img = Dl(D.on_word(w));
        if (!in_span(cols, co.vec(img))) desc.fail("Delta(D " + A.format_word(w) + ") is not exact");
      }
    }
  }
  rep.identities = {anti.report(), dsq.report(), dunit.report(), ld.report(), ldl.report(),
                    wt0.report(), desc.report(), exact.report()};
  return rep;
}

}  // namespace bvk
