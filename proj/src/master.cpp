#include "bvk/master.hpp"

#include <algorithm>
#include <thread>

namespace bvk {

namespace {

bool all_even(const Element& a) {
  for (const auto& [w, c] : a.terms())
    if (w.parity() != 0) return false;
  return true;
}

void require_classical(const GbvaInstance& inst) {
  const auto& f = inst.alg->flags();
  if (!f.supercommutative || !f.associative) throw PreconditionError(inst.name + " is not supercommutative and associative");
  if (!inst.checked.all()) throw PreconditionError(inst.name + " is not a BV instance on its sweep");
}

Scalar choose(long n, long k) {
  Scalar r = 1;
  for (long i = 0; i < k; ++i) r = r * Scalar(n - i) / Scalar(i + 1);
  return r;
}

Scalar factorial(long n) {
  Scalar r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

Element bracket_sum(const GbvaInstance& inst, const Element& a, const Element& b) {
  Element out;
  for (const Element& p : homogeneous_parts(a)) out += bv_bracket(inst, p, b);
  return out;
}

Element master_residual(const MasterCandidate& cand) {
  return bracket_sum(cand.inst, cand.W, cand.W) - cand.lambda * cand.inst.delta(cand.W);
}

bool satisfies_master(const MasterCandidate& cand) { return master_residual(cand).is_zero(); }

IdentityReport classical_master_check(const GbvaInstance& inst, const Element& S) {
  IdentityCheck chk("classical master equation", inst.alg.get());
  chk.check_zero(bracket_sum(inst, S, S), {{"S", S}});
  return chk.report();
}

Element exact_product(const Superalgebra& alg, const Element& a, const Element& b) {
  if (a.is_zero() || b.is_zero()) return Element();
  if (auto cap = alg.degree_cap(); cap && a.max_grade() + b.max_grade() > *cap)
    throw PreconditionError("product would be truncated at cap " + std::to_string(*cap) + "; raise the cap");
  return alg.multiply(a, b);
}

Element exact_power(const Superalgebra& alg, const Element& a, int k) {
  auto one = alg.unit();
  if (!one) throw PreconditionError("powers need a unit");
  Element p = *one;
  for (int i = 0; i < k; ++i) p = exact_product(alg, p, a);
  return p;
}

Element exp_nilpotent(const Superalgebra& alg, const Element& V, int max_terms) {
  if (!all_even(V)) throw PreconditionError("exp needs an even argument");
  auto one = alg.unit();
  if (!one) throw PreconditionError("exp needs a unit");
  Element sum = *one, p = *one;
  for (int k = 1; k <= max_terms; ++k) {
    p = exact_product(alg, p, V);
    if (p.is_zero()) return sum;
    sum += (Scalar(1) / factorial(k)) * p;
  }
  throw PreconditionError("exp argument is not nilpotent within " + std::to_string(max_terms) + " powers");
}

std::vector<IdentityReport> check_power_identities(const MasterCandidate& cand, int k_max) {
  require_classical(cand.inst);
  if (!all_even(cand.W)) throw PreconditionError("W must be even");
  const Superalgebra& A = *cand.inst.alg;
  const Element& W = cand.W;
  IdentityCheck master("master equation for W", &A), first("bracket with powers", &A), second("BV operator on powers", &A);
  Element res = master_residual(cand);
  master.check_zero(res, {{"W", W}});
  if (!res.is_zero()) {
    first.fail("W does not solve the master equation");
    second.fail("W does not solve the master equation");
    return {master.report(), first.report(), second.report()};
  }
  Element dW = cand.inst.delta(W);
  std::vector<Element> pw{*A.unit()};
  for (int k = 1; k <= k_max; ++k) pw.push_back(exact_product(A, pw.back(), W));
  for (int k = 1; k <= k_max; ++k) {
    Scalar kk = k;
    first.check(bracket_sum(cand.inst, W, pw[k]), kk * cand.lambda * exact_product(A, dW, pw[k - 1]),
                {{"W, k=" + std::to_string(k), W}});
    Element rhs = kk * exact_product(A, dW, pw[k - 1]);
    if (k >= 2) rhs += Scalar(k * (k - 1), 2) * cand.lambda * exact_product(A, dW, pw[k - 2]);
    second.check(cand.inst.delta(pw[k]), rhs, {{"W, k=" + std::to_string(k), W}});
  }
  return {master.report(), first.report(), second.report()};
}

IdentityReport exp_check(const MasterCandidate& cand) {
  require_classical(cand.inst);
  const Superalgebra& A = *cand.inst.alg;
  const Element& V = cand.W;
  const Scalar& mu = cand.lambda;
  Element e = exp_nilpotent(A, V);
  IdentityCheck chk("BV operator on the exponential", &A);
  Element res = master_residual(cand);
  if (!res.is_zero()) {
    chk.check_zero(res, {{"V", V}});
    chk.note("V does not solve {V,V} = mu Delta(V)");
    return chk.report();
  }
  Element lhs = cand.inst.delta(e);
  chk.check(lhs, (mu / 2 + 1) * exact_product(A, cand.inst.delta(V), e), {{"V", V}});
  if (mu == -2) {
    chk.check_zero(lhs, {{"V", V}});
    chk.note("mu = -2: exponential is annihilated");
  }
  return chk.report();
}

std::vector<IdentityReport> phi_expansion_check(const Superalgebra& alg, const LinOp& delta, const Element& W,
                                                int k_max, const std::optional<Domain>& order_domain) {
  if (!alg.flags().supercommutative || !alg.flags().associative)
    throw PreconditionError("the expansion needs a supercommutative associative algebra");
  if (delta.parity() != 1) throw PreconditionError("Delta must be odd");
  if (!all_even(W)) throw std::invalid_argument("W must be even");
  auto one = alg.unit();
  if (!one) throw PreconditionError("the expansion needs a unit");
  std::vector<Element> pw{*one}, phi{Element()};
  for (int k = 1; k <= k_max; ++k) {
    pw.push_back(alg.multiply(pw.back(), W));
    phi.push_back(phi_form_multilinear(alg, delta, std::vector<Element>(k, W)));
  }
  std::vector<IdentityReport> out;
  IdentityCheck ex("BV operator on powers by forms", &alg);
  for (int k = 1; k <= k_max; ++k) {
    Element rhs;
    for (int j = 1; j <= k; ++j) rhs += choose(k, j) * alg.multiply(pw[k - j], phi[j]);
    ex.check(delta(pw[k]), rhs, {{"W", W}});
  }
  out.push_back(ex.report());
  if (order_domain) {
    OrderReport o = classify_order(alg, delta, 2, *order_domain);
    IdentityCheck col("higher forms vanish at order two", &alg);
    if (o.order) {
      for (int j = 3; j <= k_max; ++j) col.check_zero(phi[j], {{"W", W}});
    } else {
      col.note("order above two on the domain; nothing to collapse");
    }
    out.push_back(col.report());
  }
  // exponential form for nilpotent W; Phi^k(W..W) vanishes once k > 2(N-1)
  std::vector<Element> np{*one};
  while (np.size() <= 16 && !np.back().is_zero()) np.push_back(alg.multiply(np.back(), W));
  if (np.back().is_zero()) {
    const int N = static_cast<int>(np.size()) - 1;
    Element e, s;
    for (int k = 0; k < N; ++k) e += (Scalar(1) / factorial(k)) * np[k];
    for (int k = 1; k <= 2 * (N - 1); ++k)
      s += (Scalar(1) / factorial(k)) *
           (k < static_cast<int>(phi.size()) ? phi[k] : phi_form_multilinear(alg, delta, std::vector<Element>(k, W)));
    // Delta(1) stays outside: the forms start at j = 1
    IdentityCheck ec("BV operator on the exponential by forms", &alg);
    ec.check(delta(e) - delta(*one), alg.multiply(e, s), {{"W", W}});
    out.push_back(ec.report());
  }
  return out;
}

LinOp deform_delta(const GbvaInstance& inst, const Element& a) {
  if (!all_even(a)) throw std::invalid_argument("deformation needs an even element");
  GbvaInstance base = inst;
  return LinOp("Delta + {" + inst.alg->format(a) + ", .}", 1,
               [base, a](const Word& w) {
                 Element x(w);
                 return base.delta(x) + bracket_sum(base, a, x);
               })
      .parity_graded();
}

DeformationReport check_deformation(const GbvaInstance& inst, const Element& a, long samples, std::uint64_t seed,
                                    const LinOp* D, const LinOp* L) {
  const Superalgebra& A = *inst.alg;
  DeformationReport rep;
  rep.residual = inst.delta(a) + Scalar(1, 2) * bracket_sum(inst, a, a);
  rep.master_solution = rep.residual.is_zero();
  if (!rep.master_solution) {
    rep.note = "not a master solution: Delta(a) + {a,a}/2 = " + A.format(rep.residual);
    return rep;
  }
  if (auto cap = A.degree_cap(); cap && !a.is_zero()) {
    int g = 0;
    for (const Word& w : inst.sweep.words) g = std::max(g, w.grade);
    if (inst.sweep.max_total_grade) g = std::max(g, *inst.sweep.max_total_grade);
    // {a,{a,w}} multiplies by a twice
    if (2 * a.max_grade() + g > *cap) throw PreconditionError("sweep too large for the cap: brackets with a would be truncated");
  }
  LinOp dp = deform_delta(inst, a).memoized();

  IdentityCheck sq("deformed operator squares to zero", &A);
  for (const Word& w : inst.sweep.words) sq.check_zero(dp(dp(Element(w))), {{"w", Element(w)}});
  rep.checks.push_back(sq.report());

  IdentityCheck ord("deformed operator has order two", &A);
  OrderReport o = classify_order(A, dp, 2, inst.sweep);
  ord.check_zero(o.order ? Element() : o.witnesses.back().value, {});
  if (!o.order) ord.note("nonzero third form on the sweep");
  rep.checks.push_back(ord.report());

  IdentityCheck br("bracket unchanged by the deformation", &A);
  for (const auto& t : default_tuples(A, inst.sweep, 2, samples, seed))
    br.check(phi_form(A, dp, t), phi_form(A, inst.delta, t), {{"x", t[0]}, {"y", t[1]}});
  rep.checks.push_back(br.report());

  if (D && L) {
    IdentityCheck dc("commutator with D unchanged", &A);
    Element Da = (*D)(a);
    if (!Da.is_zero()) {
      dc.note("D(a) != 0; commutator condition not expected");
    } else {
      LinOp anti = supercommutator(*D, dp);
      for (const Word& w : inst.sweep.words) dc.check(anti(Element(w)), (*L)(Element(w)), {{"w", Element(w)}});
    }
    rep.checks.push_back(dc.report());
  }
  return rep;
}

namespace {

int uniform_shift(const GbvaInstance& inst) {
  if (auto s = inst.delta.weight_shift()) return *s;
  std::optional<int> s;
  for (const Word& w : inst.sweep.words)
    for (const auto& [v, c] : inst.delta.on_word(w).terms()) {
      if (s && *s != v.grade - w.grade) throw PreconditionError("Delta does not shift weight uniformly");
      s = v.grade - w.grade;
    }
  return s.value_or(0);
}

}  // namespace

IdentityReport check_weight_obstruction(const GbvaInstance& inst, const Element& W, const Scalar& lambda) {
  const Superalgebra& A = *inst.alg;
  if (!all_even(W)) throw PreconditionError("W must be even");
  int w = 0;
  if (!W.is_zero()) {
    auto g = W.grade();
    if (!g) throw std::invalid_argument("W is not weight homogeneous; split it first");
    w = *g;
  }
  int s = uniform_shift(inst);
  Element WW = bracket_sum(inst, W, W), dW = inst.delta(W);
  IdentityCheck chk("weight obstruction", &A);
  chk.check(WW, WW.part_grade(2 * w + s), {{"W", W}});
  chk.check(dW, dW.part_grade(w + s), {{"W", W}});
  bool solves = (WW - lambda * dW).is_zero();
  if (solves && lambda != 0 && !dW.is_zero() && w != 0)
    chk.fail("solution with lambda != 0 and Delta(W) != 0 at weight " + std::to_string(w));
  std::string note = "weight " + std::to_string(w) + ", bracket in " + std::to_string(2 * w + s) +
                     ", Delta in " + std::to_string(w + s);
  if (w != 0)
    note += "; obstructed: only solutions with {W,W} = Delta(W) = 0";
  else
    note += "; no obstruction";
  if (solves) note += "; master equation holds";
  chk.note(note);
  return chk.report();
}

IdentityReport check_extreme_components(const GbvaInstance& inst, const Element& W, const Scalar& lambda) {
  const Superalgebra& A = *inst.alg;
  IdentityCheck chk("extreme weight components", &A);
  MasterCandidate cand{W, lambda, inst};
  if (!satisfies_master(cand)) {
    chk.note("W does not solve the master equation; nothing to check");
    return chk.report();
  }
  auto gs = W.grades();
  if (gs.empty()) return chk.report();
  for (int g : {*gs.rbegin(), *gs.begin()}) {
    bool extreme = (g == *gs.rbegin() && g > 0) || (g == *gs.begin() && g < 0);
    if (!extreme) continue;
    Element part = W.part_grade(g);
    chk.check_zero(bracket_sum(inst, part, part), {{"W'", part}});
  }
  return chk.report();
}

std::vector<IdentityReport> layered_master_check(const GbvaInstance& inst, const std::vector<Element>& M,
                                                 const Scalar& kappa) {
  const Superalgebra& A = *inst.alg;
  if (M.empty()) throw std::invalid_argument("need at least the classical part");
  for (const auto& m : M)
    if (!all_even(m)) throw std::invalid_argument("layers must be even");
  const int P = static_cast<int>(M.size()) - 1;
  auto layer = [&](int p) { return p >= 0 && p <= P ? M[p] : Element(); };
  IdentityCheck expanded("master equation by order", &A), solved("master equation solved for layers", &A);
  for (int p = 0; p <= 2 * P + 1; ++p) {
    Element lhs;
    for (int q = 0; q <= p; ++q) lhs += bracket_sum(inst, layer(q), layer(p - q));
    Element rhs = Scalar(2) * kappa * inst.delta(layer(p - 1));
    bool ok = expanded.check(lhs, rhs, {{"order " + std::to_string(p), layer(p)}});
    if (p == 0 || p > P) continue;
    Element s = bracket_sum(inst, layer(p), layer(0));
    Element t = kappa * inst.delta(layer(p - 1));
    for (int q = 1; q < p; ++q) t -= Scalar(1, 2) * bracket_sum(inst, layer(q), layer(p - q));
    // the two forms agree order by order
    if ((s == t) != ok) solved.fail("the expanded and solved forms disagree at order " + std::to_string(p));
    solved.check(s, t, {{"order " + std::to_string(p), layer(p)}});
  }
  return {expanded.report(), solved.report()};
}

MasterSearchReport search_master_solutions(const GbvaInstance& inst, const std::vector<Element>& monomials, int lo,
                                           int hi, int jobs) {
  const int n = static_cast<int>(monomials.size());
  for (const auto& m : monomials)
    if (!all_even(m)) throw std::invalid_argument("search monomials must be even");
  std::vector<std::vector<Element>> B(n, std::vector<Element>(n));
  std::vector<Element> dm(n);
  for (int i = 0; i < n; ++i) {
    dm[i] = inst.delta(monomials[i]);
    for (int j = 0; j < n; ++j) B[i][j] = bracket_sum(inst, monomials[i], monomials[j]);
  }
  const long base = hi - lo + 1;
  long total = 1;
  for (int i = 0; i < n; ++i) total *= base;
  jobs = std::max(1, jobs);
  std::vector<MasterSearchReport> parts(jobs);
  auto run = [&](int part) {
    MasterSearchReport& r = parts[part];
    for (long idx = part; idx < total; idx += jobs) {
      std::vector<int> c(n);
      long x = idx;
      bool zero = true;
      for (int i = 0; i < n; ++i) {
        c[i] = lo + static_cast<int>(x % base);
        x /= base;
        zero = zero && c[i] == 0;
      }
      if (zero) continue;
      ++r.candidates;
      Element WW, dW;
      for (int i = 0; i < n; ++i) {
        if (c[i] == 0) continue;
        dW += Scalar(c[i]) * dm[i];
        for (int j = 0; j < n; ++j)
          if (c[j] != 0) WW += Scalar(c[i] * c[j]) * B[i][j];
      }
      if (dW.is_zero()) {
        if (WW.is_zero()) ++r.degenerate;
        continue;
      }
      if (WW.is_zero()) {
        ++r.classical;
        continue;
      }
      const auto& [w0, d0] = *dW.terms().begin();
      Scalar lambda = WW.coeff(w0) / d0;
      if (lambda == 0 || WW != lambda * dW) continue;
      Element W;
      for (int i = 0; i < n; ++i)
        if (c[i] != 0) W += Scalar(c[i]) * monomials[i];
      r.solutions.push_back({W, lambda, c});
    }
  };
  std::vector<std::thread> pool;
  for (int p = 1; p < jobs; ++p) pool.emplace_back(run, p);
  run(0);
  for (auto& t : pool) t.join();
  MasterSearchReport out;
  for (auto& p : parts) {
    out.candidates += p.candidates;
    out.degenerate += p.degenerate;
    out.classical += p.classical;
    for (auto& s : p.solutions) out.solutions.push_back(std::move(s));
  }
  // enumeration order regardless of the job count
  auto key = [&](const std::vector<int>& c) {
    long k = 0;
    for (int i = n - 1; i >= 0; --i) k = k * base + (c[i] - lo);
    return k;
  };
  std::sort(out.solutions.begin(), out.solutions.end(),
            [&](const MasterSolution& a, const MasterSolution& b) { return key(a.coefficients) < key(b.coefficients); });
  return out;
}

}  // namespace bvk
