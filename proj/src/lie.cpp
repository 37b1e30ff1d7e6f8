#include "bvk/lie.hpp"

#include <bit>
#include <sstream>

#include "bvk/linalg.hpp"

namespace bvk {

namespace {
std::vector<std::vector<std::vector<Scalar>>> zeros(int n) {
  return std::vector<std::vector<std::vector<Scalar>>>(
      n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar(0))));
}

bool is_abelian(const LieAlgebraData& g) {
  for (const auto& a : g.c)
    for (const auto& b : a)
      for (const auto& x : b)
        if (x != 0) return false;
  return true;
}
}  // namespace

LieAlgebraData make_lie_algebra(int dim, const std::vector<std::tuple<int, int, int, Scalar>>& brackets,
                                std::vector<std::string> names) {
  if (dim <= 0 || dim > 16) throw std::invalid_argument("lie algebra: dimension must be in 1..16");
  LieAlgebraData g;
  g.dim = dim;
  g.c = zeros(dim);
  for (const auto& [i, j, k, v] : brackets) {
    if (i < 0 || j < 0 || k < 0 || i >= dim || j >= dim || k >= dim)
      throw std::invalid_argument("lie algebra: structure constant index out of range");
    if (i == j && v != 0) throw std::invalid_argument("lie algebra: [e_i, e_i] must vanish");
    g.c[i][j][k] += v;
    if (i != j) g.c[j][i][k] -= v;
  }
  // Jacobi: [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] = 0
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int m = 0; m < dim; ++m) {
          Scalar s = 0;
          for (int l = 0; l < dim; ++l)
            s += g.c[j][k][l] * g.c[i][l][m] + g.c[k][i][l] * g.c[j][l][m] + g.c[i][j][l] * g.c[k][l][m];
          if (s != 0) {
            std::ostringstream os;
            os << "lie algebra: Jacobi identity fails on (" << i << "," << j << "," << k << ")";
            throw std::invalid_argument(os.str());
          }
        }
  for (int i = static_cast<int>(names.size()); i < dim; ++i) names.push_back("e" + std::to_string(i + 1));
  g.names = std::move(names);
  // Killing form K_ij = tr(ad e_i ad e_j)
  std::vector<Vec> killing(dim, Vec(dim, Scalar(0)));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l) killing[i][j] += g.c[i][l][k] * g.c[j][k][l];
  g.semisimple = rank(killing) == static_cast<std::size_t>(dim);
  return g;
}

LieAlgebraData sl2() {
  return make_lie_algebra(3, {{2, 0, 0, 2}, {2, 1, 1, -2}, {0, 1, 2, 1}}, {"e", "f", "h"});
}

LieAlgebraData abelian_lie(int n) { return make_lie_algebra(n, {}); }

LieAlgebraData nonabelian2() { return make_lie_algebra(2, {{0, 1, 1, 1}}, {"a", "b"}); }

// ---------------------------------------------------------------- complex

LieComplex::LieComplex(LieAlgebraData lie, ComplexSpec spec) : lie_(std::move(lie)), spec_(spec) {
  if (spec_.degree_cap < 0) throw std::invalid_argument("lie complex: negative degree cap");
  bool sym = spec_.module == CoefficientModule::SymmetricAdjoint;
  std::vector<std::string> even, odd;
  for (const auto& n : lie_.names) {
    even.push_back("S" + n);
    odd.push_back(spec_.kind == ComplexCase::Cohomology ? n + "'" : n);
  }
  int n_even = sym ? lie_.dim : 0;
  even.resize(n_even);
  alg_ = std::make_shared<PolyAlgebra>(n_even, lie_.dim, sym ? spec_.degree_cap : 0, even, odd);
  words_ = alg_->words_up_to_grade(sym ? spec_.degree_cap : 0);
}

Domain LieComplex::domain() const {
  return Domain{words_, alg_->cap(), "basis of the complex"};
}

LinOp LieComplex::contraction(int i) const {
  LinOp op = spec_.kind == ComplexCase::Homology ? wedge_odd(alg_, i) : partial_odd(alg_, i);
  return op.relabeled("contraction(" + lie_.names[i] + ")");
}

LinOp LieComplex::dual_mult(int i) const {
  LinOp op = spec_.kind == ComplexCase::Cohomology ? wedge_odd(alg_, i) : partial_odd(alg_, i);
  return op.relabeled("eps(" + lie_.names[i] + "')");
}

LinOp LieComplex::contraction_by(const std::vector<Scalar>& x) const {
  std::vector<std::pair<Scalar, LinOp>> t;
  for (int k = 0; k < lie_.dim; ++k)
    if (x[k] != 0) t.emplace_back(x[k], contraction(k));
  int deg = spec_.kind == ComplexCase::Homology ? 1 : -1;
  return linear_combination("contraction(...)", deg, std::move(t));
}

LinOp LieComplex::pi(int i) const {
  if (spec_.module == CoefficientModule::Trivial) return zero_op(0).relabeled("pi(" + lie_.names[i] + ")");
  std::vector<std::pair<Scalar, LinOp>> t;
  for (int j = 0; j < lie_.dim; ++j)
    for (int k = 0; k < lie_.dim; ++k)
      if (lie_.c[i][j][k] != 0)
        t.emplace_back(lie_.c[i][j][k], compose(left_multiplication(alg_, alg_->even_gen(k)), partial_even(alg_, j)));
  return linear_combination("pi(" + lie_.names[i] + ")", 0, std::move(t));
}

LinOp LieComplex::rho(int i) const {
  std::vector<std::pair<Scalar, LinOp>> t;
  for (int j = 0; j < lie_.dim; ++j) {
    const auto& xe = lie_.c[i][j];
    if (spec_.kind == ComplexCase::Homology)
      t.emplace_back(1, compose(contraction_by(xe), dual_mult(j)));
    else
      t.emplace_back(-1, compose(dual_mult(j), contraction_by(xe)));
  }
  return linear_combination("rho(" + lie_.names[i] + ")", 0, std::move(t)).memoized();
}

LinOp LieComplex::theta(int i) const {
  return add(pi(i), rho(i)).relabeled("theta(" + lie_.names[i] + ")").memoized();
}

LinOp LieComplex::differential() const {
  bool hom = spec_.kind == ComplexCase::Homology;
  int deg = hom ? -1 : 1;
  std::vector<std::pair<Scalar, LinOp>> t;
  for (int i = 0; i < lie_.dim; ++i)
    if (spec_.module != CoefficientModule::Trivial) t.emplace_back(1, compose(pi(i), dual_mult(i)));
  for (int i = 0; i < lie_.dim; ++i)
    for (int j = i + 1; j < lie_.dim; ++j) {
      LinOp br = contraction_by(lie_.c[i][j]);
      if (hom)
        t.emplace_back(1, compose(br, compose(dual_mult(j), dual_mult(i))));
      else
        t.emplace_back(1, compose(compose(dual_mult(j), dual_mult(i)), br));
    }
  return linear_combination(hom ? "boundary" : "coboundary", deg, std::move(t)).memoized();
}

int LieComplex::symmetric_degree(const Word& w) const { return w.grade; }
int LieComplex::exterior_degree(const Word& w) const { return std::popcount(alg_->mask(w)); }

LinOp chevalley_boundary(const LieComplex& cx) {
  if (cx.spec().kind != ComplexCase::Homology) throw PreconditionError("boundary needs the homology complex");
  return cx.differential();
}

LinOp chevalley_coboundary(const LieComplex& cx) {
  if (cx.spec().kind != ComplexCase::Cohomology) throw PreconditionError("coboundary needs the cohomology complex");
  return cx.differential();
}

// ---------------------------------------------------------------- Clifford words

void CliffordElement::add(const CliffordWord& w, const Scalar& c) {
  if (c == 0) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

namespace {
bool creates(const CliffordLetter& l, ComplexCase kind) { return (kind == ComplexCase::Cohomology) == l.eps; }

// adjacent pair (a, b) that needs rewriting
bool out_of_order(const CliffordLetter& a, const CliffordLetter& b, ComplexCase kind) {
  bool ca = creates(a, kind), cb = creates(b, kind);
  if (ca != cb) return !ca;
  return a.index >= b.index;
}
}  // namespace

bool is_normal(const CliffordWord& w, ComplexCase kind) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (out_of_order(w[i], w[i + 1], kind)) return false;
  return true;
}

CliffordElement normalize(const CliffordElement& e, ComplexCase kind, ReductionOrder order) {
  CliffordElement done;
  std::vector<std::pair<CliffordWord, Scalar>> work(e.terms().begin(), e.terms().end());
  while (!work.empty()) {
    auto [w, c] = std::move(work.back());
    work.pop_back();
    std::optional<std::size_t> pos;
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
      std::size_t i = order == ReductionOrder::Leftmost ? k : w.size() - 2 - k;
      if (out_of_order(w[i], w[i + 1], kind)) {
        pos = i;
        break;
      }
    }
    if (!pos) {
      done.add(w, c);
      continue;
    }
    std::size_t i = *pos;
    CliffordLetter a = w[i], b = w[i + 1];
    bool mixed = creates(a, kind) != creates(b, kind);
    if (!mixed && a.index == b.index) continue;  // square of an odd generator
    CliffordWord sw = w;
    std::swap(sw[i], sw[i + 1]);
    work.emplace_back(std::move(sw), -c);
    if (mixed && a.index == b.index) {
      CliffordWord rest(w.begin(), w.begin() + i);
      rest.insert(rest.end(), w.begin() + i + 2, w.end());
      work.emplace_back(std::move(rest), c);
    }
  }
  return done;
}

LinOp clifford_operator(const LieComplex& cx, const CliffordElement& e) {
  std::vector<std::pair<Scalar, LinOp>> t;
  std::optional<int> deg;
  for (const auto& [w, c] : e.terms()) {
    LinOp op = identity_op();
    int d = 0;
    for (const auto& l : w) {
      op = compose(op, l.eps ? cx.dual_mult(l.index) : cx.contraction(l.index));
      d += l.eps ? 1 : -1;
    }
    if (cx.spec().kind == ComplexCase::Homology) d = -d;
    if (deg && *deg != d) throw std::invalid_argument("clifford element is not homogeneous");
    deg = d;
    t.emplace_back(c, op);
  }
  return linear_combination("clifford", deg.value_or(0), std::move(t));
}

// ---------------------------------------------------------------- identities

IdentityReport cartan_identity_check(const LieComplex& cx) {
  const auto& alg = *cx.algebra();
  LinOp D = cx.differential();
  IdentityCheck chk("Cartan identity", &alg);
  for (int i = 0; i < cx.lie().dim; ++i) {
    LinOp lhs = supercommutator(D, cx.contraction(i));
    LinOp th = cx.theta(i);
    LinOp comm = supercommutator(D, th);
    for (const Word& w : cx.words()) {
      Element x(w);
      std::vector<std::pair<std::string, Element>> in{{"w", x}};
      chk.check(lhs.on_word(w), th.on_word(w), in);
      chk.check_zero(comm.on_word(w), in);
    }
  }
  return chk.report();
}

BoundaryOrderReport check_boundary_order(const LieComplex& cx) {
  BoundaryOrderReport rep;
  const auto& alg = *cx.algebra();
  LinOp D = cx.differential();
  bool hom = cx.spec().kind == ComplexCase::Homology;
  rep.order = classify_order(alg, D, hom ? 2 : 1, cx.domain());
  if (!hom)
    rep.order_ok = rep.order.order && *rep.order.order <= 1;
  else if (is_abelian(cx.lie()))
    rep.order_ok = rep.order.order == 0;
  else
    rep.order_ok = rep.order.order == 2;
  IdentityCheck fac("boundary factorization", &alg);
  if (hom) {
    std::vector<std::pair<Scalar, LinOp>> t;
    for (int i = 0; i < cx.lie().dim; ++i) {
      LinOp e = cx.dual_mult(i);
      t.emplace_back(1, compose(cx.pi(i), e));
      t.emplace_back(Scalar(1, 2), compose(cx.rho(i), e));
    }
    LinOp f = linear_combination("factorized", -1, std::move(t));
    for (const Word& w : cx.words()) fac.check(D.on_word(w), f.on_word(w), {{"w", Element(w)}});
  } else {
    fac.note("not applicable to the cohomology complex");
  }
  rep.factorization = fac.report();
  return rep;
}

std::map<GradingKey, int> homology(const Superalgebra& alg, const LinOp& op, const std::vector<Word>& words,
                                   const Grading& grading) {
  LinOp sq = compose(op, op);
  for (const Word& w : words)
    if (!sq.on_word(w).is_zero()) throw HomologyError("operator does not square to zero on " + alg.format_word(w));
  Coords co(words);
  std::map<GradingKey, std::vector<Vec>> from, into;
  std::map<GradingKey, int> size;
  for (const Word& w : words) {
    GradingKey g = grading(w);
    size[g] += 1;
    Element img = op.on_word(w);
    if (img.is_zero()) continue;
    std::optional<GradingKey> target;
    for (const auto& [v, c] : img.terms()) {
      GradingKey t = grading(v);
      if (target && *target != t) throw HomologyError("operator does not respect the grading");
      target = t;
    }
    Vec v = co.vec(img);
    from[g].push_back(v);
    into[*target].push_back(v);
  }
  std::map<GradingKey, int> out;
  for (const auto& [g, n] : size)
    out[g] = n - static_cast<int>(rank(from[g])) - static_cast<int>(rank(into[g]));
  return out;
}

std::map<GradingKey, int> homology(const LieComplex& cx) {
  return homology(*cx.algebra(), cx.differential(), cx.words(),
                  [&cx](const Word& w) { return GradingKey{cx.exterior_degree(w)}; });
}

std::vector<Element> common_kernel(const std::vector<LinOp>& ops, const std::vector<Word>& words) {
  Coords co(words);
  std::vector<Vec> cols;
  for (const Word& w : words) {
    Vec col;
    for (const auto& op : ops) {
      Vec part = co.vec(op.on_word(w));
      col.insert(col.end(), part.begin(), part.end());
    }
    cols.push_back(std::move(col));
  }
  std::vector<Element> out;
  for (const auto& k : kernel(cols, ops.size() * words.size())) out.push_back(co.elem(k));
  return out;
}

int common_kernel_dimension(const std::vector<LinOp>& ops, const std::vector<Word>& words) {
  return static_cast<int>(common_kernel(ops, words).size());
}

std::vector<IdentityReport> contraction_multiplication_check(const LieComplex& cx) {
  const auto& alg = *cx.algebra();
  int n = cx.lie().dim;
  bool hom = cx.spec().kind == ComplexCase::Homology;
  IdentityCheck sq("contractions and dual multiplications square to zero", &alg);
  IdentityCheck der(hom ? "multiplication by a dual generator is a derivation" : "contraction is a derivation", &alg);
  IdentityCheck van(hom ? "contraction vanishes on homology" : "multiplication by a dual generator vanishes on cohomology", &alg);
  for (int i = 0; i < n; ++i) {
    LinOp ii = compose(cx.contraction(i), cx.contraction(i)), ee = compose(cx.dual_mult(i), cx.dual_mult(i));
    for (const Word& w : cx.words()) {
      sq.check_zero(ii.on_word(w), {{"w", Element(w)}});
      sq.check_zero(ee.on_word(w), {{"w", Element(w)}});
    }
    LinOp op = hom ? cx.dual_mult(i) : cx.contraction(i);
    for_each_tuple(cx.domain(), 2, [&](const std::vector<Word>& t) {
      Element a(t[0]), b(t[1]);
      der.check_zero(phi_form(alg, op, {a, b}), {{"a", a}, {"b", b}});
      return true;
    });
    if (auto one = alg.unit()) der.check_zero(op(*one), {{"1", *one}});
  }

  LinOp D = cx.differential();
  std::vector<LinOp> thetas;
  for (int i = 0; i < n; ++i) thetas.push_back(cx.theta(i));
  std::vector<LinOp> ops = thetas;
  ops.push_back(D);
  auto invariant_cycles = common_kernel(ops, cx.words());
  Coords co(cx.words());
  if (hom) {
    // contraction(x) z is a cycle for invariant z; it must be a boundary
    std::vector<Vec> bounds;
    for (const Word& w : cx.words()) bounds.push_back(co.vec(D.on_word(w)));
    for (int i = 0; i < n; ++i)
      for (const auto& z : invariant_cycles) {
        Element iz = cx.contraction(i)(z);
        std::vector<std::pair<std::string, Element>> in{{"z", z}};
        if (!van.check_zero(D(iz), in)) continue;
        if (!in_span(bounds, co.vec(iz))) van.fail("contracting z = " + alg.format(z) + " with " + cx.lie().names[i] + " is not a boundary");
      }
  } else {
    // dual_mult(x') z has no invariant component: it lies in the span of the theta images
    std::vector<Vec> moved;
    for (const auto& th : thetas)
      for (const Word& w : cx.words()) moved.push_back(co.vec(th.on_word(w)));
    for (int i = 0; i < n; ++i)
      for (const auto& z : invariant_cycles) {
        Element ez = cx.dual_mult(i)(z);
        if (!in_span(moved, co.vec(ez)))
          van.fail("multiplying z = " + alg.format(z) + " by " + cx.lie().names[i] + "' leaves an invariant component");
      }
  }
  if (!cx.lie().semisimple) van.note("reported only: the Lie algebra is not semisimple");
  return {sq.report(), der.report(), van.report()};
}

IdentityReport lie_bracket_recovery_check(const LieComplex& cx) {
  const auto& alg = *cx.algebra();
  LinOp D = cx.differential();
  int n = cx.lie().dim;
  if (cx.spec().kind == ComplexCase::Homology) {
    IdentityCheck chk("bracket of g elements is minus the Lie bracket", &alg);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Element x = cx.contraction(i)(*alg.unit()), y = cx.contraction(j)(*alg.unit());
        Element expect;
        for (int k = 0; k < n; ++k) expect -= cx.lie().c[i][j][k] * cx.contraction(k)(*alg.unit());
        chk.check(bv_bracket(alg, D, x, y), expect, {{"x", x}, {"y", y}});
      }
    return chk.report();
  }
  IdentityCheck chk("coboundary has trivial bracket", &alg);
  for_each_tuple(cx.domain(), 2, [&](const std::vector<Word>& t) {
    Element a(t[0]), b(t[1]);
    chk.check_zero(phi_form(alg, D, {a, b}), {{"a", a}, {"b", b}});
    return true;
  });
  return chk.report();
}

WeilReport truncated_weil_homology(const LieAlgebraData& lie, int degree_cap) {
  WeilReport rep;
  LieComplex cx(lie, ComplexSpec{ComplexCase::Homology, CoefficientModule::SymmetricAdjoint, degree_cap});
  auto grading = [&cx](const Word& w) { return GradingKey{cx.symmetric_degree(w), cx.exterior_degree(w)}; };
  LinOp D = cx.differential();
  rep.square_zero = !first_difference(compose(D, D), zero_op(-2), cx.words());
  auto ord = check_boundary_order(cx);
  rep.order_ok = ord.order.order && *ord.order.order <= 2;
  if (rep.square_zero) rep.homology = homology(*cx.algebra(), D, cx.words(), grading);

  auto alg = cx.algebra();
  std::vector<LinOp> pis, rhos;
  for (int i = 0; i < lie.dim; ++i) {
    pis.push_back(cx.pi(i));
    rhos.push_back(cx.rho(i));
  }
  std::map<int, int> inv_s, inv_l;
  for (int s = 0; s <= degree_cap; ++s) {
    std::vector<Word> ws;
    for (const Word& w : cx.words())
      if (alg->mask(w) == 0 && w.grade == s) ws.push_back(w);
    inv_s[s] = common_kernel_dimension(pis, ws);
  }
  for (int k = 0; k <= lie.dim; ++k) {
    std::vector<Word> ws;
    for (const Word& w : cx.words())
      if (w.grade == 0 && cx.exterior_degree(w) == k) ws.push_back(w);
    inv_l[k] = common_kernel_dimension(rhos, ws);
  }
  for (const auto& [s, a] : inv_s)
    for (const auto& [k, b] : inv_l) rep.invariants[{s, k}] = a * b;
  bool beyond = false;
  for (const auto& [s, a] : inv_s)
    if (s > 0 && a > 0) beyond = true;
  if (!beyond)
    rep.warnings.push_back("degree cap " + std::to_string(degree_cap) +
                           " sees no symmetric invariants beyond the constants");
  rep.matches = rep.square_zero && rep.homology == rep.invariants;
  return rep;
}

}  // namespace bvk
