#include "bvk/schouten.hpp"

#include <bit>

namespace bvk {

MultivectorSpace::MultivectorSpace(int n, int poly_cap) : n_(n) {
  if (n < 1 || n > 8) throw std::invalid_argument("multivectors: dimension must be in 1..8");
  if (poly_cap < 1) throw std::invalid_argument("multivectors: polynomial cap must be >= 1");
  std::vector<std::string> xs, ds;
  for (int i = 1; i <= n; ++i) {
    xs.push_back("x" + std::to_string(i));
    ds.push_back("d" + std::to_string(i));
  }
  alg_ = std::make_shared<PolyAlgebra>(n, n, poly_cap, xs, ds);
}

Domain MultivectorSpace::domain() const {
  return Domain{alg_->words_up_to_grade(alg_->cap()), alg_->cap(), "multivectors"};
}

LinOp contract_dx(const MultivectorSpace& M, int i) {
  return partial_odd(M.algebra(), i).relabeled("contraction(dx" + std::to_string(i + 1) + ")");
}

LinOp divergence_operator(const MultivectorSpace& M) {
  std::vector<std::pair<Scalar, LinOp>> t;
  for (int i = 0; i < M.dim(); ++i) t.emplace_back(-1, compose(contract_dx(M, i), partial_even(M.algebra(), i)));
  return linear_combination("divergence", -1, std::move(t)).memoized();
}

namespace {
// coefficient-wise derivative of a multivector
Element dx(const MultivectorSpace& M, int i, const Element& u) { return partial_even(M.algebra(), i)(u); }

// contraction(df) u
Element contract_df(const MultivectorSpace& M, const Element& f, const Element& u) {
  Element out;
  for (int i = 0; i < M.dim(); ++i) out += M.wedge(dx(M, i, f), contract_dx(M, i)(u));
  return out;
}

// vector fields X_1..X_k with p d_{i_1} ^ d_{i_2} ^ ... = X_1 ^ ... ^ X_k
std::vector<Element> factors(const MultivectorSpace& M, const Word& w, const Scalar& c) {
  auto alg = M.algebra();
  std::vector<int> e = alg->exps(w);
  unsigned m = alg->mask(w);
  std::vector<Element> out;
  for (int j = 0; j < M.dim(); ++j)
    if (m & (1u << j)) out.push_back(M.partial(j));
  out[0] = M.wedge(alg->monomial(e, 0, c), out[0]);
  return out;
}

Element wedge_all(const MultivectorSpace& M, const std::vector<Element>& xs) {
  Element out = *M.algebra()->unit();
  for (const auto& x : xs) out = M.wedge(out, x);
  return out;
}
}  // namespace

Element vector_field_bracket(const MultivectorSpace& M, const Element& X, const Element& Y) {
  // [X, Y] = X(Y) - Y(X) on coefficients; X(Y) = sum_i X^i d_i Y
  auto apply_field = [&](const Element& V, const Element& W) {
    Element out;
    for (int i = 0; i < M.dim(); ++i) {
      Element vi = contract_dx(M, i)(V);  // coefficient of d_i
      out += M.wedge(vi, dx(M, i, W));
    }
    return out;
  };
  return apply_field(X, Y) - apply_field(Y, X);
}

Element sn_bracket(const MultivectorSpace& M, const Element& u, const Element& v) {
  auto alg = M.algebra();
  Element out;
  for (const auto& [a, ca] : u.terms())
    for (const auto& [b, cb] : v.terms()) {
      int p = a.deg, q = b.deg;
      Element ua(a, ca), vb(b, cb);
      if (p == 0 && q == 0) continue;
      if (p == 0) {
        out -= contract_df(M, ua, vb);
        continue;
      }
      if (q == 0) {
        out += Scalar(sign_of(p + 1)) * contract_df(M, vb, ua);
        continue;
      }
      auto xs = factors(M, a, ca), ys = factors(M, b, cb);
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j) {
          std::vector<Element> rest{vector_field_bracket(M, xs[i], ys[j])};
          for (int k = 0; k < p; ++k)
            if (k != i) rest.push_back(xs[k]);
          for (int k = 0; k < q; ++k)
            if (k != j) rest.push_back(ys[k]);
          // (-1)^{i+j} with 1-based positions
          out += Scalar(sign_of(i + j)) * wedge_all(M, rest);
        }
    }
  return out;
}

SnGenerationReport check_sn_generation(int n, int poly_cap, long samples, std::uint64_t seed) {
  MultivectorSpace M(n, poly_cap);
  const auto& A = *M.algebra();
  LinOp D = divergence_operator(M);
  Domain dom = M.domain();
  SnGenerationReport rep;
  rep.square_zero = !first_difference(compose(D, D), zero_op(-2), dom.words);
  IdentityCheck chk("Phi^2 of the divergence operator generates the Schouten bracket", &A);
  for (const auto& t : default_tuples(A, dom, 2, samples, seed)) {
    const Element &u = t[0], &v = t[1];
    Element phi = bv_bracket(A, D, u, v);
    Element sn = sn_bracket(M, u, v);
    std::vector<std::pair<std::string, Element>> in{{"u", u}, {"v", v}};
    if (sn.is_zero()) {
      chk.check(phi, sn, in);
      continue;
    }
    int s = phi == sn ? 1 : (phi == -sn ? -1 : 0);
    if (s == 0 || (rep.global_sign && *rep.global_sign != s)) {
      chk.check(phi, Scalar(rep.global_sign.value_or(1)) * sn, in);
      continue;
    }
    rep.global_sign = s;
    chk.check(phi, Scalar(s) * sn, in);
  }
  if (rep.global_sign) chk.note("global sign " + std::string(*rep.global_sign > 0 ? "+1" : "-1"));
  rep.bracket = chk.report();
  rep.order = classify_order(A, D, 2, dom);
  rep.order_ok = rep.order.order == 2;
  return rep;
}

std::vector<IdentityReport> check_gerstenhaber(int n, int poly_cap, long samples, std::uint64_t seed) {
  MultivectorSpace M(n, poly_cap);
  const auto& A = *M.algebra();
  Domain dom = M.domain();
  auto br = [&M](const Element& a, const Element& b) { return sn_bracket(M, a, b); };
  auto shifted = [](const Element& a) { return a.degree().value_or(0) - 1; };
  auto triples = default_tuples(A, dom, 3, samples, seed);
  IdentityCheck skew("shifted skew-symmetry", &A), pois("Poisson rule", &A), vf("vector fields", &A),
      classical("wedge algebra is classical", &A);
  for (const auto& t : triples) {
    const Element &u = t[0], &v = t[1], &w = t[2];
    if (u.is_zero() || v.is_zero() || w.is_zero()) continue;
    int su = shifted(u), sv = shifted(v), pv = v.degree().value_or(0);
    skew.check(br(u, v), Scalar(-sign_of(su * sv)) * br(v, u), {{"u", u}, {"v", v}});
    pois.check(br(u, M.wedge(v, w)), M.wedge(br(u, v), w) + Scalar(sign_of(su * pv)) * M.wedge(v, br(u, w)),
               {{"u", u}, {"v", v}, {"w", w}});
    if (u.degree() == 1 && v.degree() == 1) vf.check(br(u, v), vector_field_bracket(M, u, v), {{"X", u}, {"Y", v}});
  }
  auto words = A.basis(3);
  if (auto bad = check_supercommutative(A, words)) classical.fail(*bad);
  if (auto bad = check_associative(A, words)) classical.fail(*bad);
  auto jac = check_leibniz(A, br, shifted, triples, "shifted Jacobi");
  return {skew.report(), jac, pois.report(), vf.report(), classical.report()};
}

}  // namespace bvk
