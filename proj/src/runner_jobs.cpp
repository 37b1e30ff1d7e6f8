#include "runner_jobs.hpp"

#include <functional>
#include <map>
#include <regex>

#include "bvk/master.hpp"
#include "bvk/parse.hpp"

namespace bvk {

// ------------------------------------------------------------------ Param

bool Param::has(const std::string& key) const { return j_ && j_->is_object() && j_->contains(key); }

Param Param::operator[](const std::string& key) const {
  std::string p = path_.empty() ? key : path_ + "." + key;
  if (!has(key)) return Param(ctx_, nullptr, p);
  return Param(ctx_, &(*j_)[key], p);
}

Param Param::operator[](std::size_t i) const {
  std::string p = path_ + "[" + std::to_string(i) + "]";
  if (!is_list() || i >= j_->size()) return Param(ctx_, nullptr, p);
  return Param(ctx_, &(*j_)[i], p);
}

std::size_t Param::size() const { return is_list() ? j_->size() : 0; }

std::pair<int, int> Param::mark() const {
  auto it = ctx_->spec.marks.find(path_);
  if (it != ctx_->spec.marks.end()) return it->second;
  return {ctx_->spec.line, 0};
}

void Param::fail(const std::string& why) const {
  auto [l, c] = mark();
  throw ConfigError((path_.empty() ? std::string("job") : path_) + ": " + why, l, c);
}

long Param::as_int() const {
  if (!present()) fail("missing integer");
  if (j_->is_number_integer()) return j_->get<long>();
  fail("expected an integer");
}

bool Param::as_bool(bool def) const {
  if (!present()) return def;
  if (!j_->is_boolean()) fail("expected true or false");
  return j_->get<bool>();
}

std::string Param::as_string() const {
  if (!present()) fail("missing value");
  if (j_->is_string()) return j_->get<std::string>();
  if (j_->is_number_integer()) return std::to_string(j_->get<long>());
  fail("expected a scalar");
}

Scalar Param::as_scalar() const {
  std::string s = as_string();
  static const std::regex rat("\\s*[-+]?[0-9]+(\\s*/\\s*[0-9]+)?\\s*");
  if (!std::regex_match(s, rat)) fail("expected a rational number");
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '+') t += c;
  Scalar q(t);
  if (q.get_den() == 0) fail("zero denominator");
  q.canonicalize();
  return q;
}

std::vector<long> Param::int_list() const {
  std::vector<long> out;
  if (!present()) return out;
  if (!is_list()) fail("expected a list");
  for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i].as_int());
  return out;
}

std::vector<std::string> Param::string_list() const {
  std::vector<std::string> out;
  if (!present()) return out;
  if (!is_list()) fail("expected a list");
  for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i].as_string());
  return out;
}

// ------------------------------------------------------------ algebras

LinOp BuiltAlgebra::default_delta() const {
  if (poly && !mv && !lie) return classical_bv_operator(poly).memoized();
  if (bc) return bc->mode_op(bc->b(), 1).memoized();
  if (lie) return lie->differential();
  if (mv) return divergence_operator(*mv);
  throw ConfigError("this algebra has no default operator; give 'delta'");
}

Domain BuiltAlgebra::default_domain() const {
  if (bc) return bc_domain(*bc, cap);
  if (lie) return lie->domain();
  if (mv) return mv->domain();
  if (poly) return basis_domain(*poly, cap, cap);
  return basis_domain(*alg, 1, std::nullopt);
}

namespace {

// "kind(a,b,c)" shorthand for algebra mappings
nlohmann::json expand_shorthand(const Param& p) {
  std::string s = p.as_string();
  static const std::regex call("\\s*([a-z-]+)\\s*(?:\\(([^)]*)\\))?\\s*");
  std::smatch m;
  if (!std::regex_match(s, m, call)) p.fail("cannot read algebra '" + s + "'");
  std::string kind = m[1];
  std::vector<std::string> args;
  std::string inner = m[2];
  std::stringstream ss(inner);
  for (std::string a; std::getline(ss, a, ',');) {
    a.erase(0, a.find_first_not_of(" \t"));
    a.erase(a.find_last_not_of(" \t") + 1);
    if (!a.empty()) args.push_back(a);
  }
  auto num = [&](std::size_t i) -> nlohmann::json {
    try {
      return std::stol(args.at(i));
    } catch (...) {
      p.fail("algebra '" + s + "' expects more integer arguments");
    }
  };
  nlohmann::json j{{"kind", kind}};
  if (kind == "poly") {
    j["even"] = num(0), j["odd"] = num(1), j["cap"] = num(2);
  } else if (kind == "bc") {
    j["cap"] = num(0);
  } else if (kind == "struct-random") {
    j["dim"] = num(0), j["seed"] = num(1);
  } else if (kind == "multivector") {
    j["n"] = num(0), j["cap"] = num(1);
  } else if (kind == "lie-homology" || kind == "lie-cohomology") {
    if (args.empty()) p.fail("lie complex needs a Lie algebra name");
    j["kind"] = "lie-complex";
    j["case"] = kind == "lie-homology" ? "homology" : "cohomology";
    j["lie"] = args[0];
  } else {
    p.fail("unknown algebra kind '" + kind + "'");
  }
  return j;
}

}  // namespace

LieAlgebraData JobContext::lie_data(const Param& p) const {
  if (!p.present()) p.fail("missing Lie algebra");
  if (p.is_map()) {
    int dim = static_cast<int>(p["dim"].as_int());
    std::vector<std::tuple<int, int, int, Scalar>> br;
    Param b = p["brackets"];
    for (std::size_t i = 0; i < b.size(); ++i) {
      Param t = b[i];
      if (t.size() != 4) t.fail("bracket entries are [i, j, k, value], 1-based");
      br.emplace_back(static_cast<int>(t[0].as_int()) - 1, static_cast<int>(t[1].as_int()) - 1,
                      static_cast<int>(t[2].as_int()) - 1, t[3].as_scalar());
    }
    try {
      return make_lie_algebra(dim, br, p["names"].string_list());
    } catch (const std::invalid_argument& e) {
      p.fail(e.what());
    }
  }
  std::string s = p.as_string();
  std::smatch m;
  if (s == "sl2") return sl2();
  if (s == "nonabelian2") return nonabelian2();
  if (std::regex_match(s, m, std::regex("abelian\\(([0-9]+)\\)"))) return abelian_lie(std::stoi(m[1]));
  p.fail("unknown Lie algebra '" + s + "'");
}

BuiltAlgebra JobContext::algebra(const Param& p0) const {
  if (!p0.present()) p0.fail("missing algebra");
  nlohmann::json expanded;
  const nlohmann::json* jp = nullptr;
  if (p0.is_string()) {
    expanded = expand_shorthand(p0);
    jp = &expanded;
  }
  Param p = jp ? Param(this, jp, p0.path()) : p0;
  std::string kind = p["kind"].as_string();
  BuiltAlgebra b;
  auto cap_of = [&](long def) {
    long c = p["cap"].as_int(def);
    if (opts.cap) c = *opts.cap;
    if (c < 0) p["cap"].fail("cap must be nonnegative");
    return static_cast<int>(c);
  };
  try {
    if (kind == "poly") {
      b.cap = cap_of(3);
      auto A = make_polynomial_superalgebra(static_cast<int>(p["even"].as_int()), static_cast<int>(p["odd"].as_int()),
                                            b.cap);
      b.poly = A;
      b.alg = A;
    } else if (kind == "bc") {
      b.cap = cap_of(3);
      b.bc = make_bc_system();
      b.alg = b.bc;
    } else if (kind == "struct-random") {
      int dim = static_cast<int>(p["dim"].as_int());
      if (dim < 1 || dim > 6) p["dim"].fail("dimension must be 1..6");
      b.alg = random_structure_algebra(dim, static_cast<std::uint64_t>(p["seed"].as_int(0)));
    } else if (kind == "struct") {
      std::vector<int> degrees;
      for (long d : p["degrees"].int_list()) degrees.push_back(static_cast<int>(d));
      if (degrees.empty()) p["degrees"].fail("need generator degrees");
      std::map<std::pair<int, int>, std::vector<Scalar>> table;
      Param t = p["table"];
      for (std::size_t i = 0; i < t.size(); ++i) {
        Param e = t[i];
        if (e.size() != 4) e.fail("table entries are [i, j, k, value]: e_i e_j has e_k coefficient value");
        int a = static_cast<int>(e[0].as_int()) - 1, c = static_cast<int>(e[1].as_int()) - 1,
            k = static_cast<int>(e[2].as_int()) - 1;
        int n = static_cast<int>(degrees.size());
        if (a < 0 || a >= n || c < 0 || c >= n || k < 0 || k >= n) e.fail("generator index out of range");
        auto& v = table[{a, c}];
        v.resize(n);
        v[k] += e[3].as_scalar();
      }
      std::optional<int> unit;
      if (p["unit"].present()) unit = static_cast<int>(p["unit"].as_int()) - 1;
      auto S = make_structure_constant_algebra(table, degrees, unit);
      auto words = S->basis(1);
      AlgebraFlags f;
      f.supercommutative = !check_supercommutative(*S, words);
      f.associative = !check_associative(*S, words);
      f.unital = unit.has_value() && !check_unit(*S, words);
      S->declare_flags(f);
      b.alg = S;
    } else if (kind == "lie-complex") {
      ComplexSpec cs;
      std::string c = p["case"].as_string("homology");
      if (c == "homology")
        cs.kind = ComplexCase::Homology;
      else if (c == "cohomology")
        cs.kind = ComplexCase::Cohomology;
      else
        p["case"].fail("case is homology or cohomology");
      std::string mod = p["module"].as_string("trivial");
      if (mod == "symmetric") cs.module = CoefficientModule::SymmetricAdjoint;
      else if (mod != "trivial") p["module"].fail("module is trivial or symmetric");
      cs.degree_cap = cap_of(0);
      b.cap = cs.degree_cap;
      b.lie = std::make_shared<LieComplex>(lie_data(p["lie"]), cs);
      b.poly = b.lie->algebra();
      b.alg = b.poly;
    } else if (kind == "multivector") {
      b.cap = cap_of(2);
      b.mv = std::make_shared<MultivectorSpace>(static_cast<int>(p["n"].as_int()), b.cap);
      b.poly = b.mv->algebra();
      b.alg = b.poly;
    } else {
      p["kind"].fail("unknown algebra kind '" + kind + "'");
    }
  } catch (const std::invalid_argument& e) {
    p.fail(e.what());
  }
  b.description = b.alg->name();
  if (b.bc) b.description = "bc ghost system, weight cap " + std::to_string(b.cap);
  if (b.lie) b.description = "Lie complex " + b.alg->name();
  if (b.mv) b.description = "multivector fields " + b.alg->name();
  return b;
}

namespace {

template <class F>
auto at_param(const Param& p, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError& e) {
    auto [l, c] = p.mark();
    std::string what = e.what();
    auto at = what.rfind(" at column ");
    throw ConfigError(p.path() + ": " + what.substr(0, at), l, c > 0 ? c + e.column - 1 : 0);
  }
}

}  // namespace

Element JobContext::element(const BuiltAlgebra& a, const Param& p) const {
  std::string s = p.as_string();
  return at_param(p, [&] { return parse_element(*a.alg, s); });
}

LinOp JobContext::op(const BuiltAlgebra& a, const Param& p) const {
  std::string s = p.as_string();
  return at_param(p, [&] { return parse_operator(a.alg, s); });
}

Domain JobContext::domain(const BuiltAlgebra& a, const Param& p) const {
  if (!p.present()) return a.default_domain();
  if (a.bc) return bc_domain(*a.bc, static_cast<int>(p["bound"].as_int(a.cap)));
  std::optional<int> tot;
  if (p["max_total"].present()) tot = static_cast<int>(p["max_total"].as_int());
  return basis_domain(*a.alg, static_cast<int>(p["bound"].as_int(a.cap)), tot);
}

void JobContext::add(IdentityReport r, const std::string& suffix) {
  if (!suffix.empty()) r.name += " (" + suffix + ")";
  rep.identities.push_back(std::move(r));
}

void JobContext::add(const std::vector<IdentityReport>& rs, const std::string& suffix) {
  for (const auto& r : rs) add(r, suffix);
}

void JobContext::add_order(const Superalgebra& alg, const OrderReport& o) {
  OrderSummary s;
  s.label = o.label;
  s.r_max = o.r_max;
  s.order = o.order;
  s.domain = o.domain;
  s.tuples = o.tuples_checked;
  for (const auto& w : o.witnesses) {
    WitnessSummary ws;
    ws.arity = w.arity;
    for (const auto& a : w.args) ws.args.push_back(alg.format(a));
    ws.value = alg.format(w.value);
    s.witnesses.push_back(ws);
  }
  rep.orders.push_back(s);
}

namespace {

std::string flags_string(const GbvaFlags& f) {
  std::string s;
  auto put = [&](bool b, const char* n) {
    if (!b) s += std::string(s.empty() ? "" : ", ") + n;
  };
  put(f.delta_odd, "not odd");
  put(f.delta_square_zero, "square nonzero");
  put(f.delta_order_le_2, "order above two");
  put(f.kills_unit, "unit not killed");
  return s.empty() ? "all hold" : s;
}

// merges reports of one identity across several runs, keeping the first failure
void merge_into(std::vector<IdentityReport>& acc, const std::vector<IdentityReport>& rs, const std::string& tag) {
  if (acc.empty()) {
    acc = rs;
    for (auto& r : acc)
      if (!r.passed && r.note.empty()) r.note = tag;
    return;
  }
  for (std::size_t i = 0; i < rs.size() && i < acc.size(); ++i) {
    acc[i].samples += rs[i].samples;
    if (acc[i].passed && !rs[i].passed) {
      acc[i].passed = false;
      acc[i].counterexample = rs[i].counterexample;
      acc[i].note = tag;
    }
  }
}

std::optional<Mutation> mutation_by_name(const std::string& n) {
  for (Mutation m : all_mutations())
    if (n == mutation_name(m)) return m;
  if (n == "None" || n == "none") return Mutation::None;
  return std::nullopt;
}

// ------------------------------------------------------------ suites

void suite_check_order(JobContext& ctx) {
  auto A = ctx.algebra();
  ctx.rep.algebra = A.description;
  Param ops = ctx["ops"];
  if (!ops.is_list() || ops.size() == 0) ops.fail("need a list of operators");
  Domain dom = ctx.domain(A, ctx["domain"]);
  bool unital = ctx["unital_adjust"].as_bool(false);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    Param e = ops[i];
    Param opp = e.is_map() ? e["op"] : e;
    LinOp op = ctx.op(A, opp);
    int r_max = static_cast<int>(e.is_map() ? e["r_max"].as_int(3) : 3);
    OrderReport o = classify_order(*A.alg, op, r_max, dom, unital);
    ctx.add_order(*A.alg, o);
    if (!e.is_map()) continue;
    if (e["expect"].present()) {
      IdentityCheck chk("order of " + op.label(), A.alg.get());
      long want = e["expect"].as_int();
      std::string got = o.order ? std::to_string(*o.order) : "above " + std::to_string(r_max);
      chk.expect(o.order && *o.order == want, "order " + got + ", expected " + std::to_string(want));
      ctx.add(chk.report());
    }
    if (e["witness"].present()) {
      Param w = e["witness"];
      std::vector<Element> args;
      std::vector<std::pair<std::string, Element>> named;
      for (std::size_t k = 0; k < w["args"].size(); ++k) {
        args.push_back(ctx.element(A, w["args"][k]));
        named.emplace_back("a" + std::to_string(k + 1), args.back());
      }
      IdentityCheck chk("witness of " + op.label(), A.alg.get());
      chk.check(phi_form_multilinear(*A.alg, op, args, unital), ctx.element(A, w["value"]), named);
      ctx.add(chk.report());
    }
  }
}

void suite_phi_agreement(JobContext& ctx) {
  auto A = ctx.algebra();
  ctx.rep.algebra = A.description;
  std::string formula = ctx["formula"].as_string("koszul");
  if (formula != "koszul" && formula != "explicit4") ctx["formula"].fail("formula is koszul or explicit4");
  long samples = ctx.samples(100);
  int pool = static_cast<int>(ctx["pool_bound"].as_int(2));
  int r_max = static_cast<int>(ctx["r_max"].as_int(5));
  Param ops = ctx["ops"];
  if (!ops.is_list() || ops.size() == 0) ops.fail("need a list of operators");
  for (std::size_t i = 0; i < ops.size(); ++i) {
    LinOp op = ctx.op(A, ops[i]).memoized();
    auto seed = ctx.seed() + i;
    ctx.add(formula == "koszul" ? check_koszul_agreement(*A.alg, op, r_max, samples, seed, pool)
                                : check_phi4_formula(*A.alg, op, samples, seed, pool),
            op.label());
  }
}

void suite_order_laws(JobContext& ctx) {
  auto A = ctx.algebra();
  ctx.rep.algebra = A.description;
  Domain dom = ctx.domain(A, ctx["domain"]);
  std::vector<std::pair<LinOp, int>> ops;
  Param list = ctx["ops"];
  for (std::size_t i = 0; i < list.size(); ++i)
    ops.emplace_back(ctx.op(A, list[i]["op"]).memoized(), static_cast<int>(list[i]["order"].as_int()));
  if (ops.empty()) list.fail("need a list of {op, order}");
  auto rep = check_order_laws(*A.alg, ops, dom, ctx["unital_adjust"].as_bool(true));
  IdentityCheck claims("order claims", A.alg.get());
  claims.expect(rep.claim_failures.empty(), rep.claim_failures.empty() ? "" : rep.claim_failures.front());
  ctx.add(claims.report());
  IdentityCheck comp("composite order within r+s", A.alg.get()), br("bracket order within r+s-1", A.alg.get());
  for (const auto& e : rep.entries) {
    auto ord = [](const std::optional<int>& o) { return o ? std::to_string(*o) : std::string("unbounded"); };
    comp.expect(e.composite_ok, e.first + " " + e.second + " has order " + ord(e.composite_order));
    br.expect(e.bracket_ok, "[" + e.first + ", " + e.second + "] has order " + ord(e.bracket_order));
  }
  ctx.add(comp.report());
  ctx.add(br.report());
}

GbvaInstance instance(JobContext& ctx, const BuiltAlgebra& A) {
  LinOp delta = ctx["delta"].present() ? ctx.op(A, ctx["delta"]).memoized() : A.default_delta();
  return make_gbva(ctx.spec.name, A.alg, delta, ctx.domain(A, ctx["sweep"]));
}

void bracket_expectations(JobContext& ctx, const BuiltAlgebra& A, const GbvaInstance& inst) {
  Param ex = ctx["expect_brackets"];
  if (!ex.present()) return;
  IdentityCheck chk("bracket values", A.alg.get());
  for (std::size_t i = 0; i < ex.size(); ++i) {
    Element a = ctx.element(A, ex[i]["a"]), b = ctx.element(A, ex[i]["b"]);
    chk.check(bracket_sum(inst, a, b), ctx.element(A, ex[i]["value"]), {{"a", a}, {"b", b}});
  }
  ctx.add(chk.report());
}

std::optional<ScopedMutation> job_mutation(JobContext& ctx) {
  Param m = ctx["mutation"];
  if (!m.present()) return std::nullopt;
  auto mm = mutation_by_name(m.as_string());
  if (!mm) m.fail("unknown mutation '" + m.as_string() + "'");
  ctx.rep.warnings.push_back(std::string("sign mutation active: ") + mutation_name(*mm));
  return std::optional<ScopedMutation>(std::in_place, *mm);
}

void suite_verify_gbva(JobContext& ctx) {
  auto mut = job_mutation(ctx);
  auto A = ctx.algebra();
  ctx.rep.algebra = A.description;
  GbvaInstance inst = instance(ctx, A);
  IdentityCheck ax("BV operator axioms on the sweep", A.alg.get());
  ax.expect(inst.checked.all(), flags_string(inst.checked));
  ctx.add(ax.report());
  ctx.value("sweep", inst.sweep.description + " (" + std::to_string(inst.sweep.words.size()) + " words)");
  if (!inst.checked.all()) return;
  ctx.add(check_gbva_identities(inst, ctx.samples(200), ctx.seed()));
  bracket_expectations(ctx, A, inst);
}

void suite_verify_general(JobContext& ctx) {
  auto mut = job_mutation(ctx);
  auto A = ctx.algebra();
  ctx.rep.algebra = A.description;
  Domain dom = ctx.domain(A, ctx["sweep"]);
  long samples = ctx.samples(0);
  std::vector<IdentityReport> acc;
  int count = 0;
  if (ctx["ops"].present()) {
    for (std::size_t i = 0; i < ctx["ops"].size(); ++i) {
      LinOp op = ctx.op(A, ctx["ops"][i]).memoized();
      if (op.parity() != 1) ctx["ops"][i].fail("operator must be odd");
      merge_into(acc, check_general_identities(*A.alg, op, dom, samples, ctx.seed() + i), op.label());
      ++count;
    }
  } else {
    long n = ctx["operators"].as_int(100);
    int bound = static_cast<int>(ctx["op_bound"].as_int(1));
    for (long i = 0; i < n; ++i) {
      std::uint64_t s = ctx.seed() * 7919 + static_cast<std::uint64_t>(i);
      LinOp op = random_operator(A.alg, s, 1, bound, false).memoized();
      merge_into(acc, check_general_identities(*A.alg, op, dom, samples, s), "rand(" + std::to_string(s) + ",1," +
                                                                                std::to_string(bound) + ")");
      ++count;
    }
  }
  ctx.value("operators", std::to_string(count));
  ctx.value("flags", std::string("supercommutative ") + (A.alg->flags().supercommutative ? "yes" : "no") +
                         ", associative " + (A.alg->flags().associative ? "yes" : "no"));
  ctx.add(acc);
}

void suite_verify_dbva(JobContext& ctx) {
  auto A = ctx.algebra();
  ctx.rep.algebra = A.description;
  GbvaInstance inst = instance(ctx, A);
  IdentityCheck ax("BV operator axioms on the sweep", A.alg.get());
  ax.expect(inst.checked.all(), flags_string(inst.checked));
  ctx.add(ax.report());
  LinOp D = ctx.op(A, ctx["D"]).memoized();
  LinOp L = ctx["L"].present() ? ctx.op(A, ctx["L"]).memoized() : zero_op(D.degree() + inst.delta.degree());
  ctx.add(check_d_derivation(inst, D, L, ctx.samples(200), ctx.seed()));
}

std::vector<int> homology_vector(const std::map<GradingKey, int>& h, int top) {
  std::vector<int> v(top + 1, 0);
  for (const auto& [k, d] : h)
    if (!k.empty() && k[0] >= 0 && k[0] <= top) v[k[0]] = d;
  return v;
}

HomologyTable table(const std::string& label, const std::map<GradingKey, int>& h) {
  HomologyTable t;
  t.label = label;
  for (const auto& [k, d] : h) t.dims.emplace_back(k, d);
  return t;
}

void suite_lie_homology(JobContext& ctx) {
  LieAlgebraData g = ctx.lie_data(ctx["lie"]);
  ctx.rep.algebra = "Lie algebra of dimension " + std::to_string(g.dim) + (g.semisimple ? ", semisimple" : "");
  for (ComplexCase k : {ComplexCase::Homology, ComplexCase::Cohomology}) {
    bool hom = k == ComplexCase::Homology;
    std::string tag = hom ? "homology" : "cohomology";
    LieComplex cx(g, {k, CoefficientModule::Trivial, 0});
    const auto& alg = *cx.algebra();
    LinOp D = cx.differential();
    IdentityCheck sq("differential squares to zero", &alg);
    for (const Word& w : cx.words()) sq.check_zero(D(D(Element(w))), {{"w", Element(w)}});
    ctx.add(sq.report(), tag);
    ctx.add(cartan_identity_check(cx), tag);
    auto bo = check_boundary_order(cx);
    ctx.add_order(alg, bo.order);
    IdentityCheck oc("order of the differential", &alg);
    oc.expect(bo.order_ok, "order " + (bo.order.order ? std::to_string(*bo.order.order) : std::string("unbounded")));
    ctx.add(oc.report(), tag);
    ctx.add(bo.factorization, tag);
    auto h = homology(cx);
    ctx.rep.homology.push_back(table(tag, h));
    Param ex = ctx[hom ? "expect_homology" : "expect_cohomology"];
    if (ex.present()) {
      auto want = ex.int_list();
      auto got = homology_vector(h, g.dim);
      IdentityCheck hc("dimensions by degree", &alg);
      std::string gs, ws;
      for (int d : got) gs += std::to_string(d) + " ";
      for (long d : want) ws += std::to_string(d) + " ";
      hc.expect(std::vector<long>(got.begin(), got.end()) == want, "got " + gs + "expected " + ws);
      ctx.add(hc.report(), tag);
    }
    auto ie = contraction_multiplication_check(cx);
    if (g.semisimple) {
      ctx.add(ie, tag);
    } else {
      for (const auto& r : ie)
        ctx.value(r.name + " (" + tag + ")", std::string(r.passed ? "holds" : "fails") + ", not asserted");
    }
    ctx.add(lie_bracket_recovery_check(cx), tag);
  }
}

void suite_weil(JobContext& ctx) {
  LieAlgebraData g = ctx.lie_data(ctx["lie"]);
  int cap = static_cast<int>(ctx["cap"].as_int(2));
  if (ctx.opts.cap) cap = *ctx.opts.cap;
  ctx.rep.algebra = "Weil-type complex, symmetric cap " + std::to_string(cap);
  auto w = truncated_weil_homology(g, cap);
  IdentityCheck sq("differential squares to zero", nullptr), od("order of the differential", nullptr),
      mt("homology matches invariants", nullptr);
  sq.expect(w.square_zero, "square nonzero");
  od.expect(w.order_ok, "order above two");
  mt.expect(w.matches, "dimensions differ from invariant counts");
  ctx.add(sq.report());
  ctx.add(od.report());
  ctx.add(mt.report());
  ctx.rep.homology.push_back(table("homology (symmetric, exterior)", w.homology));
  ctx.rep.homology.push_back(table("invariants (symmetric, exterior)", w.invariants));
  for (const auto& s : w.warnings) ctx.rep.warnings.push_back(s);
}

void suite_sn_check(JobContext& ctx) {
  auto dims = ctx["dims"].int_list();
  if (dims.empty()) dims = {2, 3};
  int cap = static_cast<int>(ctx["cap"].as_int(2));
  if (ctx.opts.cap) cap = *ctx.opts.cap;
  long samples = ctx.samples(200);
  ctx.rep.algebra = "multivector fields, polynomial cap " + std::to_string(cap);
  for (long n : dims) {
    std::string tag = "n=" + std::to_string(n);
    auto r = check_sn_generation(static_cast<int>(n), cap, samples, ctx.seed());
    ctx.add(r.bracket, tag);
    ctx.value("global sign, " + tag, r.global_sign ? (*r.global_sign > 0 ? "+1" : "-1") : "undetermined");
    IdentityCheck sq("operator squares to zero", nullptr), od("operator order", nullptr);
    sq.expect(r.square_zero, "square nonzero");
    od.expect(r.order_ok, "order " + (r.order.order ? std::to_string(*r.order.order) : std::string("unbounded")));
    ctx.add(sq.report(), tag);
    ctx.add(od.report(), tag);
    MultivectorSpace M(static_cast<int>(n), cap);
    ctx.add_order(*M.algebra(), r.order);
    ctx.add(check_gerstenhaber(static_cast<int>(n), cap, samples, ctx.seed()), tag);
  }
}

void suite_vosa_verify(JobContext& ctx) {
  auto A = ctx.algebra();
  if (!A.bc) ctx["algebra"].fail("vosa-verify needs the bc system");
  ctx.rep.algebra = A.description;
  auto bc = A.bc;
  Element u = ctx["u"].present() ? ctx.element(A, ctx["u"]) : bc->b();
  for (long n : ctx["vanishing"].int_list()) {
    auto r = check_mode_vanishing(bc, u, static_cast<int>(n), A.cap);
    ctx.add(r.vanishing, "n=" + std::to_string(n));
    if (r.witness) {
      OrderSummary s;
      s.label = "mode " + std::to_string(n) + " of " + bc->format(u);
      s.r_max = static_cast<int>(n) + 2;
      s.order = static_cast<int>(n) + 1;
      s.tuples = r.tuples;
      s.domain = "weight cap " + std::to_string(A.cap);
      WitnessSummary w;
      w.arity = r.witness->arity;
      for (const auto& a : r.witness->args) w.args.push_back(bc->format(a));
      w.value = bc->format(r.witness->value);
      s.witnesses.push_back(w);
      ctx.rep.orders.push_back(s);
    }
  }
  long samples = ctx.samples(200);
  for (long r : ctx["expansion"].int_list())
    ctx.add(check_phi2_expansion(bc, u, static_cast<int>(r), samples, A.cap, ctx.seed()), "r=" + std::to_string(r));
  for (const auto& extra : ctx["extras"].string_list()) {
    if (extra == "stress") {
      ctx.add(check_stress_weight(*bc, A.cap));
      ctx.add(primary_check(*bc, 3, std::min(A.cap, 3)));
    } else if (extra == "l0") {
      ctx.add(check_L0_derivation(bc, 0, samples, A.cap, ctx.seed()));
    } else if (extra == "residue") {
      ctx.add(check_residue_derivation(bc, u, 0, samples, A.cap, ctx.seed()));
    } else if (extra == "g0") {
      auto g = check_g0_square_identity(*bc, u, A.cap);
      ctx.add({g.wick_square_mode, g.first_mode, g.linear_combination, g.full_expansion, g.l3_relation});
    } else {
      ctx["extras"].fail("unknown extra '" + extra + "' (stress, l0, residue, g0)");
    }
  }
}

void suite_master_check(JobContext& ctx) {
  auto A = ctx.algebra();
  ctx.rep.algebra = A.description;
  if (A.bc) {
    GbvaInstance inst = make_gbva("bc", A.alg, A.default_delta(), A.default_domain());
    Param ws = ctx["weights"];
    for (std::size_t i = 0; i < ws.size(); ++i) {
      Element W = ctx.element(A, ws[i]["W"]);
      Scalar lambda = ws[i]["lambda"].present() ? ws[i]["lambda"].as_scalar() : Scalar(1);
      auto r = check_weight_obstruction(inst, W, lambda);
      ctx.value("weights of " + A.alg->format(W), r.note);
      std::string want = ws[i]["expect"].as_string("");
      if (!want.empty()) {
        bool obstructed = r.note.find("obstructed") != std::string::npos;
        if (want != "obstructed" && want != "free") ws[i]["expect"].fail("expect is obstructed or free");
        IdentityCheck chk("obstruction as expected", A.alg.get());
        chk.expect(obstructed == (want == "obstructed"), r.note);
        ctx.add(chk.report(), A.alg->format(W));
      }
      ctx.add(r, A.alg->format(W));
    }
    return;
  }
  GbvaInstance inst = instance(ctx, A);
  Param cs = ctx["candidates"];
  for (std::size_t i = 0; i < cs.size(); ++i) {
    Element W = ctx.element(A, cs[i]["W"]);
    MasterCandidate cand{W, cs[i]["lambda"].as_scalar(), inst};
    std::string tag = A.alg->format(W) + ", lambda " + to_string(cand.lambda);
    ctx.add(check_power_identities(cand, static_cast<int>(cs[i]["k_max"].as_int(5))), tag);
    if (cs[i]["exp"].as_bool(false)) ctx.add(exp_check(cand), tag);
    for (std::size_t k = 0; k < cs[i]["rescale"].size(); ++k) {
      Scalar c = cs[i]["rescale"][k].as_scalar();
      MasterCandidate v{c * W, c * cand.lambda, inst};
      ctx.add(exp_check(v), "rescaled by " + to_string(c));
    }
  }
  if (ctx["search"].present()) {
    Param s = ctx["search"];
    std::vector<Element> ms;
    for (std::size_t i = 0; i < s["monomials"].size(); ++i) ms.push_back(ctx.element(A, s["monomials"][i]));
    auto rep = search_master_solutions(inst, ms, static_cast<int>(s["lo"].as_int(-2)),
                                       static_cast<int>(s["hi"].as_int(2)), static_cast<int>(s["jobs"].as_int(1)));
    ctx.value("search candidates", std::to_string(rep.candidates));
    ctx.value("search degenerate", std::to_string(rep.degenerate));
    ctx.value("search solutions", std::to_string(rep.solutions.size()));
    if (!rep.solutions.empty())
      ctx.value("first solution", A.alg->format(rep.solutions.front().W) + ", lambda " +
                                      to_string(rep.solutions.front().lambda));
    std::string want = s["expect"].as_string("");
    IdentityCheck chk("search outcome", A.alg.get());
    if (want == "none")
      chk.expect(rep.solutions.empty(), std::to_string(rep.solutions.size()) + " nondegenerate solutions");
    else if (want == "found")
      chk.expect(!rep.solutions.empty(), "no nondegenerate solution");
    else if (!want.empty())
      s["expect"].fail("expect is none or found");
    if (s["contains"].present()) {
      Element W = ctx.element(A, s["contains"]);
      bool found = false;
      for (const auto& sol : rep.solutions) found = found || sol.W == W;
      chk.expect(found, A.alg->format(W) + " not among the solutions");
    }
    // every reported solution is rechecked independently
    for (const auto& sol : rep.solutions) {
      MasterCandidate c{sol.W, sol.lambda, inst};
      chk.check_zero(master_residual(c), {{"W", sol.W}});
    }
    ctx.add(chk.report());
  }
  Param ex = ctx["expansion"];
  for (std::size_t i = 0; i < ex.size(); ++i) {
    Element W = ctx.element(A, ex[i]["W"]);
    LinOp D = ex[i]["delta"].present() ? ctx.op(A, ex[i]["delta"]).memoized() : inst.delta;
    std::optional<Domain> od;
    if (ex[i]["collapse"].as_bool(false)) od = inst.sweep;
    ctx.add(phi_expansion_check(*A.alg, D, W, static_cast<int>(ex[i]["k_max"].as_int(4)), od), D.label());
  }
  if (ctx["random_expansion"].present()) {
    Param r = ctx["random_expansion"];
    long n = r["count"].as_int(10);
    int bound = static_cast<int>(r["bound"].as_int(2));
    int k_max = static_cast<int>(r["k_max"].as_int(4));
    std::vector<IdentityReport> acc;
    bool higher = false;
    for (long i = 0; i < n; ++i) {
      std::uint64_t s = ctx.seed() * 104729 + static_cast<std::uint64_t>(i);
      Rng rng(s, 5);
      auto pool = A.alg->basis(bound);
      Element W = random_homogeneous(*A.alg, rng, pool, 0) + random_homogeneous(*A.alg, rng, pool, 2);
      LinOp D = random_operator(A.alg, s, (i % 2 == 0) ? 1 : -1, bound + 2, false).memoized();
      merge_into(acc, phi_expansion_check(*A.alg, D, W, k_max), "random operator " + std::to_string(s));
      higher = higher || !phi_form_multilinear(*A.alg, D, {W, W, W}).is_zero();
    }
    ctx.add(acc, "random odd operators");
    ctx.value("random operators with nonzero third form", higher ? "yes" : "no");
  }
  Param de = ctx["deformations"];
  for (std::size_t i = 0; i < de.size(); ++i) {
    Element a = ctx.element(A, de[i]["a"]);
    std::optional<LinOp> D, L;
    if (de[i]["D"].present()) D = ctx.op(A, de[i]["D"]);
    if (de[i]["L"].present()) L = ctx.op(A, de[i]["L"]);
    if (D && !L) L = zero_op(D->degree() + inst.delta.degree());
    auto r = check_deformation(inst, a, ctx.samples(100), ctx.seed(), D ? &*D : nullptr, L ? &*L : nullptr);
    std::string tag = "a = " + A.alg->format(a);
    bool want = de[i]["expect_solution"].as_bool(true);
    IdentityCheck chk("deformation equation", A.alg.get());
    chk.expect(r.master_solution == want, r.master_solution ? "a solves it" : r.note);
    ctx.add(chk.report(), tag);
    if (!r.note.empty()) ctx.value(tag, r.note);
    ctx.add(r.checks, tag);
  }
  Param la = ctx["layered"];
  for (std::size_t i = 0; i < la.size(); ++i) {
    std::vector<Element> M;
    for (std::size_t k = 0; k < la[i]["layers"].size(); ++k) M.push_back(ctx.element(A, la[i]["layers"][k]));
    if (M.empty()) la[i]["layers"].fail("need at least one layer");
    ctx.add(layered_master_check(inst, M, la[i]["kappa"].as_scalar()), "layered " + std::to_string(i + 1));
  }
  Param cl = ctx["classical"];
  for (std::size_t i = 0; i < cl.size(); ++i) ctx.add(classical_master_check(inst, ctx.element(A, cl[i])));
}

void suite_mutation(JobContext& ctx) {
  if (!ctx.suite) ctx.root().fail("mutation jobs run inside a suite");
  auto targets = ctx["targets"].string_list();
  if (targets.empty()) ctx["targets"].fail("need target job names");
  std::vector<const JobSpec*> specs;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const JobSpec* found = nullptr;
    for (const auto& j : ctx.suite->jobs)
      if (j.name == targets[i]) found = &j;
    if (!found) ctx["targets"][i].fail("no job named '" + targets[i] + "'");
    if (found->suite == "mutation") ctx["targets"][i].fail("targets cannot be mutation jobs");
    specs.push_back(found);
  }
  std::vector<Mutation> ms;
  Param ml = ctx["mutations"];
  if (ml.present()) {
    for (std::size_t i = 0; i < ml.size(); ++i) {
      auto m = mutation_by_name(ml[i].as_string());
      if (!m || *m == Mutation::None) ml[i].fail("unknown mutation");
      ms.push_back(*m);
    }
  } else {
    for (Mutation m : all_mutations())
      if (m != Mutation::None) ms.push_back(m);
  }
  // the unmutated targets must pass, or detection means nothing
  for (const JobSpec* s : specs) {
    JobReport r = run_job(*s, ctx.opts, ctx.suite);
    IdentityCheck base("target passes unmutated", nullptr);
    base.expect(r.status == JobStatus::Pass, s->name + " is " + (r.status == JobStatus::Fail ? "failing" : "in error"));
    ctx.add(base.report(), s->name);
  }
  for (Mutation m : ms) {
    ScopedMutation guard(m);
    IdentityCheck chk(std::string("mutation ") + mutation_name(m) + " detected", nullptr);
    std::string by;
    for (const JobSpec* s : specs) {
      JobReport r = run_job(*s, ctx.opts, ctx.suite);
      if (r.status == JobStatus::Fail) {
        for (const auto& id : r.identities)
          if (!id.passed) {
            by = s->name + ": " + id.name;
            break;
          }
        break;
      }
    }
    chk.expect(!by.empty(), "every target still passes");
    if (!by.empty()) chk.note("caught by " + by);
    ctx.add(chk.report());
  }
}

using SuiteFn = std::function<void(JobContext&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"check-order", suite_check_order},     {"phi-agreement", suite_phi_agreement},
      {"order-laws", suite_order_laws},       {"verify-gbva", suite_verify_gbva},
      {"verify-general", suite_verify_general}, {"verify-dbva", suite_verify_dbva},
      {"lie-homology", suite_lie_homology},   {"weil", suite_weil},
      {"sn-check", suite_sn_check},           {"vosa-verify", suite_vosa_verify},
      {"master-check", suite_master_check},   {"mutation", suite_mutation},
  };
  return r;
}

}  // namespace

std::vector<std::string> job_suite_names() {
  std::vector<std::string> out;
  for (const auto& [n, f] : registry()) out.push_back(n);
  return out;
}

void run_job_body(JobContext& ctx) {
  for (const auto& [n, f] : registry())
    if (n == ctx.spec.suite) return f(ctx);
  throw ConfigError("unknown suite '" + ctx.spec.suite + "'");
}

}  // namespace bvk
