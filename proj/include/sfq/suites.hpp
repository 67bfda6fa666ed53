#pragma once

// Named acceptance suites. Each suite runs one acceptance criterion end to
// end and reports pass/fail with a check count; the registry backs both the
// acceptance binary and `sfq suite run`.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <tuple>
#include <vector>

#include "corpus.hpp"
#include "docs.hpp"
#include "generation.hpp"
#include "kripke.hpp"
#include "ordering.hpp"
#include "proofs.hpp"
#include "search.hpp"
#include "semantics.hpp"
#include "syntax.hpp"
#include "transform.hpp"

namespace sfq {
namespace suites {

struct Outcome {
  bool pass = true;
  long checks = 0;
  std::string detail;  // first failing check, empty when passing
};

struct Ctx {
  Outcome out;
  void require(bool ok, const std::string& what) {
    ++out.checks;
    if (!ok && out.pass) {
      out.pass = false;
      out.detail = what;
    }
  }
};

struct Suite {
  int id = 0;
  std::string name;
  std::function<Outcome()> run;
};

namespace detail {

inline FormulaPtr fml(const std::string& t) {
  Signature s = Signature::basic();
  return parse(t, s);
}

inline unsigned seed_from_env() {
  const char* s = std::getenv("SFQ_SEED");
  return s ? static_cast<unsigned>(std::strtoul(s, nullptr, 10)) : 2026u;
}

inline SearchBounds bounds(ModelClass mc, int nodes, int elems) {
  SearchBounds b;
  b.max_nodes = nodes;
  b.max_elems = elems;
  b.model_class = mc;
  return b;
}

// --- random formula generation --------------------------------------------

struct FormulaGen {
  std::mt19937 rng;
  explicit FormulaGen(unsigned seed) : rng(seed) {}

  int pick(int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); }

  TermPtr rand_term(const std::vector<std::string>& vars) {
    if (!vars.empty() && pick(2) == 0) return mk_var(vars[pick((int)vars.size())]);
    return mk_const("c");
  }

  FormulaPtr rand_atom(const std::vector<std::string>& vars) {
    static const char* preds[] = {"E", "P", "Q"};
    return atom(preds[pick(3)], {rand_term(vars)});
  }

  // Arbitrary closed-able formula over the in-scope variables.
  FormulaPtr rand_any(int depth, std::vector<std::string> vars) {
    if (depth <= 0) return rand_atom(vars);
    switch (pick(8)) {
      case 0: return rand_atom(vars);
      case 1: return f_and(rand_any(depth - 1, vars), rand_any(depth - 1, vars));
      case 2: return f_or(rand_any(depth - 1, vars), rand_any(depth - 1, vars));
      case 3: return implies(rand_any(depth - 1, vars), rand_any(depth - 1, vars));
      case 4: return neg(rand_any(depth - 1, vars));
      case 5: return wneg(rand_any(depth - 1, vars));
      default: {
        std::string x = "x" + std::to_string(vars.size());
        vars.push_back(x);
        auto body = rand_any(depth - 1, vars);
        return pick(2) == 0 ? forall(x, body) : exists(x, body);
      }
    }
  }

  // GN ::= bot | ~A | N&N | N|N | N->N | forall/exists x N
  FormulaPtr rand_gn(int depth, std::vector<std::string> vars) {
    if (depth <= 0) return pick(2) == 0 ? bot() : neg(rand_atom(vars));
    switch (pick(6)) {
      case 0: return bot();
      case 1: return neg(rand_any(depth - 1, vars));
      case 2: return f_and(rand_gn(depth - 1, vars), rand_gn(depth - 1, vars));
      case 3: return f_or(rand_gn(depth - 1, vars), rand_gn(depth - 1, vars));
      case 4: return implies(rand_gn(depth - 1, vars), rand_gn(depth - 1, vars));
      default: {
        // Vacuous quantification uses the local clauses, so force the bound
        // variable to occur (inside a GN part, keeping the grammar).
        std::string x = "x" + std::to_string(vars.size());
        vars.push_back(x);
        auto body = rand_gn(depth - 1, vars);
        if (occurrence_mode(body, x) == OccMode::Absent)
          body = f_or(body, neg(atom(pick(2) == 0 ? "P" : "Q", {mk_var(x)})));
        return pick(2) == 0 ? forall(x, body) : exists(x, body);
      }
    }
  }

  // ST ::= top | N | S&S | S|N | N|S | (A->B) | forall x A
  FormulaPtr rand_st(int depth, std::vector<std::string> vars) {
    if (depth <= 0) return pick(2) == 0 ? top() : rand_gn(0, vars);
    switch (pick(7)) {
      case 0: return top();
      case 1: return rand_gn(depth - 1, vars);
      case 2: return f_and(rand_st(depth - 1, vars), rand_st(depth - 1, vars));
      case 3: return f_or(rand_st(depth - 1, vars), rand_gn(depth - 1, vars));
      case 4: return f_or(rand_gn(depth - 1, vars), rand_st(depth - 1, vars));
      case 5: return implies(rand_any(depth - 1, vars), rand_any(depth - 1, vars));
      default: {
        std::string x = "x" + std::to_string(vars.size());
        vars.push_back(x);
        return forall(x, rand_any(depth - 1, vars));
      }
    }
  }

  // ST_P adds S'|S' and global existentials over S'.
  FormulaPtr rand_stp(int depth, const std::vector<std::string>& vars) {
    int c = pick(3);
    if (depth <= 0 || c == 0) return rand_st(depth, vars);
    if (c == 1) return f_or(rand_stp(depth - 1, vars), rand_stp(depth - 1, vars));
    // Global existential: the bound variable occurs only inside a GN body,
    // non-vacuously (vacuous quantification counts as local).
    std::string x = "x" + std::to_string(vars.size());
    auto v = vars;
    v.push_back(x);
    auto body = rand_gn(depth - 1, v);
    if (occurrence_mode(body, x) == OccMode::Absent)
      body = f_or(body, neg(atom(pick(2) == 0 ? "P" : "Q", {mk_var(x)})));
    return exists(x, body);
  }
};

template <typename Gen, typename Pred>
inline std::vector<FormulaPtr> collect(Gen gen, Pred keep, int want) {
  std::vector<FormulaPtr> out;
  std::set<std::string> seen;
  int guard = 0;
  while (static_cast<int>(out.size()) < want && ++guard < want * 200) {
    auto a = gen();
    if (!is_closed(a) || !keep(a)) continue;
    if (seen.insert(formula_key(a)).second) out.push_back(a);
  }
  return out;
}

inline std::vector<FormulaPtr> closed_corpus() {
  std::vector<FormulaPtr> out;
  for (const char* t :
       {"top", "bot", "E(c)", "P(c)", "~P(c)", "~~P(c)", "wneg P(c)",
        "E(c) -> P(c)", "P(c) & E(c)", "P(c) | ~P(c)", "Q(c) | E(c)",
        "forall x. E(x)", "exists x. P(x)", "exists x. (P(x) -> P(x))",
        "forall x. ~P(x)", "~P(c) | ~~P(c)"})
    out.push_back(fml(t));
  return out;
}

// Generation fixtures directory.
inline std::vector<GenerationStructure> load_gfixtures(const std::string& dir) {
  std::vector<std::string> paths;
  for (const auto& e : std::filesystem::directory_iterator(dir + "/gstructures"))
    paths.push_back(e.path().string());
  std::sort(paths.begin(), paths.end());
  std::vector<GenerationStructure> out;
  for (const auto& p : paths) out.push_back(load_gstructure(load_json_file(p)));
  return out;
}

inline int gnode(const StrictFinModel& w, const std::string& name) {
  for (int k = 0; k < w.num_nodes(); ++k)
    if (w.node_names[k] == name) return k;
  return -1;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// 1. Famous validities

inline Outcome famous_validities() {
  using namespace detail;
  Ctx c;
  std::vector<FormulaPtr> as;
  for (const char* t : {"E(c)", "P(c)", "Q(c)", "P(c) & Q(c)", "P(c) | E(c)",
                        "wneg P(c)", "~Q(c)", "exists x. P(x)"})
    as.push_back(fml(t));
  std::vector<FormulaPtr> bs = {fml("Q(c)"), fml("E(c) -> P(c)"), fml("bot")};
  std::vector<FormulaPtr> bodies;
  Signature sig = Signature::basic();
  for (const char* t : {"P(x)", "Q(x)", "E(x)", "P(x) | Q(x)", "P(x) -> E(x)",
                        "wneg P(x)", "~P(x)", "P(x) & E(x)"})
    bodies.push_back(parse(t, sig));

  std::vector<FormulaPtr> valid_instances = {fml("forall x. E(x)")};  // (v)
  for (const auto& a : as) {
    valid_instances.push_back(implies(wneg(wneg(a)), a));              // (i)
    for (const auto& b : bs)
      valid_instances.push_back(implies(implies(implies(a, b), a), a));  // (ii)
    valid_instances.push_back(wneg(wneg(f_or(a, wneg(a)))));           // (iii)
    valid_instances.push_back(f_or(neg(a), neg(neg(a))));              // (iv)
  }
  for (const auto& body : bodies)                                      // (vii)
    valid_instances.push_back(
        implies(forall("x", wneg(wneg(body))), wneg(wneg(forall("x", body)))));
  c.require(valid_instances.size() >= 50, "instance count");

  auto models = enumerate_all(bounds(ModelClass::All, 4, 2));
  for (const auto& w : models) {
    Forcer f(w);
    for (const auto& a : valid_instances)
      c.require(f.valid(a), "famous validity fails: " + render(a));
    for (const auto& body : bodies)                                    // (vi)
      c.require(consequence(w, {forall("x", wneg(wneg(body)))}, forall("x", body)),
                "famous validity (vi) fails: " + render(body));
  }
  return c.out;
}

// ---------------------------------------------------------------------------
// 2. Failure suite on W0

inline Outcome failure_w0() {
  using namespace detail;
  Ctx c;
  auto w0 = make_w0();
  auto a = fml("E(c)");
  auto b = fml("E(c) -> E(c)");
  c.require(!valid(w0, f_or(a, wneg(a))), "A | wneg A should fail on W0");
  c.require(!valid(w0, f_or(a, neg(a))), "A | ~A should fail on W0");
  c.require(valid(w0, implies(b, a)), "B -> A should be valid on W0");
  c.require(valid(w0, b), "B should be valid on W0");
  c.require(!valid(w0, a), "A should not be valid on W0 (MP failure)");

  auto bd = bounds(ModelClass::All, 2, 2);
  for (const auto& goal : {f_or(a, wneg(a)), f_or(a, neg(a))}) {
    auto res = countermodel(goal, bd);
    c.require(res.found && res.model->num_nodes() <= 2,
              "no two-node witness for " + render(goal));
  }
  auto res = countermodel({implies(b, a), b}, a, bd);
  c.require(res.found && res.model->num_nodes() <= 2, "no two-node MP witness");
  return c.out;
}

// ---------------------------------------------------------------------------
// 3. GN / ST suites

inline Outcome gn_st_stability() {
  using namespace detail;
  Ctx c;
  FormulaGen g(seed_from_env());
  auto gns = collect([&] { return g.rand_gn(3, {}); }, classify_gn, 200);
  auto sts = collect([&] { return g.rand_st(3, {}); }, classify_st_bool, 200);
  auto stps = collect([&] { return g.rand_stp(3, {}); },
                      [](const FormulaPtr& a) { return classify_stp_bool(a); }, 200);
  c.require(gns.size() >= 200, "GN generator starved");
  c.require(sts.size() >= 200, "ST generator starved");
  c.require(stps.size() >= 200, "ST_P generator starved");

  SearchBounds all_b = bounds(ModelClass::All, 4, 2);
  SearchBounds prev_b = bounds(ModelClass::Prevalent, 4, 2);
  std::vector<StrictFinModel> all_models, prev_models;
  for (unsigned s = 0; s < 500; ++s) {
    all_models.push_back(random_model(s, all_b));
    prev_models.push_back(random_model(s, prev_b));
  }

  for (const auto& w : all_models) {
    for (const auto& a : gns)
      if (assertible(w, a))
        c.require(valid(w, a), "GN assertible but not valid: " + render(a));
    for (const auto& s : sts)
      c.require(consequence(w, {wneg(wneg(s))}, s), "ST instability: " + render(s));
  }
  for (const auto& w : prev_models)
    for (const auto& s : stps)
      c.require(consequence(w, {wneg(wneg(s))}, s), "ST_P instability: " + render(s));
  return c.out;
}

// ---------------------------------------------------------------------------
// 4. Proof corpus

inline Outcome proof_corpus() {
  using namespace detail;
  Ctx c;
  for (const auto& fx : corpus::all_fixtures()) {
    auto rep = check(fx.derivation, fx.system);
    c.require(rep.ok == fx.expect_ok, "verdict mismatch: " + fx.name);
    if (fx.expect_ok && rep.ok) {
      c.require(formula_key(rep.conclusion) == formula_key(fx.conclusion),
                "conclusion mismatch: " + fx.name);
      std::set<std::string> want, got;
      for (const auto& h : fx.open) want.insert(formula_key(h));
      for (const auto& h : rep.open_hypotheses) got.insert(formula_key(h.second));
      c.require(want == got, "open hypotheses mismatch: " + fx.name);
      if (fx.system == System::NSF) {
        auto lifted = check(lift_to_nsfp(fx.derivation), System::NSFP);
        bool same = lifted.ok &&
                    formula_key(lifted.conclusion) == formula_key(fx.conclusion);
        c.require(same, "NSF -> NSF_P lift fails: " + fx.name);
      }
    }
    if (!fx.expect_ok) {
      bool coded = false;
      for (const auto& f : rep.failures) coded = coded || f.code == fx.expect_code;
      c.require(coded, "expected failure code missing: " + fx.name);
    }
  }
  return c.out;
}

// ---------------------------------------------------------------------------
// 5. Soundness cross-check

inline Outcome soundness_cross_check() {
  using namespace detail;
  Ctx c;
  auto nsf_models = enumerate_all(bounds(ModelClass::All, 3, 2));
  auto prev_models = enumerate_all(bounds(ModelClass::Prevalent, 3, 2));
  for (const auto& fx : corpus::all_fixtures()) {
    if (!fx.expect_ok) continue;
    auto rep = check(fx.derivation, fx.system);
    c.require(rep.ok, "fixture no longer checks: " + fx.name);
    bool closed = is_closed(rep.conclusion);
    std::vector<FormulaPtr> gamma;
    for (const auto& h : rep.open_hypotheses) {
      closed = closed && is_closed(h.second);
      gamma.push_back(h.second);
    }
    if (!closed) continue;
    const auto& models = fx.system == System::NSF ? nsf_models : prev_models;
    for (const auto& w : models)
      c.require(consequence(w, gamma, rep.conclusion),
                "unsound on a model: " + fx.name);
  }
  return c.out;
}

// ---------------------------------------------------------------------------
// 6. Prevalence calculus (12 clauses)

inline Outcome prevalence_calculus() {
  using namespace detail;
  Ctx c;
  std::vector<FormulaPtr> as;
  for (const char* t :
       {"E(c)", "P(c)", "Q(c)", "~P(c)", "wneg Q(c)", "P(c) | Q(c)"})
    as.push_back(fml(t));
  Signature sig = Signature::basic();
  std::vector<FormulaPtr> bodies;
  for (const char* t : {"P(x)", "E(x)", "~P(x)", "P(x) -> Q(c)", "wneg P(x)"})
    bodies.push_back(parse(t, sig));

  auto models = enumerate_all(bounds(ModelClass::Prevalent, 4, 2));
  for (const auto& w : models) {
    Forcer f(w);
    auto A = [&](const FormulaPtr& x) { return f.assertible(x); };
    auto V = [&](const FormulaPtr& x) { return f.valid(x); };
    for (const auto& a : as) {
      c.require(A(neg(a)) == !A(a), "1d");                       // 1(d)
      c.require(V(neg(a)) == A(neg(a)), "2d");                   // 2(d)
      for (const auto& b : as) {
        c.require(A(f_and(a, b)) == (A(a) && A(b)), "1a");       // 1(a)
        c.require(A(f_or(a, b)) == (A(a) || A(b)), "1b");        // 1(b)
        c.require(A(implies(a, b)) == (!A(a) || A(b)), "1c");    // 1(c)
        c.require(V(f_and(a, b)) == (V(a) && V(b)), "2a");       // 2(a)
        c.require(V(f_or(a, b)) == (V(a) || V(b)), "2b");        // 2(b)
        c.require(V(implies(a, b)) == A(implies(a, b)), "2c");   // 2(c)
      }
    }
    for (const auto& body : bodies) {
      auto all = forall("x", body);
      auto ex = exists("x", body);
      bool each = true;
      for (int d = 0; d < w.num_elems(); ++d)
        each = each && A(substitute(body, "x", mk_name(d)));
      c.require(A(all) == each, "1e");                           // 1(e)
      bool some_a = false;
      for (int d = 0; d < w.num_elems(); ++d)
        some_a = some_a || A(substitute(body, "x", mk_name(d)));
      c.require(A(ex) == some_a, "1f");                          // 1(f)
      c.require(V(all) == A(all), "2e");                         // 2(e)
      bool glob = quantifier_global(body, "x");
      bool some_v = false;
      for (int d = 0; d < w.num_elems(); ++d) {
        auto inst = substitute(body, "x", mk_name(d));
        auto ed = atom("E", {mk_name(d)});
        some_v = some_v || V(glob ? inst : f_and(ed, inst));
      }
      c.require(V(ex) == some_v, "2f");                          // 2(f)
    }
  }
  return c.out;
}

// ---------------------------------------------------------------------------
// 7. Contraction / reduction

inline Outcome contraction_reduction() {
  using namespace detail;
  Ctx c;
  auto corpus = closed_corpus();
  auto models = enumerate_all(bounds(ModelClass::Prevalent, 3, 2));
  for (const auto& w : models) {
    for (const auto& a : corpus) {
      auto cm = contract(w, a);
      std::vector<FormulaPtr> subs;
      subformulas(a, subs);
      for (const auto& s : subs) {
        if (!is_closed(s)) continue;
        c.require(assertible(w, s) == force(cm, 1, s), "contraction (i)");
        c.require(valid(w, s) == force(cm, 0, s), "contraction (ii)");
      }
    }
  }
  // Strong contraction, finite direction.
  struct Case {
    std::vector<const char*> gamma;
    const char* goal;
  };
  for (const Case& cs : {Case{{}, "P(c) | ~P(c)"}, Case{{"~~P(c)"}, "P(c)"}}) {
    std::vector<FormulaPtr> gamma;
    FormulaPtr conj = nullptr;
    for (const char* g : cs.gamma) {
      gamma.push_back(fml(g));
      conj = conj ? f_and(conj, gamma.back()) : gamma.back();
    }
    auto goal = fml(cs.goal);
    conj = conj ? f_and(conj, goal) : goal;
    auto res = countermodel(gamma, goal, bounds(ModelClass::Prevalent, 3, 2));
    c.require(res.found, "no prevalent countermodel found");
    if (!res.found) continue;
    int k = gnode(*res.model, res.node);
    auto two = contract(generated_submodel(*res.model, k), conj);
    auto rep = property_report(two);
    bool counter = rep.two_node && rep.prevalent && !consequence(two, gamma, goal);
    c.require(counter, "contracted witness not a two-node counterexample");
  }
  // Reduction of the two-node class to the preconstructive one.
  for (const auto& w : enumerate_all(bounds(ModelClass::TwoNodePrevalent, 2, 2))) {
    auto p = preconstruct(w);
    int leaf = w.root() == 0 ? 1 : 0;
    c.require(property_report(p).preconstructive, "preconstruct output");
    for (const auto& a : corpus) {
      c.require(force(p, leaf, a) == force(w, leaf, a), "reduction (i)");
      if (force(p, w.root(), a))
        c.require(force(w, w.root(), a), "reduction (ii)");
    }
  }
  return c.out;
}

// ---------------------------------------------------------------------------
// 8. Interchange of neg and wneg

inline Outcome interchange() {
  using namespace detail;
  Ctx c;
  std::vector<FormulaPtr> qf;
  for (const char* t :
       {"~P(c)", "wneg P(c)", "~P(c) | ~~P(c)", "~(P(c) & Q(c))",
        "(P(c) -> Q(c)) -> ~P(c)", "wneg (P(c) | wneg Q(c))", "~ wneg P(c)"})
    qf.push_back(fml(t));
  auto models = enumerate_all(bounds(ModelClass::Prevalent, 3, 2));
  for (const auto& w : models) {
    for (const auto& a : qf) {
      for (auto shape : {NegShape::Neg, NegShape::Wneg})
        for (const auto& [f, b] : analyses(a, shape))
          for (int k = 0; k < w.num_nodes(); ++k)
            c.require(force(w, k, context_fill(f, neg(b))) ==
                          force(w, k, context_fill(f, wneg(b))),
                      "quantifier-free interchange: " + render(a));
    }
    // Replace neg with wneg (i) on all nodes.
    for (const auto& a : closed_corpus())
      for (const auto& [f, b] : analyses(a, NegShape::Neg))
        for (int k = 0; k < w.num_nodes(); ++k)
          if (mk_member(w, k, f, b) && force(w, k, context_fill(f, neg(b))))
            c.require(force(w, k, context_fill(f, wneg(b))),
                      "replace-neg (i): " + render(a));
  }
  // (ii): the converse at preconstructive roots, where membership is free.
  for (const auto& w :
       enumerate_all(bounds(ModelClass::PreconstructiveTwoNodePrevalent, 2, 2)))
    for (const auto& a : closed_corpus())
      for (const auto& [f, b] : analyses(a, NegShape::Neg)) {
        c.require(mk_member(w, w.root(), f, b), "replace-neg (ii) membership");
        if (force(w, w.root(), context_fill(f, wneg(b))))
          c.require(force(w, w.root(), context_fill(f, neg(b))),
                    "replace-neg (ii): " + render(a));
      }
  // The Phi example, verbatim.
  auto family = enumerate_all(bounds(ModelClass::PreconstructiveTwoNodePrevalent, 2, 2));
  auto phi = swap_neg(fml("~P(c) | ~~P(c)"), SwapDirection::NegToWneg, family);
  std::set<std::string> got, want;
  for (const auto& r : phi) got.insert(formula_key(r));
  for (const char* t :
       {"wneg P(c) | ~~P(c)", "~P(c) | wneg ~P(c)", "~P(c) | ~ wneg P(c)"})
    want.insert(formula_key(fml(t)));
  c.require(got == want, "Phi example set mismatch");
  return c.out;
}

// ---------------------------------------------------------------------------
// 9. Classical / intermediate bridges

inline Outcome classical_bridges() {
  using namespace detail;
  Ctx c;
  auto two = enumerate_all(bounds(ModelClass::TwoNodePrevalent, 2, 2));
  for (const auto& w : two) {
    auto s = to_classical(w);
    for (const auto& a : closed_corpus()) {
      std::set<std::string> preds;
      predicates_of(a, preds);
      if (preds.count("E")) continue;
      c.require(assertible(w, a) == classical_force(s, a),
                "phi bridge: " + render(a));
    }
  }
  // Starred HTQ and CD instances.
  std::vector<FormulaPtr> instances;
  std::vector<const char*> atoms = {"P(c)", "Q(c)", "E(c)", "P(x)", "Q(x)"};
  int htq = 0, cd = 0;
  for (const char* sa : atoms)
    for (const char* sb : atoms) {
      auto a = fml(sa), b = fml(sb);
      instances.push_back(universal_closure(f_or(a, f_or(implies(a, b), wneg(b)))));
      ++htq;
    }
  for (const char* sa : {"P(x)", "E(x)", "Q(x)", "P(x) | Q(x)", "P(x) -> Q(x)"})
    for (const char* sc : {"Q(c)", "E(c)", "P(c)", "wneg P(c)"}) {
      auto a = fml(sa), cc = fml(sc);
      instances.push_back(
          implies(forall("x", f_or(cc, a)), f_or(cc, forall("x", a))));
      ++cd;
    }
  c.require(htq >= 20 && cd >= 20, "instance counts");
  for (const auto& inst : instances) {
    auto si = star(inst);
    for (const auto& w : two)
      c.require(valid(w, si), "starred HTCD instance fails: " + render(inst));
  }
  // Negative witness with intuitionistic contrast.
  auto goal = fml("exists x. (P(x) -> P(x))");
  auto res = countermodel(goal, bounds(ModelClass::PreconstructiveTwoNodePrevalent, 2, 2));
  c.require(res.found && !valid(*res.model, goal), "preconstructive witness");
  GenerationStructure single{{make_w0()}, {-1}};
  c.require(intuit_valid(gen_to_int(single), goal), "intuitionistic contrast");
  return c.out;
}

// ---------------------------------------------------------------------------
// 10. Generation suites

inline Outcome generation_suites(const std::string& fixture_dir) {
  using namespace detail;
  Ctx c;
  auto gs = load_gfixtures(fixture_dir);
  c.require(gs.size() >= 20, "need >= 20 g-structure fixtures");

  // Validation clauses: break a chain fixture in each of the five ways.
  GenerationStructure chain;
  for (const auto& g : gs)
    if (g.num_gens() >= 2 && g.gens[1].num_nodes() > g.gens[0].num_nodes() &&
        chain.gens.empty())
      chain = g;
  c.require(chain.num_gens() >= 2, "no chain fixture found");
  if (chain.num_gens() >= 2) {
    auto expect_code = [&](GenerationStructure g, const std::string& code) {
      auto vs = validate_gstructure(g);
      bool found = false;
      for (const auto& v : vs) found = found || v.code == code;
      c.require(found, "expected violation " + code);
    };
    auto g1 = chain;  // (i) drop a shared node's name
    g1.gens[1].node_names[0] += "_renamed";
    expect_code(g1, "nodes");
    auto g3 = chain;  // (iii) drop a domain element
    g3.gens[0].elem_names.push_back("extra");
    {
      // keep generation 0 prevalent: verify the element at every top node
      auto& w = g3.gens[0];
      int e = w.num_elems() - 1;
      for (int k = 0; k < w.num_nodes(); ++k)
        if (w.above(k).size() == 1) w.ext[k]["E"].insert({e});
    }
    expect_code(g3, "domain");
    auto g4 = chain;  // (iv) move a constant
    if (g4.gens[1].num_elems() >= 2) {
      g4.gens[1].consts["c"] = 1 - g4.gens[1].consts["c"];
      expect_code(g4, "interp");
    }
    auto g5 = chain;  // (v) shrink an extension
    {
      auto& w = g5.gens[1];
      bool done = false;
      for (int k = 0; k < w.num_nodes() && !done; ++k)
        if (w.ext[k].count("E") && gnode(chain.gens[0], w.node_names[k]) >= 0) {
          w.ext[k]["E"].clear();
          done = true;
        }
      if (done) expect_code(g5, "extension");
    }
    auto g2 = chain;  // (ii) disagreeing order: re-root the later generation
    if (g2.gens[1].num_nodes() >= 3) {
      std::swap(g2.gens[1].frame.parent[1], g2.gens[1].frame.parent[2]);
      std::string reason;
      if (g2.gens[1].frame.build(reason)) {
        auto vs = validate_gstructure(g2);
        c.require(!vs.empty(), "expected an order/extension violation");
      }
    }
  }

  Signature sig = Signature::basic();
  std::vector<FormulaPtr> corpus;
  for (const char* t : {"E(c)", "P(c)", "E(c) -> P(c)", "P(c) & E(c)",
                        "P(c) | Q(c)", "forall x. P(x)", "exists x. P(x)",
                        "exists x. (P(x) -> P(x))", "wneg P(c)"})
    corpus.push_back(parse(t, sig));

  for (const auto& g : gs) {
    auto globals = g.global_elems();
    // Persistence + prevalence in generation + both corollaries.
    for (int i = 0; i < g.num_gens(); ++i) {
      const auto& w = g.gens[i];
      for (const auto& a : corpus) {
        for (int k = 0; k < w.num_nodes(); ++k) {
          if (!gen_force(g, {i, k}, a)) continue;
          for (int j : g.successors(i)) {
            int kj = gnode(g.gens[j], w.node_names[k]);
            for (int kp = 0; kp < g.gens[j].num_nodes(); ++kp)
              if (g.gens[j].leq(kj, kp))
                c.require(gen_force(g, {j, kp}, a),
                          "gen persistence: " + render(a));
          }
        }
        // prevalence in generation (ii)
        bool somewhere = false;
        for (int k = 0; k < w.num_nodes() && !somewhere; ++k)
          somewhere = gen_force(g, {i, k}, a);
        if (somewhere)
          for (int l = 0; l < w.num_nodes(); ++l) {
            bool above = false;
            for (int lp = 0; lp < w.num_nodes() && !above; ++lp)
              above = w.leq(l, lp) && gen_force(g, {i, lp}, a);
            c.require(above, "prevalence in generation (ii)");
          }
        // corollary: assertibility of -> and forall in a generation is validity
        if (a->tag == FTag::Implies || a->tag == FTag::Forall) {
          int rg = gnode(w, g.gens[0].node_names[g.gens[0].root()]);
          bool some = false;
          for (int k = 0; k < w.num_nodes() && !some; ++k)
            some = gen_force(g, {i, k}, a);
          c.require(gen_force(g, {i, rg}, a) == some,
                    "implication assertibility corollary");
        }
      }
      // prevalence in generation (i)
      for (int e = 0; e < w.num_elems(); ++e) {
        int id = -1;
        for (std::size_t x = 0; x < globals.size(); ++x)
          if (globals[x] == w.elem_names[e]) id = static_cast<int>(x);
        auto ed = atom("E", {mk_name(id)});
        for (int k = 0; k < w.num_nodes(); ++k) {
          bool some = false;
          for (int kp = 0; kp < w.num_nodes() && !some; ++kp)
            some = w.leq(k, kp) && gen_force(g, {i, kp}, ed);
          c.require(some, "prevalence in generation (i)");
        }
      }
      // corollary: the E/top distinction is lost for forall.
      for (const auto& a : corpus) {
        if (a->tag != FTag::Forall) continue;
        for (int k = 0; k < w.num_nodes(); ++k) {
          bool top_version = true;
          for (int j : g.successors(i)) {
            const auto& wj = g.gens[j];
            int kj = gnode(wj, w.node_names[k]);
            for (int e = 0; e < wj.num_elems() && top_version; ++e) {
              int id = -1;
              for (std::size_t x = 0; x < globals.size(); ++x)
                if (globals[x] == wj.elem_names[e]) id = static_cast<int>(x);
              top_version = gen_force(
                  g, {j, kj},
                  implies(top(), substitute(a->lhs, a->sym, mk_name(id))));
            }
          }
          c.require(gen_force(g, {i, k}, a) == top_version,
                    "E/top distinction corollary");
        }
      }
    }
    // G to I transformation.
    auto im = gen_to_int(g);
    c.require(intuit_valid(im, parse("forall x. E(x)", sig)), "I_G forall E");
    for (const auto& a : corpus) {
      if (has_neg(a)) continue;
      for (int n = 0; n < im.num_nodes(); ++n) {
        bool some = false;
        for (int k = 0; k < g.gens[n].num_nodes() && !some; ++k)
          some = gen_force(g, {n, k}, a);
        c.require(intuit_force(im, n, a) == some, "G to I: " + render(a));
      }
    }
    // J to G transformation on the induced intuitionistic model.
    auto gi = int_to_gen(im);
    for (const auto& a : corpus) {
      if (has_neg(a)) continue;
      std::set<std::string> preds;
      predicates_of(a, preds);
      if (preds.count("E")) continue;
      for (int u = 0; u < im.num_nodes(); ++u) {
        int topn = gi.gens[u].num_nodes() - 1;
        c.require(intuit_force(im, u, a) == gen_force(gi, {u, topn}, a),
                  "J to G: " + render(a));
      }
    }
  }

  // IQC instances on the postconstructive fixtures; separating formulas.
  std::vector<FormulaPtr> iqc;
  for (const char* pa : {"P(c)", "Q(c)", "E(c)"})
    for (const char* pb : {"Q(c)", "P(c) & Q(c)"}) {
      auto a = fml(pa), b = fml(pb);
      iqc.push_back(implies(a, implies(b, a)));
      iqc.push_back(implies(f_and(a, b), a));
      iqc.push_back(implies(f_and(a, b), b));
      iqc.push_back(implies(a, f_or(a, b)));
      iqc.push_back(implies(b, f_or(a, b)));
      iqc.push_back(implies(bot(), a));
    }
  Signature s2 = Signature::basic();
  for (const char* body : {"P(x)", "Q(x)", "P(x) | Q(c)"}) {
    auto bf = parse(body, s2);
    iqc.push_back(implies(forall("x", bf), substitute(bf, "x", mk_const("c"))));
    iqc.push_back(implies(substitute(bf, "x", mk_const("c")), exists("x", bf)));
  }
  c.require(iqc.size() >= 30, "IQC instance count");
  int post = 0;
  for (const auto& g : gs) {
    if (!gstructure_postconstructive(g)) continue;
    ++post;
    for (const auto& a : iqc)
      c.require(gen_valid(g, a), "IQC instance fails: " + render(a));
  }
  c.require(post >= 1, "no postconstructive fixture");
  auto sep = fml("(exists x. (P(x) -> P(x))) | (Q(c) -> Q(c))");
  bool some_invalid = false;
  for (const auto& g : gs) {
    c.require(gen_valid(g, sep), "separator should be gen-valid");
    some_invalid = some_invalid || !gen_valid(g, fml("exists x. (P(x) -> P(x))"));
  }
  c.require(some_invalid, "exists x (P(x) -> P(x)) should fail on some fixture");
  return c.out;
}

// ---------------------------------------------------------------------------
// 11. Ordering

inline Outcome ordering_suite() {
  Ctx c;
  auto oracle = [](const IndexPair& a, const IndexPair& b) {
    auto ka = std::tuple(std::max(a.m, a.n), a.m, a.n);
    auto kb = std::tuple(std::max(b.m, b.n), b.m, b.n);
    return ka < kb ? Cmp::Lt : ka > kb ? Cmp::Gt : Cmp::Eq;
  };
  std::vector<IndexPair> pairs;
  for (Nat m = 0; m <= 10; ++m)
    for (Nat n = 0; n <= 10; ++n) pairs.push_back({m, n});
  for (const auto& a : pairs)
    for (const auto& b : pairs)
      c.require(cmp_n2(a, b) == oracle(a, b), "cmp_n2 oracle disagreement");
  auto sorted = pairs;
  std::sort(sorted.begin(), sorted.end(), [&](const IndexPair& a, const IndexPair& b) {
    return oracle(a, b) == Cmp::Lt;
  });
  for (std::size_t k = 0; k + 1 < sorted.size(); ++k) {
    auto s = succ_n2(sorted[k]);
    if (std::max(s.m, s.n) <= 10)
      c.require(s == sorted[k + 1], "succ_n2 rank disagreement");
  }
  // Requirement-(3) analogue on bounded address trees.
  std::vector<TreeAddress> addrs;
  std::vector<std::vector<Nat>> paths = {{}};
  for (int l = 1; l <= 2; ++l) {
    std::vector<std::vector<Nat>> next;
    for (const auto& p : paths)
      if (static_cast<int>(p.size()) == l - 1)
        for (Nat d = 0; d <= 1; ++d) {
          auto q = p;
          q.push_back(d);
          next.push_back(q);
        }
    paths.insert(paths.end(), next.begin(), next.end());
  }
  for (Nat i = 0; i <= 2; ++i)
    for (const auto& p : paths) addrs.push_back({i, p});
  for (const auto& k : addrs)
    for (const auto& l : addrs)
      for (const auto& kp : addrs) {
        if (kp.i != k.i || !path_initial_segment(k.path, kp.path)) continue;
        TreeAddress kpp = kp;
        Nat L = std::max({l.i, static_cast<Nat>(l.path.size()), kp.i,
                          static_cast<Nat>(kp.path.size())}) +
                1;
        while (kpp.path.size() < L) kpp.path.push_back(0);
        bool ok = path_initial_segment(kp.path, kpp.path) &&
                  cmp_preceq(l, kpp) == Cmp::Lt;
        c.require(ok, "requirement-(3) analogue");
      }
  return c.out;
}

// ---------------------------------------------------------------------------
// 12. CLI examples

namespace detail {

inline int run_capture(const std::string& cmd, std::string& out) {
  std::string tmp = std::filesystem::temp_directory_path() /
                    ("sfq_cli_out_" + std::to_string(::getpid()) + ".txt");
  int status = std::system((cmd + " > " + tmp + " 2>&1").c_str());
  std::ifstream in(tmp);
  std::stringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  std::filesystem::remove(tmp);
  if (status < 0) return -1;
  return WEXITSTATUS(status);
}

inline bool has_line(const std::string& text, const std::string& line) {
  std::stringstream ss(text);
  std::string l;
  while (std::getline(ss, l))
    if (l == line) return true;
  return false;
}

}  // namespace detail

inline Outcome cli_examples(const std::string& cli, const std::string& fixtures) {
  using namespace detail;
  Ctx c;
  if (cli.empty()) {
    c.require(false, "CLI path not provided");
    return c.out;
  }
  std::string out;
  int rc = run_capture(cli + " judge --model " + fixtures +
                           "/w0.json --kind valid \"E(c) | wneg E(c)\"",
                       out);
  c.require(rc == 1, "judge exit code (want 1, got " + std::to_string(rc) + ")");
  c.require(has_line(out, "node: r"), "judge certificate node");

  rc = run_capture(cli + " proof check --system nsf " + fixtures +
                       "/basic_iv.proof.json",
                   out);
  c.require(rc == 0, "proof check exit code (want 0, got " + std::to_string(rc) + ")");
  c.require(has_line(out, "conclusion: ~P(c) | ~~P(c)"), "proof check conclusion");

  rc = run_capture(cli + " parse \"P(t) | ~P(t)\"", out);
  c.require(rc == 0, "parse exit code (want 0, got " + std::to_string(rc) + ")");
  c.require(has_line(out, "t: mixed"), "parse occurrence report");
  return c.out;
}

// ---------------------------------------------------------------------------

inline std::vector<Suite> registry(const std::string& cli_path,
                                   const std::string& fixture_dir) {
  return {
      {1, "famous_validities", famous_validities},
      {2, "failure_w0", failure_w0},
      {3, "gn_st_stability", gn_st_stability},
      {4, "proof_corpus", proof_corpus},
      {5, "soundness_cross_check", soundness_cross_check},
      {6, "prevalence_calculus", prevalence_calculus},
      {7, "contraction_reduction", contraction_reduction},
      {8, "interchange", interchange},
      {9, "classical_bridges", classical_bridges},
      {10, "generation", [fixture_dir] { return generation_suites(fixture_dir); }},
      {11, "ordering", ordering_suite},
      {12, "cli_examples",
       [cli_path, fixture_dir] { return cli_examples(cli_path, fixture_dir); }},
  };
}

}  // namespace suites
}  // namespace sfq
