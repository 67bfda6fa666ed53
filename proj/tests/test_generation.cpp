#include <doctest.h>

#include <string>
#include <vector>

#include "sfq/generation.hpp"
#include "sfq/kripke.hpp"
#include "sfq/semantics.hpp"

using namespace sfq;

namespace {

Signature sig() { return Signature::basic(); }

FormulaPtr fml(const std::string& t) {
  Signature s = sig();
  return parse(t, s);
}

// W1: extends W0 with a third node and a second element.
StrictFinModel make_w1() {
  StrictFinModel w;
  w.sig = sig();
  w.node_names = {"r", "k", "k2"};
  w.frame.parent = {-1, 0, 1};
  std::string reason;
  w.frame.build(reason);
  w.elem_names = {"u", "v"};
  w.consts = {{"c", 0}};
  w.ext.resize(3);
  w.ext[1]["E"] = {{0}};
  w.ext[2]["E"] = {{0}, {1}};
  return w;
}

// Postconstructive two-node model: E full from the root, P verified late.
StrictFinModel make_wc() {
  StrictFinModel w;
  w.sig = sig();
  w.node_names = {"r", "k"};
  w.frame.parent = {-1, 0};
  std::string reason;
  w.frame.build(reason);
  w.elem_names = {"u"};
  w.consts = {{"c", 0}};
  w.ext.resize(2);
  w.ext[0]["E"] = {{0}};
  w.ext[1]["E"] = {{0}};
  w.ext[1]["P"] = {{0}};
  return w;
}

GenerationStructure g_single() {
  GenerationStructure g;
  g.gens = {make_w0()};
  g.parent = {-1};
  return g;
}

GenerationStructure g_chain() {
  GenerationStructure g;
  g.gens = {make_w0(), make_w1()};
  g.parent = {-1, 0};
  return g;
}

GenerationStructure g_post() {
  GenerationStructure g;
  g.gens = {make_wc()};
  g.parent = {-1};
  return g;
}

std::vector<GenerationStructure> fixture_structures() {
  return {g_single(), g_chain(), g_post()};
}

std::vector<FormulaPtr> neg_free_corpus() {
  std::vector<FormulaPtr> out;
  for (const char* t :
       {"top", "bot", "E(c)", "P(c)", "E(c) -> E(c)", "E(c) -> P(c)",
        "P(c) -> E(c)", "E(c) & P(c)", "E(c) | P(c)", "wneg P(c)",
        "forall x. E(x)", "exists x. E(x)", "exists x. P(x)",
        "forall x. (E(x) -> E(x))", "exists x. (P(x) -> P(x))",
        "(E(c) -> E(c)) -> P(c)", "wneg wneg E(c)"})
    out.push_back(fml(t));
  return out;
}

}  // namespace

TEST_CASE("fixture g-structures validate") {
  for (const auto& g : fixture_structures()) CHECK(validate_gstructure(g).empty());
}

TEST_CASE("extension shrink across the order is rejected with a witness") {
  GenerationStructure g = g_chain();
  g.gens[1].ext[1]["E"] = {};  // clause (v) violated at shared node k
  g.gens[1].ext[2]["E"] = {{0}, {1}};
  auto vs = validate_gstructure(g);
  bool found = false;
  for (const auto& v : vs)
    if (v.code == "extension") {
      found = true;
      CHECK(v.gen_a == 0);
      CHECK(v.gen_b == 1);
      CHECK(v.node == "k");
      CHECK(v.pred == "E");
    }
  CHECK(found);
}

TEST_CASE("non-prevalent generation is rejected") {
  GenerationStructure g = g_single();
  // Add an element that never becomes E: breaks object prevalence.
  g.gens[0].elem_names.push_back("w");
  auto vs = validate_gstructure(g);
  bool found = false;
  for (const auto& v : vs) found = found || v.code == "not_prevalent";
  CHECK(found);
}

TEST_CASE("gen_force basic examples on {W0}") {
  auto g = g_single();
  CHECK(gen_force(g, {0, 0}, fml("E(c) -> E(c)")));
  CHECK_FALSE(gen_force(g, {0, 0}, fml("exists x. E(x)")));
  CHECK(gen_force(g, {0, 1}, fml("exists x. E(x)")));
}

TEST_CASE("forall x E(x) holds everywhere by prevalence in generation") {
  for (const auto& g : fixture_structures()) {
    for (int i = 0; i < g.num_gens(); ++i)
      for (int k = 0; k < g.gens[i].num_nodes(); ++k)
        CHECK(gen_force(g, {i, k}, fml("forall x. E(x)")));
  }
}

TEST_CASE("gen_valid examples") {
  auto g = g_single();
  CHECK(gen_valid(g, fml("P(c) -> P(c)")));
  CHECK_FALSE(gen_valid(g, fml("exists x. (P(x) -> P(x))")));
  CHECK(gen_valid(g_post(), fml("exists x. (P(x) -> P(x))")));
}

TEST_CASE("IQC axiom instances are gen-valid on the postconstructive fixture") {
  auto g = g_post();
  for (const char* t :
       {"P(c) -> (Q(c) -> P(c))",
        "(P(c) -> (Q(c) -> E(c))) -> ((P(c) -> Q(c)) -> (P(c) -> E(c)))",
        "P(c) & Q(c) -> P(c)", "P(c) -> P(c) | Q(c)",
        "bot -> P(c)",
        "(forall x. P(x)) -> P(c)",
        "P(c) -> exists x. P(x)"})
    CHECK_MESSAGE(gen_valid(g, fml(t)), t);
}

TEST_CASE("gen_force persists in both the generation order and the node order") {
  auto corpus = neg_free_corpus();
  for (const auto& g : fixture_structures()) {
    for (const auto& a : corpus) {
      for (int i = 0; i < g.num_gens(); ++i) {
        const auto& wi = g.gens[i];
        for (int k = 0; k < wi.num_nodes(); ++k) {
          if (!gen_force(g, {i, k}, a)) continue;
          for (int j : g.successors(i)) {
            const auto& wj = g.gens[j];
            // locate k in generation j by name
            int kj = -1;
            for (int t = 0; t < wj.num_nodes(); ++t)
              if (wj.node_names[t] == wi.node_names[k]) kj = t;
            REQUIRE(kj >= 0);
            for (int kp = 0; kp < wj.num_nodes(); ++kp) {
              if (!wj.leq(kj, kp)) continue;
              CAPTURE(render(a));
              CHECK(gen_force(g, {j, kp}, a));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("prevalence in generation") {
  auto corpus = neg_free_corpus();
  for (const auto& g : fixture_structures()) {
    for (int i = 0; i < g.num_gens(); ++i) {
      const auto& w = g.gens[i];
      // (i) every element becomes E-forced above every node.
      auto globals = g.global_elems();
      for (int e = 0; e < w.num_elems(); ++e) {
        int gid = -1;
        for (std::size_t x = 0; x < globals.size(); ++x)
          if (globals[x] == w.elem_names[e]) gid = static_cast<int>(x);
        auto ed = atom("E", {mk_name(gid)});
        for (int k = 0; k < w.num_nodes(); ++k) {
          bool some = false;
          for (int kp = 0; kp < w.num_nodes() && !some; ++kp)
            some = w.leq(k, kp) && gen_force(g, {i, kp}, ed);
          CHECK(some);
        }
      }
      // (ii) assertible-in-generation formulas are prevalent inside it.
      for (const auto& a : corpus) {
        bool somewhere = false;
        for (int k = 0; k < w.num_nodes() && !somewhere; ++k)
          somewhere = gen_force(g, {i, k}, a);
        if (!somewhere) continue;
        for (int l = 0; l < w.num_nodes(); ++l) {
          bool above = false;
          for (int lp = 0; lp < w.num_nodes() && !above; ++lp)
            above = w.leq(l, lp) && gen_force(g, {i, lp}, a);
          CAPTURE(render(a));
          CHECK(above);
        }
      }
    }
  }
}

TEST_CASE("the E/top distinction is lost for forall; exists assertibility is unguarded") {
  auto g = g_chain();
  auto globals = g.global_elems();
  for (const char* body : {"E(x)", "P(x)", "P(x) -> E(x)"}) {
    Signature s = sig();
    auto a = parse(body, s);
    auto all = forall("x", a);
    // (i) forall-clause with top in place of E.
    for (int i = 0; i < g.num_gens(); ++i)
      for (int k = 0; k < g.gens[i].num_nodes(); ++k) {
        bool top_version = true;
        for (int j : g.successors(i)) {
          const auto& wj = g.gens[j];
          int kj = -1;
          for (int t = 0; t < wj.num_nodes(); ++t)
            if (wj.node_names[t] == g.gens[i].node_names[k]) kj = t;
          for (int e = 0; e < wj.num_elems() && top_version; ++e) {
            int gid = -1;
            for (std::size_t x = 0; x < globals.size(); ++x)
              if (globals[x] == wj.elem_names[e]) gid = static_cast<int>(x);
            auto inst = implies(top(), substitute(a, "x", mk_name(gid)));
            top_version = gen_force(g, {j, kj}, inst);
          }
        }
        CAPTURE(body);
        CHECK(gen_force(g, {i, k}, all) == top_version);
      }
    // (ii) existential assertibility equals unguarded witness existence.
    auto ex = exists("x", a);
    for (int i = 0; i < g.num_gens(); ++i) {
      const auto& w = g.gens[i];
      bool guarded = false;
      for (int k = 0; k < w.num_nodes() && !guarded; ++k)
        guarded = gen_force(g, {i, k}, ex);
      bool unguarded = false;
      for (int e = 0; e < w.num_elems() && !unguarded; ++e) {
        int gid = -1;
        for (std::size_t x = 0; x < globals.size(); ++x)
          if (globals[x] == w.elem_names[e]) gid = static_cast<int>(x);
        for (int k = 0; k < w.num_nodes() && !unguarded; ++k)
          unguarded = gen_force(g, {i, k}, substitute(a, "x", mk_name(gid)));
      }
      CAPTURE(body);
      CHECK(guarded == unguarded);
    }
  }
}

TEST_CASE("assertibility of implication and forall in a generation is validity") {
  auto corpus = neg_free_corpus();
  for (const auto& g : fixture_structures()) {
    for (const auto& a : corpus) {
      if (a->tag != FTag::Implies && a->tag != FTag::Forall) continue;
      for (int i = 0; i < g.num_gens(); ++i) {
        const auto& w = g.gens[i];
        // r_G is a node of every generation (root containment).
        int rg = -1;
        for (int t = 0; t < w.num_nodes(); ++t)
          if (w.node_names[t] == g.gens[0].node_names[g.gens[0].root()]) rg = t;
        REQUIRE(rg >= 0);
        bool some = false;
        for (int k = 0; k < w.num_nodes() && !some; ++k)
          some = gen_force(g, {i, k}, a);
        CAPTURE(render(a));
        CHECK(gen_force(g, {i, rg}, a) == some);
      }
    }
  }
}
