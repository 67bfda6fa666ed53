#include <doctest.h>

#include <sfq/kripke.hpp>
#include <sfq/search.hpp>

using namespace sfq;

namespace {

StrictFinModel chain(int n, int m = 1) {
  StrictFinModel w;
  w.sig = Signature::basic();
  for (int i = 0; i < n; ++i) {
    w.node_names.push_back(i == 0 ? "r" : "n" + std::to_string(i));
    w.frame.parent.push_back(i - 1);
  }
  std::string reason;
  REQUIRE(w.frame.build(reason));
  for (int e = 0; e < m; ++e) w.elem_names.push_back("d" + std::to_string(e));
  w.consts = {{"c", 0}};
  w.ext.resize(n);
  return w;
}

bool has_violation(const std::vector<Violation>& vs, const std::string& code) {
  for (const auto& v : vs)
    if (v.code == code) return true;
  return false;
}

}  // namespace

TEST_CASE("W0 validates") {
  auto w0 = make_w0();
  CHECK(validate(w0).empty());
  CHECK(w0.root() == 0);
  CHECK(w0.leq(0, 1));
  CHECK_FALSE(w0.leq(1, 0));
}

TEST_CASE("persistence violation") {
  auto w = make_w0();
  w.ext[0]["E"] = {{0}};
  w.ext[1]["E"] = {};
  auto vs = validate(w);
  REQUIRE(has_violation(vs, "persistence"));
  for (const auto& v : vs)
    if (v.code == "persistence") {
      CHECK(v.node == 0);
      CHECK(v.pred == "E");
      CHECK(v.tuple == Tuple{0});
    }
}

TEST_CASE("strictness violation") {
  auto w = make_w0();
  w.ext[1]["P"] = {{0}};
  w.ext[1]["E"] = {};
  auto vs = validate(w);
  REQUIRE(has_violation(vs, "strictness"));
  // Restoring E repairs it.
  w.ext[1]["E"] = {{0}};
  CHECK(validate(w).empty());
}

TEST_CASE("strictness via function preimages") {
  // f(d1) = d0; P(d0) at a node requires both d0 (tuple element) and d1
  // (preimage) in E there — names denote every element.
  auto w = chain(1, 2);
  w.sig.functions.push_back({"f", 1});
  w.funcs["f"] = {{{0}, 0}, {{1}, 0}};
  w.ext[0]["P"] = {{0}};
  w.ext[0]["E"] = {{0}};
  auto vs = validate(w);
  CHECK(has_violation(vs, "strictness"));
  w.ext[0]["E"] = {{0}, {1}};
  CHECK(validate(w).empty());
  // Forward closure is NOT required: E = {d1} alone with f(d1)=d0 is fine.
  auto w2 = chain(1, 2);
  w2.sig.functions.push_back({"f", 1});
  w2.funcs["f"] = {{{0}, 0}, {{1}, 0}};
  w2.ext[0]["E"] = {{1}};
  CHECK(validate(w2).empty());
}

TEST_CASE("structural violations") {
  auto w = make_w0();
  w.frame.parent = {1, 0};  // cycle
  CHECK(has_violation(validate(w), "not_a_tree"));

  auto w2 = make_w0();
  w2.elem_names.clear();
  CHECK(has_violation(validate(w2), "empty_domain"));

  auto w3 = make_w0();
  w3.consts.clear();
  CHECK(has_violation(validate(w3), "interp_not_total"));

  auto w4 = make_w0();
  w4.ext[1]["Z"] = {{0}};
  CHECK(has_violation(validate(w4), "bad_extension"));

  auto w5 = make_w0();
  w5.ext[1]["P"] = {{0, 0}};  // arity
  CHECK(has_violation(validate(w5), "bad_extension"));

  CHECK_THROWS_AS(validate_or_throw(w5), ModelError);
}

TEST_CASE("W0 property report") {
  auto r = property_report(make_w0());
  CHECK(r.prevalent);
  CHECK(r.atomic_prevalence);
  CHECK(r.object_prevalence);
  CHECK(r.preconstructive);
  CHECK_FALSE(r.postconstructive);
  CHECK(r.linear);
  CHECK(r.two_node);
  CHECK_FALSE(r.atomic_decidability);  // E(u) holds at k but not at r
  CHECK(r.total_constructibility);
}

TEST_CASE("single node with full E is postconstructive") {
  auto w = chain(1);
  w.ext[0]["E"] = {{0}};
  auto r = property_report(w);
  CHECK(r.postconstructive);
  CHECK(r.prevalent);
  CHECK_FALSE(r.preconstructive);
  CHECK(r.atomic_decidability);
}

TEST_CASE("two-branch model breaks atomic prevalence") {
  StrictFinModel w = make_w0();
  w.node_names = {"r", "a", "b"};
  w.frame.parent = {-1, 0, 0};
  std::string reason;
  REQUIRE(w.frame.build(reason));
  w.ext.resize(3);
  w.ext[1]["E"] = {{0}};
  w.ext[1]["P"] = {{0}};
  w.ext[2]["E"] = {{0}};
  REQUIRE(validate(w).empty());
  auto r = property_report(w);
  CHECK_FALSE(r.atomic_prevalence);  // P forced on branch a only
  CHECK(r.object_prevalence);
  CHECK_FALSE(r.prevalent);
  CHECK_FALSE(r.linear);
}

TEST_CASE("report stable under relabeling") {
  auto w = make_w0();
  // Same model with node and element ids presented differently.
  StrictFinModel v;
  v.sig = w.sig;
  v.node_names = {"k", "r"};
  v.frame.parent = {1, -1};
  std::string reason;
  REQUIRE(v.frame.build(reason));
  v.elem_names = {"u"};
  v.consts = {{"c", 0}};
  v.ext.resize(2);
  v.ext[0]["E"] = {{0}};
  REQUIRE(validate(v).empty());
  auto rw = property_report(w), rv = property_report(v);
  CHECK(rw.prevalent == rv.prevalent);
  CHECK(rw.preconstructive == rv.preconstructive);
  CHECK(rw.postconstructive == rv.postconstructive);
  CHECK(rw.linear == rv.linear);
  CHECK(rw.atomic_decidability == rv.atomic_decidability);
}

TEST_CASE("linear models have atomic prevalence; weakening propositions") {
  SearchBounds b;
  b.max_nodes = 3;
  b.max_elems = 2;
  b.sig.predicates = {{"E", 1}, {"P", 1}};
  int count = 0;
  enumerate_models(b, [&](const StrictFinModel& w) {
    ++count;
    auto r = property_report(w);
    if (r.linear) CHECK(r.atomic_prevalence);
    // (i) atomic prevalence + total constructibility imply object prevalence.
    if (r.atomic_prevalence && r.total_constructibility) CHECK(r.object_prevalence);
    // (ii) atomic decidability + object prevalence imply atomic prevalence.
    if (r.atomic_decidability && r.object_prevalence) CHECK(r.atomic_prevalence);
    return true;
  });
  CHECK(count > 10);
}

TEST_CASE("postconstructive term depth bound is stable") {
  // Default depth 3 agrees with depth 6 on models with functions.
  auto w = chain(2, 2);
  w.sig.functions.push_back({"f", 1});
  w.funcs["f"] = {{{0}, 1}, {{1}, 0}};
  w.ext[0]["E"] = {{0}, {1}};
  w.ext[1]["E"] = {{0}, {1}};
  REQUIRE(validate(w).empty());
  CHECK(property_report(w, 3).postconstructive == property_report(w, 6).postconstructive);
  CHECK(base_term_denotations(w, 3) == base_term_denotations(w, 6));
}

TEST_CASE("intuitionistic model validation") {
  IntuitionisticModel i;
  i.sig = Signature::basic();
  i.node_names = {"r", "k"};
  i.frame.parent = {-1, 0};
  std::string reason;
  REQUIRE(i.frame.build(reason));
  i.elem_names = {"u", "v"};
  i.domain = {{0}, {0, 1}};
  i.consts = {{"c", 0}};
  i.ext.resize(2);
  i.ext[1]["P"] = {{1}};
  CHECK(validate(i).empty());

  auto bad = i;
  bad.domain = {{0, 1}, {0}};  // element vanishes
  CHECK(!validate(bad).empty());

  auto bad2 = i;
  bad2.ext[0]["P"] = {{1}};  // uses element outside D(r)
  CHECK(!validate(bad2).empty());

  auto bad3 = i;
  bad3.ext[0]["P"] = {{0}};
  bad3.ext[1]["P"] = {};  // persistence
  CHECK(!validate(bad3).empty());
}
