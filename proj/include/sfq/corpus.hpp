#pragma once

// Machine-checked fixture derivations: the "Basic facts of NSF" lemma
// (i)-(viii), the NSF_P derivability lemma (i)-(viii), modus ponens under
// wneg wneg, identity, and a deliberately broken (neg I2) application.

#include <string>
#include <utility>
#include <vector>

#include "proofs.hpp"

namespace sfq {
namespace corpus {

struct Fixture {
  std::string name;
  System system = System::NSF;
  Derivation derivation;
  FormulaPtr conclusion;                // expected root conclusion
  std::vector<FormulaPtr> open;         // expected open-hypothesis formulas (set)
  bool expect_ok = true;
  std::string expect_code;              // failure code when !expect_ok
};

namespace detail {

inline int neg_i(Builder& b, System sys, int p) {
  return sys == System::NSF ? b.neg_i1(p) : b.neg_i_p(p);
}

inline int st_any(Builder& b, System sys, int p) {
  return sys == System::NSF ? b.st(p) : b.st_p(p);
}

}  // namespace detail

// (i) forward: wneg N |- ~N, for GN N.
inline Fixture basic_i_fwd(const FormulaPtr& n) {
  Builder b;
  int h = b.hyp(wneg(n), "h0");
  b.neg_i1(h);
  return {"basic_i_fwd", System::NSF, b.d, neg(n), {wneg(n)}, true, ""};
}

// (i) backward: ~N |- wneg N.
inline Fixture basic_i_bwd(const FormulaPtr& n) {
  Builder b;
  int h = b.hyp(neg(n), "h0");
  b.neg_to_wneg(System::NSF, h);
  return {"basic_i_bwd", System::NSF, b.d, wneg(n), {neg(n)}, true, ""};
}

// (ii) |- wneg bot and hence |- ~bot via (neg I2) with no open hypotheses.
inline Fixture basic_ii() {
  Builder b;
  int i = b.identity(System::NSF, bot());  // bot -> bot = wneg bot
  b.neg_i2(i);
  return {"basic_ii", System::NSF, b.d, neg(bot()), {}, true, ""};
}

// (iii) |- wneg wneg (A | wneg A), any A, either system.
inline Fixture basic_iii(System sys, const FormulaPtr& a,
                         const std::string& name = "basic_iii") {
  Builder b;
  auto disj = f_or(a, wneg(a));
  int h1a = b.hyp(wneg(disj), "h1");
  int h2 = b.hyp(a, "h2");
  int o1 = b.or_i1(h2, wneg(a));
  int c1 = b.contradict(sys, h1a, o1);
  int w1 = b.imp_i(a, b.bot_e(c1, wneg(wneg(bot()))), {"h2"});  // wneg A
  int o2 = b.or_i2(a, w1);
  int h1b = b.hyp(wneg(disj), "h1");
  int c2 = b.contradict(sys, h1b, o2);
  b.imp_i(wneg(disj), b.bot_e(c2, wneg(wneg(bot()))), {"h1"});
  return {name, sys, b.d, wneg(wneg(disj)), {}, true, ""};
}

// (iv) |- ~A | ~~A, any A, either system.
inline Fixture basic_iv(System sys, const FormulaPtr& a,
                        const std::string& name = "basic_iv") {
  Builder b;
  auto disj = f_or(neg(a), neg(neg(a)));
  int h1a = b.hyp(wneg(disj), "h1");
  int h3 = b.hyp(neg(a), "h3");
  int o1 = b.or_i1(h3, neg(neg(a)));
  int c1 = b.contradict(sys, h1a, o1);
  int w1 = b.imp_i(neg(a), b.bot_e(c1, wneg(wneg(bot()))), {"h3"});  // wneg ~A
  int n1 = detail::neg_i(b, sys, w1);                                // ~~A
  int o2 = b.or_i2(neg(a), n1);
  int h1b = b.hyp(wneg(disj), "h1");
  int c2 = b.contradict(sys, h1b, o2);
  int ww = b.imp_i(wneg(disj), b.bot_e(c2, wneg(wneg(bot()))), {"h1"});
  detail::st_any(b, sys, ww);
  return {name, sys, b.d, disj, {}, true, ""};
}

// (v) |- N | ~N, for GN N, either system.
inline Fixture basic_v(System sys, const FormulaPtr& n,
                       const std::string& name = "basic_v") {
  Builder b;
  auto disj = f_or(n, neg(n));
  int h1a = b.hyp(wneg(disj), "h1");
  int h3 = b.hyp(n, "h3");
  int o1 = b.or_i1(h3, neg(n));
  int c1 = b.contradict(sys, h1a, o1);
  int w1 = b.imp_i(n, b.bot_e(c1, wneg(wneg(bot()))), {"h3"});  // wneg N
  int n1 = detail::neg_i(b, sys, w1);                            // ~N
  int o2 = b.or_i2(n, n1);
  int h1b = b.hyp(wneg(disj), "h1");
  int c2 = b.contradict(sys, h1b, o2);
  int ww = b.imp_i(wneg(disj), b.bot_e(c2, wneg(wneg(bot()))), {"h1"});
  detail::st_any(b, sys, ww);
  return {name, sys, b.d, disj, {}, true, ""};
}

// Shared tail of (vi): given a builder holding N | ~N at step `m`, finish
// ~~N |- N via (or E).
inline int vi_tail(Builder& b, System sys, int m, const FormulaPtr& n,
                   const std::string& premise_label) {
  (void)sys;
  int hc1 = b.hyp(n, "hva");
  int hc2 = b.hyp(neg(n), "hvb");
  int pp = b.hyp(neg(neg(n)), premise_label);
  int ne = b.neg_e(pp, hc2);
  int be = b.bot_e(ne, n);
  return b.or_e(m, hc1, {"hva"}, be, {"hvb"});
}

// (vi) ~~N |- N, for GN N, either system.
inline Fixture basic_vi(System sys, const FormulaPtr& n,
                        const std::string& name = "basic_vi") {
  Fixture v = basic_v(sys, n);
  Builder b;
  int m = b.import(v.derivation);
  vi_tail(b, sys, m, n, "hp");
  return {name, sys, b.d, n, {neg(neg(n))}, true, ""};
}

// (vii) exists x ~N |- ~forall x N, with N(x) = ~P(x). NSF.
inline Fixture basic_vii() {
  auto nx = neg(atom("P", {mk_var("x")}));  // N(x) = ~P(x)
  auto ex = exists("x", neg(nx));
  auto all = forall("x", nx);
  Builder b;
  int maj = b.hyp(ex, "h0");
  int hc = b.hyp(neg(nx), "hc");
  int h4 = b.hyp(all, "h4");
  int fe = b.forall_glo_e(h4, mk_var("x"));        // ww N(x)
  int nw = b.neg_to_wneg(System::NSF, hc);         // wneg N(x)
  int c = b.contradict(System::NSF, fe, nw);
  int w = b.imp_i(all, b.bot_e(c, wneg(wneg(bot()))), {"h4"});  // wneg forall
  int nn = b.neg_i2(w);                            // ~forall x N
  b.exists_glo_e(maj, nn, "x", {"hc"});
  return {"basic_vii", System::NSF, b.d, neg(all), {ex}, true, ""};
}

// Inner derivation for (viii): exists x P(x) |- exists x ~~P(x). NSF.
inline Derivation viii_inner() {
  auto px = atom("P", {mk_var("x")});
  auto target = exists("x", neg(neg(px)));
  Builder b;
  int h = b.hyp(exists("x", px), "h0");
  int ha = b.hyp(px, "ha");
  int hc = b.hyp(neg(px), "hc");
  int ne = b.neg_e(hc, ha);
  int w = b.imp_i(neg(px), b.bot_e(ne, wneg(wneg(bot()))), {"hc"});  // wneg ~P(x)
  int n1 = b.neg_i1(w);                                             // ~~P(x)
  int eg = b.exists_glo_i(n1, target, mk_var("x"));
  int dd = b.dn_intro(System::NSF, eg);                             // ww target
  int el = b.exists_loc_e(h, dd, "x", {"ha"});
  b.st(el);
  return b.d;
}

// (viii) ~~exists x P(x) |- exists x ~~P(x). NSF.
inline Fixture basic_viii() {
  auto px = atom("P", {mk_var("x")});
  auto ex_p = exists("x", px);
  auto ex_nn = exists("x", neg(neg(px)));
  Derivation d1 = viii_inner();                                       // ex_p |- ex_nn
  Derivation d2 = contrapose_neg(System::NSF, d1, ex_p, "h0", "m1");  // ~ex_nn |- ~ex_p
  Derivation d3 = contrapose_neg(System::NSF, d2, neg(ex_nn), "m1", "m2");
  // d3: ~~ex_p |- ~~ex_nn. Close with (vi) for N = ex_nn.
  Fixture v = basic_v(System::NSF, ex_nn);
  Builder b;
  int m = b.import(v.derivation);  // ex_nn | ~ex_nn
  int r3 = b.import(d3);           // ~~ex_nn, open {~~ex_p}
  int hc1 = b.hyp(ex_nn, "hva");
  int hc2 = b.hyp(neg(ex_nn), "hvb");
  int ne = b.neg_e(r3, hc2);
  int be = b.bot_e(ne, ex_nn);
  b.or_e(m, hc1, {"hva"}, be, {"hvb"});
  return {"basic_viii", System::NSF, b.d, ex_nn, {neg(neg(ex_p))}, true, ""};
}

// Modus ponens under wneg wneg as an open-hypothesis fixture.
inline Fixture mp_fixture(System sys) {
  auto a = atom("P", {mk_const("c")});
  auto bq = atom("Q", {mk_const("c")});
  Builder b;
  int pa = b.hyp(wneg(wneg(a)), "p1");
  int pab = b.hyp(wneg(wneg(implies(a, bq))), "p2");
  b.mp_under_ww(sys, pa, pab);
  return {std::string("mp_under_ww_") + to_string(sys), sys, b.d,
          wneg(wneg(bq)), {wneg(wneg(a)), wneg(wneg(implies(a, bq)))}, true, ""};
}

// |- A -> A with no open hypotheses.
inline Fixture identity_fixture(System sys, const FormulaPtr& a) {
  Builder b;
  b.identity(sys, a);
  return {std::string("identity_") + to_string(sys), sys, b.d,
          implies(a, a), {}, true, ""};
}

// Deliberately broken: (neg I2) whose premise keeps a non-GN hypothesis open.
inline Fixture bad_neg_i2() {
  auto q = atom("Q", {mk_const("c")});
  Builder b;
  int h = b.hyp(q, "h0");
  int dd = b.dn_intro(System::NSF, h);  // wneg wneg Q(c) = wneg (wneg Q(c))
  b.neg_i2(dd);                         // ~wneg Q(c), but Q(c) is open and not GN
  return {"bad_neg_i2", System::NSF, b.d, neg(wneg(q)), {q}, false, "gn"};
}

// ---------------------------------------------------------------------------
// NSF_P derivability lemma (section-4.2 facts), with A = P(c), B = Q(c).

// (i) ~~A |- ~wneg A.
inline Fixture p42_i() {
  auto a = atom("P", {mk_const("c")});
  Builder b;
  int h = b.hyp(neg(neg(a)), "h0");
  int e = b.imp_e(b.dne(a), h);  // ww A
  b.neg_i_p(e);
  return {"p42_i", System::NSFP, b.d, neg(wneg(a)), {neg(neg(a))}, true, ""};
}

// (ii) ~~A & ~~B |- ~~(A & B). The premise is used twice, as two labelled
// occurrences of the same hypothesis.
inline Fixture p42_ii() {
  auto a = atom("P", {mk_const("c")});
  auto q = atom("Q", {mk_const("c")});
  auto prem = f_and(neg(neg(a)), neg(neg(q)));
  Builder b;
  int p1 = b.hyp(prem, "h0");
  int p2 = b.hyp(prem, "h0");
  int wwa = b.imp_e(b.dne(a), b.and_e1(p1));  // ww A
  int wwq = b.imp_e(b.dne(q), b.and_e2(p2));  // ww B
  int h1 = b.hyp(neg(f_and(a, q)), "h1");
  int ha = b.hyp(a, "ha");
  int hq = b.hyp(q, "hq");
  int conj = b.and_i(ha, hq);
  int c0 = b.neg_e(h1, conj);
  int wq = b.imp_i(q, b.bot_e(c0, wneg(wneg(bot()))), {"hq"});  // wneg B
  int c1 = b.contradict(System::NSFP, wwq, wq);
  int wa = b.imp_i(a, b.bot_e(c1, wneg(wneg(bot()))), {"ha"});  // wneg A
  int c2 = b.contradict(System::NSFP, wwa, wa);
  int w = b.imp_i(neg(f_and(a, q)), b.bot_e(c2, wneg(wneg(bot()))), {"h1"});
  b.neg_i_p(w);
  return {"p42_ii", System::NSFP, b.d, neg(neg(f_and(a, q))), {prem}, true, ""};
}

// (iii) ~~A & ~B |- ~(A -> B).
inline Fixture p42_iii() {
  auto a = atom("P", {mk_const("c")});
  auto q = atom("Q", {mk_const("c")});
  auto prem = f_and(neg(neg(a)), neg(q));
  Builder b;
  int p1 = b.hyp(prem, "h0");
  int p2 = b.hyp(prem, "h0");
  int wwa = b.imp_e(b.dne(a), b.and_e1(p1));           // ww A
  int wq = b.neg_to_wneg(System::NSFP, b.and_e2(p2));  // wneg B
  int h1 = b.hyp(implies(a, q), "h1");
  int gg = b.dn_intro(System::NSFP, h1);               // ww (A -> B)
  int wwb = b.mp_under_ww(System::NSFP, wwa, gg);      // ww B
  int c = b.contradict(System::NSFP, wwb, wq);
  int w = b.imp_i(implies(a, q), b.bot_e(c, wneg(wneg(bot()))), {"h1"});
  b.neg_i_p(w);
  return {"p42_iii", System::NSFP, b.d, neg(implies(a, q)), {prem}, true, ""};
}

// (iv) ~~(A -> B) |- ~A | ~~B.
inline Fixture p42_iv() {
  auto a = atom("P", {mk_const("c")});
  auto q = atom("Q", {mk_const("c")});
  auto prem = neg(neg(implies(a, q)));
  auto goal = f_or(neg(a), neg(neg(q)));
  Fixture lem = basic_iv(System::NSFP, a);  // |- ~A | ~~A
  Builder b;
  int m = b.import(lem.derivation);
  // case 1: ~A.
  int hc1 = b.hyp(neg(a), "ka");
  int o1 = b.or_i1(hc1, neg(neg(q)));
  // case 2: ~~A; derive ~~B then inject.
  int hc2 = b.hyp(neg(neg(a)), "kb");
  int pp = b.hyp(prem, "h0");
  int wwa = b.imp_e(b.dne(a), hc2);                     // ww A
  int wwab = b.imp_e(b.dne(implies(a, q)), pp);         // ww (A -> B)
  int wwb = b.mp_under_ww(System::NSFP, wwa, wwab);     // ww B
  int h2 = b.hyp(neg(q), "h2");
  int wq = b.neg_to_wneg(System::NSFP, h2);             // wneg B
  int c = b.contradict(System::NSFP, wwb, wq);
  int w = b.imp_i(neg(q), b.bot_e(c, wneg(wneg(bot()))), {"h2"});  // wneg ~B
  int nn = b.neg_i_p(w);                                // ~~B
  int o2 = b.or_i2(neg(a), nn);
  b.or_e(m, o1, {"ka"}, o2, {"kb"});
  return {"p42_iv", System::NSFP, b.d, goal, {prem}, true, ""};
}

// (v) |- S | wneg S for S in ST_P; S = P(c) -> Q(c), so the disjunction is in
// ST_P but not in ST.
inline Fixture p42_v() {
  auto s = implies(atom("P", {mk_const("c")}), atom("Q", {mk_const("c")}));
  Fixture iii = basic_iii(System::NSFP, s);  // |- ww (S | wneg S)
  Builder b;
  int m = b.import(iii.derivation);
  b.st_p(m);
  return {"p42_v", System::NSFP, b.d, f_or(s, wneg(s)), {}, true, ""};
}

// (vi) ~exists x ~A |- forall x A, with A = P(x).
inline Fixture p42_vi() {
  auto px = atom("P", {mk_var("x")});
  auto prem = neg(exists("x", neg(px)));
  Builder b;
  int h = b.hyp(prem, "h0");
  int h2 = b.hyp(neg(px), "h2");
  int eg = b.exists_glo_i(h2, exists("x", neg(px)), mk_var("x"));
  int c = b.neg_e(h, eg);
  int w = b.imp_i(neg(px), b.bot_e(c, wneg(wneg(bot()))), {"h2"});  // wneg ~A
  int nn = b.neg_i_p(w);                                           // ~~A(x)
  int ww = b.imp_e(b.dne(px), nn);                                 // ww A(x)
  b.forall_i_p("x", ww);
  return {"p42_vi", System::NSFP, b.d, forall("x", px), {prem}, true, ""};
}

// (vii) ~~forall x A |- forall x A.
inline Fixture p42_vii() {
  auto all = forall("x", atom("P", {mk_var("x")}));
  Builder b;
  int h = b.hyp(neg(neg(all)), "h0");
  int ww = b.imp_e(b.dne(all), h);
  b.st_p(ww);  // forall x A is ST
  return {"p42_vii", System::NSFP, b.d, all, {neg(neg(all))}, true, ""};
}

// (viii) exists x ~~A |- ~~exists x A, with A = P(x).
inline Fixture p42_viii() {
  auto px = atom("P", {mk_var("x")});
  auto ex = exists("x", px);
  auto prem = exists("x", neg(neg(px)));
  // d0: A(x) |- ~~exists x A via the derived (exists-loc I_P).
  Builder b0;
  int ha = b0.hyp(px, "h0");
  int li = b0.exists_loc_i_p(ha, ex, mk_var("x"));  // ww exists x A
  int h2 = b0.hyp(neg(ex), "h2");
  int wx = b0.neg_to_wneg(System::NSFP, h2);
  int c0 = b0.contradict(System::NSFP, li, wx);
  int w0 = b0.imp_i(neg(ex), b0.bot_e(c0, wneg(wneg(bot()))), {"h2"});
  b0.neg_i_p(w0);  // ~~exists x A
  Derivation d1 = contrapose_neg(System::NSFP, b0.d, px, "h0", "m1");
  // d1: ~~~exists x A |- ~A(x)
  Derivation d2 = contrapose_neg(System::NSFP, d1, neg(neg(neg(ex))), "m1", "m2");
  // d2: ~~A(x) |- ~~~~exists x A
  Builder b;
  int maj = b.hyp(prem, "hmaj");
  int r2 = b.import(d2);
  int ww = b.imp_e(b.dne(neg(neg(ex))), r2);  // ww ~~exists x A
  int fin = b.st_p(ww);                       // ~~exists x A (GN, hence ST)
  b.exists_glo_e(maj, fin, "x", {"m2"});
  return {"p42_viii", System::NSFP, b.d, neg(neg(ex)), {prem}, true, ""};
}

// ---------------------------------------------------------------------------

inline std::vector<Fixture> all_fixtures() {
  auto a = atom("P", {mk_const("c")});
  auto n = neg(a);  // a GN formula
  std::vector<Fixture> out;
  out.push_back(basic_i_fwd(n));
  out.push_back(basic_i_bwd(n));
  out.push_back(basic_ii());
  out.push_back(basic_iii(System::NSF, a));
  out.push_back(basic_iv(System::NSF, a));
  out.push_back(basic_v(System::NSF, n));
  out.push_back(basic_vi(System::NSF, n));
  out.push_back(basic_vii());
  out.push_back(basic_viii());
  out.push_back(mp_fixture(System::NSF));
  out.push_back(mp_fixture(System::NSFP));
  out.push_back(identity_fixture(System::NSF, a));
  out.push_back(identity_fixture(System::NSFP, a));
  out.push_back(p42_i());
  out.push_back(p42_ii());
  out.push_back(p42_iii());
  out.push_back(p42_iv());
  out.push_back(p42_v());
  out.push_back(p42_vi());
  out.push_back(p42_vii());
  out.push_back(p42_viii());
  return out;
}

}  // namespace corpus
}  // namespace sfq
