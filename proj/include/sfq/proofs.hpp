#pragma once

// Proof objects and checkers for the NSF and NSF_P natural deduction systems,
// with every side condition, plus derived-rule macros and the NSF -> NSF_P
// rule-tag lifting.

#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "syntax.hpp"

namespace sfq {

enum class System { NSF, NSFP };

inline std::string to_string(System s) { return s == System::NSF ? "nsf" : "nsfp"; }

// One inference step. Steps live in a flat id-indexed list; premises refer to
// earlier ids and each step is used as a premise at most once (tree shape).
struct Step {
  std::string rule;
  FormulaPtr concl;
  std::vector<int> premises;
  // discharge[i] = labels of hypothesis occurrences closed inside premise i's
  // subderivation by this step.
  std::vector<std::vector<std::string>> discharge;
  std::string label;  // hyp only
  TermPtr term;       // forall_*_e / exists_*_i instantiation
  std::string var;    // exists_*_e eigenvariable
};

struct Derivation {
  std::vector<Step> steps;
  int root() const { return static_cast<int>(steps.size()) - 1; }
};

struct StepFailure {
  int step = -1;
  std::string code;    // scheme, system, gn, st, mode, eigenvar,
                       // eigenvar_e_hyp_strict, discharge, capture, structure
  std::string detail;
};

struct CheckReport {
  System system = System::NSF;
  bool ok = false;
  FormulaPtr conclusion;
  std::vector<std::pair<std::string, FormulaPtr>> open_hypotheses;  // label, formula
  std::vector<StepFailure> failures;
};

namespace detail {

using Hyps = std::vector<std::pair<std::string, FormulaPtr>>;  // open occurrences

inline bool is_ww(const FormulaPtr& f, const FormulaPtr& body) {
  return equal(f, wneg(wneg(body)));
}

inline Hyps remove_labels(const Hyps& hyps, const std::vector<std::string>& labels) {
  Hyps out;
  std::set<std::string> drop(labels.begin(), labels.end());
  for (const auto& h : hyps)
    if (!drop.count(h.first)) out.push_back(h);
  return out;
}

inline bool var_free_in_hyps(const Hyps& hyps, const std::string& x) {
  for (const auto& h : hyps)
    if (free_vars(h.second).count(x)) return true;
  return false;
}

}  // namespace detail

// Verify a derivation in the given system. The whole report is returned even
// on failure; ok iff failures is empty.
inline CheckReport check(const Derivation& d, System sys) {
  CheckReport rep;
  rep.system = sys;
  auto fail = [&](int id, const std::string& code, const std::string& detail) {
    rep.failures.push_back({id, code, detail});
  };
  int n = static_cast<int>(d.steps.size());
  if (n == 0) {
    fail(-1, "structure", "empty derivation");
    return rep;
  }
  // Structural pass: premise ids ascend, tree usage, label consistency.
  std::vector<int> used(n, 0);
  std::map<std::string, FormulaPtr> label_formula;
  for (int i = 0; i < n; ++i) {
    const Step& s = d.steps[i];
    if (!s.concl) {
      fail(i, "structure", "missing conclusion");
      return rep;
    }
    for (int p : s.premises) {
      if (p < 0 || p >= i) {
        fail(i, "structure", "premise id out of order");
        return rep;
      }
      ++used[p];
    }
    if (s.rule == "hyp") {
      if (s.label.empty()) fail(i, "structure", "hypothesis without label");
      auto it = label_formula.find(s.label);
      if (it != label_formula.end() && !equal(it->second, s.concl))
        fail(i, "structure", "label " + s.label + " bound to two different formulas");
      label_formula[s.label] = s.concl;
    }
  }
  for (int i = 0; i < n - 1; ++i)
    if (used[i] != 1) fail(i, "structure", "step must be used exactly once as a premise");
  if (used[n - 1] != 0) fail(n - 1, "structure", "root step cannot be a premise");
  if (!rep.failures.empty()) return rep;

  static const std::set<std::string> nsf_only = {
      "st", "wneg_e", "neg_i1", "neg_i2",
      "forall_glo_i", "forall_loc_i", "forall_glo_e", "forall_loc_e"};
  static const std::set<std::string> nsfp_only = {
      "st_p", "neg_i_p", "forall_i_p", "forall_e_p", "dne", "obj"};

  std::vector<detail::Hyps> open(n);
  for (int i = 0; i < n; ++i) {
    const Step& s = d.steps[i];
    auto C = s.concl;
    auto prem = [&](std::size_t j) { return d.steps[s.premises[j]].concl; };
    auto npr = s.premises.size();
    auto want_prems = [&](std::size_t k) {
      if (npr != k) {
        fail(i, "scheme", "wrong number of premises");
        return false;
      }
      return true;
    };
    auto dis = [&](std::size_t j) -> std::vector<std::string> {
      return j < s.discharge.size() ? s.discharge[j] : std::vector<std::string>{};
    };
    // Discharged labels must match a required formula (vacuous discharge of an
    // unseen label is allowed).
    auto check_discharge = [&](std::size_t j, const std::vector<FormulaPtr>& allowed) {
      for (const auto& l : dis(j)) {
        auto it = label_formula.find(l);
        if (it == label_formula.end()) continue;  // vacuous
        bool ok = false;
        for (const auto& a : allowed) ok = ok || equal(it->second, a);
        if (!ok) fail(i, "discharge", "label " + l + " does not match the dischargeable formula");
      }
    };
    // Default open-hypothesis propagation.
    auto propagate = [&]() {
      detail::Hyps h;
      for (std::size_t j = 0; j < npr; ++j) {
        auto part = detail::remove_labels(open[s.premises[j]], dis(j));
        h.insert(h.end(), part.begin(), part.end());
      }
      open[i] = h;
    };

    if ((sys == System::NSF && nsfp_only.count(s.rule)) ||
        (sys == System::NSFP && nsf_only.count(s.rule))) {
      fail(i, "system", "rule " + s.rule + " is not part of " + to_string(sys));
      propagate();
      continue;
    }

    if (s.rule == "hyp") {
      if (want_prems(0)) open[i] = {{s.label, C}};
    } else if (s.rule == "top_i") {
      if (want_prems(0) && C->tag != FTag::Top) fail(i, "scheme", "conclusion must be top");
      propagate();
    } else if (s.rule == "bot_e") {
      if (want_prems(1) && prem(0)->tag != FTag::Bot)
        fail(i, "scheme", "premise must be bot");
      propagate();
    } else if (s.rule == "and_i") {
      if (want_prems(2) &&
          !(C->tag == FTag::And && equal(C->lhs, prem(0)) && equal(C->rhs, prem(1))))
        fail(i, "scheme", "conclusion must conjoin the premises");
      propagate();
    } else if (s.rule == "and_e1" || s.rule == "and_e2") {
      if (want_prems(1)) {
        if (prem(0)->tag != FTag::And)
          fail(i, "scheme", "premise must be a conjunction");
        else if (!equal(C, s.rule == "and_e1" ? prem(0)->lhs : prem(0)->rhs))
          fail(i, "scheme", "conclusion must be the selected conjunct");
      }
      propagate();
    } else if (s.rule == "or_i1" || s.rule == "or_i2") {
      if (want_prems(1)) {
        if (C->tag != FTag::Or)
          fail(i, "scheme", "conclusion must be a disjunction");
        else if (!equal(s.rule == "or_i1" ? C->lhs : C->rhs, prem(0)))
          fail(i, "scheme", "premise must be the selected disjunct");
      }
      propagate();
    } else if (s.rule == "or_e") {
      if (want_prems(3)) {
        if (prem(0)->tag != FTag::Or)
          fail(i, "scheme", "major premise must be a disjunction");
        else {
          if (!equal(C, prem(1)) || !equal(C, prem(2)))
            fail(i, "scheme", "case conclusions must match");
          check_discharge(1, {prem(0)->lhs});
          check_discharge(2, {prem(0)->rhs});
        }
      }
      propagate();
    } else if (s.rule == "imp_i") {
      if (want_prems(1)) {
        if (C->tag != FTag::Implies)
          fail(i, "scheme", "conclusion must be an implication");
        else {
          if (!detail::is_ww(prem(0), C->rhs))
            fail(i, "scheme", "premise must be wneg wneg of the consequent");
          check_discharge(0, {C->lhs});
        }
      }
      propagate();
    } else if (s.rule == "imp_e") {
      if (want_prems(2)) {
        if (prem(0)->tag != FTag::Implies)
          fail(i, "scheme", "major premise must be an implication");
        else if (!equal(prem(1), prem(0)->lhs))
          fail(i, "scheme", "minor premise must be the antecedent");
        else if (!detail::is_ww(C, prem(0)->rhs))
          fail(i, "scheme", "conclusion must be wneg wneg of the consequent");
      }
      propagate();
    } else if (s.rule == "str1") {
      if (want_prems(1)) {
        bool ok = false;
        if (prem(0)->tag == FTag::Atom)
          for (const auto& t : prem(0)->args) ok = ok || equal(C, atom("E", {t}));
        if (!ok) fail(i, "scheme", "conclusion must be E of a premise-atom argument");
      }
      propagate();
    } else if (s.rule == "str2") {
      if (want_prems(1)) {
        bool ok = false;
        const auto& p = prem(0);
        if (p->tag == FTag::Atom && p->sym == "E" && p->args.size() == 1 &&
            p->args[0]->tag == TermTag::App)
          for (const auto& t : p->args[0]->args) ok = ok || equal(C, atom("E", {t}));
        if (!ok) fail(i, "scheme", "premise must be E(f(...)) and conclusion E of an argument");
      }
      propagate();
    } else if (s.rule == "st" || s.rule == "st_p") {
      if (want_prems(1)) {
        if (!detail::is_ww(prem(0), C))
          fail(i, "scheme", "premise must be wneg wneg of the conclusion");
        auto cls = classify_st(C);
        if (s.rule == "st" && cls != StClass::St)
          fail(i, "st", "conclusion is not an ST formula");
        if (s.rule == "st_p" && cls == StClass::None)
          fail(i, "st", "conclusion is not an ST_P formula");
      }
      propagate();
    } else if (s.rule == "wneg_e") {
      if (want_prems(2)) {
        if (C->tag != FTag::Bot)
          fail(i, "scheme", "conclusion must be bot");
        else if (!equal(prem(0), wneg(prem(1))))
          fail(i, "scheme", "premises must be wneg A and A");
      }
      propagate();
    } else if (s.rule == "neg_e") {
      if (want_prems(2)) {
        if (C->tag != FTag::Bot)
          fail(i, "scheme", "conclusion must be bot");
        else if (!equal(prem(0), neg(prem(1))))
          fail(i, "scheme", "premises must be ~A and A");
      }
      propagate();
    } else if (s.rule == "neg_i1" || s.rule == "neg_i2" || s.rule == "neg_i_p") {
      if (want_prems(1)) {
        if (C->tag != FTag::Neg || !equal(prem(0), wneg(C->lhs)))
          fail(i, "scheme", "from wneg A conclude ~A");
        else if (s.rule == "neg_i1" && !classify_gn(C->lhs))
          fail(i, "gn", "neg_i1 requires a GN formula");
        else if (s.rule == "neg_i2") {
          for (const auto& h : open[s.premises[0]])
            if (!classify_gn(h.second))
              fail(i, "gn", "neg_i2 requires all open hypotheses GN; found " + render(h.second));
        }
      }
      propagate();
    } else if (s.rule == "forall_glo_i" || s.rule == "forall_loc_i" || s.rule == "forall_i_p") {
      if (want_prems(1)) {
        if (C->tag != FTag::Forall)
          fail(i, "scheme", "conclusion must be universal");
        else {
          const std::string& x = C->sym;
          if (!detail::is_ww(prem(0), C->lhs))
            fail(i, "scheme", "premise must be wneg wneg of the matrix");
          bool global = quantifier_global(C->lhs, x);
          if (s.rule == "forall_glo_i" && !global)
            fail(i, "mode", "glo rule requires an only-global variable");
          if (s.rule == "forall_loc_i" && global)
            fail(i, "mode", "loc rule requires a not-only-global variable");
          if (s.rule == "forall_loc_i") check_discharge(0, {atom("E", {mk_var(x)})});
          auto rest = detail::remove_labels(open[s.premises[0]], dis(0));
          if (detail::var_free_in_hyps(rest, x))
            fail(i, "eigenvar", "variable " + x + " free in an open hypothesis");
        }
      }
      propagate();
    } else if (s.rule == "forall_glo_e" || s.rule == "forall_loc_e" || s.rule == "forall_e_p") {
      bool loc = s.rule == "forall_loc_e";
      if (want_prems(loc ? 2 : 1)) {
        if (prem(0)->tag != FTag::Forall || !s.term)
          fail(i, "scheme", "major premise must be universal with an instantiation term");
        else {
          const std::string& x = prem(0)->sym;
          bool global = quantifier_global(prem(0)->lhs, x);
          if (s.rule == "forall_glo_e" && !global)
            fail(i, "mode", "glo rule requires an only-global variable");
          if (loc && global)
            fail(i, "mode", "loc rule requires a not-only-global variable");
          if (loc && !equal(prem(1), atom("E", {s.term})))
            fail(i, "scheme", "minor premise must be E of the instantiation term");
          try {
            if (!detail::is_ww(C, substitute(prem(0)->lhs, x, s.term)))
              fail(i, "scheme", "conclusion must be wneg wneg of the instance");
          } catch (const CaptureError&) {
            fail(i, "capture", "term not free for " + x);
          }
        }
      }
      propagate();
    } else if (s.rule == "exists_glo_i" || s.rule == "exists_loc_i") {
      bool loc = s.rule == "exists_loc_i";
      if (want_prems(loc ? 2 : 1)) {
        if (C->tag != FTag::Exists || !s.term)
          fail(i, "scheme", "conclusion must be existential with an instantiation term");
        else {
          const std::string& x = C->sym;
          bool global = quantifier_global(C->lhs, x);
          if (!loc && !global) fail(i, "mode", "glo rule requires an only-global variable");
          if (loc && global) fail(i, "mode", "loc rule requires a not-only-global variable");
          if (loc && !equal(prem(1), atom("E", {s.term})))
            fail(i, "scheme", "second premise must be E of the witness term");
          try {
            if (!equal(prem(0), substitute(C->lhs, x, s.term)))
              fail(i, "scheme", "premise must be the witness instance");
          } catch (const CaptureError&) {
            fail(i, "capture", "term not free for " + x);
          }
        }
      }
      propagate();
    } else if (s.rule == "exists_glo_e" || s.rule == "exists_loc_e") {
      bool loc = s.rule == "exists_loc_e";
      if (want_prems(2)) {
        if (prem(0)->tag != FTag::Exists || s.var.empty())
          fail(i, "scheme", "major premise must be existential with an eigenvariable");
        else {
          const std::string& y = prem(0)->sym;
          const std::string& x = s.var;
          bool global = quantifier_global(prem(0)->lhs, y);
          if (!loc && !global) fail(i, "mode", "glo rule requires an only-global variable");
          if (loc && global) fail(i, "mode", "loc rule requires a not-only-global variable");
          if (!equal(C, prem(1))) fail(i, "scheme", "conclusion must match the case conclusion");
          FormulaPtr inst;
          try {
            inst = substitute(prem(0)->lhs, y, mk_var(x));
          } catch (const CaptureError&) {
            fail(i, "capture", "eigenvariable not free for " + y);
          }
          if (inst) {
            std::vector<FormulaPtr> allowed = {inst};
            if (loc) allowed.push_back(atom("E", {mk_var(x)}));
            check_discharge(1, allowed);
            if (free_vars(C).count(x))
              fail(i, "eigenvar", "eigenvariable free in the conclusion");
            if (free_vars(prem(0)).count(x))
              fail(i, "eigenvar", "eigenvariable free in the major premise");
            auto rest = detail::remove_labels(open[s.premises[1]], dis(1));
            for (const auto& h : rest)
              if (free_vars(h.second).count(x)) {
                // Strict reading: an undischarged E(x) under the glo rule gets
                // its own failure code so the lenient reading is testable.
                if (!loc && equal(h.second, atom("E", {mk_var(x)})))
                  fail(i, "eigenvar_e_hyp_strict",
                       "undischarged E(" + x + ") under exists_glo_e (strict reading)");
                else
                  fail(i, "eigenvar", "eigenvariable free in open hypothesis " + render(h.second));
              }
          }
        }
      }
      propagate();
    } else if (s.rule == "dne") {
      if (want_prems(0) &&
          !(C->tag == FTag::Implies && equal(C->lhs, neg(neg(C->rhs)))))
        fail(i, "scheme", "dne must conclude ~~A -> A");
      propagate();
    } else if (s.rule == "obj") {
      if (want_prems(0)) {
        bool ok = C->tag == FTag::Forall &&
                  equal(C->lhs, neg(neg(atom("E", {mk_var(C->sym)}))));
        if (!ok) fail(i, "scheme", "obj must conclude forall x ~~E(x)");
      }
      propagate();
    } else {
      fail(i, "structure", "unknown rule " + s.rule);
      propagate();
    }
  }
  rep.conclusion = d.steps[n - 1].concl;
  rep.open_hypotheses = open[n - 1];
  rep.ok = rep.failures.empty();
  return rep;
}

// ---------------------------------------------------------------------------
// Derivation builder

class Builder {
 public:
  Derivation d;

  int fresh_counter = 0;
  std::string fresh_label() { return "_h" + std::to_string(fresh_counter++); }

  int add(Step s) {
    d.steps.push_back(std::move(s));
    return static_cast<int>(d.steps.size()) - 1;
  }
  int hyp(const FormulaPtr& a, const std::string& label) {
    return add({"hyp", a, {}, {}, label, nullptr, ""});
  }
  int top_i() { return add({"top_i", top(), {}, {}, "", nullptr, ""}); }
  int bot_e(int p, const FormulaPtr& concl) {
    return add({"bot_e", concl, {p}, {}, "", nullptr, ""});
  }
  int and_i(int a, int b) {
    return add({"and_i", f_and(d.steps[a].concl, d.steps[b].concl), {a, b}, {}, "", nullptr, ""});
  }
  int and_e1(int p) { return add({"and_e1", d.steps[p].concl->lhs, {p}, {}, "", nullptr, ""}); }
  int and_e2(int p) { return add({"and_e2", d.steps[p].concl->rhs, {p}, {}, "", nullptr, ""}); }
  int or_i1(int p, const FormulaPtr& rhs) {
    return add({"or_i1", f_or(d.steps[p].concl, rhs), {p}, {}, "", nullptr, ""});
  }
  int or_i2(const FormulaPtr& lhs, int p) {
    return add({"or_i2", f_or(lhs, d.steps[p].concl), {p}, {}, "", nullptr, ""});
  }
  int or_e(int maj, int c1, const std::vector<std::string>& dis1, int c2,
           const std::vector<std::string>& dis2) {
    return add({"or_e", d.steps[c1].concl, {maj, c1, c2}, {{}, dis1, dis2}, "", nullptr, ""});
  }
  int imp_i(const FormulaPtr& antecedent, int p, const std::vector<std::string>& dis) {
    // Premise must be wneg wneg B; conclusion antecedent -> B.
    auto b = d.steps[p].concl->lhs->lhs;  // (B->bot)->bot
    return add({"imp_i", implies(antecedent, b), {p}, {dis}, "", nullptr, ""});
  }
  int imp_e(int maj, int min) {
    return add({"imp_e", wneg(wneg(d.steps[maj].concl->rhs)), {maj, min}, {}, "", nullptr, ""});
  }
  int str1(int p, const TermPtr& t) {
    return add({"str1", atom("E", {t}), {p}, {}, "", nullptr, ""});
  }
  int str2(int p, const TermPtr& t) {
    return add({"str2", atom("E", {t}), {p}, {}, "", nullptr, ""});
  }
  int st(int p) { return add({"st", d.steps[p].concl->lhs->lhs, {p}, {}, "", nullptr, ""}); }
  int st_p(int p) { return add({"st_p", d.steps[p].concl->lhs->lhs, {p}, {}, "", nullptr, ""}); }
  int wneg_e(int pw, int pa) { return add({"wneg_e", bot(), {pw, pa}, {}, "", nullptr, ""}); }
  int neg_e(int pn, int pa) { return add({"neg_e", bot(), {pn, pa}, {}, "", nullptr, ""}); }
  int neg_i1(int p) { return add({"neg_i1", neg(d.steps[p].concl->lhs), {p}, {}, "", nullptr, ""}); }
  int neg_i2(int p) { return add({"neg_i2", neg(d.steps[p].concl->lhs), {p}, {}, "", nullptr, ""}); }
  int neg_i_p(int p) {
    return add({"neg_i_p", neg(d.steps[p].concl->lhs), {p}, {}, "", nullptr, ""});
  }
  int forall_glo_i(const std::string& x, int p) {
    return add({"forall_glo_i", forall(x, d.steps[p].concl->lhs->lhs), {p}, {}, "", nullptr, ""});
  }
  int forall_loc_i(const std::string& x, int p, const std::vector<std::string>& disE) {
    return add({"forall_loc_i", forall(x, d.steps[p].concl->lhs->lhs), {p}, {disE}, "", nullptr, ""});
  }
  int forall_i_p(const std::string& x, int p) {
    return add({"forall_i_p", forall(x, d.steps[p].concl->lhs->lhs), {p}, {}, "", nullptr, ""});
  }
  int forall_glo_e(int p, const TermPtr& t) {
    auto body = d.steps[p].concl;
    return add({"forall_glo_e", wneg(wneg(substitute(body->lhs, body->sym, t))),
                {p}, {}, "", t, ""});
  }
  int forall_loc_e(int p, int pe, const TermPtr& t) {
    auto body = d.steps[p].concl;
    return add({"forall_loc_e", wneg(wneg(substitute(body->lhs, body->sym, t))),
                {p, pe}, {}, "", t, ""});
  }
  int forall_e_p(int p, const TermPtr& t) {
    auto body = d.steps[p].concl;
    return add({"forall_e_p", wneg(wneg(substitute(body->lhs, body->sym, t))),
                {p}, {}, "", t, ""});
  }
  int exists_glo_i(int p, const FormulaPtr& concl, const TermPtr& t) {
    return add({"exists_glo_i", concl, {p}, {}, "", t, ""});
  }
  int exists_loc_i(int p, int pe, const FormulaPtr& concl, const TermPtr& t) {
    return add({"exists_loc_i", concl, {p, pe}, {}, "", t, ""});
  }
  int exists_glo_e(int maj, int kase, const std::string& x,
                   const std::vector<std::string>& dis) {
    return add({"exists_glo_e", d.steps[kase].concl, {maj, kase}, {{}, dis}, "", nullptr, x});
  }
  int exists_loc_e(int maj, int kase, const std::string& x,
                   const std::vector<std::string>& dis) {
    return add({"exists_loc_e", d.steps[kase].concl, {maj, kase}, {{}, dis}, "", nullptr, x});
  }
  int dne(const FormulaPtr& a) {
    return add({"dne", implies(neg(neg(a)), a), {}, {}, "", nullptr, ""});
  }
  int obj(const std::string& x) {
    return add({"obj", forall(x, neg(neg(atom("E", {mk_var(x)})))), {}, {}, "", nullptr, ""});
  }

  // -- macros (usable in both systems unless noted) -------------------------

  // From p1: wneg X and p2: X conclude bot. In NSF_P, wneg_e is unavailable,
  // so route through neg_i_p + neg_e.
  int contradict(System sys, int p1, int p2) {
    if (sys == System::NSF) return wneg_e(p1, p2);
    return neg_e(neg_i_p(p1), p2);
  }

  // From p: X conclude wneg wneg X.
  int dn_intro(System sys, int p) {
    auto x = d.steps[p].concl;
    std::string l = fresh_label();
    int h = hyp(wneg(x), l);
    int c = contradict(sys, h, p);
    int b = bot_e(c, wneg(wneg(bot())));
    return imp_i(wneg(x), b, {l});  // wneg X -> bot = wneg wneg X
  }

  // Modus ponens under wneg wneg: from pA: ww A and pAB: ww (A -> B), get ww B.
  int mp_under_ww(System sys, int pA, int pAB) {
    auto A = d.steps[pA].concl->lhs->lhs;
    auto AB = d.steps[pAB].concl->lhs->lhs;
    auto B = AB->rhs;
    std::string l1 = fresh_label(), l2 = fresh_label(), l3 = fresh_label();
    int hB = hyp(wneg(B), l1);
    int hAB = hyp(AB, l2);
    int hA = hyp(A, l3);
    int e1 = imp_e(hAB, hA);  // ww B
    int c1 = contradict(sys, e1, hB);
    int i1 = imp_i(A, bot_e(c1, wneg(wneg(bot()))), {l3});  // wneg A
    int c2 = contradict(sys, pA, i1);
    int i2 = imp_i(AB, bot_e(c2, wneg(wneg(bot()))), {l2});  // wneg (A -> B)
    int c3 = contradict(sys, pAB, i2);
    return imp_i(wneg(B), bot_e(c3, wneg(wneg(bot()))), {l1});  // ww B
  }

  // A -> A with no open hypotheses.
  int identity(System sys, const FormulaPtr& a) {
    std::string l = fresh_label();
    int h = hyp(a, l);
    return imp_i(a, dn_intro(sys, h), {l});
  }

  // From p: neg A conclude wneg A.
  int neg_to_wneg(System sys, int p) {
    auto a = d.steps[p].concl->lhs;
    std::string l = fresh_label();
    int h = hyp(a, l);
    int c = neg_e(p, h);
    return imp_i(a, bot_e(c, wneg(wneg(bot()))), {l});
  }

  // NSF_P only: ww E(t) from the prevalence axioms (DNE) and (Obj).
  int ww_e(const TermPtr& t) {
    int o = obj("x");
    int e1 = forall_e_p(o, t);  // ww ~~E(t)
    int dn = dn_intro(System::NSFP, dne(atom("E", {t})));  // ww (~~E(t) -> E(t))
    return mp_under_ww(System::NSFP, e1, dn);  // ww E(t)
  }

  // Derived (exists-loc I_P): from p: A[t/x] conclude ww exists x A,
  // without an E(t) premise. NSF_P only.
  int exists_loc_i_p(int p, const FormulaPtr& concl_exists, const TermPtr& t) {
    std::string l1 = fresh_label(), l2 = fresh_label();
    int h1 = hyp(wneg(concl_exists), l1);
    int h2 = hyp(atom("E", {t}), l2);
    int e = exists_loc_i(p, h2, concl_exists, t);
    int c1 = contradict(System::NSFP, h1, e);
    int i1 = imp_i(atom("E", {t}), bot_e(c1, wneg(wneg(bot()))), {l2});  // wneg E(t)
    int c2 = contradict(System::NSFP, ww_e(t), i1);
    return imp_i(wneg(concl_exists), bot_e(c2, wneg(wneg(bot()))), {l1});
  }

  // Derived (exists-loc E_P): from maj: exists y A and a case derivation of
  // ww C from [A[x/y]] alone (no E(x) hypothesis), conclude ww C. NSF_P only.
  // The case branch must be built so that its E(x) uses, if any, come from
  // ww_e; here we simply reuse the primitive exists-loc E with an empty E(x)
  // discharge list, which the checker accepts (vacuous discharge).
  int exists_loc_e_p(int maj, int kase, const std::string& x,
                     const std::vector<std::string>& dis) {
    return exists_loc_e(maj, kase, x, dis);
  }

  // Append another derivation's steps, remapping premise indices. Returns the
  // new index of its root. Bumps the fresh-label counter past any "_hN"
  // labels in the imported steps to keep generated labels distinct.
  int import(const Derivation& sub) {
    int offset = static_cast<int>(d.steps.size());
    for (const auto& s : sub.steps) {
      Step t = s;
      for (auto& p : t.premises) p += offset;
      if (t.label.rfind("_h", 0) == 0) {
        int v = std::atoi(t.label.c_str() + 2);
        if (v >= fresh_counter) fresh_counter = v + 1;
      }
      d.steps.push_back(std::move(t));
    }
    return static_cast<int>(d.steps.size()) - 1;
  }
};

// ---------------------------------------------------------------------------
// Derivation transformers

// Contraposition as a transformer: given a derivation of B with an open
// hypothesis A labelled hyp_label, produce a derivation of wneg A whose open
// hypotheses are wneg B plus the other open hypotheses of `sub`.
inline Derivation contrapose(System sys, const Derivation& sub,
                             const FormulaPtr& a, const std::string& hyp_label) {
  Builder bld;
  int pb = bld.import(sub);
  auto b_formula = bld.d.steps[pb].concl;
  std::string l = bld.fresh_label();
  int hw = bld.hyp(wneg(b_formula), l);
  int c = bld.contradict(sys, hw, pb);
  bld.imp_i(a, bld.bot_e(c, wneg(wneg(bot()))), {hyp_label});
  return bld.d;
}

// neg-contraposition: given a derivation of B with an open hypothesis A
// labelled hyp_label, produce a derivation of ~A from a new open hypothesis
// ~B labelled new_label. In NSF this uses (neg I2), so the other open
// hypotheses of `sub` must be GN; in NSF_P it uses (neg I_P).
inline Derivation contrapose_neg(System sys, const Derivation& sub,
                                 const FormulaPtr& a, const std::string& hyp_label,
                                 const std::string& new_label) {
  Builder bld;
  int pb = bld.import(sub);
  auto b_formula = bld.d.steps[pb].concl;
  int hn = bld.hyp(neg(b_formula), new_label);
  int c = bld.neg_e(hn, pb);
  int w = bld.imp_i(a, bld.bot_e(c, wneg(wneg(bot()))), {hyp_label});  // wneg A
  if (sys == System::NSF)
    bld.neg_i2(w);
  else
    bld.neg_i_p(w);
  return bld.d;
}

// Mechanical NSF -> NSF_P rule-tag mapping plus expansions for the rules
// NSF_P lacks. Produces a derivation with the same conclusion and the same
// open hypotheses that checks in NSF_P.
inline Derivation lift_to_nsfp(const Derivation& src) {
  Builder bld;
  std::vector<int> map(src.steps.size(), -1);
  auto remap = [&](const Step& s) {
    Step t = s;
    for (std::size_t j = 0; j < t.premises.size(); ++j)
      t.premises[j] = map[t.premises[j]];
    return t;
  };
  for (std::size_t i = 0; i < src.steps.size(); ++i) {
    const Step& s = src.steps[i];
    const std::string& r = s.rule;
    if (r == "st") {
      Step t = remap(s);
      t.rule = "st_p";
      map[i] = bld.add(std::move(t));
    } else if (r == "neg_i1" || r == "neg_i2") {
      Step t = remap(s);
      t.rule = "neg_i_p";
      map[i] = bld.add(std::move(t));
    } else if (r == "wneg_e") {
      int p1 = map[s.premises[0]], p2 = map[s.premises[1]];
      map[i] = bld.neg_e(bld.neg_i_p(p1), p2);
    } else if (r == "forall_glo_i") {
      Step t = remap(s);
      t.rule = "forall_i_p";
      map[i] = bld.add(std::move(t));
    } else if (r == "forall_glo_e") {
      Step t = remap(s);
      t.rule = "forall_e_p";
      map[i] = bld.add(std::move(t));
    } else if (r == "forall_loc_i") {
      // Premise ww A(x) may depend on E(x) hypotheses (the discharge list).
      // Close them off with imp_i, restore ww A(x) via ww E(x) and MP under
      // ww, then apply (forall I_P).
      int p = map[s.premises[0]];
      const std::string& x = s.concl->sym;
      auto body = s.concl->lhs;       // A(x)
      auto ex = atom("E", {mk_var(x)});
      std::vector<std::string> dis =
          s.discharge.empty() ? std::vector<std::string>{} : s.discharge[0];
      int g = bld.imp_i(ex, p, dis);  // E(x) -> A(x)
      int gg = bld.dn_intro(System::NSFP, g);
      int aa = bld.mp_under_ww(System::NSFP, bld.ww_e(mk_var(x)), gg);  // ww A(x)
      Step t{"forall_i_p", forall(x, body), {aa}, {}, "", nullptr, ""};
      map[i] = bld.add(std::move(t));
    } else if (r == "forall_loc_e") {
      // NSF_P has no E(t) minor premise; keep the dependency by conjoining
      // and projecting so that every original premise is consumed once.
      int p = map[s.premises[0]], pe = map[s.premises[1]];
      int e = bld.forall_e_p(p, s.term);
      map[i] = bld.and_e2(bld.and_i(pe, e));
    } else {
      map[i] = bld.add(remap(s));
    }
  }
  return bld.d;
}

}  // namespace sfq
