#pragma once

// Forcing relations: strict finitistic forcing, classical evaluation,
// intuitionistic forcing, and the validity / assertibility / prevalence /
// consequence / stability judgments.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kripke.hpp"
#include "syntax.hpp"

namespace sfq {

// ---------------------------------------------------------------------------
// Strict finitistic forcing

// One evaluation session over a fixed model. Memoizes per-(node, formula)
// verdicts and whole-model scans for the node-independent ~ clause, keyed by
// alpha-normal form. Not safe to share across threads; make one per worker.
class Forcer {
 public:
  explicit Forcer(const StrictFinModel& w) : w_(w) {}

  const StrictFinModel& model() const { return w_; }

  // Open formulas are evaluated as their universal closure.
  bool force(int k, const FormulaPtr& a) {
    return force_closed(k, is_closed(a) ? a : universal_closure(a));
  }

  bool valid(const FormulaPtr& a) { return force(w_.root(), a); }

  bool assertible(const FormulaPtr& a) {
    auto c = is_closed(a) ? a : universal_closure(a);
    for (int k = 0; k < w_.num_nodes(); ++k)
      if (force_closed(k, c)) return true;
    return false;
  }

  bool prevalent(const FormulaPtr& a) {
    auto c = is_closed(a) ? a : universal_closure(a);
    for (int k = 0; k < w_.num_nodes(); ++k) {
      bool above = false;
      for (int j : w_.above(k)) above = above || force_closed(j, c);
      if (!above) return false;
    }
    return true;
  }

 private:
  bool force_closed(int k, const FormulaPtr& a) {
    std::string key = formula_key(a);
    auto it = memo_.find({k, key});
    if (it != memo_.end()) return it->second;
    bool v = eval_closed(k, a);
    memo_[{k, key}] = v;
    return v;
  }

  bool eval_closed(int k, const FormulaPtr& a) {
    switch (a->tag) {
      case FTag::Top: return true;
      case FTag::Bot: return false;
      case FTag::Hole: throw std::runtime_error("cannot force a context hole");
      case FTag::Atom: {
        Tuple t;
        for (const auto& arg : a->args) t.push_back(w_.eval(arg));
        return w_.in_ext(k, a->sym, t);
      }
      case FTag::And: return force_closed(k, a->lhs) && force_closed(k, a->rhs);
      case FTag::Or: return force_closed(k, a->lhs) || force_closed(k, a->rhs);
      case FTag::Implies: {
        // Time-gap clause: every later verification of the antecedent is
        // followed (weakly) by a verification of the consequent.
        for (int k1 : w_.above(k)) {
          if (!force_closed(k1, a->lhs)) continue;
          bool found = false;
          for (int k2 : w_.above(k1)) found = found || force_closed(k2, a->rhs);
          if (!found) return false;
        }
        return true;
      }
      case FTag::Neg: {
        // Node-independent clause: no node of the model forces the body.
        std::string key = formula_key(a->lhs);
        auto it = neg_memo_.find(key);
        if (it != neg_memo_.end()) return !it->second;
        bool somewhere = false;
        for (int l = 0; l < w_.num_nodes(); ++l)
          somewhere = somewhere || force_closed(l, a->lhs);
        neg_memo_[key] = somewhere;
        return !somewhere;
      }
      case FTag::Forall: {
        bool global = quantifier_global(a->lhs, a->sym);
        for (int d = 0; d < w_.num_elems(); ++d) {
          auto inst = substitute(a->lhs, a->sym, mk_name(d));
          auto guard = global ? top() : atom("E", {mk_name(d)});
          if (!force_closed(k, implies(guard, inst))) return false;
        }
        return true;
      }
      case FTag::Exists: {
        bool global = quantifier_global(a->lhs, a->sym);
        for (int d = 0; d < w_.num_elems(); ++d) {
          auto inst = substitute(a->lhs, a->sym, mk_name(d));
          auto body = global ? inst : f_and(atom("E", {mk_name(d)}), inst);
          if (force_closed(k, body)) return true;
        }
        return false;
      }
    }
    return false;
  }

  const StrictFinModel& w_;
  std::map<std::pair<int, std::string>, bool> memo_;
  std::map<std::string, bool> neg_memo_;  // formula key -> forced somewhere
};

inline bool force(const StrictFinModel& w, int k, const FormulaPtr& a) {
  return Forcer(w).force(k, a);
}
inline bool valid(const StrictFinModel& w, const FormulaPtr& a) {
  return Forcer(w).valid(a);
}
inline bool assertible(const StrictFinModel& w, const FormulaPtr& a) {
  return Forcer(w).assertible(a);
}
inline bool prevalent(const StrictFinModel& w, const FormulaPtr& a) {
  return Forcer(w).prevalent(a);
}

// ---------------------------------------------------------------------------
// Semantic consequence

// Substitution action shared by consequence and its certificate: instantiate
// all free variables of conj(Gamma) + A jointly, guarding the not-only-global
// ones by E.
struct ConsequenceInstance {
  int node = -1;
  std::map<std::string, int> assignment;  // variable -> element
};

// Gamma |=^V A over W. Free variables of /\Gamma /\ A are instantiated
// jointly; variables with a non-global occurrence are E-guarded. With empty
// Gamma and open A this reads as validity of the universal closure.
inline bool consequence(const StrictFinModel& w, const std::vector<FormulaPtr>& gamma,
                        const FormulaPtr& a,
                        ConsequenceInstance* counterexample = nullptr) {
  Forcer f(w);
  if (gamma.empty()) {
    if (f.valid(a)) return true;
    if (counterexample) counterexample->node = w.root();
    return false;
  }
  std::vector<FormulaPtr> all = gamma;
  all.push_back(a);
  auto joint = big_and(all);
  auto fv = free_vars(joint);
  std::vector<std::string> guarded, unguarded;
  for (const auto& x : fv)
    (occurrence_mode(joint, x) == OccMode::GlobalOnly ? unguarded : guarded).push_back(x);
  std::vector<std::string> vars = guarded;
  vars.insert(vars.end(), unguarded.begin(), unguarded.end());

  int m = w.num_elems();
  std::vector<int> asg(vars.size(), 0);
  auto check_at = [&](int k) -> bool {
    std::map<std::string, TermPtr> sub;
    for (std::size_t i = 0; i < vars.size(); ++i) sub[vars[i]] = mk_name(asg[i]);
    // Antecedent: E-guards for the guarded variables plus all premises.
    for (std::size_t i = 0; i < guarded.size(); ++i)
      if (!f.force(k, atom("E", {mk_name(asg[i])}))) return true;
    for (const auto& g : gamma)
      if (!f.force(k, substitute_sim(g, sub))) return true;
    return f.force(k, substitute_sim(a, sub));
  };
  // Iterate all assignments (odometer) and nodes.
  while (true) {
    for (int k = 0; k < w.num_nodes(); ++k) {
      if (!check_at(k)) {
        if (counterexample) {
          counterexample->node = k;
          for (std::size_t i = 0; i < vars.size(); ++i)
            counterexample->assignment[vars[i]] = asg[i];
        }
        return false;
      }
    }
    std::size_t i = 0;
    for (; i < asg.size(); ++i) {
      if (++asg[i] < m) break;
      asg[i] = 0;
    }
    if (i == asg.size()) break;
    if (vars.empty()) break;
  }
  return true;
}

// A is stable in W iff wneg wneg A |=^V A.
inline bool stable_in(const StrictFinModel& w, const FormulaPtr& a) {
  return consequence(w, {wneg(wneg(a))}, a);
}

// ---------------------------------------------------------------------------
// Judgments with certificates

struct Judgment {
  std::string kind;  // valid | assertible | prevalent | consequence | stable
  bool verdict = false;
  std::optional<std::string> fail_node;              // node name
  std::map<std::string, std::string> instantiation;  // variable -> element name
  std::string detail;
};

inline Judgment judge(const StrictFinModel& w, const std::string& kind,
                      const FormulaPtr& a,
                      const std::vector<FormulaPtr>& gamma = {}) {
  Judgment j;
  j.kind = kind;
  Forcer f(w);
  if (kind == "valid") {
    j.verdict = f.valid(a);
    if (!j.verdict) {
      for (int k = 0; k < w.num_nodes(); ++k)
        if (!f.force(k, a)) {
          j.fail_node = w.node_names[k];
          break;
        }
      j.detail = "not forced at node " + *j.fail_node;
    }
  } else if (kind == "assertible") {
    j.verdict = f.assertible(a);
    if (!j.verdict) j.detail = "no node forces the formula";
  } else if (kind == "prevalent") {
    j.verdict = f.prevalent(a);
    if (!j.verdict) {
      auto c = is_closed(a) ? a : universal_closure(a);
      for (int k = 0; k < w.num_nodes(); ++k) {
        bool above = false;
        for (int x : w.above(k)) above = above || f.force(x, c);
        if (!above) {
          j.fail_node = w.node_names[k];
          break;
        }
      }
      j.detail = "no node at or above " + *j.fail_node + " forces the formula";
    }
  } else if (kind == "consequence" || kind == "stable") {
    std::vector<FormulaPtr> g = kind == "stable"
                                    ? std::vector<FormulaPtr>{wneg(wneg(a))}
                                    : gamma;
    ConsequenceInstance ce;
    j.verdict = consequence(w, g, a, &ce);
    if (!j.verdict) {
      j.fail_node = w.node_names[ce.node];
      for (const auto& [x, d] : ce.assignment)
        j.instantiation[x] = w.elem_names[d];
      j.detail = "premises forced but conclusion fails at node " + *j.fail_node;
    }
  } else {
    throw std::runtime_error("unknown judgment kind: " + kind);
  }
  return j;
}

// ---------------------------------------------------------------------------
// Classical evaluation

// Standard Tarskian truth; both ~ and wneg behave as classical negation.
// With e_is_domain, E is read as the whole domain (the CQC + forall x E(x)
// correspondence); otherwise E is an ordinary predicate.
inline bool classical_force(const ClassicalStructure& s, const FormulaPtr& a,
                            bool e_is_domain = false) {
  switch (a->tag) {
    case FTag::Top: return true;
    case FTag::Bot: return false;
    case FTag::Hole: throw std::runtime_error("cannot evaluate a context hole");
    case FTag::Atom: {
      if (e_is_domain && a->sym == "E") return true;
      Tuple t;
      for (const auto& arg : a->args) t.push_back(s.eval(arg));
      auto it = s.ext.find(a->sym);
      return it != s.ext.end() && it->second.count(t) > 0;
    }
    case FTag::And:
      return classical_force(s, a->lhs, e_is_domain) && classical_force(s, a->rhs, e_is_domain);
    case FTag::Or:
      return classical_force(s, a->lhs, e_is_domain) || classical_force(s, a->rhs, e_is_domain);
    case FTag::Implies:
      return !classical_force(s, a->lhs, e_is_domain) || classical_force(s, a->rhs, e_is_domain);
    case FTag::Neg: return !classical_force(s, a->lhs, e_is_domain);
    case FTag::Forall: {
      for (int d = 0; d < static_cast<int>(s.elem_names.size()); ++d)
        if (!classical_force(s, substitute(a->lhs, a->sym, mk_name(d)), e_is_domain))
          return false;
      return true;
    }
    case FTag::Exists: {
      for (int d = 0; d < static_cast<int>(s.elem_names.size()); ++d)
        if (classical_force(s, substitute(a->lhs, a->sym, mk_name(d)), e_is_domain))
          return true;
      return false;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Intuitionistic forcing (neg-free fragment only)

inline bool intuit_force(const IntuitionisticModel& w, int k, const FormulaPtr& a0) {
  auto a = is_closed(a0) ? a0 : universal_closure(a0);
  if (has_neg(a))
    throw std::runtime_error("intuitionistic forcing is defined on the neg-free fragment");
  std::function<bool(int, const FormulaPtr&)> go = [&](int node, const FormulaPtr& b) -> bool {
    switch (b->tag) {
      case FTag::Top: return true;
      case FTag::Bot: return false;
      case FTag::Hole: throw std::runtime_error("cannot force a context hole");
      case FTag::Atom: {
        Tuple t;
        for (const auto& arg : b->args) t.push_back(w.eval(arg));
        return w.in_ext(node, b->sym, t);
      }
      case FTag::And: return go(node, b->lhs) && go(node, b->rhs);
      case FTag::Or: return go(node, b->lhs) || go(node, b->rhs);
      case FTag::Implies: {
        // No time-gap: each later verification of the antecedent already
        // carries the consequent.
        for (int k1 : w.above(node))
          if (go(k1, b->lhs) && !go(k1, b->rhs)) return false;
        return true;
      }
      case FTag::Neg: throw std::runtime_error("neg constructor present");
      case FTag::Forall: {
        for (int k1 : w.above(node))
          for (int d : w.domain[k1])
            if (!go(k1, substitute(b->lhs, b->sym, mk_name(d)))) return false;
        return true;
      }
      case FTag::Exists: {
        for (int d : w.domain[node])
          if (go(node, substitute(b->lhs, b->sym, mk_name(d)))) return true;
        return false;
      }
    }
    return false;
  };
  return go(k, a);
}

inline bool intuit_valid(const IntuitionisticModel& w, const FormulaPtr& a) {
  return intuit_force(w, w.root(), a);
}

}  // namespace sfq
