#pragma once

// Terms, formulas, formula contexts, substitution, fragment classifiers
// (GN / ST / ST_P), occurrence modes and the concrete text grammar.
//
// Grammar (UTF-8 text):
//   top, bot
//   predicates start uppercase; variables/constants lowercase
//   domain-element names are written @k (k a nonnegative integer)
//   ~A   for global negation
//   wneg A  is sugar for A -> bot
//   infix &, |, -> with precedence ~ > & > | > -> ( -> right-associative)
//   forall x. A   exists x. A   (body extends as far right as possible)

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sfq {

// ---------------------------------------------------------------------------
// Errors

struct SyntaxError : std::runtime_error {
  std::size_t pos;
  SyntaxError(const std::string& msg, std::size_t p)
      : std::runtime_error(msg + " (at position " + std::to_string(p) + ")"),
        pos(p) {}
};

struct CaptureError : std::runtime_error {
  std::string quantifier_var;
  explicit CaptureError(const std::string& var)
      : std::runtime_error("substitution would capture a variable under quantifier binding '" +
                           var + "'"),
        quantifier_var(var) {}
};

// ---------------------------------------------------------------------------
// Terms

enum class TermTag { Var, Const, Name, App };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TermTag tag;
  std::string sym;           // Var / Const / App symbol
  int elem = -1;             // Name: domain element id
  std::vector<TermPtr> args; // App arguments
};

inline TermPtr mk_var(std::string name) {
  return std::make_shared<Term>(Term{TermTag::Var, std::move(name), -1, {}});
}
inline TermPtr mk_const(std::string name) {
  return std::make_shared<Term>(Term{TermTag::Const, std::move(name), -1, {}});
}
inline TermPtr mk_name(int elem) {
  return std::make_shared<Term>(Term{TermTag::Name, "", elem, {}});
}
inline TermPtr mk_app(std::string fn, std::vector<TermPtr> args) {
  return std::make_shared<Term>(Term{TermTag::App, std::move(fn), -1, std::move(args)});
}

inline bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case TermTag::Var:
    case TermTag::Const: return a->sym == b->sym;
    case TermTag::Name: return a->elem == b->elem;
    case TermTag::App:
      if (a->sym != b->sym || a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!term_equal(a->args[i], b->args[i])) return false;
      return true;
  }
  return false;
}

inline std::string render_term(const TermPtr& t) {
  switch (t->tag) {
    case TermTag::Var:
    case TermTag::Const: return t->sym;
    case TermTag::Name: return "@" + std::to_string(t->elem);
    case TermTag::App: {
      std::string out = t->sym + "(";
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        if (i) out += ",";
        out += render_term(t->args[i]);
      }
      return out + ")";
    }
  }
  return "";
}

inline void term_vars(const TermPtr& t, std::set<std::string>& out) {
  if (t->tag == TermTag::Var) out.insert(t->sym);
  for (const auto& a : t->args) term_vars(a, out);
}

inline bool term_has_var(const TermPtr& t, const std::string& x) {
  if (t->tag == TermTag::Var && t->sym == x) return true;
  for (const auto& a : t->args)
    if (term_has_var(a, x)) return true;
  return false;
}

inline bool term_closed(const TermPtr& t) {
  if (t->tag == TermTag::Var) return false;
  for (const auto& a : t->args)
    if (!term_closed(a)) return false;
  return true;
}

// Substitute s for every occurrence of variable x in t.
inline TermPtr term_subst(const TermPtr& t, const std::map<std::string, TermPtr>& m) {
  switch (t->tag) {
    case TermTag::Var: {
      auto it = m.find(t->sym);
      return it == m.end() ? t : it->second;
    }
    case TermTag::Const:
    case TermTag::Name: return t;
    case TermTag::App: {
      std::vector<TermPtr> args;
      args.reserve(t->args.size());
      for (const auto& a : t->args) args.push_back(term_subst(a, m));
      return mk_app(t->sym, std::move(args));
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Signature

struct Signature {
  std::vector<std::string> constants;
  std::vector<std::pair<std::string, int>> functions;   // arity >= 1
  std::vector<std::pair<std::string, int>> predicates;  // arity >= 1, includes unary E

  bool has_const(const std::string& n) const {
    return std::find(constants.begin(), constants.end(), n) != constants.end();
  }
  std::optional<int> func_arity(const std::string& n) const {
    for (const auto& [f, a] : functions)
      if (f == n) return a;
    return std::nullopt;
  }
  std::optional<int> pred_arity(const std::string& n) const {
    for (const auto& [p, a] : predicates)
      if (p == n) return a;
    return std::nullopt;
  }
  void add_pred(const std::string& n, int arity) { predicates.emplace_back(n, arity); }

  // Names pairwise distinct; E present and unary; arities >= 1.
  void validate() const {
    std::set<std::string> seen;
    for (const auto& c : constants)
      if (!seen.insert(c).second) throw std::runtime_error("duplicate symbol: " + c);
    for (const auto& [f, a] : functions) {
      if (!seen.insert(f).second) throw std::runtime_error("duplicate symbol: " + f);
      if (a < 1) throw std::runtime_error("function arity must be >= 1: " + f);
    }
    for (const auto& [p, a] : predicates) {
      if (!seen.insert(p).second) throw std::runtime_error("duplicate symbol: " + p);
      if (a < 1) throw std::runtime_error("predicate arity must be >= 1: " + p);
    }
    auto e = pred_arity("E");
    if (!e || *e != 1) throw std::runtime_error("signature must declare unary predicate E");
  }

  static Signature basic() {
    // A small default: unary E/P/Q and one constant, handy for tests and docs.
    Signature s;
    s.constants = {"c"};
    s.predicates = {{"E", 1}, {"P", 1}, {"Q", 1}};
    return s;
  }
};

// ---------------------------------------------------------------------------
// Formulas (and formula contexts: a context is a formula with exactly one Hole)

enum class FTag { Top, Bot, Atom, And, Or, Implies, Neg, Forall, Exists, Hole };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FTag tag;
  std::string sym;            // Atom: predicate; Forall/Exists: bound variable
  std::vector<TermPtr> args;  // Atom
  FormulaPtr lhs, rhs;        // binary: lhs,rhs; Neg/Forall/Exists: lhs
};

inline FormulaPtr top() { return std::make_shared<Formula>(Formula{FTag::Top, "", {}, nullptr, nullptr}); }
inline FormulaPtr bot() { return std::make_shared<Formula>(Formula{FTag::Bot, "", {}, nullptr, nullptr}); }
inline FormulaPtr hole() { return std::make_shared<Formula>(Formula{FTag::Hole, "", {}, nullptr, nullptr}); }
inline FormulaPtr atom(std::string pred, std::vector<TermPtr> args) {
  return std::make_shared<Formula>(Formula{FTag::Atom, std::move(pred), std::move(args), nullptr, nullptr});
}
inline FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Formula{FTag::And, "", {}, std::move(a), std::move(b)});
}
inline FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Formula{FTag::Or, "", {}, std::move(a), std::move(b)});
}
inline FormulaPtr implies(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Formula{FTag::Implies, "", {}, std::move(a), std::move(b)});
}
inline FormulaPtr neg(FormulaPtr a) {
  return std::make_shared<Formula>(Formula{FTag::Neg, "", {}, std::move(a), nullptr});
}
inline FormulaPtr forall(std::string x, FormulaPtr a) {
  return std::make_shared<Formula>(Formula{FTag::Forall, std::move(x), {}, std::move(a), nullptr});
}
inline FormulaPtr exists(std::string x, FormulaPtr a) {
  return std::make_shared<Formula>(Formula{FTag::Exists, std::move(x), {}, std::move(a), nullptr});
}

// wneg A abbreviates A -> bot; there is no separate constructor.
inline FormulaPtr wneg(FormulaPtr a) { return implies(std::move(a), bot()); }
inline bool is_wneg(const FormulaPtr& a) {
  return a->tag == FTag::Implies && a->rhs->tag == FTag::Bot;
}

inline bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case FTag::Top:
    case FTag::Bot:
    case FTag::Hole: return true;
    case FTag::Atom:
      if (a->sym != b->sym || a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!term_equal(a->args[i], b->args[i])) return false;
      return true;
    case FTag::And:
    case FTag::Or:
    case FTag::Implies: return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    case FTag::Neg: return equal(a->lhs, b->lhs);
    case FTag::Forall:
    case FTag::Exists: return a->sym == b->sym && equal(a->lhs, b->lhs);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Rendering (minimal parentheses; parse(render(A)) == A)

namespace detail {
// Precedence levels: -> 1, | 2, & 3, prefix (~, wneg, quantifiers) 4, atoms 5.
inline std::string render_at(const FormulaPtr& a, int min_prec) {
  auto wrap = [&](int prec, const std::string& s) {
    return prec < min_prec ? "(" + s + ")" : s;
  };
  switch (a->tag) {
    case FTag::Top: return "top";
    case FTag::Bot: return "bot";
    case FTag::Hole: return "*";
    case FTag::Atom: {
      std::string out = a->sym;
      if (!a->args.empty()) {
        out += "(";
        for (std::size_t i = 0; i < a->args.size(); ++i) {
          if (i) out += ",";
          out += render_term(a->args[i]);
        }
        out += ")";
      }
      return out;
    }
    case FTag::Neg: return wrap(4, "~" + render_at(a->lhs, 4));
    // A quantifier body extends maximally to the right, so a quantifier needs
    // parentheses in any position an implication would (precedence 1).
    case FTag::Forall:
      return wrap(1, "forall " + a->sym + ". " + render_at(a->lhs, 1));
    case FTag::Exists:
      return wrap(1, "exists " + a->sym + ". " + render_at(a->lhs, 1));
    case FTag::And:
      return wrap(3, render_at(a->lhs, 3) + " & " + render_at(a->rhs, 4));
    case FTag::Or:
      return wrap(2, render_at(a->lhs, 2) + " | " + render_at(a->rhs, 3));
    case FTag::Implies:
      if (is_wneg(a)) return wrap(4, "wneg " + render_at(a->lhs, 4));
      return wrap(1, render_at(a->lhs, 2) + " -> " + render_at(a->rhs, 1));
  }
  return "";
}
}  // namespace detail

inline std::string render(const FormulaPtr& a) { return detail::render_at(a, 0); }

// ---------------------------------------------------------------------------
// Variables

namespace detail {
inline void free_vars_rec(const FormulaPtr& a, std::set<std::string>& bound,
                          std::set<std::string>& out) {
  switch (a->tag) {
    case FTag::Atom:
      for (const auto& t : a->args) {
        std::set<std::string> vs;
        term_vars(t, vs);
        for (const auto& v : vs)
          if (!bound.count(v)) out.insert(v);
      }
      break;
    case FTag::And:
    case FTag::Or:
    case FTag::Implies:
      free_vars_rec(a->lhs, bound, out);
      free_vars_rec(a->rhs, bound, out);
      break;
    case FTag::Neg: free_vars_rec(a->lhs, bound, out); break;
    case FTag::Forall:
    case FTag::Exists: {
      bool fresh = bound.insert(a->sym).second;
      free_vars_rec(a->lhs, bound, out);
      if (fresh) bound.erase(a->sym);
      break;
    }
    default: break;
  }
}
}  // namespace detail

// Free variables in lexicographic (canonical) order.
inline std::set<std::string> free_vars(const FormulaPtr& a) {
  std::set<std::string> bound, out;
  detail::free_vars_rec(a, bound, out);
  return out;
}

inline bool is_closed(const FormulaPtr& a) { return free_vars(a).empty(); }

inline void all_vars(const FormulaPtr& a, std::set<std::string>& out) {
  switch (a->tag) {
    case FTag::Atom:
      for (const auto& t : a->args) term_vars(t, out);
      break;
    case FTag::And:
    case FTag::Or:
    case FTag::Implies:
      all_vars(a->lhs, out);
      all_vars(a->rhs, out);
      break;
    case FTag::Neg: all_vars(a->lhs, out); break;
    case FTag::Forall:
    case FTag::Exists:
      out.insert(a->sym);
      all_vars(a->lhs, out);
      break;
    default: break;
  }
}

// ---------------------------------------------------------------------------
// Fragment classifiers

// GN ::= bot | ~A | N&N | N|N | N->N | forall x N | exists x N
inline bool classify_gn(const FormulaPtr& a) {
  switch (a->tag) {
    case FTag::Bot: return true;
    case FTag::Neg: return true;
    case FTag::And:
    case FTag::Or:
    case FTag::Implies: return classify_gn(a->lhs) && classify_gn(a->rhs);
    case FTag::Forall:
    case FTag::Exists: return classify_gn(a->lhs);
    default: return false;
  }
}

enum class OccMode { GlobalOnly, Local, Absent };

namespace detail {
inline void occ_rec(const FormulaPtr& a, const std::string& x, bool under_gn,
                    int& global_occs, int& other_occs) {
  bool ug = under_gn || classify_gn(a);
  switch (a->tag) {
    case FTag::Atom:
      for (const auto& t : a->args)
        if (term_has_var(t, x)) (ug ? global_occs : other_occs)++;
      break;
    case FTag::And:
    case FTag::Or:
    case FTag::Implies:
      occ_rec(a->lhs, x, ug, global_occs, other_occs);
      occ_rec(a->rhs, x, ug, global_occs, other_occs);
      break;
    case FTag::Neg: occ_rec(a->lhs, x, ug, global_occs, other_occs); break;
    case FTag::Forall:
    case FTag::Exists:
      if (a->sym != x) occ_rec(a->lhs, x, ug, global_occs, other_occs);
      break;
    default: break;
  }
}
}  // namespace detail

// Mode of the free occurrences of x in A. GlobalOnly iff every free
// occurrence lies inside a GN subformula of A.
inline OccMode occurrence_mode(const FormulaPtr& a, const std::string& x) {
  int g = 0, o = 0;
  detail::occ_rec(a, x, false, g, o);
  if (g == 0 && o == 0) return OccMode::Absent;
  return o == 0 ? OccMode::GlobalOnly : OccMode::Local;
}

// (global occurrences, non-global occurrences) of free x in A; a variable
// with both kinds is reported as "mixed" by the CLI.
inline std::pair<int, int> occurrence_counts(const FormulaPtr& a, const std::string& x) {
  int g = 0, o = 0;
  detail::occ_rec(a, x, false, g, o);
  return {g, o};
}

// Quantifier-mode helper: a quantifier Qx A uses the global clauses iff x
// occurs only globally in A; vacuous quantification counts as local.
inline bool quantifier_global(const FormulaPtr& body, const std::string& x) {
  return occurrence_mode(body, x) == OccMode::GlobalOnly;
}

// ST ::= top | N | S&S | S|N | N|S | (A->B) | forall x A
inline bool classify_st_bool(const FormulaPtr& a) {
  if (a->tag == FTag::Top) return true;
  if (classify_gn(a)) return true;
  switch (a->tag) {
    case FTag::And: return classify_st_bool(a->lhs) && classify_st_bool(a->rhs);
    case FTag::Or:
      return (classify_st_bool(a->lhs) && classify_gn(a->rhs)) ||
             (classify_gn(a->lhs) && classify_st_bool(a->rhs));
    case FTag::Implies: return true;
    case FTag::Forall: return true;
    default: return false;
  }
}

// ST_P ::= S | (S'|S') | (exists x S' global). The paper leaves S' undefined;
// by default S' is read as "ST_P formula" (recursive closure). strict_sprime
// reads S' as "ST formula" for comparison.
inline bool classify_stp_bool(const FormulaPtr& a, bool strict_sprime = false) {
  if (classify_st_bool(a)) return true;
  auto sprime = [&](const FormulaPtr& f) {
    return strict_sprime ? classify_st_bool(f) : classify_stp_bool(f, false);
  };
  if (a->tag == FTag::Or) return sprime(a->lhs) && sprime(a->rhs);
  if (a->tag == FTag::Exists)
    return quantifier_global(a->lhs, a->sym) && sprime(a->lhs);
  return false;
}

enum class StClass { None, St, StP };

inline StClass classify_st(const FormulaPtr& a, bool strict_sprime = false) {
  if (classify_st_bool(a)) return StClass::St;
  if (classify_stp_bool(a, strict_sprime)) return StClass::StP;
  return StClass::None;
}

// ---------------------------------------------------------------------------
// Substitution

// Is t free for x in A (no variable of t would be captured)?
inline bool free_for(const FormulaPtr& a, const std::string& x, const TermPtr& t) {
  switch (a->tag) {
    case FTag::Atom: return true;
    case FTag::And:
    case FTag::Or:
    case FTag::Implies: return free_for(a->lhs, x, t) && free_for(a->rhs, x, t);
    case FTag::Neg: return free_for(a->lhs, x, t);
    case FTag::Forall:
    case FTag::Exists: {
      if (a->sym == x) return true;  // x not free below
      if (!free_vars(a->lhs).count(x)) return true;
      if (term_has_var(t, a->sym)) return false;
      return free_for(a->lhs, x, t);
    }
    default: return true;
  }
}

namespace detail {
inline FormulaPtr subst_rec(const FormulaPtr& a, const std::map<std::string, TermPtr>& m) {
  switch (a->tag) {
    case FTag::Top:
    case FTag::Bot:
    case FTag::Hole: return a;
    case FTag::Atom: {
      std::vector<TermPtr> args;
      args.reserve(a->args.size());
      for (const auto& t : a->args) args.push_back(term_subst(t, m));
      return atom(a->sym, std::move(args));
    }
    case FTag::And: return f_and(subst_rec(a->lhs, m), subst_rec(a->rhs, m));
    case FTag::Or: return f_or(subst_rec(a->lhs, m), subst_rec(a->rhs, m));
    case FTag::Implies: return implies(subst_rec(a->lhs, m), subst_rec(a->rhs, m));
    case FTag::Neg: return neg(subst_rec(a->lhs, m));
    case FTag::Forall:
    case FTag::Exists: {
      auto m2 = m;
      m2.erase(a->sym);
      if (m2.empty()) return a;
      // Capture check: a variable of a substituted term must not be captured.
      auto fv = free_vars(a->lhs);
      for (const auto& [x, t] : m2)
        if (fv.count(x) && term_has_var(t, a->sym)) throw CaptureError(a->sym);
      auto body = subst_rec(a->lhs, m2);
      return a->tag == FTag::Forall ? forall(a->sym, body) : exists(a->sym, body);
    }
  }
  return a;
}
}  // namespace detail

// A[t/x]; throws CaptureError when t is not free for x in A.
inline FormulaPtr substitute(const FormulaPtr& a, const std::string& x, const TermPtr& t) {
  return detail::subst_rec(a, {{x, t}});
}

// Simultaneous substitution A[t1/x1, ..., tn/xn].
inline FormulaPtr substitute_sim(const FormulaPtr& a,
                                 const std::map<std::string, TermPtr>& m) {
  return detail::subst_rec(a, m);
}

// ---------------------------------------------------------------------------
// Alpha renaming and canonical forms

namespace detail {
inline std::string fresh_name(const std::string& base, std::set<std::string>& used) {
  if (!used.count(base)) {
    used.insert(base);
    return base;
  }
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!used.count(cand)) {
      used.insert(cand);
      return cand;
    }
  }
}

inline FormulaPtr alpha_rec(const FormulaPtr& a, std::map<std::string, TermPtr>& ren,
                            std::set<std::string>& used) {
  switch (a->tag) {
    case FTag::Top:
    case FTag::Bot:
    case FTag::Hole: return a;
    case FTag::Atom: {
      std::vector<TermPtr> args;
      for (const auto& t : a->args) args.push_back(term_subst(t, ren));
      return atom(a->sym, std::move(args));
    }
    case FTag::And: {
      auto l = alpha_rec(a->lhs, ren, used);
      return f_and(l, alpha_rec(a->rhs, ren, used));
    }
    case FTag::Or: {
      auto l = alpha_rec(a->lhs, ren, used);
      return f_or(l, alpha_rec(a->rhs, ren, used));
    }
    case FTag::Implies: {
      auto l = alpha_rec(a->lhs, ren, used);
      return implies(l, alpha_rec(a->rhs, ren, used));
    }
    case FTag::Neg: return neg(alpha_rec(a->lhs, ren, used));
    case FTag::Forall:
    case FTag::Exists: {
      std::string nv = fresh_name(a->sym, used);
      auto saved = ren.find(a->sym) != ren.end()
                       ? std::optional<TermPtr>(ren[a->sym])
                       : std::nullopt;
      ren[a->sym] = mk_var(nv);
      auto body = alpha_rec(a->lhs, ren, used);
      if (saved) ren[a->sym] = *saved; else ren.erase(a->sym);
      return a->tag == FTag::Forall ? forall(nv, body) : exists(nv, body);
    }
  }
  return a;
}
}  // namespace detail

// Alpha-variant with pairwise distinct bound variables, none clashing with
// free variables.
inline FormulaPtr alpha_rename(const FormulaPtr& a) {
  std::set<std::string> used = free_vars(a);
  std::map<std::string, TermPtr> ren;
  return detail::alpha_rec(a, ren, used);
}

namespace detail {
inline FormulaPtr alpha_normal_rec(const FormulaPtr& a, std::map<std::string, TermPtr>& ren,
                                   int& counter) {
  switch (a->tag) {
    case FTag::Forall:
    case FTag::Exists: {
      std::string nv = "%" + std::to_string(counter++);
      auto saved = ren.find(a->sym) != ren.end()
                       ? std::optional<TermPtr>(ren[a->sym])
                       : std::nullopt;
      ren[a->sym] = mk_var(nv);
      auto body = alpha_normal_rec(a->lhs, ren, counter);
      if (saved) ren[a->sym] = *saved; else ren.erase(a->sym);
      return a->tag == FTag::Forall ? forall(nv, body) : exists(nv, body);
    }
    case FTag::Atom: {
      std::vector<TermPtr> args;
      for (const auto& t : a->args) args.push_back(term_subst(t, ren));
      return atom(a->sym, std::move(args));
    }
    case FTag::And: {
      auto l = alpha_normal_rec(a->lhs, ren, counter);
      return f_and(l, alpha_normal_rec(a->rhs, ren, counter));
    }
    case FTag::Or: {
      auto l = alpha_normal_rec(a->lhs, ren, counter);
      return f_or(l, alpha_normal_rec(a->rhs, ren, counter));
    }
    case FTag::Implies: {
      auto l = alpha_normal_rec(a->lhs, ren, counter);
      return implies(l, alpha_normal_rec(a->rhs, ren, counter));
    }
    case FTag::Neg: return neg(alpha_normal_rec(a->lhs, ren, counter));
    default: return a;
  }
}
}  // namespace detail

// Canonical bound-variable naming ("%0", "%1", ... in traversal order).
// Used as a memoization key: alpha-equivalent formulas normalize identically.
inline FormulaPtr alpha_normal(const FormulaPtr& a) {
  std::map<std::string, TermPtr> ren;
  int counter = 0;
  return detail::alpha_normal_rec(a, ren, counter);
}

inline std::string formula_key(const FormulaPtr& a) { return render(alpha_normal(a)); }

// Universal closure: forall-prefix over the free variables in lexicographic
// order (outermost = smallest).
inline FormulaPtr universal_closure(const FormulaPtr& a) {
  auto fv = free_vars(a);
  FormulaPtr out = a;
  for (auto it = fv.rbegin(); it != fv.rend(); ++it) out = forall(*it, out);
  return out;
}

// ---------------------------------------------------------------------------
// Formula contexts

inline int hole_count(const FormulaPtr& a) {
  switch (a->tag) {
    case FTag::Hole: return 1;
    case FTag::And:
    case FTag::Or:
    case FTag::Implies: return hole_count(a->lhs) + hole_count(a->rhs);
    case FTag::Neg:
    case FTag::Forall:
    case FTag::Exists: return hole_count(a->lhs);
    default: return 0;
  }
}

inline bool is_context(const FormulaPtr& a) { return hole_count(a) == 1; }

// F[B]: fill the hole. Variables of B may become bound.
inline FormulaPtr context_fill(const FormulaPtr& f, const FormulaPtr& b) {
  switch (f->tag) {
    case FTag::Hole: return b;
    case FTag::And: return f_and(context_fill(f->lhs, b), context_fill(f->rhs, b));
    case FTag::Or: return f_or(context_fill(f->lhs, b), context_fill(f->rhs, b));
    case FTag::Implies: return implies(context_fill(f->lhs, b), context_fill(f->rhs, b));
    case FTag::Neg: return neg(context_fill(f->lhs, b));
    case FTag::Forall: return forall(f->sym, context_fill(f->lhs, b));
    case FTag::Exists: return exists(f->sym, context_fill(f->lhs, b));
    default: return f;
  }
}

// Term substitution on contexts: like formulas, except *[s/x] := *.
inline FormulaPtr context_subst(const FormulaPtr& f, const std::string& x, const TermPtr& t) {
  return detail::subst_rec(f, {{x, t}});
}

enum class NegShape { Neg, Wneg };

namespace detail {
using Analysis = std::pair<FormulaPtr, FormulaPtr>;  // (context F, body B)

// Enumerate negated subformula occurrences; rebuild produces the context.
inline void analyses_go(const FormulaPtr& a, NegShape shape,
                        const std::function<FormulaPtr(FormulaPtr)>& rebuild,
                        std::vector<Analysis>& out) {
  if (shape == NegShape::Neg && a->tag == FTag::Neg)
    out.emplace_back(rebuild(hole()), a->lhs);
  if (shape == NegShape::Wneg && is_wneg(a))
    out.emplace_back(rebuild(hole()), a->lhs);
  switch (a->tag) {
    case FTag::And:
      analyses_go(a->lhs, shape, [&](FormulaPtr h) { return rebuild(f_and(h, a->rhs)); }, out);
      analyses_go(a->rhs, shape, [&](FormulaPtr h) { return rebuild(f_and(a->lhs, h)); }, out);
      break;
    case FTag::Or:
      analyses_go(a->lhs, shape, [&](FormulaPtr h) { return rebuild(f_or(h, a->rhs)); }, out);
      analyses_go(a->rhs, shape, [&](FormulaPtr h) { return rebuild(f_or(a->lhs, h)); }, out);
      break;
    case FTag::Implies:
      analyses_go(a->lhs, shape, [&](FormulaPtr h) { return rebuild(implies(h, a->rhs)); }, out);
      analyses_go(a->rhs, shape, [&](FormulaPtr h) { return rebuild(implies(a->lhs, h)); }, out);
      break;
    case FTag::Neg:
      analyses_go(a->lhs, shape, [&](FormulaPtr h) { return rebuild(neg(h)); }, out);
      break;
    case FTag::Forall:
      analyses_go(a->lhs, shape, [&](FormulaPtr h) { return rebuild(forall(a->sym, h)); }, out);
      break;
    case FTag::Exists:
      analyses_go(a->lhs, shape, [&](FormulaPtr h) { return rebuild(exists(a->sym, h)); }, out);
      break;
    default: break;
  }
}
}  // namespace detail

// All pairs (F, B) with F[~B] = A (shape Neg) or F[wneg B] = A (shape Wneg).
// Positionally distinct occurrences yield distinct contexts.
inline std::vector<std::pair<FormulaPtr, FormulaPtr>> analyses(const FormulaPtr& a,
                                                               NegShape shape) {
  std::vector<detail::Analysis> out;
  detail::analyses_go(a, shape, [](FormulaPtr h) { return h; }, out);
  return out;
}

// ---------------------------------------------------------------------------
// Misc structural helpers

inline void subformulas(const FormulaPtr& a, std::vector<FormulaPtr>& out) {
  out.push_back(a);
  switch (a->tag) {
    case FTag::And:
    case FTag::Or:
    case FTag::Implies:
      subformulas(a->lhs, out);
      subformulas(a->rhs, out);
      break;
    case FTag::Neg:
    case FTag::Forall:
    case FTag::Exists: subformulas(a->lhs, out); break;
    default: break;
  }
}

inline void predicates_of(const FormulaPtr& a, std::set<std::string>& out) {
  switch (a->tag) {
    case FTag::Atom: out.insert(a->sym); break;
    case FTag::And:
    case FTag::Or:
    case FTag::Implies:
      predicates_of(a->lhs, out);
      predicates_of(a->rhs, out);
      break;
    case FTag::Neg:
    case FTag::Forall:
    case FTag::Exists: predicates_of(a->lhs, out); break;
    default: break;
  }
}

inline bool has_neg(const FormulaPtr& a) {
  switch (a->tag) {
    case FTag::Neg: return true;
    case FTag::And:
    case FTag::Or:
    case FTag::Implies: return has_neg(a->lhs) || has_neg(a->rhs);
    case FTag::Forall:
    case FTag::Exists: return has_neg(a->lhs);
    default: return false;
  }
}

inline FormulaPtr big_and(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return top();
  FormulaPtr out = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) out = f_and(out, fs[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace detail {
struct Token {
  enum Kind { Ident, UIdent, Name, LParen, RParen, Comma, Dot, Arrow, Amp, Bar,
              Tilde, KwTop, KwBot, KwWneg, KwForall, KwExists, End } kind;
  std::string text;
  int num = 0;
  std::size_t pos = 0;
};

inline std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Token::Kind k, std::string t, std::size_t p, int n = 0) {
    out.push_back(Token{k, std::move(t), n, p});
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    std::size_t p = i;
    if (c == '(') { push(Token::LParen, "(", p); ++i; continue; }
    if (c == ')') { push(Token::RParen, ")", p); ++i; continue; }
    if (c == ',') { push(Token::Comma, ",", p); ++i; continue; }
    if (c == '.') { push(Token::Dot, ".", p); ++i; continue; }
    if (c == '&') { push(Token::Amp, "&", p); ++i; continue; }
    if (c == '|') { push(Token::Bar, "|", p); ++i; continue; }
    if (c == '~') { push(Token::Tilde, "~", p); ++i; continue; }
    if (c == '-') {
      if (i + 1 < s.size() && s[i + 1] == '>') { push(Token::Arrow, "->", p); i += 2; continue; }
      throw SyntaxError("unexpected character '-'", p);
    }
    if (c == '@') {
      ++i;
      if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
        throw SyntaxError("expected digits after '@'", p);
      int n = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
        n = n * 10 + (s[i++] - '0');
      push(Token::Name, "@", p, n);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      std::string id = s.substr(i, j - i);
      i = j;
      if (id == "top") push(Token::KwTop, id, p);
      else if (id == "bot") push(Token::KwBot, id, p);
      else if (id == "wneg") push(Token::KwWneg, id, p);
      else if (id == "forall") push(Token::KwForall, id, p);
      else if (id == "exists") push(Token::KwExists, id, p);
      else if (std::isupper(static_cast<unsigned char>(id[0]))) push(Token::UIdent, id, p);
      else push(Token::Ident, id, p);
      continue;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", p);
  }
  out.push_back(Token{Token::End, "", 0, s.size()});
  return out;
}

struct Parser {
  const std::vector<Token>& toks;
  std::size_t i = 0;
  Signature* sig;      // when extend=true, unseen predicates are registered
  bool extend;

  const Token& peek() const { return toks[i]; }
  Token next() { return toks[i++]; }
  void expect(Token::Kind k, const char* what) {
    if (peek().kind != k) throw SyntaxError(std::string("expected ") + what, peek().pos);
    ++i;
  }

  TermPtr parse_term() {
    const Token& t = peek();
    if (t.kind == Token::Name) { next(); return mk_name(t.num); }
    if (t.kind != Token::Ident)
      throw SyntaxError("expected a term", t.pos);
    next();
    if (auto fa = sig->func_arity(t.text)) {
      expect(Token::LParen, "'(' after function symbol");
      std::vector<TermPtr> args;
      args.push_back(parse_term());
      while (peek().kind == Token::Comma) { next(); args.push_back(parse_term()); }
      expect(Token::RParen, "')'");
      if (static_cast<int>(args.size()) != *fa)
        throw SyntaxError("arity mismatch for function " + t.text, t.pos);
      return mk_app(t.text, std::move(args));
    }
    if (peek().kind == Token::LParen)
      throw SyntaxError("undeclared function symbol " + t.text, t.pos);
    if (sig->has_const(t.text)) return mk_const(t.text);
    return mk_var(t.text);  // undeclared lowercase identifiers are variables
  }

  FormulaPtr parse_atom_or_paren() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::KwTop: next(); return top();
      case Token::KwBot: next(); return bot();
      case Token::LParen: {
        next();
        auto f = parse_imp();
        expect(Token::RParen, "')'");
        return f;
      }
      case Token::UIdent: {
        next();
        std::vector<TermPtr> args;
        if (peek().kind == Token::LParen) {
          next();
          args.push_back(parse_term());
          while (peek().kind == Token::Comma) { next(); args.push_back(parse_term()); }
          expect(Token::RParen, "')'");
        }
        auto pa = sig->pred_arity(t.text);
        if (!pa) {
          if (!extend) throw SyntaxError("undeclared predicate " + t.text, t.pos);
          sig->add_pred(t.text, static_cast<int>(args.size()));
        } else if (static_cast<int>(args.size()) != *pa) {
          throw SyntaxError("arity mismatch for predicate " + t.text, t.pos);
        }
        return atom(t.text, std::move(args));
      }
      default: throw SyntaxError("expected a formula", t.pos);
    }
  }

  FormulaPtr parse_unary() {
    const Token& t = peek();
    if (t.kind == Token::Tilde) { next(); return neg(parse_unary()); }
    if (t.kind == Token::KwWneg) { next(); return wneg(parse_unary()); }
    if (t.kind == Token::KwForall || t.kind == Token::KwExists) {
      bool uni = t.kind == Token::KwForall;
      next();
      if (peek().kind != Token::Ident)
        throw SyntaxError("expected a variable after quantifier", peek().pos);
      std::string v = next().text;
      if (sig->has_const(v))
        throw SyntaxError("cannot bind declared constant " + v, t.pos);
      expect(Token::Dot, "'.' after quantified variable");
      auto body = parse_imp();
      return uni ? forall(v, body) : exists(v, body);
    }
    return parse_atom_or_paren();
  }

  FormulaPtr parse_and() {
    auto f = parse_unary();
    while (peek().kind == Token::Amp) { next(); f = f_and(f, parse_unary()); }
    return f;
  }

  FormulaPtr parse_or() {
    auto f = parse_and();
    while (peek().kind == Token::Bar) { next(); f = f_or(f, parse_and()); }
    return f;
  }

  FormulaPtr parse_imp() {
    auto f = parse_or();
    if (peek().kind == Token::Arrow) { next(); return implies(f, parse_imp()); }
    return f;
  }
};
}  // namespace detail

// Parse against a fixed signature; all predicates/functions must be declared.
inline FormulaPtr parse(const std::string& text, const Signature& sig) {
  auto toks = detail::lex(text);
  Signature copy = sig;
  detail::Parser p{toks, 0, &copy, false};
  auto f = p.parse_imp();
  if (p.peek().kind != detail::Token::End)
    throw SyntaxError("trailing input", p.peek().pos);
  return f;
}

// Parse a single term against a fixed signature.
inline TermPtr parse_term(const std::string& text, const Signature& sig) {
  auto toks = detail::lex(text);
  Signature copy = sig;
  detail::Parser p{toks, 0, &copy, false};
  auto t = p.parse_term();
  if (p.peek().kind != detail::Token::End)
    throw SyntaxError("trailing input", p.peek().pos);
  return t;
}

// Parse while registering unseen predicates into sig (arity from first use).
inline FormulaPtr parse_extend(const std::string& text, Signature& sig) {
  auto toks = detail::lex(text);
  detail::Parser p{toks, 0, &sig, true};
  auto f = p.parse_imp();
  if (p.peek().kind != detail::Token::End)
    throw SyntaxError("trailing input", p.peek().pos);
  return f;
}

}  // namespace sfq
