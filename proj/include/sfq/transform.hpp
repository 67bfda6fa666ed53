#pragma once

// Model-to-model and formula-to-formula constructions: contraction,
// generated submodels, preconstruction, classicalization, the star
// translation, M_k membership, occurrence swaps, and the round trips between
// generation structures and intuitionistic models.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "generation.hpp"
#include "kripke.hpp"
#include "semantics.hpp"
#include "syntax.hpp"

namespace sfq {

// Contraction model W|A: two nodes r < k; predicates of A (and E) keep the
// root extension at the root and receive the union over all nodes at the
// leaf; all other predicates are emptied.
inline StrictFinModel contract(const StrictFinModel& w, const FormulaPtr& a) {
  if (!property_report(w).prevalent)
    throw ModelError("contract requires a prevalent model");
  std::set<std::string> preds;
  predicates_of(a, preds);
  preds.insert("E");
  StrictFinModel out;
  out.sig = w.sig;
  out.node_names = {"r", "k"};
  out.frame.parent = {-1, 0};
  std::string reason;
  out.frame.build(reason);
  out.elem_names = w.elem_names;
  out.consts = w.consts;
  out.funcs = w.funcs;
  out.ext.resize(2);
  for (const auto& p : preds) {
    const auto& at_root = w.extension(w.root(), p);
    if (!at_root.empty()) out.ext[0][p] = at_root;
    std::set<Tuple> all;
    for (int k = 0; k < w.num_nodes(); ++k) {
      const auto& e = w.extension(k, p);
      all.insert(e.begin(), e.end());
    }
    if (!all.empty()) out.ext[1][p] = all;
  }
  return out;
}

// Submodel W_k generated by k: nodes {k' >= k}, everything else restricted.
inline StrictFinModel generated_submodel(const StrictFinModel& w, int k) {
  const auto& keep = w.above(k);  // includes k
  std::map<int, int> idx;
  for (std::size_t i = 0; i < keep.size(); ++i) idx[keep[i]] = static_cast<int>(i);
  StrictFinModel out;
  out.sig = w.sig;
  out.elem_names = w.elem_names;
  out.consts = w.consts;
  out.funcs = w.funcs;
  out.frame.parent.assign(keep.size(), -1);
  out.ext.resize(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    int old = keep[i];
    out.node_names.push_back(w.node_names[old]);
    if (old != k) out.frame.parent[i] = idx.at(w.frame.parent[old]);
    out.ext[i] = w.ext[old];
  }
  std::string reason;
  if (!out.frame.build(reason)) throw ModelError("generated submodel: " + reason);
  return out;
}

// W_empty: a two-node model with the root extensions cleared.
inline StrictFinModel preconstruct(const StrictFinModel& w) {
  if (w.num_nodes() != 2) throw ModelError("preconstruct requires a two-node model");
  StrictFinModel out = w;
  out.ext[out.root()].clear();
  return out;
}

// phi(W): the classical structure read off the leaf of a two-node prevalent
// model.
inline ClassicalStructure to_classical(const StrictFinModel& w) {
  auto rep = property_report(w);
  if (w.num_nodes() != 2 || !rep.prevalent)
    throw ModelError("to_classical requires a two-node prevalent model");
  int leaf = w.root() == 0 ? 1 : 0;
  ClassicalStructure s;
  s.sig = w.sig;
  s.elem_names = w.elem_names;
  s.consts = w.consts;
  s.funcs = w.funcs;
  s.ext = w.ext[leaf];
  return s;
}

// The star translation: homomorphic except (exists x A)* = ww exists x (A*).
inline FormulaPtr star(const FormulaPtr& a) {
  switch (a->tag) {
    case FTag::Top:
    case FTag::Bot:
    case FTag::Atom: return a;
    case FTag::And: return f_and(star(a->lhs), star(a->rhs));
    case FTag::Or: return f_or(star(a->lhs), star(a->rhs));
    case FTag::Implies: return implies(star(a->lhs), star(a->rhs));
    case FTag::Forall: return forall(a->sym, star(a->lhs));
    case FTag::Exists: return wneg(wneg(exists(a->sym, star(a->lhs))));
    case FTag::Neg: throw std::invalid_argument("star is defined on neg-free formulas");
    case FTag::Hole: throw std::invalid_argument("star of a context");
  }
  throw std::runtime_error("bad formula");
}

// Membership in M_k: the class of formula occurrences for which forcing of
// F[~B] implies forcing of F[wneg B] at k.
inline bool mk_member(const StrictFinModel& w, int k, const FormulaPtr& f,
                      const FormulaPtr& b) {
  if (!is_context(f)) throw std::invalid_argument("mk_member requires a context");
  switch (f->tag) {
    case FTag::Hole:
    case FTag::Implies:
    case FTag::Neg:
    case FTag::Forall: return true;
    case FTag::And: {
      bool hole_left = hole_count(f->lhs) == 1;
      return mk_member(w, k, hole_left ? f->lhs : f->rhs, b);
    }
    case FTag::Or: {
      bool hole_left = hole_count(f->lhs) == 1;
      const auto& sub = hole_left ? f->lhs : f->rhs;
      const auto& other = hole_left ? f->rhs : f->lhs;
      return mk_member(w, k, sub, b) || force(w, k, other);
    }
    case FTag::Exists: {
      const std::string& x = f->sym;
      auto with_neg = context_fill(f->lhs, neg(b));
      auto with_wneg = context_fill(f->lhs, wneg(b));
      bool c1a = !quantifier_global(with_neg, x);    // exists x (F[~B]) local
      bool c1b = quantifier_global(with_wneg, x);    // exists x (F[wneg B]) global
      if (!c1a && !c1b) return false;
      if (force(w, k, exists(x, with_wneg))) return true;  // (2)(b)
      for (int d = 0; d < w.num_elems(); ++d) {            // (2)(a)
        auto name = mk_name(d);
        if (!force(w, k, substitute(with_neg, x, name))) continue;
        if (!mk_member(w, k, context_subst(f->lhs, x, name), substitute(b, x, name)))
          return false;
      }
      return true;
    }
    default: throw std::runtime_error("bad context");
  }
}

enum class SwapDirection { NegToWneg, WnegToNeg };

// Phi / Psi: occurrence swaps. NegToWneg (Phi) is computed relative to the
// intersection of M_root over the supplied family of preconstructive
// two-node prevalent models, which over-approximates the paper's M.
// WnegToNeg (Psi) needs no membership condition.
inline std::vector<FormulaPtr> swap_neg(const FormulaPtr& a, SwapDirection dir,
                                        const std::vector<StrictFinModel>& family) {
  if (dir == SwapDirection::NegToWneg) {
    if (family.empty()) throw std::invalid_argument("swap_neg requires a nonempty family");
    for (const auto& w : family) {
      auto rep = property_report(w);
      bool ok = rep.two_node && rep.preconstructive && rep.prevalent;
      if (!ok)
        throw ModelError("swap_neg family must be two-node preconstructive prevalent");
    }
  }
  std::vector<FormulaPtr> out;
  std::set<std::string> seen;
  if (dir == SwapDirection::WnegToNeg) {
    for (const auto& [f, b] : analyses(a, NegShape::Wneg)) {
      auto r = context_fill(f, neg(b));
      if (seen.insert(formula_key(r)).second) out.push_back(r);
    }
    return out;
  }
  for (const auto& [f, b] : analyses(a, NegShape::Neg)) {
    bool member = true;
    for (const auto& w : family)
      member = member && mk_member(w, w.root(), f, b);
    if (!member) continue;
    auto r = context_fill(f, wneg(b));
    if (seen.insert(formula_key(r)).second) out.push_back(r);
  }
  return out;
}

// I_G: the intuitionistic model induced by a generation structure. Nodes are
// the generations; the extension at W is the union over W's nodes.
inline IntuitionisticModel gen_to_int(const GenerationStructure& g) {
  validate_gstructure_or_throw(g);
  detail::GCtx ctx(g);
  IntuitionisticModel out;
  out.sig = g.gens[0].sig;
  out.elem_names = ctx.globals;
  out.frame.parent = g.parent;
  std::string reason;
  if (!out.frame.build(reason)) throw ModelError("gen_to_int: " + reason);
  out.domain.resize(g.num_gens());
  out.ext.resize(g.num_gens());
  for (int i = 0; i < g.num_gens(); ++i) {
    const auto& w = g.gens[i];
    out.node_names.push_back("g" + std::to_string(i));
    for (int e = 0; e < w.num_elems(); ++e) out.domain[i].insert(ctx.to_global(i, e));
    for (int k = 0; k < w.num_nodes(); ++k)
      for (const auto& [p, tuples] : w.ext[k])
        for (const auto& t : tuples) {
          Tuple mt;
          for (int x : t) mt.push_back(ctx.to_global(i, x));
          out.ext[i][p].insert(mt);
        }
  }
  // Interpretation: the generation-order clauses force agreement, so the
  // union over generations is consistent; take it from the largest.
  for (int i = 0; i < g.num_gens(); ++i) {
    for (const auto& [c, e] : g.gens[i].consts) out.consts[c] = ctx.to_global(i, e);
    for (const auto& [fn, table] : g.gens[i].funcs)
      for (const auto& [args, val] : table) {
        Tuple margs;
        for (int x : args) margs.push_back(ctx.to_global(i, x));
        out.funcs[fn][margs] = ctx.to_global(i, val);
      }
  }
  return out;
}

// G_I: each node U of I becomes the greatest node of a linear prevalent
// model W_U built along the path from I's root to U, with E read from the
// per-node domains.
inline GenerationStructure int_to_gen(const IntuitionisticModel& i) {
  GenerationStructure g;
  g.parent = i.frame.parent;
  for (int u = 0; u < i.num_nodes(); ++u) {
    // Path from root to u.
    std::vector<int> path;
    for (int v = u; v != -1; v = i.frame.parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    StrictFinModel w;
    w.sig = i.sig;
    // Domain of W_U is D*(U); keep the global element names for identity.
    std::vector<int> glob;                 // local -> global
    std::map<int, int> loc;                // global -> local
    for (int e = 0; e < i.num_elems(); ++e)
      if (i.domain[u].count(e)) {
        loc[e] = static_cast<int>(glob.size());
        glob.push_back(e);
        w.elem_names.push_back(i.elem_names[e]);
      }
    w.frame.parent.assign(path.size(), -1);
    w.ext.resize(path.size());
    for (std::size_t pi = 0; pi < path.size(); ++pi) {
      int up = path[pi];
      w.node_names.push_back(i.node_names[up]);
      if (pi > 0) w.frame.parent[pi] = static_cast<int>(pi) - 1;
      // E extension at U' is D*(U'); other predicates carried over.
      for (int e : i.domain[up]) {
        if (!loc.count(e))
          throw ModelError("int_to_gen: node domain not contained in D*(U)");
        w.ext[pi]["E"].insert({loc.at(e)});
      }
      for (const auto& [p, tuples] : i.ext[up]) {
        if (p == "E") continue;
        for (const auto& t : tuples) {
          Tuple mt;
          for (int x : t) {
            if (!loc.count(x))
              throw ModelError("int_to_gen: extension outside the node domain");
            mt.push_back(loc.at(x));
          }
          w.ext[pi][p].insert(mt);
        }
      }
    }
    std::string reason;
    if (!w.frame.build(reason)) throw ModelError("int_to_gen: " + reason);
    for (const auto& [c, e] : i.consts) {
      if (!loc.count(e)) throw ModelError("int_to_gen: constant outside D*(U)");
      w.consts[c] = loc.at(e);
    }
    for (const auto& [fn, table] : i.funcs)
      for (const auto& [args, val] : table) {
        bool inside = loc.count(val) > 0;
        Tuple margs;
        for (int x : args) {
          if (!loc.count(x)) { inside = false; break; }
          margs.push_back(loc.at(x));
        }
        if (inside) w.funcs[fn][margs] = loc.at(val);
      }
    validate_or_throw(w);
    g.gens.push_back(std::move(w));
  }
  validate_gstructure_or_throw(g);
  return g;
}

}  // namespace sfq
