#pragma once

// Generation structures: finite prevalent models ordered by a generation
// order, the induced valuation, the generation forcing relation, and
// generation-level validity.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "kripke.hpp"
#include "semantics.hpp"
#include "syntax.hpp"

namespace sfq {

struct NodeInGeneration {
  int gen = -1;
  int node = -1;
};

struct GViolation {
  std::string code;    // not_a_tree, not_prevalent, nodes, order, domain,
                       // interp, extension
  std::string detail;
  int gen_a = -1;
  int gen_b = -1;
  std::string node;
  std::string pred;
};

// Generations are stored as validated strict finitistic models; the order is
// a rooted tree on generation indices (parent[i] < i, parent[0] == -1).
// Shared nodes and elements are identified by name equality.
struct GenerationStructure {
  std::vector<StrictFinModel> gens;
  std::vector<int> parent;

  int num_gens() const { return static_cast<int>(gens.size()); }

  // W_a preceq W_b: a is b or an ancestor of b in the generation tree.
  bool preceq(int a, int b) const {
    for (int g = b; g != -1; g = parent[g])
      if (g == a) return true;
    return false;
  }

  std::vector<int> successors(int a) const {  // all b with a preceq b
    std::vector<int> out;
    for (int b = 0; b < num_gens(); ++b)
      if (preceq(a, b)) out.push_back(b);
    return out;
  }

  int root_gen() const { return 0; }

  // Global element table: union of the generations' domains, by name.
  std::vector<std::string> global_elems() const {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& w : gens)
      for (const auto& e : w.elem_names)
        if (seen.insert(e).second) out.push_back(e);
    return out;
  }
};

namespace detail {

inline int index_of(const std::vector<std::string>& v, const std::string& s) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] == s) return static_cast<int>(i);
  return -1;
}

// Per-call evaluation context: global element naming and per-generation
// local index lookup.
struct GCtx {
  const GenerationStructure& g;
  std::vector<std::string> globals;
  std::vector<std::map<std::string, int>> local;  // per gen: name -> local id

  explicit GCtx(const GenerationStructure& gs) : g(gs), globals(gs.global_elems()) {
    local.resize(gs.num_gens());
    for (int i = 0; i < gs.num_gens(); ++i)
      for (std::size_t e = 0; e < gs.gens[i].elem_names.size(); ++e)
        local[i][gs.gens[i].elem_names[e]] = static_cast<int>(e);
  }

  int to_local(int gen, int global_id) const {
    auto it = local[gen].find(globals[global_id]);
    return it == local[gen].end() ? -1 : it->second;
  }
  int to_global(int gen, int local_id) const {
    return index_of(globals, g.gens[gen].elem_names[local_id]);
  }

  // Evaluate a closed term at a generation; Name terms carry global ids.
  int eval_global(int gen, const TermPtr& t) const {
    const auto& w = g.gens[gen];
    switch (t->tag) {
      case TermTag::Var: throw std::runtime_error("open term in gen_force");
      case TermTag::Const: return to_global(gen, w.consts.at(t->sym));
      case TermTag::Name: return t->elem;
      case TermTag::App: {
        Tuple args;
        for (const auto& a : t->args) {
          int l = to_local(gen, eval_global(gen, a));
          if (l < 0) throw std::runtime_error("term leaves the generation's domain");
          args.push_back(l);
        }
        return to_global(gen, w.funcs.at(t->sym).at(args));
      }
    }
    throw std::runtime_error("bad term");
  }
};

}  // namespace detail

// Validate the generation-order clauses (i)-(v), tree-likeness, and that
// every generation is a valid prevalent model.
inline std::vector<GViolation> validate_gstructure(const GenerationStructure& g) {
  std::vector<GViolation> out;
  int n = g.num_gens();
  if (n == 0 || static_cast<int>(g.parent.size()) != n || g.parent[0] != -1) {
    out.push_back({"not_a_tree", "generation order must be a rooted tree", -1, -1, "", ""});
    return out;
  }
  for (int i = 1; i < n; ++i)
    if (g.parent[i] < 0 || g.parent[i] >= i) {
      out.push_back({"not_a_tree", "parent index out of order", i, -1, "", ""});
      return out;
    }
  for (int i = 0; i < n; ++i) {
    auto vs = validate(g.gens[i]);
    if (!vs.empty()) {
      out.push_back({"not_prevalent", "generation is not a valid model: " + vs[0].code,
                     i, -1, "", ""});
      continue;
    }
    auto rep = property_report(g.gens[i]);
    if (!rep.prevalent)
      out.push_back({"not_prevalent", "generation is not prevalent", i, -1, "", ""});
  }
  if (!out.empty()) return out;

  for (int b = 1; b < n; ++b) {
    int a = g.parent[b];
    const auto& wa = g.gens[a];
    const auto& wb = g.gens[b];
    // (i) node containment by name.
    std::vector<int> node_map(wa.num_nodes(), -1);
    for (int k = 0; k < wa.num_nodes(); ++k) {
      node_map[k] = detail::index_of(wb.node_names, wa.node_names[k]);
      if (node_map[k] < 0)
        out.push_back({"nodes", "node missing in the later generation", a, b,
                       wa.node_names[k], ""});
    }
    if (!out.empty()) return out;
    // (ii) order agreement on shared nodes.
    for (int k = 0; k < wa.num_nodes(); ++k)
      for (int l = 0; l < wa.num_nodes(); ++l)
        if (wa.leq(k, l) != wb.leq(node_map[k], node_map[l]))
          out.push_back({"order", "order disagrees on shared nodes", a, b,
                         wa.node_names[k], ""});
    // (iii) domain containment by name.
    std::vector<int> elem_map(wa.num_elems(), -1);
    for (int e = 0; e < wa.num_elems(); ++e) {
      elem_map[e] = detail::index_of(wb.elem_names, wa.elem_names[e]);
      if (elem_map[e] < 0)
        out.push_back({"domain", "domain element missing: " + wa.elem_names[e],
                       a, b, "", ""});
    }
    if (!out.empty()) return out;
    // (iv) interpretation agreement and function-graph containment.
    for (const auto& [c, e] : wa.consts) {
      auto it = wb.consts.find(c);
      if (it == wb.consts.end() || it->second != elem_map[e])
        out.push_back({"interp", "constant disagrees: " + c, a, b, "", ""});
    }
    for (const auto& [f, table] : wa.funcs) {
      auto it = wb.funcs.find(f);
      for (const auto& [args, val] : table) {
        Tuple margs;
        for (int x : args) margs.push_back(elem_map[x]);
        if (it == wb.funcs.end() || !it->second.count(margs) ||
            it->second.at(margs) != elem_map[val])
          out.push_back({"interp", "function graph not contained: " + f, a, b, "", ""});
      }
    }
    // (v) per-node extension containment.
    for (int k = 0; k < wa.num_nodes(); ++k)
      for (const auto& [p, tuples] : wa.ext[k])
        for (const auto& t : tuples) {
          Tuple mt;
          for (int x : t) mt.push_back(elem_map[x]);
          if (!wb.in_ext(node_map[k], p, mt))
            out.push_back({"extension", "extension shrinks across the order", a, b,
                           wa.node_names[k], p});
        }
  }

  // Induced v_G double persistence: W preceq W' and k <=_{W'} k' implies
  // containment of extensions.
  detail::GCtx ctx(g);
  for (int a = 0; a < n && out.empty(); ++a)
    for (int b : g.successors(a)) {
      const auto& wa = g.gens[a];
      const auto& wb = g.gens[b];
      for (int k = 0; k < wa.num_nodes(); ++k) {
        int kb = detail::index_of(wb.node_names, wa.node_names[k]);
        for (int kp = 0; kp < wb.num_nodes(); ++kp) {
          if (!wb.leq(kb, kp)) continue;
          for (const auto& [p, tuples] : wa.ext[k])
            for (const auto& t : tuples) {
              Tuple mt;
              for (int x : t) {
                int l = ctx.to_local(b, ctx.to_global(a, x));
                mt.push_back(l);
              }
              if (!wb.in_ext(kp, p, mt))
                out.push_back({"extension", "induced valuation fails double persistence",
                               a, b, wa.node_names[k], p});
            }
        }
      }
    }
  return out;
}

inline void validate_gstructure_or_throw(const GenerationStructure& g) {
  auto vs = validate_gstructure(g);
  if (!vs.empty()) throw ModelError(vs[0].code + ": " + vs[0].detail);
}

namespace detail {

inline bool gen_force_closed(const GCtx& ctx, int gen, int node, const FormulaPtr& a) {
  const GenerationStructure& g = ctx.g;
  const StrictFinModel& w = g.gens[gen];
  switch (a->tag) {
    case FTag::Top: return true;
    case FTag::Bot: return false;
    case FTag::Hole: throw std::runtime_error("hole in formula");
    case FTag::Neg:
      throw std::invalid_argument("gen_force is defined on the neg-free language");
    case FTag::Atom: {
      Tuple t;
      for (const auto& arg : a->args) {
        int l = ctx.to_local(gen, ctx.eval_global(gen, arg));
        if (l < 0) return false;
        t.push_back(l);
      }
      return w.in_ext(node, a->sym, t);
    }
    case FTag::And:
      return gen_force_closed(ctx, gen, node, a->lhs) &&
             gen_force_closed(ctx, gen, node, a->rhs);
    case FTag::Or:
      return gen_force_closed(ctx, gen, node, a->lhs) ||
             gen_force_closed(ctx, gen, node, a->rhs);
    case FTag::Implies: {
      const std::string& kname = w.node_names[node];
      for (int gp : g.successors(gen)) {
        const auto& wp = g.gens[gp];
        int k = index_of(wp.node_names, kname);
        for (int kp = 0; kp < wp.num_nodes(); ++kp) {
          if (!wp.leq(k, kp)) continue;
          if (!gen_force_closed(ctx, gp, kp, a->lhs)) continue;
          bool found = false;
          for (int kpp = 0; kpp < wp.num_nodes() && !found; ++kpp)
            found = wp.leq(kp, kpp) && gen_force_closed(ctx, gp, kpp, a->rhs);
          if (!found) return false;
        }
      }
      return true;
    }
    case FTag::Forall: {
      const std::string& kname = w.node_names[node];
      for (int gp : g.successors(gen)) {
        const auto& wp = g.gens[gp];
        int k = index_of(wp.node_names, kname);
        for (int e = 0; e < wp.num_elems(); ++e) {
          auto d = mk_name(ctx.to_global(gp, e));
          auto guarded = implies(atom("E", {d}), substitute(a->lhs, a->sym, d));
          if (!gen_force_closed(ctx, gp, k, guarded)) return false;
        }
      }
      return true;
    }
    case FTag::Exists: {
      for (int e = 0; e < w.num_elems(); ++e) {
        auto d = mk_name(ctx.to_global(gen, e));
        auto wit = f_and(atom("E", {d}), substitute(a->lhs, a->sym, d));
        if (gen_force_closed(ctx, gen, node, wit)) return true;
      }
      return false;
    }
  }
  throw std::runtime_error("bad formula");
}

}  // namespace detail

// Generation forcing; open formulas via universal closure.
inline bool gen_force(const GenerationStructure& g, const NodeInGeneration& at,
                      const FormulaPtr& a) {
  detail::GCtx ctx(g);
  return detail::gen_force_closed(ctx, at.gen, at.node, universal_closure(a));
}

// Valid in G: forced at every node-in-generation. Cross-checked against the
// root characterization; disagreement indicates a persistence bug.
inline bool gen_valid(const GenerationStructure& g, const FormulaPtr& a) {
  detail::GCtx ctx(g);
  auto closed = universal_closure(a);
  bool all = true;
  for (int i = 0; i < g.num_gens() && all; ++i)
    for (int k = 0; k < g.gens[i].num_nodes() && all; ++k)
      all = detail::gen_force_closed(ctx, i, k, closed);
  bool at_root = detail::gen_force_closed(ctx, g.root_gen(),
                                          g.gens[g.root_gen()].root(), closed);
  if (all != at_root)
    throw std::logic_error("gen_valid: root characterization disagrees with "
                           "all-nodes quantification");
  return all;
}

// Postconstructive g-structure: every generation is postconstructive.
inline bool gstructure_postconstructive(const GenerationStructure& g) {
  for (const auto& w : g.gens)
    if (!property_report(w).postconstructive) return false;
  return true;
}

}  // namespace sfq
