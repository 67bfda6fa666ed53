#pragma once

// Finite strict finitistic models and intuitionistic models, with full
// structural validation and semantic-property reporting.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "syntax.hpp"

namespace sfq {

using Tuple = std::vector<int>;  // element ids

struct Violation {
  std::string code;    // not_a_tree, empty_domain, interp_not_total,
                       // persistence, strictness, bad_extension, ...
  std::string detail;  // human-readable, includes witnesses
  int node = -1;       // witness node (of the failing extension), or -1
  std::string pred;    // witness predicate, or ""
  Tuple tuple;         // witness tuple, or empty
};

struct ModelError : std::runtime_error {
  std::vector<Violation> violations;
  explicit ModelError(std::vector<Violation> vs)
      : std::runtime_error(vs.empty() ? "invalid model"
                                      : "invalid model: " + vs.front().detail),
        violations(std::move(vs)) {}
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
// Shared frame machinery: rooted tree order from a parent map.
struct Frame {
  std::vector<int> parent;  // -1 at the root
  int root = -1;
  std::vector<std::vector<bool>> leq_;       // leq_[a][b]: a <= b
  std::vector<std::vector<int>> above_;      // nodes >= k, ascending id
  std::vector<std::vector<int>> children_;

  int size() const { return static_cast<int>(parent.size()); }
  bool leq(int a, int b) const { return leq_[a][b]; }
  const std::vector<int>& above(int k) const { return above_[k]; }

  // Returns false (with a reason) unless parent describes a single rooted tree.
  bool build(std::string& reason) {
    int n = size();
    if (n == 0) {
      reason = "no nodes";
      return false;
    }
    root = -1;
    children_.assign(n, {});
    for (int i = 0; i < n; ++i) {
      if (parent[i] < 0) {
        if (root != -1) {
          reason = "multiple roots";
          return false;
        }
        root = i;
      } else if (parent[i] >= n) {
        reason = "parent id out of range";
        return false;
      } else {
        children_[parent[i]].push_back(i);
      }
    }
    if (root == -1) {
      reason = "no root (parent cycle)";
      return false;
    }
    // Every node must reach the root without cycles.
    leq_.assign(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) {
      int cur = i, steps = 0;
      while (cur != -1) {
        leq_[cur][i] = true;  // ancestors are below i
        cur = parent[cur];
        if (++steps > n) {
          reason = "parent cycle";
          return false;
        }
      }
      if (!leq_[root][i]) {
        reason = "node unreachable from root";
        return false;
      }
    }
    above_.assign(n, {});
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        if (leq_[k][j]) above_[k].push_back(j);
    return true;
  }

  bool is_linear() const {
    for (const auto& c : children_)
      if (c.size() > 1) return false;
    return true;
  }
};
}  // namespace detail

// ---------------------------------------------------------------------------
// Strict finitistic models W = <K, <=, D, J, v>

struct StrictFinModel {
  Signature sig;
  std::vector<std::string> node_names;  // index = node id
  detail::Frame frame;                  // frame.parent aligned with node_names
  std::vector<std::string> elem_names;  // index = element id
  std::map<std::string, int> consts;    // constant -> element
  std::map<std::string, std::map<Tuple, int>> funcs;  // function -> total table
  // ext[node][pred] = set of tuples; absent predicate means empty extension.
  std::vector<std::map<std::string, std::set<Tuple>>> ext;

  int root() const { return frame.root; }
  int num_nodes() const { return frame.size(); }
  int num_elems() const { return static_cast<int>(elem_names.size()); }
  bool leq(int a, int b) const { return frame.leq(a, b); }
  const std::vector<int>& above(int k) const { return frame.above(k); }

  static const std::set<Tuple>& empty_ext() {
    static const std::set<Tuple> e;
    return e;
  }
  const std::set<Tuple>& extension(int node, const std::string& pred) const {
    auto it = ext[node].find(pred);
    return it == ext[node].end() ? empty_ext() : it->second;
  }
  bool in_ext(int node, const std::string& pred, const Tuple& t) const {
    return extension(node, pred).count(t) > 0;
  }

  // Evaluate a closed term (variables are an error; names denote themselves).
  int eval(const TermPtr& t) const {
    switch (t->tag) {
      case TermTag::Var:
        throw std::runtime_error("cannot evaluate open term: " + t->sym);
      case TermTag::Const: {
        auto it = consts.find(t->sym);
        if (it == consts.end())
          throw std::runtime_error("uninterpreted constant: " + t->sym);
        return it->second;
      }
      case TermTag::Name:
        if (t->elem < 0 || t->elem >= num_elems())
          throw std::runtime_error("domain name out of range: @" +
                                   std::to_string(t->elem));
        return t->elem;
      case TermTag::App: {
        auto it = funcs.find(t->sym);
        if (it == funcs.end())
          throw std::runtime_error("uninterpreted function: " + t->sym);
        Tuple args;
        for (const auto& a : t->args) args.push_back(eval(a));
        auto jt = it->second.find(args);
        if (jt == it->second.end())
          throw std::runtime_error("function table not total: " + t->sym);
        return jt->second;
      }
    }
    throw std::runtime_error("bad term");
  }
};

// The element set that strictness requires in E^{v(k)}: all tuple elements of
// all extensions at k, backward-closed under function preimages. Forward
// closure under J(f) is deliberately not required.
inline std::set<int> strictness_required(const StrictFinModel& w, int node) {
  std::set<int> need;
  for (const auto& [pred, tuples] : w.ext[node])
    for (const auto& t : tuples) need.insert(t.begin(), t.end());
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [fn, table] : w.funcs)
      for (const auto& [args, val] : table)
        if (need.count(val))
          for (int a : args)
            if (need.insert(a).second) grew = true;
  }
  return need;
}

inline std::vector<Violation> validate(const StrictFinModel& w) {
  std::vector<Violation> out;
  // Frame: callers build the frame; re-verify here on a copy.
  detail::Frame f = w.frame;
  std::string reason;
  if (w.node_names.size() != f.parent.size() || !f.build(reason)) {
    out.push_back({"not_a_tree", reason.empty() ? "node/parent mismatch" : reason, -1, "", {}});
    return out;  // nothing else is meaningful
  }
  if (w.elem_names.empty()) {
    out.push_back({"empty_domain", "domain must be nonempty", -1, "", {}});
    return out;
  }
  try {
    w.sig.validate();
  } catch (const std::exception& e) {
    out.push_back({"bad_signature", e.what(), -1, "", {}});
    return out;
  }
  int n = w.num_nodes(), m = w.num_elems();
  // Interpretation totality.
  for (const auto& c : w.sig.constants) {
    auto it = w.consts.find(c);
    if (it == w.consts.end() || it->second < 0 || it->second >= m)
      out.push_back({"interp_not_total", "constant " + c + " has no valid denotation", -1, "", {}});
  }
  for (const auto& [fn, ar] : w.sig.functions) {
    auto it = w.funcs.find(fn);
    std::size_t expect = 1;
    for (int i = 0; i < ar; ++i) expect *= static_cast<std::size_t>(m);
    if (it == w.funcs.end() || it->second.size() != expect) {
      out.push_back({"interp_not_total", "function " + fn + " table is not total", -1, "", {}});
      continue;
    }
    for (const auto& [args, val] : it->second) {
      bool ok = static_cast<int>(args.size()) == ar && val >= 0 && val < m;
      for (int a : args) ok = ok && a >= 0 && a < m;
      if (!ok)
        out.push_back({"interp_not_total", "function " + fn + " table entry malformed", -1, "", {}});
    }
  }
  // Extensions: declared predicates, correct arity, element range.
  for (int k = 0; k < n; ++k)
    for (const auto& [pred, tuples] : w.ext[k]) {
      auto ar = w.sig.pred_arity(pred);
      if (!ar) {
        out.push_back({"bad_extension", "undeclared predicate " + pred + " at node " +
                       w.node_names[k], k, pred, {}});
        continue;
      }
      for (const auto& t : tuples) {
        bool ok = static_cast<int>(t.size()) == *ar;
        for (int e : t) ok = ok && e >= 0 && e < m;
        if (!ok)
          out.push_back({"bad_extension", "malformed tuple for " + pred + " at node " +
                         w.node_names[k], k, pred, t});
      }
    }
  if (!out.empty()) return out;  // later checks assume well-formed tables
  // Persistence: checking each tree edge suffices by transitivity.
  for (int k = 0; k < n; ++k) {
    int p = f.parent[k];
    if (p < 0) continue;
    for (const auto& [pred, tuples] : w.ext[p])
      for (const auto& t : tuples)
        if (!w.in_ext(k, pred, t))
          out.push_back({"persistence", "tuple in " + pred + " at node " + w.node_names[p] +
                         " missing at successor " + w.node_names[k], p, pred, t});
  }
  // Strictness.
  for (int k = 0; k < n; ++k) {
    auto need = strictness_required(w, k);
    const auto& E = w.extension(k, "E");
    for (int e : need)
      if (!E.count({e})) {
        // Find a witnessing tuple for the report.
        for (const auto& [pred, tuples] : w.ext[k])
          for (const auto& t : tuples)
            if (std::find(t.begin(), t.end(), e) != t.end()) {
              out.push_back({"strictness", "element " + w.elem_names[e] + " required in E at node " +
                             w.node_names[k] + " by " + pred, k, pred, t});
              goto next_elem;
            }
        out.push_back({"strictness", "element " + w.elem_names[e] +
                       " required in E at node " + w.node_names[k] +
                       " via function preimage closure", k, "E", {e}});
      next_elem:;
      }
  }
  return out;
}

// Validate or throw; returns the model for fluent use.
inline const StrictFinModel& validate_or_throw(const StrictFinModel& w) {
  auto vs = validate(w);
  if (!vs.empty()) throw ModelError(std::move(vs));
  return w;
}

// ---------------------------------------------------------------------------
// Property report

struct PropertyReport {
  bool atomic_prevalence = false;
  bool object_prevalence = false;
  bool atomic_decidability = false;
  bool total_constructibility = false;
  bool preconstructive = false;
  bool postconstructive = false;
  bool two_node = false;
  bool linear = false;
  bool prevalent = false;  // atomic_prevalence && object_prevalence
  int term_depth_bound = 3;  // bound used for the pre/postconstructive scans
};

// All denotations of closed base-language terms (no domain names) up to the
// given syntactic depth. Constants have depth 1.
inline std::set<int> base_term_denotations(const StrictFinModel& w, int depth) {
  std::set<int> cur;
  for (const auto& [c, e] : w.consts) cur.insert(e);
  for (int d = 1; d < depth; ++d) {
    std::set<int> next = cur;
    for (const auto& [fn, table] : w.funcs)
      for (const auto& [args, val] : table) {
        bool all = true;
        for (int a : args) all = all && cur.count(a);
        if (all) next.insert(val);
      }
    if (next == cur) break;
    cur = next;
  }
  return cur;
}

inline PropertyReport property_report(const StrictFinModel& w, int term_depth_bound = 3) {
  PropertyReport r;
  r.term_depth_bound = term_depth_bound;
  int n = w.num_nodes(), m = w.num_elems();
  r.two_node = n == 2;
  r.linear = w.frame.is_linear();

  // Atomic prevalence: every atom forced somewhere is forced above every node.
  r.atomic_prevalence = true;
  std::map<std::string, std::set<Tuple>> forced_somewhere;
  for (int k = 0; k < n; ++k)
    for (const auto& [pred, tuples] : w.ext[k])
      forced_somewhere[pred].insert(tuples.begin(), tuples.end());
  for (const auto& [pred, tuples] : forced_somewhere)
    for (const auto& t : tuples)
      for (int k = 0; k < n && r.atomic_prevalence; ++k) {
        bool above = false;
        for (int j : w.above(k)) above = above || w.in_ext(j, pred, t);
        r.atomic_prevalence = above;
      }

  // Object prevalence: every element enters E above every node.
  r.object_prevalence = true;
  for (int e = 0; e < m; ++e)
    for (int k = 0; k < n && r.object_prevalence; ++k) {
      bool above = false;
      for (int j : w.above(k)) above = above || w.in_ext(j, "E", {e});
      r.object_prevalence = above;
    }

  // Atomic decidability: each tuple globally in a predicate or globally out.
  r.atomic_decidability = true;
  for (const auto& [pred, ar] : w.sig.predicates) {
    for (const auto& t : forced_somewhere[pred]) {
      bool everywhere = true;
      for (int k = 0; k < n; ++k) everywhere = everywhere && w.in_ext(k, pred, t);
      if (!everywhere) r.atomic_decidability = false;
    }
    (void)ar;
  }

  // Total constructibility: every element in E somewhere.
  r.total_constructibility = true;
  for (int e = 0; e < m; ++e) {
    bool somewhere = false;
    for (int k = 0; k < n; ++k) somewhere = somewhere || w.in_ext(k, "E", {e});
    r.total_constructibility = r.total_constructibility && somewhere;
  }

  // Preconstructive: no closed L(D)-term (names included, so effectively no
  // element at all) is in E at the root.
  r.preconstructive = w.extension(w.root(), "E").empty();

  // Postconstructive: every closed base-language term denotes into E at the
  // root, up to the term depth bound.
  r.postconstructive = true;
  const auto& rootE = w.extension(w.root(), "E");
  for (int e : base_term_denotations(w, term_depth_bound))
    r.postconstructive = r.postconstructive && rootE.count({e}) > 0;

  r.prevalent = r.atomic_prevalence && r.object_prevalence;
  return r;
}

// ---------------------------------------------------------------------------
// Intuitionistic models (growing domains, per-node extensions)

struct IntuitionisticModel {
  Signature sig;
  std::vector<std::string> node_names;
  detail::Frame frame;
  std::vector<std::string> elem_names;
  std::vector<std::set<int>> domain;  // D(k) per node
  std::map<std::string, int> consts;
  std::map<std::string, std::map<Tuple, int>> funcs;
  std::vector<std::map<std::string, std::set<Tuple>>> ext;

  int root() const { return frame.root; }
  int num_nodes() const { return frame.size(); }
  int num_elems() const { return static_cast<int>(elem_names.size()); }
  bool leq(int a, int b) const { return frame.leq(a, b); }
  const std::vector<int>& above(int k) const { return frame.above(k); }

  const std::set<Tuple>& extension(int node, const std::string& pred) const {
    auto it = ext[node].find(pred);
    return it == ext[node].end() ? StrictFinModel::empty_ext() : it->second;
  }
  bool in_ext(int node, const std::string& pred, const Tuple& t) const {
    return extension(node, pred).count(t) > 0;
  }

  int eval(const TermPtr& t) const {
    switch (t->tag) {
      case TermTag::Var: throw std::runtime_error("cannot evaluate open term: " + t->sym);
      case TermTag::Const: {
        auto it = consts.find(t->sym);
        if (it == consts.end()) throw std::runtime_error("uninterpreted constant: " + t->sym);
        return it->second;
      }
      case TermTag::Name: return t->elem;
      case TermTag::App: {
        auto it = funcs.find(t->sym);
        if (it == funcs.end()) throw std::runtime_error("uninterpreted function: " + t->sym);
        Tuple args;
        for (const auto& a : t->args) args.push_back(eval(a));
        auto jt = it->second.find(args);
        if (jt == it->second.end()) throw std::runtime_error("function table not total: " + t->sym);
        return jt->second;
      }
    }
    throw std::runtime_error("bad term");
  }
};

inline std::vector<Violation> validate(const IntuitionisticModel& w) {
  std::vector<Violation> out;
  detail::Frame f = w.frame;
  std::string reason;
  if (w.node_names.size() != f.parent.size() || !f.build(reason)) {
    out.push_back({"not_a_tree", reason.empty() ? "node/parent mismatch" : reason, -1, "", {}});
    return out;
  }
  int n = w.num_nodes(), m = w.num_elems();
  if (m == 0 || w.domain.size() != static_cast<std::size_t>(n)) {
    out.push_back({"empty_domain", "missing per-node domains", -1, "", {}});
    return out;
  }
  if (w.domain[f.root].empty())
    out.push_back({"empty_domain", "root domain must be nonempty", f.root, "", {}});
  // Domain monotonicity along edges.
  for (int k = 0; k < n; ++k) {
    int p = f.parent[k];
    if (p < 0) continue;
    for (int e : w.domain[p])
      if (!w.domain[k].count(e))
        out.push_back({"domain_monotonicity", "element " + w.elem_names[e] + " vanishes from " +
                       w.node_names[p] + " to " + w.node_names[k], k, "", {e}});
  }
  // Extensions inside the local domain; persistence along edges.
  for (int k = 0; k < n; ++k)
    for (const auto& [pred, tuples] : w.ext[k]) {
      auto ar = w.sig.pred_arity(pred);
      for (const auto& t : tuples) {
        if (!ar || static_cast<int>(t.size()) != *ar) {
          out.push_back({"bad_extension", "bad tuple for " + pred, k, pred, t});
          continue;
        }
        for (int e : t)
          if (!w.domain[k].count(e))
            out.push_back({"bad_extension", "tuple uses element outside D(" + w.node_names[k] + ")",
                           k, pred, t});
      }
    }
  for (int k = 0; k < n; ++k) {
    int p = f.parent[k];
    if (p < 0) continue;
    for (const auto& [pred, tuples] : w.ext[p])
      for (const auto& t : tuples)
        if (!w.in_ext(k, pred, t))
          out.push_back({"persistence", "tuple in " + pred + " at " + w.node_names[p] +
                         " missing at " + w.node_names[k], p, pred, t});
  }
  return out;
}

inline const IntuitionisticModel& validate_or_throw(const IntuitionisticModel& w) {
  auto vs = validate(w);
  if (!vs.empty()) throw ModelError(std::move(vs));
  return w;
}

// ---------------------------------------------------------------------------
// Classical first-order structures (for the transform module)

struct ClassicalStructure {
  Signature sig;
  std::vector<std::string> elem_names;
  std::map<std::string, int> consts;
  std::map<std::string, std::map<Tuple, int>> funcs;
  std::map<std::string, std::set<Tuple>> ext;

  int eval(const TermPtr& t) const {
    switch (t->tag) {
      case TermTag::Var: throw std::runtime_error("cannot evaluate open term: " + t->sym);
      case TermTag::Const: return consts.at(t->sym);
      case TermTag::Name: return t->elem;
      case TermTag::App: {
        Tuple args;
        for (const auto& a : t->args) args.push_back(eval(a));
        return funcs.at(t->sym).at(args);
      }
    }
    throw std::runtime_error("bad term");
  }
};

// ---------------------------------------------------------------------------
// Canonical fixtures

// W0: the paper's two-node model r < k over D = {u} with J(c) = u and the
// only nonempty extension E^{v(k)} = {u}.
inline StrictFinModel make_w0() {
  StrictFinModel w;
  w.sig = Signature::basic();
  w.node_names = {"r", "k"};
  w.frame.parent = {-1, 0};
  std::string reason;
  w.frame.build(reason);
  w.elem_names = {"u"};
  w.consts = {{"c", 0}};
  w.ext.resize(2);
  w.ext[1]["E"] = {{0}};
  return w;
}

}  // namespace sfq
