#pragma once

// JSON document formats: models, proofs, generation structures. One file =
// one object; formulas and terms are stored as grammar text so fixtures stay
// readable. Loaders validate through the owning module; savers emit a
// canonical form (sorted keys, empty fields omitted) so load -> save -> load
// is a fixpoint.

#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "generation.hpp"
#include "kripke.hpp"
#include "proofs.hpp"
#include "syntax.hpp"

namespace sfq {

using Json = nlohmann::ordered_json;

struct DocError : std::runtime_error {
  explicit DocError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw DocError(std::string("missing field: ") + name);
  return j.at(name);
}

inline int elem_id(const std::vector<std::string>& names, const std::string& n,
                   const char* what) {
  int i = index_of(names, n);
  if (i < 0) throw DocError(std::string("unknown ") + what + ": " + n);
  return i;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Signature block

inline Json save_signature(const Signature& sig) {
  Json j;
  j["constants"] = sig.constants;
  Json funcs = Json::object();
  for (const auto& [f, a] : sig.functions) funcs[f] = a;
  j["functions"] = funcs;
  Json preds = Json::object();
  for (const auto& [p, a] : sig.predicates) preds[p] = a;
  j["predicates"] = preds;
  return j;
}

inline Signature load_signature(const Json& j) {
  Signature sig;
  for (const auto& c : detail::field(j, "constants"))
    sig.constants.push_back(c.get<std::string>());
  for (const auto& [f, a] : detail::field(j, "functions").items())
    sig.functions.emplace_back(f, a.get<int>());
  for (const auto& [p, a] : detail::field(j, "predicates").items())
    sig.predicates.emplace_back(p, a.get<int>());
  sig.validate();
  return sig;
}

// ---------------------------------------------------------------------------
// Model documents

inline Json save_model(const StrictFinModel& w) {
  Json j;
  j["signature"] = save_signature(w.sig);
  Json nodes = Json::array();
  for (int k = 0; k < w.num_nodes(); ++k) {
    Json n;
    n["id"] = w.node_names[k];
    int p = w.frame.parent[k];
    if (p < 0) n["parent"] = nullptr;
    else n["parent"] = w.node_names[p];
    nodes.push_back(n);
  }
  j["nodes"] = nodes;
  j["domain"] = w.elem_names;
  Json interp;
  Json consts = Json::object();
  for (const auto& [c, e] : w.consts) consts[c] = w.elem_names[e];
  interp["constants"] = consts;
  Json funcs = Json::object();
  for (const auto& [f, table] : w.funcs) {
    Json rows = Json::array();
    for (const auto& [args, val] : table) {
      Json row;
      Json as = Json::array();
      for (int x : args) as.push_back(w.elem_names[x]);
      row["args"] = as;
      row["value"] = w.elem_names[val];
      rows.push_back(row);
    }
    funcs[f] = rows;
  }
  interp["functions"] = funcs;
  j["interp"] = interp;
  Json exts = Json::object();
  for (int k = 0; k < w.num_nodes(); ++k) {
    if (w.ext[k].empty()) continue;
    Json per = Json::object();
    for (const auto& [p, tuples] : w.ext[k]) {
      Json ts = Json::array();
      for (const auto& t : tuples) {
        Json row = Json::array();
        for (int x : t) row.push_back(w.elem_names[x]);
        ts.push_back(row);
      }
      per[p] = ts;
    }
    exts[w.node_names[k]] = per;
  }
  if (!exts.empty()) j["extensions"] = exts;
  return j;
}

inline StrictFinModel load_model(const Json& j) {
  StrictFinModel w;
  w.sig = load_signature(detail::field(j, "signature"));
  std::vector<std::string> parents;
  for (const auto& n : detail::field(j, "nodes")) {
    w.node_names.push_back(detail::field(n, "id").get<std::string>());
    const auto& p = detail::field(n, "parent");
    parents.push_back(p.is_null() ? "" : p.get<std::string>());
  }
  for (const auto& p : parents)
    w.frame.parent.push_back(
        p.empty() ? -1 : detail::elem_id(w.node_names, p, "parent node"));
  std::string reason;
  if (!w.frame.build(reason)) throw DocError("nodes: " + reason);
  for (const auto& e : detail::field(j, "domain"))
    w.elem_names.push_back(e.get<std::string>());
  const Json& interp = detail::field(j, "interp");
  for (const auto& [c, e] : detail::field(interp, "constants").items())
    w.consts[c] = detail::elem_id(w.elem_names, e.get<std::string>(), "element");
  for (const auto& [f, rows] : detail::field(interp, "functions").items())
    for (const auto& row : rows) {
      Tuple args;
      for (const auto& a : detail::field(row, "args"))
        args.push_back(detail::elem_id(w.elem_names, a.get<std::string>(), "element"));
      w.funcs[f][args] = detail::elem_id(
          w.elem_names, detail::field(row, "value").get<std::string>(), "element");
    }
  w.ext.resize(w.num_nodes());
  if (j.contains("extensions"))
    for (const auto& [node, per] : j.at("extensions").items()) {
      int k = detail::elem_id(w.node_names, node, "node");
      for (const auto& [p, tuples] : per.items())
        for (const auto& row : tuples) {
          Tuple t;
          for (const auto& a : row)
            t.push_back(detail::elem_id(w.elem_names, a.get<std::string>(), "element"));
          w.ext[k][p].insert(t);
        }
    }
  validate_or_throw(w);
  return w;
}

// ---------------------------------------------------------------------------
// Intuitionistic model documents: like model documents, plus a per-node
// domain table (the strict-finitistic schema has a constant domain).

inline Json save_intuit_model(const IntuitionisticModel& w) {
  Json j;
  j["signature"] = save_signature(w.sig);
  Json nodes = Json::array();
  for (int k = 0; k < w.num_nodes(); ++k) {
    Json n;
    n["id"] = w.node_names[k];
    int p = w.frame.parent[k];
    if (p < 0) n["parent"] = nullptr;
    else n["parent"] = w.node_names[p];
    nodes.push_back(n);
  }
  j["nodes"] = nodes;
  j["domain"] = w.elem_names;
  Json domains = Json::object();
  for (int k = 0; k < w.num_nodes(); ++k) {
    Json ds = Json::array();
    for (int e : w.domain[k]) ds.push_back(w.elem_names[e]);
    domains[w.node_names[k]] = ds;
  }
  j["domains"] = domains;
  Json interp;
  Json consts = Json::object();
  for (const auto& [c, e] : w.consts) consts[c] = w.elem_names[e];
  interp["constants"] = consts;
  Json funcs = Json::object();
  for (const auto& [f, table] : w.funcs) {
    Json rows = Json::array();
    for (const auto& [args, val] : table) {
      Json row;
      Json as = Json::array();
      for (int x : args) as.push_back(w.elem_names[x]);
      row["args"] = as;
      row["value"] = w.elem_names[val];
      rows.push_back(row);
    }
    funcs[f] = rows;
  }
  interp["functions"] = funcs;
  j["interp"] = interp;
  Json exts = Json::object();
  for (int k = 0; k < w.num_nodes(); ++k) {
    if (w.ext[k].empty()) continue;
    Json per = Json::object();
    for (const auto& [p, tuples] : w.ext[k]) {
      Json ts = Json::array();
      for (const auto& t : tuples) {
        Json row = Json::array();
        for (int x : t) row.push_back(w.elem_names[x]);
        ts.push_back(row);
      }
      per[p] = ts;
    }
    exts[w.node_names[k]] = per;
  }
  if (!exts.empty()) j["extensions"] = exts;
  return j;
}

inline IntuitionisticModel load_intuit_model(const Json& j) {
  IntuitionisticModel w;
  w.sig = load_signature(detail::field(j, "signature"));
  std::vector<std::string> parents;
  for (const auto& n : detail::field(j, "nodes")) {
    w.node_names.push_back(detail::field(n, "id").get<std::string>());
    const auto& p = detail::field(n, "parent");
    parents.push_back(p.is_null() ? "" : p.get<std::string>());
  }
  for (const auto& p : parents)
    w.frame.parent.push_back(
        p.empty() ? -1 : detail::elem_id(w.node_names, p, "parent node"));
  std::string reason;
  if (!w.frame.build(reason)) throw DocError("nodes: " + reason);
  for (const auto& e : detail::field(j, "domain"))
    w.elem_names.push_back(e.get<std::string>());
  w.domain.resize(w.num_nodes());
  for (const auto& [node, ds] : detail::field(j, "domains").items()) {
    int k = detail::elem_id(w.node_names, node, "node");
    for (const auto& d : ds)
      w.domain[k].insert(detail::elem_id(w.elem_names, d.get<std::string>(), "element"));
  }
  // Domain monotonicity along the node order.
  for (int k = 0; k < w.num_nodes(); ++k)
    for (int kp : w.above(k))
      for (int e : w.domain[k])
        if (!w.domain[kp].count(e))
          throw DocError("domains: not monotone along the node order");
  const Json& interp = detail::field(j, "interp");
  for (const auto& [c, e] : detail::field(interp, "constants").items())
    w.consts[c] = detail::elem_id(w.elem_names, e.get<std::string>(), "element");
  for (const auto& [f, rows] : detail::field(interp, "functions").items())
    for (const auto& row : rows) {
      Tuple args;
      for (const auto& a : detail::field(row, "args"))
        args.push_back(detail::elem_id(w.elem_names, a.get<std::string>(), "element"));
      w.funcs[f][args] = detail::elem_id(
          w.elem_names, detail::field(row, "value").get<std::string>(), "element");
    }
  w.ext.resize(w.num_nodes());
  if (j.contains("extensions"))
    for (const auto& [node, per] : j.at("extensions").items()) {
      int k = detail::elem_id(w.node_names, node, "node");
      for (const auto& [p, tuples] : per.items())
        for (const auto& row : tuples) {
          Tuple t;
          for (const auto& a : row)
            t.push_back(detail::elem_id(w.elem_names, a.get<std::string>(), "element"));
          w.ext[k][p].insert(t);
        }
    }
  // Extension persistence.
  for (int k = 0; k < w.num_nodes(); ++k)
    for (int kp : w.above(k))
      for (const auto& [p, tuples] : w.ext[k])
        for (const auto& t : tuples)
          if (!w.ext[kp].count(p) || !w.ext[kp].at(p).count(t))
            throw DocError("extensions: not persistent along the node order");
  return w;
}

// ---------------------------------------------------------------------------
// Proof documents

inline Json save_proof(const Derivation& d, System sys, const Signature& sig) {
  Json j;
  j["system"] = to_string(sys);
  j["signature"] = save_signature(sig);
  Json steps = Json::array();
  for (const auto& s : d.steps) {
    Json st;
    st["rule"] = s.rule;
    st["conclusion"] = render(s.concl);
    if (!s.premises.empty()) st["premises"] = s.premises;
    bool any_discharge = false;
    for (const auto& ls : s.discharge) any_discharge = any_discharge || !ls.empty();
    if (any_discharge) st["discharge"] = s.discharge;
    if (!s.label.empty()) st["label"] = s.label;
    if (s.term) st["term"] = render_term(s.term);
    if (!s.var.empty()) st["var"] = s.var;
    steps.push_back(st);
  }
  j["steps"] = steps;
  return j;
}

struct ProofDocument {
  System system = System::NSF;
  Signature sig;
  Derivation derivation;
};

inline ProofDocument load_proof(const Json& j) {
  ProofDocument doc;
  std::string sys = detail::field(j, "system").get<std::string>();
  if (sys == "nsf") doc.system = System::NSF;
  else if (sys == "nsfp") doc.system = System::NSFP;
  else throw DocError("unknown system: " + sys);
  doc.sig = load_signature(detail::field(j, "signature"));
  int id = 0;
  for (const auto& st : detail::field(j, "steps")) {
    Step s;
    s.rule = detail::field(st, "rule").get<std::string>();
    s.concl = parse(detail::field(st, "conclusion").get<std::string>(), doc.sig);
    if (st.contains("premises"))
      for (const auto& p : st.at("premises")) {
        int pi = p.get<int>();
        if (pi < 0 || pi >= id) throw DocError("premise reference out of range");
        s.premises.push_back(pi);
      }
    s.discharge.assign(s.premises.size(), {});
    if (st.contains("discharge")) {
      const auto& ds = st.at("discharge");
      if (ds.size() != s.premises.size())
        throw DocError("discharge list must match the premise list");
      s.discharge.clear();
      for (const auto& ls : ds)
        s.discharge.push_back(ls.get<std::vector<std::string>>());
    }
    if (st.contains("label")) s.label = st.at("label").get<std::string>();
    if (st.contains("term"))
      s.term = parse_term(st.at("term").get<std::string>(), doc.sig);
    if (st.contains("var")) s.var = st.at("var").get<std::string>();
    doc.derivation.steps.push_back(std::move(s));
    ++id;
  }
  if (doc.derivation.steps.empty()) throw DocError("proof has no steps");
  return doc;
}

// ---------------------------------------------------------------------------
// Generation structure documents

inline Json save_gstructure(const GenerationStructure& g) {
  Json j;
  Json gens = Json::array();
  for (int i = 0; i < g.num_gens(); ++i) {
    Json e;
    e["id"] = "g" + std::to_string(i);
    if (g.parent[i] < 0) e["parent"] = nullptr;
    else e["parent"] = "g" + std::to_string(g.parent[i]);
    e["model"] = save_model(g.gens[i]);
    gens.push_back(e);
  }
  j["generations"] = gens;
  return j;
}

inline GenerationStructure load_gstructure(const Json& j) {
  GenerationStructure g;
  std::vector<std::string> ids, parents;
  for (const auto& e : detail::field(j, "generations")) {
    ids.push_back(detail::field(e, "id").get<std::string>());
    const auto& p = detail::field(e, "parent");
    parents.push_back(p.is_null() ? "" : p.get<std::string>());
    g.gens.push_back(load_model(detail::field(e, "model")));
  }
  for (const auto& p : parents)
    g.parent.push_back(p.empty() ? -1
                                 : detail::elem_id(ids, p, "parent generation"));
  validate_gstructure_or_throw(g);
  return g;
}

// ---------------------------------------------------------------------------
// File helpers

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DocError("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw DocError(path + ": " + e.what());
  }
  return j;
}

inline void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw DocError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace sfq
