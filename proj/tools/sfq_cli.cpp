// sfq: command-line front end for the strict finitistic logic library.
//
// Exit codes: 0 = judgment holds / proof ok / no countermodel within bounds;
// 1 = judgment fails / countermodel found / proof rejected (certificate on
// stdout); 2 = input error.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sfq/docs.hpp"
#include "sfq/generation.hpp"
#include "sfq/proofs.hpp"
#include "sfq/search.hpp"
#include "sfq/semantics.hpp"
#include "sfq/suites.hpp"
#include "sfq/syntax.hpp"
#include "sfq/transform.hpp"

namespace {

using sfq::Json;

struct Options {
  bool json = false;
};

void emit(const Options& opt, const Json& j) {
  if (opt.json) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  // Flat "key: value" report; arrays/objects fall back to compact JSON.
  for (const auto& [k, v] : j.items()) {
    if (v.is_string()) std::cout << k << ": " << v.get<std::string>() << "\n";
    else std::cout << k << ": " << v.dump() << "\n";
  }
}

sfq::StrictFinModel read_model(const std::string& path) {
  return sfq::load_model(sfq::load_json_file(path));
}

std::vector<sfq::FormulaPtr> parse_hyps(const std::vector<std::string>& texts,
                                        const sfq::Signature& sig) {
  std::vector<sfq::FormulaPtr> out;
  for (const auto& t : texts) out.push_back(sfq::parse(t, sig));
  return out;
}

int cmd_parse(const Options& opt, const std::string& text) {
  sfq::Signature sig = sfq::Signature::basic();
  auto a = sfq::parse_extend(text, sig);
  Json j;
  j["formula"] = sfq::render(a);
  j["closed"] = sfq::is_closed(a);
  j["gn"] = sfq::classify_gn(a);
  j["st"] = sfq::classify_st_bool(a);
  j["st_p"] = sfq::classify_stp_bool(a);
  Json occ = Json::object();
  for (const auto& x : sfq::free_vars(a)) {
    auto [g, o] = sfq::occurrence_counts(a, x);
    occ[x] = g == 0 ? "local" : o == 0 ? "global" : "mixed";
  }
  j["occurrences"] = occ;
  if (opt.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "formula: " << j["formula"].get<std::string>() << "\n";
    std::cout << "closed: " << (j["closed"].get<bool>() ? "yes" : "no") << "\n";
    std::cout << "gn: " << (j["gn"].get<bool>() ? "yes" : "no") << "\n";
    std::cout << "st: " << (j["st"].get<bool>() ? "yes" : "no") << "\n";
    std::cout << "st_p: " << (j["st_p"].get<bool>() ? "yes" : "no") << "\n";
    for (const auto& [x, mode] : j["occurrences"].items())
      std::cout << x << ": " << mode.get<std::string>() << "\n";
  }
  return 0;
}

int cmd_eval(const Options& opt, const std::string& model_path,
             const std::string& node, const std::string& text) {
  auto w = read_model(model_path);
  auto a = sfq::parse(text, w.sig);
  int k = -1;
  for (int i = 0; i < w.num_nodes(); ++i)
    if (w.node_names[i] == node) k = i;
  if (k < 0) throw sfq::DocError("unknown node: " + node);
  bool f = sfq::force(w, k, a);
  Json j;
  j["formula"] = sfq::render(a);
  j["node"] = node;
  j["forced"] = f;
  emit(opt, j);
  return f ? 0 : 1;
}

int cmd_judge(const Options& opt, const std::string& model_path,
              const std::string& kind, const std::string& text) {
  auto w = read_model(model_path);
  auto a = sfq::parse(text, w.sig);
  auto jd = sfq::judge(w, kind, a);
  Json j;
  j["kind"] = jd.kind;
  j["formula"] = sfq::render(a);
  j["verdict"] = jd.verdict;
  if (jd.fail_node) j["node"] = *jd.fail_node;
  if (!jd.instantiation.empty()) {
    Json inst = Json::object();
    for (const auto& [x, e] : jd.instantiation) inst[x] = e;
    j["instantiation"] = inst;
  }
  if (!jd.detail.empty()) j["detail"] = jd.detail;
  emit(opt, j);
  return jd.verdict ? 0 : 1;
}

int cmd_consequence(const Options& opt, const std::string& model_path,
                    const std::vector<std::string>& hyps, const std::string& text) {
  auto w = read_model(model_path);
  auto a = sfq::parse(text, w.sig);
  auto gamma = parse_hyps(hyps, w.sig);
  sfq::ConsequenceInstance ce;
  bool ok = sfq::consequence(w, gamma, a, &ce);
  Json j;
  j["formula"] = sfq::render(a);
  j["hypotheses"] = hyps;
  j["verdict"] = ok;
  if (!ok) {
    if (ce.node >= 0) j["node"] = w.node_names[ce.node];
    if (!ce.assignment.empty()) {
      Json inst = Json::object();
      for (const auto& [x, e] : ce.assignment) inst[x] = w.elem_names[e];
      j["instantiation"] = inst;
    }
  }
  emit(opt, j);
  return ok ? 0 : 1;
}

int cmd_proof_check(const Options& opt, const std::string& system,
                    const std::string& path, bool system_given) {
  auto doc = sfq::load_proof(sfq::load_json_file(path));
  sfq::System sys = doc.system;
  if (system_given) {
    if (system == "nsf") sys = sfq::System::NSF;
    else if (system == "nsfp") sys = sfq::System::NSFP;
    else throw sfq::DocError("unknown system: " + system);
  }
  auto rep = sfq::check(doc.derivation, sys);
  Json j;
  j["system"] = sfq::to_string(rep.system);
  j["ok"] = rep.ok;
  if (rep.ok) {
    j["conclusion"] = sfq::render(rep.conclusion);
    Json open = Json::array();
    for (const auto& [label, h] : rep.open_hypotheses) {
      Json e;
      e["label"] = label;
      e["formula"] = sfq::render(h);
      open.push_back(e);
    }
    j["open_hypotheses"] = open;
    if (opt.json) {
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "system: " << j["system"].get<std::string>() << "\n";
      std::cout << "ok: yes\n";
      std::cout << "conclusion: " << j["conclusion"].get<std::string>() << "\n";
      for (const auto& e : open)
        std::cout << "open: [" << e["label"].get<std::string>() << "] "
                  << e["formula"].get<std::string>() << "\n";
    }
    return 0;
  }
  Json fails = Json::array();
  for (const auto& f : rep.failures) {
    Json e;
    e["step"] = f.step;
    e["code"] = f.code;
    e["detail"] = f.detail;
    fails.push_back(e);
  }
  j["failures"] = fails;
  if (opt.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "system: " << j["system"].get<std::string>() << "\n";
    std::cout << "ok: no\n";
    for (const auto& f : fails)
      std::cout << "failure: step " << f["step"].get<int>() << " ["
                << f["code"].get<std::string>() << "] "
                << f["detail"].get<std::string>() << "\n";
  }
  return 1;
}

sfq::ModelClass parse_class(const std::string& s) {
  if (s == "all") return sfq::ModelClass::All;
  if (s == "prevalent") return sfq::ModelClass::Prevalent;
  if (s == "two-node-prevalent") return sfq::ModelClass::TwoNodePrevalent;
  if (s == "preconstructive-two-node-prevalent")
    return sfq::ModelClass::PreconstructiveTwoNodePrevalent;
  if (s == "postconstructive") return sfq::ModelClass::Postconstructive;
  throw sfq::DocError("unknown model class: " + s);
}

int cmd_search(const Options& opt, const std::string& cls, int max_nodes,
               int max_domain, const std::vector<std::string>& hyps,
               const std::string& text) {
  sfq::Signature sig = sfq::Signature::basic();
  auto a = sfq::parse(text, sig);
  auto gamma = parse_hyps(hyps, sig);
  sfq::SearchBounds b;
  b.model_class = parse_class(cls);
  b.max_nodes = max_nodes;
  b.max_elems = max_domain;
  auto res = sfq::countermodel(gamma, a, b);
  Json j;
  j["formula"] = sfq::render(a);
  j["hypotheses"] = hyps;
  j["models_searched"] = res.models_searched;
  j["found"] = res.found;
  if (res.found) {
    j["node"] = res.node;
    if (!res.instantiation.empty()) {
      Json inst = Json::object();
      for (const auto& [x, e] : res.instantiation) inst[x] = e;
      j["instantiation"] = inst;
    }
    j["model"] = sfq::save_model(*res.model);
  }
  if (opt.json) std::cout << j.dump(2) << "\n";
  else if (res.found) {
    std::cout << "found: yes\nnode: " << res.node << "\n"
              << j["model"].dump(2) << "\n";
  } else {
    std::cout << "found: no\nmodels_searched: " << res.models_searched << "\n";
  }
  return res.found ? 1 : 0;
}

int cmd_gen_eval(const Options& opt, const std::string& path, const std::string& gen,
                 const std::string& node, const std::string& text) {
  auto g = sfq::load_gstructure(sfq::load_json_file(path));
  sfq::Signature sig = g.gens.empty() ? sfq::Signature::basic() : g.gens[0].sig;
  auto a = sfq::parse(text, sig);
  int gi = std::stoi(gen);
  if (gi < 0 || gi >= g.num_gens())
    throw sfq::DocError("generation out of range: " + gen);
  int k = -1;
  for (int i = 0; i < g.gens[gi].num_nodes(); ++i)
    if (g.gens[gi].node_names[i] == node) k = i;
  if (k < 0) throw sfq::DocError("unknown node: " + node);
  bool f = sfq::gen_force(g, {gi, k}, a);
  Json j;
  j["formula"] = sfq::render(a);
  j["generation"] = gi;
  j["node"] = node;
  j["forced"] = f;
  emit(opt, j);
  return f ? 0 : 1;
}

int cmd_gen_judge(const Options& opt, const std::string& path,
                  const std::string& text) {
  auto g = sfq::load_gstructure(sfq::load_json_file(path));
  sfq::Signature sig = g.gens.empty() ? sfq::Signature::basic() : g.gens[0].sig;
  auto a = sfq::parse(text, sig);
  bool v = sfq::gen_valid(g, a);
  Json j;
  j["formula"] = sfq::render(a);
  j["verdict"] = v;
  emit(opt, j);
  return v ? 0 : 1;
}

int cmd_suite(const std::string& name, const std::string& self,
              const std::string& fixtures) {
  auto suites = sfq::suites::registry(self, fixtures);
  for (const auto& s : suites) {
    if (s.name != name) continue;
    auto out = s.run();
    if (out.pass) {
      std::printf("suite %s: PASS (%ld checks)\n", s.name.c_str(), out.checks);
      return 0;
    }
    std::printf("suite %s: FAIL (%ld checks) -- %s\n", s.name.c_str(),
                out.checks, out.detail.c_str());
    return 1;
  }
  std::fprintf(stderr, "unknown suite: %s\n", name.c_str());
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strict finitistic first-order logic toolkit"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "machine-readable JSON reports");

  std::string formula, model_path, node, kind = "valid", system = "nsf";
  std::string cls = "all", structure, gen = "0", suite_name;
  std::string fixtures = "fixtures";
  std::vector<std::string> hyps;
  int max_nodes = 4, max_domain = 2;

  auto* p_parse = app.add_subcommand("parse", "classify a formula");
  p_parse->add_option("formula", formula)->required();

  auto* p_eval = app.add_subcommand("eval", "force a formula at a node");
  p_eval->add_option("--model", model_path)->required();
  p_eval->add_option("--node", node)->required();
  p_eval->add_option("formula", formula)->required();

  auto* p_judge = app.add_subcommand("judge", "judge a formula on a model");
  p_judge->add_option("--model", model_path)->required();
  p_judge->add_option("--kind", kind)->check(CLI::IsMember({"valid", "assertible", "prevalent"}));
  p_judge->add_option("formula", formula)->required();

  auto* p_cons = app.add_subcommand("consequence", "semantic consequence on a model");
  p_cons->add_option("--model", model_path)->required();
  p_cons->add_option("--hyp", hyps);
  p_cons->add_option("formula", formula)->required();

  auto* p_proof = app.add_subcommand("proof", "proof utilities");
  auto* p_check = p_proof->add_subcommand("check", "check a derivation");
  auto* sys_opt = p_check->add_option("--system", system)->check(CLI::IsMember({"nsf", "nsfp"}));
  p_check->add_option("file", model_path)->required();

  auto* p_tr = app.add_subcommand("transform", "model and formula transformations");
  auto* t_contract = p_tr->add_subcommand("contract", "two-node contraction");
  t_contract->add_option("--model", model_path)->required();
  t_contract->add_option("formula", formula)->required();
  auto* t_sub = p_tr->add_subcommand("submodel", "generated submodel");
  t_sub->add_option("--model", model_path)->required();
  t_sub->add_option("--node", node)->required();
  auto* t_pre = p_tr->add_subcommand("preconstruct", "preconstructive variant");
  t_pre->add_option("--model", model_path)->required();
  auto* t_cl = p_tr->add_subcommand("classical", "classical collapse");
  t_cl->add_option("--model", model_path)->required();
  auto* t_star = p_tr->add_subcommand("star", "star translation");
  t_star->add_option("formula", formula)->required();
  auto* t_g2i = p_tr->add_subcommand("gen2int", "induced intuitionistic model");
  t_g2i->add_option("--structure", structure)->required();
  auto* t_i2g = p_tr->add_subcommand("int2gen", "induced generation structure");
  t_i2g->add_option("--model", model_path)->required();

  auto* p_gen = app.add_subcommand("gen", "generation structures");
  auto* g_eval = p_gen->add_subcommand("eval", "force at a node in a generation");
  g_eval->add_option("--structure", structure)->required();
  g_eval->add_option("--gen", gen)->required();
  g_eval->add_option("--node", node)->required();
  g_eval->add_option("formula", formula)->required();
  auto* g_judge = p_gen->add_subcommand("judge", "validity in a generation structure");
  g_judge->add_option("--structure", structure)->required();
  g_judge->add_option("formula", formula)->required();

  auto* p_search = app.add_subcommand("search", "model search");
  auto* s_cm = p_search->add_subcommand("countermodel", "search for a countermodel");
  s_cm->add_option("--class", cls)
      ->check(CLI::IsMember({"all", "prevalent", "two-node-prevalent",
                             "preconstructive-two-node-prevalent", "postconstructive"}));
  s_cm->add_option("--max-nodes", max_nodes);
  s_cm->add_option("--max-domain", max_domain);
  s_cm->add_option("--hyp", hyps);
  s_cm->add_option("formula", formula)->required();

  auto* p_suite = app.add_subcommand("suite", "acceptance suites");
  auto* s_run = p_suite->add_subcommand("run", "run a named suite");
  s_run->add_option("name", suite_name)->required();
  s_run->add_option("--fixtures", fixtures);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*p_parse) return cmd_parse(opt, formula);
    if (*p_eval) return cmd_eval(opt, model_path, node, formula);
    if (*p_judge) return cmd_judge(opt, model_path, kind, formula);
    if (*p_cons) return cmd_consequence(opt, model_path, hyps, formula);
    if (*p_check) return cmd_proof_check(opt, system, model_path, sys_opt->count() > 0);
    if (*t_contract) {
      auto w = read_model(model_path);
      auto a = sfq::parse(formula, w.sig);
      std::cout << sfq::save_model(sfq::contract(w, a)).dump(2) << "\n";
      return 0;
    }
    if (*t_sub) {
      auto w = read_model(model_path);
      int k = -1;
      for (int i = 0; i < w.num_nodes(); ++i)
        if (w.node_names[i] == node) k = i;
      if (k < 0) throw sfq::DocError("unknown node: " + node);
      std::cout << sfq::save_model(sfq::generated_submodel(w, k)).dump(2) << "\n";
      return 0;
    }
    if (*t_pre) {
      std::cout << sfq::save_model(sfq::preconstruct(read_model(model_path))).dump(2)
                << "\n";
      return 0;
    }
    if (*t_cl) {
      auto s = sfq::to_classical(read_model(model_path));
      Json j;
      j["domain"] = s.elem_names;
      Json consts = Json::object();
      for (const auto& [c, e] : s.consts) consts[c] = s.elem_names[e];
      j["constants"] = consts;
      Json exts = Json::object();
      for (const auto& [p, tuples] : s.ext) {
        Json ts = Json::array();
        for (const auto& t : tuples) {
          Json row = Json::array();
          for (int x : t) row.push_back(s.elem_names[x]);
          ts.push_back(row);
        }
        exts[p] = ts;
      }
      j["extensions"] = exts;
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (*t_star) {
      sfq::Signature sig = sfq::Signature::basic();
      auto a = sfq::parse_extend(formula, sig);
      std::cout << sfq::render(sfq::star(a)) << "\n";
      return 0;
    }
    if (*t_g2i) {
      auto g = sfq::load_gstructure(sfq::load_json_file(structure));
      std::cout << sfq::save_intuit_model(sfq::gen_to_int(g)).dump(2) << "\n";
      return 0;
    }
    if (*t_i2g) {
      auto im = sfq::load_intuit_model(sfq::load_json_file(model_path));
      std::cout << sfq::save_gstructure(sfq::int_to_gen(im)).dump(2) << "\n";
      return 0;
    }
    if (*g_eval) return cmd_gen_eval(opt, structure, gen, node, formula);
    if (*g_judge) return cmd_gen_judge(opt, structure, formula);
    if (*s_cm) return cmd_search(opt, cls, max_nodes, max_domain, hyps, formula);
    if (*s_run) return cmd_suite(suite_name, argv[0], fixtures);
  } catch (const sfq::SyntaxError& e) {
    std::fprintf(stderr, "syntax error: %s\n", e.what());
    return 2;
  } catch (const sfq::DocError& e) {
    std::fprintf(stderr, "document error: %s\n", e.what());
    return 2;
  } catch (const sfq::ModelError& e) {
    std::fprintf(stderr, "model error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
