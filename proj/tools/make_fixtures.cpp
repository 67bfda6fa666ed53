// Regenerates the committed JSON fixtures under fixtures/. Deterministic:
// rerunning must reproduce the files byte for byte.

#include <iostream>
#include <string>
#include <vector>

#include "sfq/corpus.hpp"
#include "sfq/docs.hpp"
#include "sfq/kripke.hpp"
#include "sfq/search.hpp"

using namespace sfq;

namespace {

// W extended with a fresh top node repeating the leaf verdicts.
StrictFinModel grow_node(const StrictFinModel& w) {
  StrictFinModel out = w;
  int top = -1;
  for (int k = 0; k < w.num_nodes(); ++k)
    if (w.above(k).size() == 1) { top = k; break; }
  out.node_names.push_back("n" + std::to_string(out.num_nodes()));
  out.frame.parent.push_back(top);
  out.ext.push_back(out.ext[top]);
  std::string reason;
  out.frame.build(reason);
  return out;
}

// W extended with a fresh element, verified at every top node.
StrictFinModel grow_elem(const StrictFinModel& w) {
  StrictFinModel out = w;
  int e = out.num_elems();
  out.elem_names.push_back("e" + std::to_string(e));
  for (int k = 0; k < out.num_nodes(); ++k)
    if (out.above(k).size() == 1) out.ext[k]["E"].insert({e});
  return out;
}

StrictFinModel make_wc() {
  StrictFinModel w;
  w.sig = Signature::basic();
  w.node_names = {"r", "k"};
  w.frame.parent = {-1, 0};
  std::string reason;
  w.frame.build(reason);
  w.elem_names = {"u"};
  w.consts = {{"c", 0}};
  w.ext.resize(2);
  w.ext[0]["E"] = {{0}};
  w.ext[1]["E"] = {{0}};
  w.ext[1]["P"] = {{0}};
  return w;
}

}  // namespace

int main() {
  std::string dir = SFQ_FIXTURE_DIR;

  save_json_file(dir + "/w0.json", save_model(make_w0()));

  for (const auto& fx : corpus::all_fixtures())
    if (fx.name == "basic_iv" && fx.system == System::NSF) {
      save_json_file(dir + "/basic_iv.proof.json",
                     save_proof(fx.derivation, fx.system, Signature::basic()));
    }

  // Generation-structure fixtures: <= 3 generations, <= 3 nodes each.
  SearchBounds b;
  b.max_nodes = 2;
  b.max_elems = 2;
  b.model_class = ModelClass::Prevalent;
  auto base = enumerate_all(b);
  std::vector<GenerationStructure> gs;
  for (const auto& w : base) {
    if (static_cast<int>(gs.size()) >= 12) break;
    gs.push_back(GenerationStructure{{w}, {-1}});
  }
  int chains = 0;
  for (const auto& w : base) {
    if (w.num_nodes() != 2 || chains >= 8) continue;
    auto w1 = grow_node(w);
    auto w2 = grow_elem(w1);
    if (chains % 2 == 0)
      gs.push_back(GenerationStructure{{w, w1, w2}, {-1, 0, 1}});
    else  // branching order: two successors of the base generation
      gs.push_back(GenerationStructure{{w, w1, grow_elem(w)}, {-1, 0, 0}});
    ++chains;
  }
  // Postconstructive fixtures for the IQC-instance suite.
  auto wc = make_wc();
  gs.push_back(GenerationStructure{{wc}, {-1}});
  gs.push_back(GenerationStructure{{wc, grow_node(wc)}, {-1, 0}});
  gs.push_back(GenerationStructure{{wc, grow_elem(wc)}, {-1, 0}});

  int i = 0;
  for (const auto& g : gs) {
    validate_gstructure_or_throw(g);
    char name[32];
    std::snprintf(name, sizeof name, "/gstructures/g%02d.json", i++);
    save_json_file(dir + name, save_gstructure(g));
  }
  std::cout << "wrote " << (2 + i) << " fixture files\n";
  return 0;
}
