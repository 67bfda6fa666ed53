#pragma once

// Bounded enumeration and randomized generation of models; countermodel
// search for formulas and consequence claims in configurable model classes.

#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "kripke.hpp"
#include "semantics.hpp"

namespace sfq {

enum class ModelClass {
  All,
  Prevalent,
  TwoNodePrevalent,
  PreconstructiveTwoNodePrevalent,
  Postconstructive,
};

inline std::string to_string(ModelClass c) {
  switch (c) {
    case ModelClass::All: return "all";
    case ModelClass::Prevalent: return "prevalent";
    case ModelClass::TwoNodePrevalent: return "two-node-prevalent";
    case ModelClass::PreconstructiveTwoNodePrevalent:
      return "preconstructive-two-node-prevalent";
    case ModelClass::Postconstructive: return "postconstructive";
  }
  return "all";
}

inline std::optional<ModelClass> model_class_from(const std::string& s) {
  for (auto c : {ModelClass::All, ModelClass::Prevalent, ModelClass::TwoNodePrevalent,
                 ModelClass::PreconstructiveTwoNodePrevalent, ModelClass::Postconstructive})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

inline bool in_class(const StrictFinModel& w, ModelClass c, int term_depth_bound = 3) {
  if (c == ModelClass::All) return true;
  auto r = property_report(w, term_depth_bound);
  switch (c) {
    case ModelClass::Prevalent: return r.prevalent;
    case ModelClass::TwoNodePrevalent: return r.two_node && r.prevalent;
    case ModelClass::PreconstructiveTwoNodePrevalent:
      return r.two_node && r.prevalent && r.preconstructive;
    case ModelClass::Postconstructive: return r.postconstructive;
    default: return true;
  }
}

struct SearchBounds {
  int max_nodes = 4;
  int max_elems = 2;
  Signature sig = Signature::basic();  // function-free only
  int max_term_depth = 3;
  ModelClass model_class = ModelClass::All;

  void validate() const {
    if (max_nodes < 1 || max_elems < 1 || max_term_depth < 1)
      throw std::runtime_error("search bounds must be >= 1");
    if (!sig.functions.empty())
      throw std::runtime_error("model search supports function-free signatures only");
    sig.validate();
  }
};

namespace detail {

// All parent vectors with parent[i] < i describing trees on exactly n nodes
// rooted at 0. Isomorphic duplicates are removed later via canonical keys.
inline std::vector<std::vector<int>> parent_vectors(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n);
  cur[0] = -1;
  std::function<void(int)> go = [&](int i) {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (int p = 0; p < i; ++p) {
      cur[i] = p;
      go(i + 1);
    }
  };
  if (n == 1) out.push_back({-1});
  else go(1);
  return out;
}

// Upward-closed node sets of a frame (k in S and k <= k' imply k' in S).
inline std::vector<std::vector<bool>> up_closed_sets(const Frame& f) {
  int n = f.size();
  std::vector<std::vector<bool>> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<bool> s(n);
    for (int i = 0; i < n; ++i) s[i] = (mask >> i) & 1;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      if (s[i])
        for (int j = 0; j < n; ++j)
          if (f.leq(i, j) && !s[j]) ok = false;
    if (ok) out.push_back(s);
  }
  return out;
}

// Canonical key invariant under tree isomorphism and domain permutation.
inline std::string canon_at(const StrictFinModel& w, int node, const std::vector<int>& sigma) {
  std::string payload;
  std::vector<std::string> atoms;
  for (const auto& [pred, tuples] : w.ext[node])
    for (const auto& t : tuples) {
      std::string s = pred + "(";
      for (int e : t) s += std::to_string(sigma[e]) + ",";
      atoms.push_back(s + ")");
    }
  std::sort(atoms.begin(), atoms.end());
  for (const auto& a : atoms) payload += a;
  std::vector<std::string> kids;
  for (int c : w.frame.children_[node]) kids.push_back(canon_at(w, c, sigma));
  std::sort(kids.begin(), kids.end());
  std::string out = "[" + payload + ";";
  for (const auto& k : kids) out += k;
  return out + "]";
}

inline std::string canonical_key(const StrictFinModel& w) {
  int m = w.num_elems();
  std::vector<int> sigma(m);
  for (int i = 0; i < m; ++i) sigma[i] = i;
  std::string best;
  do {
    std::string consts = "|";
    for (const auto& [c, e] : w.consts) consts += c + "=" + std::to_string(sigma[e]) + ",";
    std::string key = std::to_string(w.num_nodes()) + ":" + std::to_string(m) + ":" +
                      canon_at(w, w.root(), sigma) + consts;
    if (best.empty() || key < best) best = key;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return best;
}

}  // namespace detail

// Enumerate isomorphism-class representatives within bounds, ascending by
// node count; every emitted model validates and matches the class filter.
inline void enumerate_models(const SearchBounds& b,
                             const std::function<bool(const StrictFinModel&)>& yield) {
  b.validate();
  std::set<std::string> seen;
  for (int n = 1; n <= b.max_nodes; ++n) {
    for (const auto& parent : detail::parent_vectors(n)) {
      detail::Frame frame;
      frame.parent = parent;
      std::string reason;
      if (!frame.build(reason)) continue;
      auto ups = detail::up_closed_sets(frame);
      for (int m = 1; m <= b.max_elems; ++m) {
        // Slots: one upward-closed region per (predicate, tuple over D).
        // E comes first so strictness can constrain the others.
        struct Slot {
          std::string pred;
          Tuple tuple;
        };
        std::vector<Slot> slots;
        auto tuples_of = [&](int ar) {
          std::vector<Tuple> out;
          Tuple cur(ar, 0);
          while (true) {
            out.push_back(cur);
            int i = 0;
            for (; i < ar; ++i) {
              if (++cur[i] < m) break;
              cur[i] = 0;
            }
            if (i == ar) break;
          }
          if (ar == 0) out = {Tuple{}};
          return out;
        };
        for (const auto& [pred, ar] : b.sig.predicates)
          if (pred == "E")
            for (const auto& t : tuples_of(ar)) slots.push_back({pred, t});
        for (const auto& [pred, ar] : b.sig.predicates)
          if (pred != "E")
            for (const auto& t : tuples_of(ar)) slots.push_back({pred, t});

        std::vector<int> choice(slots.size(), 0);
        // E region per element, filled as slots are chosen.
        std::vector<int> e_region(m, 0);

        std::function<bool(std::size_t)> assign = [&](std::size_t si) -> bool {
          if (si == slots.size()) {
            // Constant interpretations.
            std::vector<int> cvals(b.sig.constants.size(), 0);
            while (true) {
              StrictFinModel w;
              w.sig = b.sig;
              w.frame = frame;
              for (int i = 0; i < n; ++i) w.node_names.push_back("n" + std::to_string(i));
              w.node_names[frame.root] = "r";
              for (int e = 0; e < m; ++e) w.elem_names.push_back("d" + std::to_string(e));
              for (std::size_t ci = 0; ci < cvals.size(); ++ci)
                w.consts[b.sig.constants[ci]] = cvals[ci];
              w.ext.resize(n);
              for (std::size_t s2 = 0; s2 < slots.size(); ++s2) {
                const auto& region = ups[choice[s2]];
                for (int k = 0; k < n; ++k)
                  if (region[k]) w.ext[k][slots[s2].pred].insert(slots[s2].tuple);
              }
              auto key = detail::canonical_key(w);
              if (seen.insert(key).second && validate(w).empty() &&
                  in_class(w, b.model_class, b.max_term_depth)) {
                if (!yield(w)) return false;
              }
              std::size_t ci = 0;
              for (; ci < cvals.size(); ++ci) {
                if (++cvals[ci] < m) break;
                cvals[ci] = 0;
              }
              if (ci == cvals.size()) break;
            }
            return true;
          }
          const auto& slot = slots[si];
          bool isE = slot.pred == "E";
          for (std::size_t u = 0; u < ups.size(); ++u) {
            // Strictness, generatively: a non-E region must sit inside the E
            // region of every element in the tuple.
            if (!isE) {
              bool ok = true;
              for (int k = 0; k < n && ok; ++k)
                if (ups[u][k])
                  for (int e : slot.tuple) ok = ok && ups[e_region[e]][k];
              if (!ok) continue;
            }
            choice[si] = static_cast<int>(u);
            if (isE) e_region[slot.tuple[0]] = static_cast<int>(u);
            if (!assign(si + 1)) return false;
          }
          return true;
        };
        if (!assign(0)) return;
      }
    }
  }
}

inline std::vector<StrictFinModel> enumerate_all(const SearchBounds& b) {
  std::vector<StrictFinModel> out;
  enumerate_models(b, [&](const StrictFinModel& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Countermodel search

struct CountermodelResult {
  bool found = false;
  std::optional<StrictFinModel> model;
  std::string node;                                  // failing node name
  std::map<std::string, std::string> instantiation;  // free variable -> element
  long models_searched = 0;
};

// First model (ascending by node count, so minimal) refuting validity of goal
// or the consequence Gamma |= goal within the class.
inline CountermodelResult countermodel(const std::vector<FormulaPtr>& gamma,
                                       const FormulaPtr& goal, const SearchBounds& b) {
  CountermodelResult res;
  enumerate_models(b, [&](const StrictFinModel& w) {
    ++res.models_searched;
    if (gamma.empty()) {
      Forcer f(w);
      if (!f.valid(goal)) {
        res.found = true;
        res.model = w;
        for (int k = 0; k < w.num_nodes(); ++k)
          if (!f.force(k, goal)) {
            res.node = w.node_names[k];
            break;
          }
        return false;
      }
    } else {
      ConsequenceInstance ce;
      if (!consequence(w, gamma, goal, &ce)) {
        res.found = true;
        res.model = w;
        res.node = w.node_names[ce.node];
        for (const auto& [x, d] : ce.assignment)
          res.instantiation[x] = w.elem_names[d];
        return false;
      }
    }
    return true;
  });
  return res;
}

inline CountermodelResult countermodel(const FormulaPtr& goal, const SearchBounds& b) {
  return countermodel({}, goal, b);
}

// ---------------------------------------------------------------------------
// Randomized model generation

// Deterministic in seed; the class filter is honored by construction (regions
// are repaired upward rather than re-sampled).
inline StrictFinModel random_model(unsigned seed, const SearchBounds& b) {
  b.validate();
  std::mt19937 rng(seed);
  auto pick = [&](int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  bool two_node = b.model_class == ModelClass::TwoNodePrevalent ||
                  b.model_class == ModelClass::PreconstructiveTwoNodePrevalent;
  int n = two_node ? 2 : pick(1, b.max_nodes);
  detail::Frame frame;
  frame.parent.assign(n, -1);
  for (int i = 1; i < n; ++i) frame.parent[i] = pick(0, i - 1);
  std::string reason;
  frame.build(reason);
  int m = pick(1, b.max_elems);

  bool prevalent_wanted = b.model_class == ModelClass::Prevalent || two_node;
  bool preconstructive_wanted = b.model_class == ModelClass::PreconstructiveTwoNodePrevalent;
  bool postconstructive_wanted = b.model_class == ModelClass::Postconstructive;

  std::vector<int> leaves;
  for (int k = 0; k < n; ++k)
    if (frame.children_[k].empty()) leaves.push_back(k);

  StrictFinModel w;
  w.sig = b.sig;
  w.frame = frame;
  for (int i = 0; i < n; ++i) w.node_names.push_back("n" + std::to_string(i));
  w.node_names[frame.root] = "r";
  for (int e = 0; e < m; ++e) w.elem_names.push_back("d" + std::to_string(e));
  for (const auto& c : b.sig.constants) w.consts[c] = pick(0, m - 1);
  w.ext.resize(n);

  auto random_region = [&]() {
    // Random upward-closed set: seed nodes, then close upward.
    std::vector<bool> s(n, false);
    for (int k = 0; k < n; ++k)
      if (pick(0, 2) == 0) s[k] = true;
    for (int k = 0; k < n; ++k)
      if (s[k])
        for (int j = 0; j < n; ++j)
          if (frame.leq(k, j)) s[j] = true;
    return s;
  };
  auto repair = [&](std::vector<bool> s, bool force_nonempty) {
    if (preconstructive_wanted) s[frame.root] = false;
    bool nonempty = false;
    for (int k = 0; k < n; ++k) nonempty = nonempty || s[k];
    if (prevalent_wanted && (nonempty || force_nonempty))
      for (int l : leaves) s[l] = true;  // forced above every node
    if (force_nonempty && !nonempty && !prevalent_wanted)
      s[leaves.back()] = true;
    return s;
  };

  // E regions per element first.
  std::vector<std::vector<bool>> e_region(m);
  for (int e = 0; e < m; ++e) {
    e_region[e] = repair(random_region(), prevalent_wanted);
    if (postconstructive_wanted) {
      bool denoted = false;
      for (const auto& [c, d] : w.consts) denoted = denoted || d == e;
      if (denoted) e_region[e].assign(n, true);  // in E from the root up
    }
    for (int k = 0; k < n; ++k)
      if (e_region[e][k]) w.ext[k]["E"].insert({e});
  }
  // Other predicates: regions clipped into the E regions of their elements.
  for (const auto& [pred, ar] : b.sig.predicates) {
    if (pred == "E") continue;
    Tuple cur(ar, 0);
    while (true) {
      auto s = repair(random_region(), false);
      for (int k = 0; k < n; ++k) {
        bool allowed = s[k];
        for (int e : cur) allowed = allowed && e_region[e][k];
        if (allowed) w.ext[k][pred].insert(cur);
      }
      int i = 0;
      for (; i < ar; ++i) {
        if (++cur[i] < m) break;
        cur[i] = 0;
      }
      if (i == ar) break;
    }
  }
  // Clipping can break prevalence of a clipped region only if leaves lost
  // membership; leaves carry E for every element under prevalent repair, so
  // the clipped regions keep their leaves.
  validate_or_throw(w);
  return w;
}

}  // namespace sfq
