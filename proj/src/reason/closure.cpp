#include "graphsquash/reason/closure.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "graphsquash/errors.hpp"

namespace gsq::reason {

using rdf::Graph;
using rdf::GraphBuilder;
using rdf::TermId;
using rdf::TripleIds;

namespace {

using Pair = std::uint64_t;

inline Pair pack(TermId a, TermId b) {
  return (static_cast<Pair>(a) << 32) | b;
}
inline TermId lo(Pair p) { return static_cast<TermId>(p & 0xFFFFFFFFu); }
inline TermId hi(Pair p) { return static_cast<TermId>(p >> 32); }

// Edge set with forward/backward adjacency, plus a pending delta.
struct Relation {
  std::unordered_set<Pair> all;
  std::unordered_map<TermId, std::vector<TermId>> fwd;
  std::unordered_map<TermId, std::vector<TermId>> bwd;
  std::vector<Pair> delta;

  bool insert(TermId a, TermId b, std::vector<Pair>& next) {
    if (!all.insert(pack(a, b)).second) return false;
    fwd[a].push_back(b);
    bwd[b].push_back(a);
    next.push_back(pack(a, b));
    return true;
  }
};

}  // namespace

Graph transitive_closure(const Graph& g, const RuleConfig& cfg) {
  if (cfg.transitive_predicates.empty()) {
    throw Error("RuleConfig: transitive predicate set is empty");
  }

  // Resolve rule predicates; absent ones simply never fire.
  std::vector<TermId> tpreds;
  for (const std::string& iri : cfg.transitive_predicates) {
    if (auto id = g.find(rdf::make_iri(iri))) {
      if (std::find(tpreds.begin(), tpreds.end(), *id) == tpreds.end()) {
        tpreds.push_back(*id);
      }
    }
  }
  std::sort(tpreds.begin(), tpreds.end());
  std::optional<TermId> type_id;
  if (cfg.type_propagation) {
    if (auto id = g.find(rdf::make_iri(cfg.type_predicate))) type_id = *id;
  }

  std::unordered_map<TermId, Relation> trans;  // per transitive predicate
  Relation types;
  std::vector<Pair> seed;
  for (const TripleIds& t : g.triples()) {
    if (std::binary_search(tpreds.begin(), tpreds.end(), t.p)) {
      trans[t.p].insert(t.s, t.o, seed);
    }
    if (type_id && t.p == *type_id) {
      types.insert(t.s, t.o, seed);
    }
  }
  for (auto& [p, rel] : trans) {
    rel.delta.assign(rel.all.begin(), rel.all.end());
  }
  types.delta.assign(types.all.begin(), types.all.end());

  const std::size_t cap = static_cast<std::size_t>(
      cfg.budget_factor * static_cast<double>(std::max<std::size_t>(g.size(), 1)));
  std::size_t derived = 0;
  std::vector<TripleIds> new_triples;

  auto record = [&](TermId s, TermId p, TermId o) {
    if (g.contains(TripleIds{s, p, o})) return;
    new_triples.push_back(TripleIds{s, p, o});
    if (++derived > cap) throw FixpointBudgetExceeded(derived, cap);
  };

  bool progress = true;
  while (progress) {
    progress = false;

    for (TermId p : tpreds) {
      Relation& rel = trans[p];
      std::vector<Pair> next;
      for (Pair e : rel.delta) {
        TermId x = hi(e), y = lo(e);
        // (x,y) in delta, (y,z) anywhere
        if (auto it = rel.fwd.find(y); it != rel.fwd.end()) {
          for (std::size_t i = 0; i < it->second.size(); ++i) {
            TermId z = it->second[i];
            if (rel.insert(x, z, next)) record(x, p, z);
          }
        }
        // (w,x) anywhere, (x,y) in delta
        if (auto it = rel.bwd.find(x); it != rel.bwd.end()) {
          for (std::size_t i = 0; i < it->second.size(); ++i) {
            TermId w = it->second[i];
            if (rel.insert(w, y, next)) record(w, p, y);
          }
        }
      }
      rel.delta = std::move(next);
      if (!rel.delta.empty()) progress = true;
    }

    if (type_id) {
      std::vector<Pair> next;
      // New type assertions propagate along existing class edges.
      for (Pair e : types.delta) {
        TermId x = hi(e), c = lo(e);
        for (TermId p : tpreds) {
          if (auto it = trans[p].fwd.find(c); it != trans[p].fwd.end()) {
            for (std::size_t i = 0; i < it->second.size(); ++i) {
              TermId d = it->second[i];
              if (types.insert(x, d, next)) record(x, *type_id, d);
            }
          }
        }
      }
      // New class edges pull in existing type assertions.
      for (TermId p : tpreds) {
        for (Pair e : trans[p].delta) {
          TermId c = hi(e), d = lo(e);
          if (auto it = types.bwd.find(c); it != types.bwd.end()) {
            for (std::size_t i = 0; i < it->second.size(); ++i) {
              TermId x = it->second[i];
              if (types.insert(x, d, next)) record(x, *type_id, d);
            }
          }
        }
      }
      types.delta = std::move(next);
      if (!types.delta.empty()) progress = true;
    } else {
      types.delta.clear();
    }
  }

  GraphBuilder b(g, /*copy_triples=*/true);
  for (const TripleIds& t : new_triples) b.add(t.s, t.p, t.o);
  return std::move(b).freeze();
}

}  // namespace gsq::reason
