#pragma once

// Shared fixtures and independent oracles for the test suites. The oracles
// here stay deliberately naive (full enumeration, naive fixpoints) so they
// never share code paths with the implementations they check.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "graphsquash/rdf/graph.hpp"
#include "graphsquash/rdf/ntriples.hpp"
#include "graphsquash/reason/closure.hpp"
#include "graphsquash/rng.hpp"
#include "graphsquash/sparql/algebra.hpp"
#include "graphsquash/sparql/eval.hpp"

namespace gsq::test {

inline std::string ex(const std::string& name) { return "http://example.org/" + name; }

inline rdf::Term ex_iri(const std::string& name) { return rdf::make_iri(ex(name)); }

inline std::string desk_ntriples() {
  std::string out;
  auto line = [&out](const std::string& s, const std::string& p, const std::string& o) {
    out += "<" + ex(s) + "> <" + ex(p) + "> <" + ex(o) + "> .\n";
  };
  line("Gertrud", "birthPlace", "Germany");
  line("Lena", "birthPlace", "Germany");
  line("Markus", "nationality", "Germany");
  line("Anna", "country", "Germany");
  line("Markus", "deathPlace", "France");
  line("Germany", "type", "EuropeanCountry");
  line("EuropeanCountry", "subClassOf", "Country");
  return out;
}

inline rdf::Graph desk_graph() { return rdf::parse_ntriples(desk_ntriples()); }

inline reason::RuleConfig desk_rules() {
  reason::RuleConfig rules;
  rules.transitive_predicates = {ex("subClassOf")};
  rules.type_predicate = ex("type");
  return rules;
}

inline std::vector<std::vector<std::string>> desk_clusters() {
  return {{ex("birthPlace"), ex("country"), ex("nationality")},
          {ex("deathPlace")},
          {ex("type")},
          {ex("subClassOf")}};
}

inline std::string desk_query_text() {
  return "PREFIX : <http://example.org/>\n"
         "SELECT ?p WHERE {\n"
         "  { ?p :country :Germany } UNION { ?p :nationality :Germany }"
         " UNION { ?p :birthPlace :Germany }\n"
         "}";
}

// ---------------------------------------------------------------------------
// Brute-force SPARQL oracle: BGPs by exhaustive assignment enumeration over
// all graph terms, UNION by concatenation, OPTIONAL by definition.

using OracleRow = std::map<std::string, rdf::Term>;

inline void oracle_bgp_vars(const sparql::Node& n, std::vector<std::string>& vars) {
  for (const sparql::TriplePattern& tp : n.patterns) {
    for (const sparql::PatternTerm* t : {&tp.s, &tp.p, &tp.o}) {
      if (const sparql::Variable* v = sparql::as_var(*t)) {
        if (std::find(vars.begin(), vars.end(), v->name) == vars.end()) {
          vars.push_back(v->name);
        }
      }
    }
  }
}

inline std::vector<OracleRow> oracle_eval(const rdf::Graph& g, const sparql::Node& n) {
  using sparql::Node;
  if (n.kind == Node::Kind::Bgp) {
    std::vector<std::string> vars;
    oracle_bgp_vars(n, vars);

    std::vector<rdf::Term> universe;
    for (std::size_t i = 0; i < g.term_count(); ++i) {
      universe.push_back(g.term(static_cast<rdf::TermId>(i)));
    }

    std::vector<OracleRow> out;
    OracleRow row;
    auto matches = [&](const sparql::PatternTerm& t, const rdf::Term& value) {
      if (const sparql::Variable* v = sparql::as_var(t)) return row.at(v->name) == value;
      return *sparql::as_term(t) == value;
    };
    std::function<void(std::size_t)> assign = [&](std::size_t vi) {
      if (vi == vars.size()) {
        for (const sparql::TriplePattern& tp : n.patterns) {
          bool found = false;
          for (const rdf::TripleIds& t : g.triples()) {
            if (matches(tp.s, g.term(t.s)) && matches(tp.p, g.term(t.p)) &&
                matches(tp.o, g.term(t.o))) {
              found = true;
              break;
            }
          }
          if (!found) return;
        }
        out.push_back(row);
        return;
      }
      for (const rdf::Term& candidate : universe) {
        row[vars[vi]] = candidate;
        assign(vi + 1);
      }
      row.erase(vars[vi]);
    };
    assign(0);
    return out;
  }

  if (n.kind == Node::Kind::Union) {
    auto out = oracle_eval(g, *n.left);
    auto rhs = oracle_eval(g, *n.right);
    out.insert(out.end(), rhs.begin(), rhs.end());
    return out;
  }

  auto left = oracle_eval(g, *n.left);
  auto right = oracle_eval(g, *n.right);
  auto compatible = [](const OracleRow& a, const OracleRow& b) {
    for (const auto& [k, v] : a) {
      auto it = b.find(k);
      if (it != b.end() && it->second != v) return false;
    }
    return true;
  };
  std::vector<OracleRow> out;
  for (const OracleRow& l : left) {
    bool extended = false;
    for (const OracleRow& r : right) {
      if (compatible(l, r)) {
        OracleRow merged = l;
        merged.insert(r.begin(), r.end());
        out.push_back(std::move(merged));
        extended = true;
      }
    }
    if (!extended) out.push_back(l);
  }
  return out;
}

// Projected multiset of rows, sorted, for direct comparison with evaluate().
inline std::vector<std::vector<std::optional<rdf::Term>>> oracle_evaluate(
    const rdf::Graph& g, const sparql::Query& q) {
  std::vector<OracleRow> rows = q.body ? oracle_eval(g, *q.body) : std::vector<OracleRow>{};
  std::vector<std::vector<std::optional<rdf::Term>>> out;
  const std::vector<std::string> proj = q.projected_variables();
  for (const OracleRow& r : rows) {
    std::vector<std::optional<rdf::Term>> row;
    for (const std::string& v : proj) {
      auto it = r.find(v);
      if (it == r.end()) {
        row.emplace_back(std::nullopt);
      } else {
        row.emplace_back(it->second);
      }
    }
    out.push_back(std::move(row));
  }
  std::sort(out.begin(), out.end());
  if (q.distinct) out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Naive inference oracle: global fixpoint, no deltas.

inline rdf::Graph oracle_closure(const rdf::Graph& g, const reason::RuleConfig& cfg) {
  std::set<rdf::Triple> triples;
  for (const rdf::TripleIds& t : g.triples()) triples.insert(g.materialize(t));

  std::set<std::string> tpreds(cfg.transitive_predicates.begin(),
                               cfg.transitive_predicates.end());
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<rdf::Triple> additions;
    for (const rdf::Triple& a : triples) {
      if (!tpreds.contains(a.p.lexical)) continue;
      for (const rdf::Triple& b : triples) {
        if (b.p == a.p && b.s == a.o) {
          additions.push_back(rdf::Triple{a.s, a.p, b.o});
        }
      }
    }
    if (cfg.type_propagation) {
      for (const rdf::Triple& a : triples) {
        if (a.p.lexical != cfg.type_predicate) continue;
        for (const rdf::Triple& b : triples) {
          if (tpreds.contains(b.p.lexical) && b.s == a.o) {
            additions.push_back(rdf::Triple{a.s, a.p, b.o});
          }
        }
      }
    }
    for (const rdf::Triple& t : additions) {
      if (triples.insert(t).second) changed = true;
    }
  }

  rdf::GraphBuilder b;
  for (const rdf::Triple& t : triples) b.add(t.s, t.p, t.o);
  return std::move(b).freeze();
}

}  // namespace gsq::test
