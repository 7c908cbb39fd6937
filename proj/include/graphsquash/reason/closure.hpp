#pragma once

#include <string>
#include <vector>

#include "graphsquash/rdf/graph.hpp"

namespace gsq::reason {

struct RuleConfig {
  // Predicates closed under transitivity. Type assertions also propagate
  // along these edges: (x type C), (C t D) => (x type D) for t in this set.
  std::vector<std::string> transitive_predicates = {rdf::kRdfsSubClassOf};
  std::string type_predicate = rdf::kRdfType;
  bool type_propagation = true;
  // FixpointBudgetExceeded when derived triples exceed factor * input size.
  double budget_factor = 10.0;
};

// Least fixpoint of the input graph under the configured rules, evaluated
// semi-naively (each round fires rules on the previous round's delta only).
// The output contains the input and is frozen.
rdf::Graph transitive_closure(const rdf::Graph& g, const RuleConfig& cfg);

}  // namespace gsq::reason
