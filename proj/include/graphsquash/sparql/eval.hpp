#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "graphsquash/rdf/graph.hpp"
#include "graphsquash/sparql/algebra.hpp"

namespace gsq::sparql {

// Bag of solutions after projection. Rows are term-valued so tables from
// different graphs compare directly; unbound cells (OPTIONAL) are nullopt.
struct SolutionTable {
  std::vector<std::string> vars;
  std::vector<std::vector<std::optional<rdf::Term>>> rows;

  std::size_t distinct_count() const;
};

// Standard semantics: BGP = natural join, UNION = bag union, OPTIONAL = left
// outer join, then projection and optional DISTINCT. Rows come out sorted by
// bindings under interned-id order, so results are deterministic.
SolutionTable evaluate(const rdf::Graph& g, const Query& q);

// Set-collapse of the rows (sorted by term order).
SolutionTable distinct_rows(const SolutionTable& t);

// TSV: header of variable names, N-Triples term tokens, empty cell when
// unbound.
void write_tsv(const SolutionTable& t, std::ostream& out);

// JSON: {"vars": [...], "rows": [{"x": "<iri>", ...}, ...]}; unbound
// variables are omitted from their row.
void write_json(const SolutionTable& t, std::ostream& out);

}  // namespace gsq::sparql
