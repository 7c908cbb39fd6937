#pragma once

// Grouping-based summarization: the offline phase builds the inferred graph,
// groups triples by (predicate, object), and replaces each multi-subject
// group with one super-node triple. The online phase rewrites a query onto
// representative predicates and answers it over the summary, expanding
// super-node bindings back into member terms. Lossy by construction.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "graphsquash/embed/similarity.hpp"
#include "graphsquash/rdf/graph.hpp"
#include "graphsquash/reason/closure.hpp"
#include "graphsquash/sparql/algebra.hpp"
#include "graphsquash/sparql/eval.hpp"

namespace gsq::summarize {

struct SuperNode {
  std::string id;  // urn:sn:<hash of the sorted member list>
  rdf::Term key_predicate;
  rdf::Term key_object;
  std::vector<rdf::Term> members;  // sorted, >= 2 entries
};

struct GbsSummary {
  rdf::Graph summary;
  std::vector<SuperNode> supernodes;
  std::map<std::string, std::vector<rdf::Term>> membership;
  std::uint64_t dropped_singletons = 0;
  std::uint64_t inferred_triples = 0;  // size of the inferred source graph
};

struct GbsOptions {
  bool keep_singletons = false;
  bool allow_literals = false;
};

// Offline phase. Throws LiteralPresent when the graph has literal objects and
// allow_literals is off.
GbsSummary gbs_summarize(const rdf::Graph& g, const reason::RuleConfig& rules,
                         const GbsOptions& opt = {});

struct GbsRewrite {
  sparql::Query query;
  std::map<std::string, embed::SimilaritySet> similarity;  // per query predicate
  std::vector<std::string> warnings;
};

// Online phase, step one: cluster the query's constant predicates (p and q
// share a cluster when each is in the other's similarity set), rewrite every
// predicate onto its cluster's lexicographically smallest member.
GbsRewrite gbs_rewrite(const sparql::Query& q, const embed::SimilarityProvider& provider,
                       double threshold);

// Online phase, step two: evaluate over the summary and expand super-node
// bindings into one row per member (cross product when several variables
// bind super-nodes). Rows come out in term order.
sparql::SolutionTable gbs_answer(const GbsSummary& summary, const sparql::Query& q);

// Membership map as TSV: super-node id, tab, comma-separated members.
void write_membership_tsv(const GbsSummary& summary, std::ostream& out);
std::map<std::string, std::vector<rdf::Term>> read_membership_tsv(std::istream& in);

}  // namespace gsq::summarize
