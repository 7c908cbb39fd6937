#pragma once

// Query-based summarization: extract the query-scoped subgraph, canonicalize
// synonym-predicate triples onto cluster representatives, rewrite the query,
// and answer it over the augmented subgraph. The construction preserves each
// witness triple's object, which is what makes the rewritten query return
// exactly the original answers (see verify_lossless).

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphsquash/embed/similarity.hpp"
#include "graphsquash/embed/train.hpp"
#include "graphsquash/rdf/graph.hpp"
#include "graphsquash/reason/closure.hpp"
#include "graphsquash/sparql/algebra.hpp"
#include "graphsquash/sparql/eval.hpp"

namespace gsq::summarize {

struct QbsBundle {
  rdf::Graph subgraph;      // g: query-scoped portion of the source
  rdf::Graph augmented;     // g plus canonicalized synonym triples
  sparql::Query rewritten;  // query over representative predicates
  std::map<std::string, embed::SimilaritySet> similarity;  // per query predicate
  std::uint64_t new_triple_count = 0;  // |augmented| - |subgraph|
  std::vector<std::string> warnings;
};

// Triples whose predicate is one of the query's constant predicates or whose
// object is one of its constant objects. A query with no constants yields an
// empty subgraph plus a warning.
rdf::Graph qbs_extract_subgraph(const rdf::Graph& g, const sparql::Query& q,
                                std::vector<std::string>* warnings = nullptr);

struct QbsOptions {
  double threshold = 0.5;
  // Candidate predicates for similarity come from the subgraph's vocabulary;
  // flip to search the whole source graph when the subgraph is degenerate.
  bool candidates_from_whole_graph = false;
  // Pair witness subjects with the query's constant objects instead of
  // carrying each witness triple's own object. Fabricates facts and breaks
  // losslessness; only useful for experiments.
  bool unsafe_object_substitution = false;
};

QbsBundle qbs_augment(const rdf::Graph& source, const rdf::Graph& g,
                      const sparql::Query& q, const embed::SimilarityProvider& provider,
                      const QbsOptions& opt = {});

struct QbsRunConfig {
  enum class Embedding { TrainOnSubgraph, ExternalStore, Provider };
  Embedding embedding = Embedding::TrainOnSubgraph;

  // TrainOnSubgraph
  embed::TrainConfig train;
  int walk_length = 4;
  int walks_per_entity = 8;
  std::filesystem::path dump_walks;  // when set, write the training corpus here

  // ExternalStore: pre-loaded word vectors
  const embed::VectorStore* store = nullptr;
  // Provider: e.g. known clusters
  const embed::SimilarityProvider* provider = nullptr;

  QbsOptions options;
  bool allow_literals = false;

  // Off by default: the summarization path skips inference. Forcing it on is
  // available for experiments.
  bool force_inference = false;
  reason::RuleConfig rules;
};

struct QbsRun {
  QbsBundle bundle;
  sparql::SolutionTable solutions;
  double summarize_seconds = 0.0;  // extract + embed + augment
  double answer_seconds = 0.0;     // evaluate rewritten query
};

QbsRun qbs_run(const rdf::Graph& graph, const std::string& query_text,
               const QbsRunConfig& cfg);

struct LosslessReport {
  bool equal = false;
  std::size_t direct_distinct = 0;
  std::size_t summary_distinct = 0;
  std::size_t direct_bag = 0;
  std::size_t summary_bag = 0;
  // Symmetric difference of the distinct answer sets when unequal.
  std::vector<std::vector<std::optional<rdf::Term>>> missing;  // direct only
  std::vector<std::vector<std::optional<rdf::Term>>> extra;    // summary only
};

// Compares the distinct answers of the original query over the original graph
// with the distinct rows of the bundle's solutions.
LosslessReport verify_lossless(const rdf::Graph& graph, const std::string& query_text,
                               const QbsBundle& bundle,
                               const sparql::SolutionTable& solutions);

// g and the augmented graph as N-Triples, the rewritten query as text, the
// similarity record as TSV, and a JSON summary.
void dump_bundle(const QbsBundle& bundle, const std::filesystem::path& dir);

}  // namespace gsq::summarize
