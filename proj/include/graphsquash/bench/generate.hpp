#pragma once

// Synthetic graph generation with planted predicate-synonym clusters.
//
// Predicates of one cluster draw their triples from a shared fact pool over
// cluster-local subject/object neighborhoods, so walk-based embeddings can
// recover the clusters. A small bridge fraction links one cluster's objects
// to the next cluster's subjects to make join queries non-trivial.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "graphsquash/rdf/graph.hpp"
#include "graphsquash/sparql/algebra.hpp"

namespace gsq::bench {

struct GeneratorSpec {
  std::uint32_t entity_count = 200;
  std::uint32_t predicate_count = 9;
  std::vector<std::uint32_t> cluster_sizes = {3, 2};  // rest become singletons
  std::uint32_t triples_per_predicate = 60;
  std::uint32_t object_pool_size = 20;
  std::uint64_t seed = 1;

  // Probability that a cluster fact is emitted for a given member predicate.
  double fact_coverage = 0.85;
  // Fraction of a cluster's object pool drawn from the next cluster's
  // subjects (join bridges).
  double bridge_fraction = 0.1;
};

struct SyntheticGraph {
  rdf::Graph graph;
  // Planted partition of all predicates, singletons included.
  std::vector<std::vector<std::string>> clusters;
};

// Deterministic per spec+seed. Throws SpecInvalid on nonsense parameters.
SyntheticGraph generate_synthetic_graph(const GeneratorSpec& spec);

GeneratorSpec load_spec_json(const std::filesystem::path& path);
void write_clusters_tsv(const std::vector<std::vector<std::string>>& clusters,
                        const std::filesystem::path& path);
std::vector<std::vector<std::string>> read_clusters_tsv(const std::filesystem::path& path);

struct QueryGenOptions {
  int max_patterns = 4;
  bool allow_union = true;
  bool allow_optional = true;
  bool allow_join = true;
  std::uint64_t seed = 1;
};

struct GeneratedQuery {
  std::string name;
  std::string text;
};

// Random queries against a generated graph. Every pattern slot that touches a
// multi-predicate cluster is expanded into a UNION over all cluster members
// (the multi-pattern query shape summarization targets); pattern predicates
// are always constants.
std::vector<GeneratedQuery> generate_queries(const SyntheticGraph& sg, int count,
                                             const QueryGenOptions& opt);

}  // namespace gsq::bench
