#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "graphsquash/bench/generate.hpp"
#include "graphsquash/embed/train.hpp"
#include "graphsquash/reason/closure.hpp"

#include "json.hpp"

namespace gsq::bench {

// SR = (1 - summary/original) * 100: the percentage reduction in triple
// count. Throws ZeroOriginal when original is 0.
double summarization_ratio(std::uint64_t original_count, std::uint64_t summary_count);

struct BenchGraphSpec {
  std::string name;
  std::optional<std::filesystem::path> file;
  std::optional<std::filesystem::path> clusters_file;  // planted clusters TSV
  std::optional<GeneratorSpec> generator;
};

enum class SimilarityMode { Oracle, Rdf2Vec, WordVectors };

struct BenchConfig {
  std::vector<BenchGraphSpec> graphs;
  std::vector<GeneratedQuery> fixed_queries;
  int generate_query_count = 0;  // per graph, needs planted clusters
  QueryGenOptions querygen;

  std::vector<std::string> engines = {"direct", "gbs", "qbs"};
  int repetitions = 3;
  double threshold = 0.5;

  SimilarityMode similarity = SimilarityMode::Oracle;
  std::filesystem::path vectors_path;
  embed::TrainConfig train;
  int walk_length = 4;
  int walks_per_entity = 8;

  bool keep_singletons = false;
  bool keep_literals = false;
  reason::RuleConfig rules;
  std::uint64_t seed = 1;
};

struct BenchRow {
  std::string graph;
  std::string query;
  std::string engine;
  std::uint64_t original_triples = 0;
  std::uint64_t summary_triples = 0;
  double sr_percent = 0.0;          // clamped into [0,100]
  double size_ratio = 0.0;          // raw summary/original
  double st_seconds = 0.0;
  double qa_seconds = 0.0;
  std::uint64_t distinct_answers = 0;
  std::uint64_t bag_answers = 0;
  std::optional<bool> lossless;  // gbs/qbs rows only
  std::string error;             // non-fatal cell failure
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::string kernel_lane;

  nlohmann::json to_json() const;
};

BenchConfig load_bench_config(const std::filesystem::path& path);

// Runs each (graph, query, engine) cell, timing summarization and query
// answering separately and averaging over the configured repetitions. A
// failing cell is recorded in its row, not fatal.
BenchReport run_benchmark(const BenchConfig& config);

void print_table(const BenchReport& report, std::ostream& out);

}  // namespace gsq::bench
