// graphsquash: compact RDF graphs with grouping-based or query-based
// summarization, rewrite multi-pattern queries onto representative
// predicates, and verify that query-based summaries answer losslessly.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"

#include "graphsquash/bench/bench.hpp"
#include "graphsquash/embed/walks.hpp"
#include "graphsquash/errors.hpp"
#include "graphsquash/rdf/ntriples.hpp"
#include "graphsquash/sparql/eval.hpp"
#include "graphsquash/sparql/parse.hpp"
#include "graphsquash/summarize/grouping.hpp"
#include "graphsquash/summarize/query_based.hpp"
#include "graphsquash/vec/kernels.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitVerification = 3;

struct CommonOpts {
  std::string input;
  std::string query_path;
  double threshold = 0.5;
  std::string embedding = "rdf2vec";  // rdf2vec | word-vectors | oracle
  std::string vectors_path;
  std::string clusters_path;
  std::uint64_t seed = 1;
  bool keep_singletons = false;
  bool reject_literals = false;
  bool strip_literals = false;
  bool keep_literals = false;
  bool infer = false;
  bool no_type_prop = false;
  std::vector<std::string> transitive_preds;
  std::string type_pred;
  double closure_budget = 10.0;
  int dims = 64;
  int window = 5;
  int negatives = 5;
  int epochs = 5;
  double learning_rate = 0.025;
  int walk_length = 4;
  int walks_per_entity = 8;
  bool candidates_whole_graph = false;
  bool unsafe_object_substitution = false;
  std::string dump_walks;
};

void add_literal_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_flag("--reject-literals", o.reject_literals,
                "error out on literal triples at parse time");
  cmd->add_flag("--strip-literals", o.strip_literals,
                "drop literal triples while loading");
  cmd->add_flag("--keep-literals", o.keep_literals,
                "let summarization run on graphs that contain literals");
}

void add_reasoner_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--transitive-pred", o.transitive_preds,
                  "transitive predicate IRI (repeatable; default rdfs:subClassOf)");
  cmd->add_option("--type-pred", o.type_pred, "type predicate IRI (default rdf:type)");
  cmd->add_flag("--no-type-prop", o.no_type_prop, "disable type propagation");
  cmd->add_option("--closure-budget", o.closure_budget,
                  "inference budget as a multiple of the input size");
}

void add_embedding_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--threshold", o.threshold, "similarity threshold (default 0.5)")
      ->check([](const std::string& s) -> std::string {
        char* end = nullptr;
        double v = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0' || !(v > 0.0) || !(v < 1.0)) {
          return "threshold must lie strictly between 0 and 1";
        }
        return {};
      });
  cmd->add_option("--embedding", o.embedding, "rdf2vec | word-vectors | oracle")
      ->check(CLI::IsMember({"rdf2vec", "word-vectors", "oracle"}));
  cmd->add_option("--vectors-path", o.vectors_path, "word-vector text file");
  cmd->add_option("--clusters", o.clusters_path, "planted predicate clusters TSV (oracle)");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--dims", o.dims, "embedding dimensions");
  cmd->add_option("--window", o.window, "skip-gram window");
  cmd->add_option("--negatives", o.negatives, "negative samples");
  cmd->add_option("--epochs", o.epochs, "training epochs");
  cmd->add_option("--learning-rate", o.learning_rate, "initial learning rate");
  cmd->add_option("--walk-length", o.walk_length, "random walk hops");
  cmd->add_option("--walks-per-entity", o.walks_per_entity, "walks per subject");
  cmd->add_option("--dump-walks", o.dump_walks, "write the training walks to a file");
}

gsq::reason::RuleConfig rules_from(const CommonOpts& o) {
  gsq::reason::RuleConfig rules;
  if (!o.transitive_preds.empty()) rules.transitive_predicates = o.transitive_preds;
  if (!o.type_pred.empty()) rules.type_predicate = o.type_pred;
  rules.type_propagation = !o.no_type_prop;
  rules.budget_factor = o.closure_budget;
  return rules;
}

gsq::rdf::Graph load_graph(const CommonOpts& o) {
  gsq::rdf::ParseOptions popt;
  popt.reject_literals = o.reject_literals;
  popt.strip_literals = o.strip_literals;
  return gsq::rdf::parse_ntriples_file(o.input, popt);
}

double effective_threshold(const CommonOpts& o) {
  // Env override for suite-wide sweeps.
  if (const char* env = std::getenv("GRAPH_SQUASH_THRESHOLD")) {
    char* end = nullptr;
    double t = std::strtod(env, &end);
    if (end != env && *end == '\0' && t > 0.0 && t < 1.0) {
      std::cerr << "note: GRAPH_SQUASH_THRESHOLD=" << t << " overrides --threshold\n";
      return t;
    }
    std::cerr << "warning: ignoring invalid GRAPH_SQUASH_THRESHOLD\n";
  }
  return o.threshold;
}

gsq::embed::TrainConfig train_config(const CommonOpts& o) {
  gsq::embed::TrainConfig t;
  t.dims = o.dims;
  t.window = o.window;
  t.negatives = o.negatives;
  t.epochs = o.epochs;
  t.learning_rate = static_cast<float>(o.learning_rate);
  t.seed = o.seed;
  return t;
}

// Similarity provider for gbs rewriting / qbs runs; keeps owned state alive.
struct SimilaritySource {
  gsq::embed::VectorStore store;
  std::optional<gsq::embed::StoreSimilarity> store_sim;
  std::optional<gsq::embed::FixedClusterSimilarity> oracle;
  const gsq::embed::SimilarityProvider* provider = nullptr;
};

SimilaritySource make_source_for_graph(const CommonOpts& o, const gsq::rdf::Graph& g) {
  SimilaritySource src;
  if (o.embedding == "oracle") {
    if (o.clusters_path.empty()) {
      throw gsq::UsageError("--embedding oracle needs --clusters");
    }
    src.oracle.emplace(gsq::bench::read_clusters_tsv(o.clusters_path));
    src.provider = &*src.oracle;
  } else if (o.embedding == "word-vectors") {
    if (o.vectors_path.empty()) {
      throw gsq::UsageError("--embedding word-vectors needs --vectors-path");
    }
    std::ifstream in(o.vectors_path);
    if (!in) throw gsq::Error("cannot open " + o.vectors_path);
    src.store = gsq::embed::VectorStore::load(in);
    src.store_sim.emplace(src.store);
    src.provider = &*src.store_sim;
  } else {
    auto corpus = gsq::embed::generate_walks(g, o.walk_length, o.walks_per_entity, o.seed);
    if (!o.dump_walks.empty()) {
      std::ofstream out(o.dump_walks);
      gsq::embed::write_walks(corpus, out);
    }
    src.store = gsq::embed::train_skipgram(corpus, train_config(o));
    src.store_sim.emplace(src.store);
    src.provider = &*src.store_sim;
  }
  return src;
}

gsq::summarize::QbsRunConfig qbs_config(const CommonOpts& o, SimilaritySource& src) {
  gsq::summarize::QbsRunConfig rc;
  rc.options.threshold = effective_threshold(o);
  rc.options.candidates_from_whole_graph = o.candidates_whole_graph;
  rc.options.unsafe_object_substitution = o.unsafe_object_substitution;
  rc.allow_literals = o.keep_literals || o.strip_literals;
  rc.train = train_config(o);
  rc.walk_length = o.walk_length;
  rc.walks_per_entity = o.walks_per_entity;
  if (!o.dump_walks.empty()) rc.dump_walks = o.dump_walks;
  rc.force_inference = o.infer;
  rc.rules = rules_from(o);
  if (o.embedding == "oracle") {
    if (o.clusters_path.empty()) {
      throw gsq::UsageError("--embedding oracle needs --clusters");
    }
    src.oracle.emplace(gsq::bench::read_clusters_tsv(o.clusters_path));
    rc.embedding = gsq::summarize::QbsRunConfig::Embedding::Provider;
    rc.provider = &*src.oracle;
  } else if (o.embedding == "word-vectors") {
    if (o.vectors_path.empty()) {
      throw gsq::UsageError("--embedding word-vectors needs --vectors-path");
    }
    std::ifstream in(o.vectors_path);
    if (!in) throw gsq::Error("cannot open " + o.vectors_path);
    src.store = gsq::embed::VectorStore::load(in);
    rc.embedding = gsq::summarize::QbsRunConfig::Embedding::ExternalStore;
    rc.store = &src.store;
  } else {
    rc.embedding = gsq::summarize::QbsRunConfig::Embedding::TrainOnSubgraph;
  }
  return rc;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gsq::Error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int cmd_gen(const std::string& spec_path, std::optional<std::uint64_t> seed,
            const std::string& out_path, std::string clusters_out) {
  gsq::bench::GeneratorSpec spec = gsq::bench::load_spec_json(spec_path);
  if (seed) spec.seed = *seed;
  gsq::bench::SyntheticGraph sg = gsq::bench::generate_synthetic_graph(spec);
  gsq::rdf::write_ntriples_file(sg.graph, out_path);
  if (clusters_out.empty()) clusters_out = out_path + ".clusters.tsv";
  gsq::bench::write_clusters_tsv(sg.clusters, clusters_out);
  std::cout << "wrote " << sg.graph.size() << " triples to " << out_path << "\n"
            << "wrote " << sg.clusters.size() << " clusters to " << clusters_out << "\n";
  return kExitOk;
}

int cmd_summarize_gbs(const CommonOpts& o, const std::string& out_dir) {
  gsq::rdf::Graph graph = load_graph(o);
  gsq::summarize::GbsOptions gopt;
  gopt.keep_singletons = o.keep_singletons;
  gopt.allow_literals = o.keep_literals || o.strip_literals;

  auto t0 = std::chrono::steady_clock::now();
  gsq::summarize::GbsSummary summary = gsq::summarize::gbs_summarize(graph, rules_from(o), gopt);
  double st = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::filesystem::create_directories(out_dir);
  gsq::rdf::write_ntriples_file(summary.summary, std::filesystem::path(out_dir) / "summary.nt");
  std::ofstream mf(std::filesystem::path(out_dir) / "membership.tsv");
  gsq::summarize::write_membership_tsv(summary, mf);

  nlohmann::json meta;
  meta["original_triples"] = graph.size();
  meta["inferred_triples"] = summary.inferred_triples;
  meta["summary_triples"] = summary.summary.size();
  meta["supernodes"] = summary.supernodes.size();
  meta["dropped_singletons"] = summary.dropped_singletons;
  meta["sr_percent"] = graph.size()
                           ? gsq::bench::summarization_ratio(graph.size(), summary.summary.size())
                           : 0.0;
  meta["st_seconds"] = st;
  std::ofstream jf(std::filesystem::path(out_dir) / "summary.json");
  jf << meta.dump(2) << '\n';

  std::cout << "summary: " << summary.summary.size() << " triples, "
            << summary.supernodes.size() << " super-nodes, " << summary.dropped_singletons
            << " singleton groups dropped\n";
  return kExitOk;
}

int cmd_summarize_qbs(const CommonOpts& o, const std::string& out_dir) {
  gsq::rdf::Graph graph = load_graph(o);
  std::string query_text = read_file(o.query_path);
  SimilaritySource src;
  gsq::summarize::QbsRunConfig rc = qbs_config(o, src);
  gsq::summarize::QbsRun run = gsq::summarize::qbs_run(graph, query_text, rc);

  gsq::summarize::dump_bundle(run.bundle, out_dir);
  for (const std::string& w : run.bundle.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << "subgraph: " << run.bundle.subgraph.size()
            << " triples; summary: " << run.bundle.augmented.size() << " triples ("
            << run.bundle.new_triple_count << " new); rewritten query: "
            << gsq::sparql::to_text(run.bundle.rewritten) << '\n';
  return kExitOk;
}

int cmd_query(const CommonOpts& o, const std::string& engine, const std::string& out_path,
              const std::string& json_path, const std::string& summary_dir) {
  gsq::rdf::Graph graph = load_graph(o);
  std::string query_text = read_file(o.query_path);
  gsq::sparql::SolutionTable table;

  if (engine == "direct") {
    gsq::sparql::Query q = gsq::sparql::parse_query(query_text);
    table = gsq::sparql::evaluate(graph, q);
  } else if (engine == "gbs") {
    gsq::sparql::Query q = gsq::sparql::parse_query(query_text);
    gsq::summarize::GbsSummary summary;
    if (!summary_dir.empty()) {
      // reuse a saved offline summary
      std::filesystem::path dir(summary_dir);
      summary.summary = gsq::rdf::parse_ntriples_file(dir / "summary.nt");
      std::ifstream mf(dir / "membership.tsv");
      if (!mf) throw gsq::Error("cannot open " + (dir / "membership.tsv").string());
      summary.membership = gsq::summarize::read_membership_tsv(mf);
    } else {
      gsq::summarize::GbsOptions gopt;
      gopt.keep_singletons = o.keep_singletons;
      gopt.allow_literals = o.keep_literals || o.strip_literals;
      summary = gsq::summarize::gbs_summarize(graph, rules_from(o), gopt);
    }
    SimilaritySource src = make_source_for_graph(o, summary.summary);
    auto rewritten = gsq::summarize::gbs_rewrite(q, *src.provider, effective_threshold(o));
    for (const std::string& w : rewritten.warnings) std::cerr << "warning: " << w << '\n';
    table = gsq::summarize::gbs_answer(summary, rewritten.query);
  } else if (engine == "qbs") {
    SimilaritySource src;
    gsq::summarize::QbsRunConfig rc = qbs_config(o, src);
    gsq::summarize::QbsRun run = gsq::summarize::qbs_run(graph, query_text, rc);
    for (const std::string& w : run.bundle.warnings) std::cerr << "warning: " << w << '\n';
    table = run.solutions;
  } else {
    throw gsq::UsageError("unknown engine: " + engine);
  }

  if (out_path.empty() || out_path == "-") {
    gsq::sparql::write_tsv(table, std::cout);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw gsq::Error("cannot write " + out_path);
    gsq::sparql::write_tsv(table, out);
  }
  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) throw gsq::Error("cannot write " + json_path);
    gsq::sparql::write_json(table, out);
  }
  std::cerr << table.rows.size() << " rows\n";
  return kExitOk;
}

int cmd_verify(const CommonOpts& o, const std::string& report_path) {
  gsq::rdf::Graph graph = load_graph(o);
  std::string query_text = read_file(o.query_path);
  SimilaritySource src;
  gsq::summarize::QbsRunConfig rc = qbs_config(o, src);
  gsq::summarize::QbsRun run = gsq::summarize::qbs_run(graph, query_text, rc);
  gsq::summarize::LosslessReport rep =
      gsq::summarize::verify_lossless(graph, query_text, run.bundle, run.solutions);

  nlohmann::json j;
  j["equal"] = rep.equal;
  j["direct_distinct"] = rep.direct_distinct;
  j["summary_distinct"] = rep.summary_distinct;
  j["direct_bag"] = rep.direct_bag;
  j["summary_bag"] = rep.summary_bag;
  auto rows_to_json = [](const auto& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
      nlohmann::json jr = nlohmann::json::array();
      for (const auto& cell : row) {
        jr.push_back(cell ? gsq::rdf::to_ntriples(*cell) : "");
      }
      arr.push_back(std::move(jr));
    }
    return arr;
  };
  j["missing"] = rows_to_json(rep.missing);
  j["extra"] = rows_to_json(rep.extra);
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    out << j.dump(2) << '\n';
  }

  std::cout << (rep.equal ? "LOSSLESS" : "NOT LOSSLESS") << ": direct " << rep.direct_distinct
            << " distinct answers, summary " << rep.summary_distinct << " distinct answers\n";
  if (!rep.equal) {
    for (const auto& row : rep.missing) {
      std::cout << "  missing:";
      for (const auto& cell : row) {
        std::cout << ' ' << (cell ? gsq::rdf::to_ntriples(*cell) : "_");
      }
      std::cout << '\n';
    }
    for (const auto& row : rep.extra) {
      std::cout << "  extra:";
      for (const auto& cell : row) {
        std::cout << ' ' << (cell ? gsq::rdf::to_ntriples(*cell) : "_");
      }
      std::cout << '\n';
    }
  }
  return rep.equal ? kExitOk : kExitVerification;
}

int cmd_bench(const std::string& config_path, const std::string& out_path, bool table) {
  gsq::bench::BenchConfig cfg = gsq::bench::load_bench_config(config_path);
  if (const char* env = std::getenv("GRAPH_SQUASH_THRESHOLD")) {
    char* end = nullptr;
    double t = std::strtod(env, &end);
    if (end != env && *end == '\0' && t > 0.0 && t < 1.0) {
      std::cerr << "note: GRAPH_SQUASH_THRESHOLD=" << t << " overrides config threshold\n";
      cfg.threshold = t;
    }
  }
  gsq::bench::BenchReport report = gsq::bench::run_benchmark(cfg);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw gsq::Error("cannot write " + out_path);
    out << report.to_json().dump(2) << '\n';
  }
  if (table || out_path.empty()) gsq::bench::print_table(report, std::cout);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graphsquash: RDF graph compaction and query rewriting"};
  app.require_subcommand(1);

  CommonOpts opts;

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic graph with planted synonyms");
  std::string gen_spec, gen_out, gen_clusters_out;
  std::optional<std::uint64_t> gen_seed;
  gen->add_option("--spec", gen_spec, "generator spec JSON")->required();
  gen->add_option("--seed", gen_seed, "seed override");
  gen->add_option("--out", gen_out, "output N-Triples path")->required();
  gen->add_option("--clusters-out", gen_clusters_out,
                  "planted clusters TSV (default <out>.clusters.tsv)");

  // summarize
  auto* summarize = app.add_subcommand("summarize", "build a summary graph");
  std::string sum_method, sum_out;
  summarize->add_option("--method", sum_method, "gbs | qbs")
      ->required()
      ->check(CLI::IsMember({"gbs", "qbs"}));
  summarize->add_option("--input", opts.input, "N-Triples input")->required();
  summarize->add_option("--query", opts.query_path, "query file (qbs only)");
  summarize->add_option("--out", sum_out, "output directory")->required();
  summarize->add_flag("--keep-singletons", opts.keep_singletons,
                      "keep singleton groups in the gbs summary");
  summarize->add_flag("--infer", opts.infer, "run inference before qbs (experimental)");
  summarize->add_flag("--candidates-whole-graph", opts.candidates_whole_graph,
                      "qbs similarity candidates from the whole graph");
  summarize->add_flag("--unsafe-object-substitution", opts.unsafe_object_substitution,
                      "pair witness subjects with query objects (breaks losslessness)");
  add_literal_flags(summarize, opts);
  add_reasoner_flags(summarize, opts);
  add_embedding_flags(summarize, opts);

  // query
  auto* query = app.add_subcommand("query", "answer a query");
  std::string q_engine = "direct", q_out, q_json, q_summary_dir;
  query->add_option("--input", opts.input, "N-Triples input")->required();
  query->add_option("--query", opts.query_path, "query file")->required();
  query->add_option("--engine", q_engine, "direct | gbs | qbs")
      ->check(CLI::IsMember({"direct", "gbs", "qbs"}));
  query->add_option("--out", q_out, "results TSV ('-' for stdout)");
  query->add_option("--json", q_json, "also write results as JSON bindings");
  query->add_option("--summary", q_summary_dir, "reuse a saved gbs summary directory");
  query->add_flag("--keep-singletons", opts.keep_singletons, "gbs: keep singleton groups");
  query->add_flag("--infer", opts.infer, "qbs: run inference first (experimental)");
  query->add_flag("--candidates-whole-graph", opts.candidates_whole_graph,
                  "qbs: similarity candidates from the whole graph");
  add_literal_flags(query, opts);
  add_reasoner_flags(query, opts);
  add_embedding_flags(query, opts);

  // verify
  auto* verify = app.add_subcommand("verify", "run qbs and check losslessness");
  std::string v_report;
  verify->add_option("--input", opts.input, "N-Triples input")->required();
  verify->add_option("--query", opts.query_path, "query file")->required();
  verify->add_option("--report", v_report, "write a JSON report");
  verify->add_flag("--infer", opts.infer, "run inference first (experimental)");
  verify->add_flag("--candidates-whole-graph", opts.candidates_whole_graph,
                   "similarity candidates from the whole graph");
  verify->add_flag("--unsafe-object-substitution", opts.unsafe_object_substitution,
                   "pair witness subjects with query objects (breaks losslessness)");
  add_literal_flags(verify, opts);
  add_reasoner_flags(verify, opts);
  add_embedding_flags(verify, opts);

  // bench
  auto* bench = app.add_subcommand("bench", "run the benchmark harness");
  std::string b_config, b_out;
  bool b_table = false;
  bench->add_option("--config", b_config, "benchmark config JSON")->required();
  bench->add_option("--out", b_out, "report JSON path");
  bench->add_flag("--table", b_table, "print the human-readable table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      return cmd_gen(gen_spec, gen_seed, gen_out, gen_clusters_out);
    }
    if (summarize->parsed()) {
      if (sum_method == "gbs") {
        if (!opts.query_path.empty()) {
          throw gsq::UsageError("summarize --method gbs is the offline phase; it takes no --query");
        }
        return cmd_summarize_gbs(opts, sum_out);
      }
      if (opts.query_path.empty()) {
        throw gsq::UsageError("summarize --method qbs needs --query");
      }
      return cmd_summarize_qbs(opts, sum_out);
    }
    if (query->parsed()) {
      return cmd_query(opts, q_engine, q_out, q_json, q_summary_dir);
    }
    if (verify->parsed()) {
      return cmd_verify(opts, v_report);
    }
    if (bench->parsed()) {
      return cmd_bench(b_config, b_out, b_table);
    }
  } catch (const gsq::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const gsq::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
