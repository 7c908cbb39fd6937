#include "graphsquash/bench/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>

#include "graphsquash/embed/walks.hpp"
#include "graphsquash/errors.hpp"
#include "graphsquash/rng.hpp"
#include "graphsquash/rdf/ntriples.hpp"
#include "graphsquash/sparql/eval.hpp"
#include "graphsquash/sparql/parse.hpp"
#include "graphsquash/summarize/grouping.hpp"
#include "graphsquash/summarize/query_based.hpp"
#include "graphsquash/vec/kernels.hpp"

namespace gsq::bench {

using clock_type = std::chrono::steady_clock;

double summarization_ratio(std::uint64_t original_count, std::uint64_t summary_count) {
  if (original_count == 0) throw ZeroOriginal();
  return (1.0 - static_cast<double>(summary_count) / static_cast<double>(original_count)) *
         100.0;
}

namespace {

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

using Row = std::vector<std::optional<rdf::Term>>;

std::set<Row> row_set(const sparql::SolutionTable& t) {
  return {t.rows.begin(), t.rows.end()};
}

double clamp_sr(double sr) { return std::clamp(sr, 0.0, 100.0); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return text;
}

}  // namespace

BenchConfig load_bench_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SpecInvalid("bench config: " + std::string(e.what()));
  }

  const std::filesystem::path base = path.parent_path();
  auto resolve = [&base](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base / fp;
  };

  BenchConfig cfg;
  try {
    for (const auto& gj : j.value("graphs", nlohmann::json::array())) {
      BenchGraphSpec spec;
      spec.name = gj.value("name", "graph" + std::to_string(cfg.graphs.size()));
      if (gj.contains("file")) spec.file = resolve(gj["file"].get<std::string>());
      if (gj.contains("clusters")) {
        spec.clusters_file = resolve(gj["clusters"].get<std::string>());
      }
      if (gj.contains("generator")) {
        GeneratorSpec gen;
        const auto& gg = gj["generator"];
        if (gg.contains("entities")) gen.entity_count = gg["entities"].get<std::uint32_t>();
        if (gg.contains("predicates")) {
          gen.predicate_count = gg["predicates"].get<std::uint32_t>();
        }
        if (gg.contains("cluster_sizes")) {
          gen.cluster_sizes = gg["cluster_sizes"].get<std::vector<std::uint32_t>>();
        }
        if (gg.contains("triples_per_predicate")) {
          gen.triples_per_predicate = gg["triples_per_predicate"].get<std::uint32_t>();
        }
        if (gg.contains("object_pool")) {
          gen.object_pool_size = gg["object_pool"].get<std::uint32_t>();
        }
        if (gg.contains("seed")) gen.seed = gg["seed"].get<std::uint64_t>();
        if (gg.contains("fact_coverage")) gen.fact_coverage = gg["fact_coverage"].get<double>();
        if (gg.contains("bridge_fraction")) {
          gen.bridge_fraction = gg["bridge_fraction"].get<double>();
        }
        spec.generator = gen;
      }
      if (!spec.file && !spec.generator) {
        throw SpecInvalid("bench config: graph needs a file or a generator");
      }
      cfg.graphs.push_back(std::move(spec));
    }

    for (const auto& qj : j.value("queries", nlohmann::json::array())) {
      GeneratedQuery q;
      q.name = qj.value("name", "q" + std::to_string(cfg.fixed_queries.size()));
      if (qj.contains("file")) {
        q.text = read_file(resolve(qj["file"].get<std::string>()));
      } else if (qj.contains("text")) {
        q.text = qj["text"].get<std::string>();
      } else {
        throw SpecInvalid("bench config: query needs file or text");
      }
      cfg.fixed_queries.push_back(std::move(q));
    }

    cfg.generate_query_count = j.value("generate_queries", 0);
    if (j.contains("querygen")) {
      const auto& qg = j["querygen"];
      cfg.querygen.max_patterns = qg.value("max_patterns", 4);
      cfg.querygen.allow_union = qg.value("allow_union", true);
      cfg.querygen.allow_optional = qg.value("allow_optional", true);
      cfg.querygen.allow_join = qg.value("allow_join", true);
      cfg.querygen.seed = qg.value("seed", std::uint64_t{1});
    }
    if (j.contains("engines")) cfg.engines = j["engines"].get<std::vector<std::string>>();
    cfg.repetitions = j.value("repetitions", 3);
    cfg.threshold = j.value("threshold", 0.5);
    if (j.contains("similarity")) {
      std::string s = j["similarity"].get<std::string>();
      if (s == "oracle") cfg.similarity = SimilarityMode::Oracle;
      else if (s == "rdf2vec") cfg.similarity = SimilarityMode::Rdf2Vec;
      else if (s == "word-vectors") cfg.similarity = SimilarityMode::WordVectors;
      else throw SpecInvalid("bench config: unknown similarity mode " + s);
    }
    if (j.contains("vectors")) cfg.vectors_path = resolve(j["vectors"].get<std::string>());
    if (j.contains("train")) {
      const auto& t = j["train"];
      cfg.train.dims = t.value("dims", cfg.train.dims);
      cfg.train.window = t.value("window", cfg.train.window);
      cfg.train.negatives = t.value("negatives", cfg.train.negatives);
      cfg.train.epochs = t.value("epochs", cfg.train.epochs);
      cfg.train.learning_rate = t.value("learning_rate", cfg.train.learning_rate);
      cfg.train.seed = t.value("seed", cfg.train.seed);
    }
    cfg.walk_length = j.value("walk_length", cfg.walk_length);
    cfg.walks_per_entity = j.value("walks_per_entity", cfg.walks_per_entity);
    cfg.keep_singletons = j.value("keep_singletons", false);
    cfg.keep_literals = j.value("keep_literals", false);
    cfg.seed = j.value("seed", std::uint64_t{1});
  } catch (const nlohmann::json::exception& e) {
    throw SpecInvalid("bench config: " + std::string(e.what()));
  }
  return cfg;
}

BenchReport run_benchmark(const BenchConfig& config) {
  BenchReport report;
  report.kernel_lane = std::string(vec::lane_name(vec::active_lane()));
  const int reps = std::max(config.repetitions, 1);

  for (const BenchGraphSpec& gspec : config.graphs) {
    rdf::Graph graph;
    std::vector<std::vector<std::string>> clusters;
    try {
      if (gspec.generator) {
        SyntheticGraph sg = generate_synthetic_graph(*gspec.generator);
        graph = std::move(sg.graph);
        clusters = std::move(sg.clusters);
      } else {
        rdf::ParseOptions popt;
        popt.strip_literals = !config.keep_literals;
        graph = rdf::parse_ntriples_file(*gspec.file, popt);
      }
      if (gspec.clusters_file) clusters = read_clusters_tsv(*gspec.clusters_file);
    } catch (const std::exception& e) {
      BenchRow row;
      row.graph = gspec.name;
      row.engine = "load";
      row.error = e.what();
      report.rows.push_back(std::move(row));
      continue;
    }

    std::vector<GeneratedQuery> queries = config.fixed_queries;
    if (config.generate_query_count > 0) {
      SyntheticGraph view;
      view.graph = graph;  // copy: query generation needs graph + clusters
      view.clusters = clusters;
      QueryGenOptions qopt = config.querygen;
      qopt.seed = mix64(config.seed, qopt.seed);
      auto generated = generate_queries(view, config.generate_query_count, qopt);
      queries.insert(queries.end(), generated.begin(), generated.end());
    }

    // Direct evaluation is both an engine and the lossless baseline.
    struct DirectResult {
      std::set<Row> distinct;
      std::uint64_t bag = 0;
      double qa = 0.0;
      bool ok = false;
      std::string error;
    };
    std::vector<DirectResult> direct(queries.size());
    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
      try {
        sparql::Query q = sparql::parse_query(queries[qi].text);
        double total = 0.0;
        sparql::SolutionTable table;
        for (int r = 0; r < reps; ++r) {
          auto t0 = clock_type::now();
          table = sparql::evaluate(graph, q);
          total += seconds_since(t0);
        }
        direct[qi].qa = total / reps;
        direct[qi].bag = table.rows.size();
        direct[qi].distinct = row_set(table);
        direct[qi].ok = true;
      } catch (const std::exception& e) {
        direct[qi].error = e.what();
      }
    }

    for (const std::string& engine : config.engines) {
      if (engine == "direct") {
        for (std::size_t qi = 0; qi < queries.size(); ++qi) {
          BenchRow row;
          row.graph = gspec.name;
          row.query = queries[qi].name;
          row.engine = "direct";
          row.original_triples = graph.size();
          row.summary_triples = graph.size();
          row.size_ratio = 1.0;
          row.sr_percent = 0.0;
          if (direct[qi].ok) {
            row.qa_seconds = direct[qi].qa;
            row.bag_answers = direct[qi].bag;
            row.distinct_answers = direct[qi].distinct.size();
          } else {
            row.error = direct[qi].error;
          }
          report.rows.push_back(std::move(row));
        }
        continue;
      }

      // Summarizing engines need a similarity source.
      embed::FixedClusterSimilarity oracle(clusters);
      embed::VectorStore loaded;
      std::optional<embed::StoreSimilarity> word_sim;
      if (config.similarity == SimilarityMode::WordVectors) {
        std::ifstream in(config.vectors_path);
        if (!in) {
          BenchRow row;
          row.graph = gspec.name;
          row.engine = engine;
          row.error = "cannot open vectors file " + config.vectors_path.string();
          report.rows.push_back(std::move(row));
          continue;
        }
        loaded = embed::VectorStore::load(in);
        word_sim.emplace(loaded);
      }

      if (engine == "gbs") {
        summarize::GbsSummary summary;
        double st = 0.0;
        try {
          summarize::GbsOptions gopt;
          gopt.keep_singletons = config.keep_singletons;
          gopt.allow_literals = config.keep_literals;
          auto t0 = clock_type::now();
          summary = summarize::gbs_summarize(graph, config.rules, gopt);
          st = seconds_since(t0);
        } catch (const std::exception& e) {
          BenchRow row;
          row.graph = gspec.name;
          row.engine = "gbs";
          row.error = e.what();
          report.rows.push_back(std::move(row));
          continue;
        }

        embed::VectorStore trained;
        std::optional<embed::StoreSimilarity> trained_sim;
        const embed::SimilarityProvider* provider = &oracle;
        if (config.similarity == SimilarityMode::Rdf2Vec && summary.summary.size() > 0) {
          embed::WalkCorpus corpus = embed::generate_walks(
              summary.summary, config.walk_length, config.walks_per_entity, config.seed);
          trained = embed::train_skipgram(corpus, config.train);
          trained_sim.emplace(trained);
          provider = &*trained_sim;
        } else if (config.similarity == SimilarityMode::WordVectors) {
          provider = &*word_sim;
        }

        for (std::size_t qi = 0; qi < queries.size(); ++qi) {
          BenchRow row;
          row.graph = gspec.name;
          row.query = queries[qi].name;
          row.engine = "gbs";
          row.original_triples = graph.size();
          row.summary_triples = summary.summary.size();
          row.size_ratio = graph.size()
                               ? static_cast<double>(summary.summary.size()) / graph.size()
                               : 0.0;
          row.sr_percent =
              graph.size() ? clamp_sr(summarization_ratio(graph.size(), summary.summary.size()))
                           : 0.0;
          row.st_seconds = st;
          try {
            sparql::Query q = sparql::parse_query(queries[qi].text);
            double total = 0.0;
            sparql::SolutionTable answers;
            for (int r = 0; r < reps; ++r) {
              auto t0 = clock_type::now();
              summarize::GbsRewrite rewritten =
                  summarize::gbs_rewrite(q, *provider, config.threshold);
              answers = summarize::gbs_answer(summary, rewritten.query);
              total += seconds_since(t0);
            }
            row.qa_seconds = total / reps;
            row.bag_answers = answers.rows.size();
            std::set<Row> answer_set = row_set(answers);
            row.distinct_answers = answer_set.size();
            if (direct[qi].ok) row.lossless = (answer_set == direct[qi].distinct);
          } catch (const std::exception& e) {
            row.error = e.what();
          }
          report.rows.push_back(std::move(row));
        }
        continue;
      }

      if (engine == "qbs") {
        for (std::size_t qi = 0; qi < queries.size(); ++qi) {
          BenchRow row;
          row.graph = gspec.name;
          row.query = queries[qi].name;
          row.engine = "qbs";
          row.original_triples = graph.size();
          try {
            summarize::QbsRunConfig rc;
            rc.options.threshold = config.threshold;
            rc.allow_literals = config.keep_literals;
            rc.train = config.train;
            rc.walk_length = config.walk_length;
            rc.walks_per_entity = config.walks_per_entity;
            switch (config.similarity) {
              case SimilarityMode::Oracle:
                rc.embedding = summarize::QbsRunConfig::Embedding::Provider;
                rc.provider = &oracle;
                break;
              case SimilarityMode::Rdf2Vec:
                rc.embedding = summarize::QbsRunConfig::Embedding::TrainOnSubgraph;
                break;
              case SimilarityMode::WordVectors:
                rc.embedding = summarize::QbsRunConfig::Embedding::ExternalStore;
                rc.store = &loaded;
                break;
            }
            double st_total = 0.0, qa_total = 0.0;
            summarize::QbsRun run;
            for (int r = 0; r < reps; ++r) {
              run = summarize::qbs_run(graph, queries[qi].text, rc);
              st_total += run.summarize_seconds;
              qa_total += run.answer_seconds;
            }
            row.summary_triples = run.bundle.augmented.size();
            row.size_ratio =
                graph.size() ? static_cast<double>(run.bundle.augmented.size()) / graph.size()
                             : 0.0;
            row.sr_percent =
                graph.size()
                    ? clamp_sr(summarization_ratio(graph.size(), run.bundle.augmented.size()))
                    : 0.0;
            row.st_seconds = st_total / reps;
            row.qa_seconds = qa_total / reps;
            row.bag_answers = run.solutions.rows.size();
            std::set<Row> answer_set = row_set(run.solutions);
            row.distinct_answers = answer_set.size();
            if (direct[qi].ok) row.lossless = (answer_set == direct[qi].distinct);
          } catch (const std::exception& e) {
            row.error = e.what();
          }
          report.rows.push_back(std::move(row));
        }
        continue;
      }

      BenchRow row;
      row.graph = gspec.name;
      row.engine = engine;
      row.error = "unknown engine";
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

nlohmann::json BenchReport::to_json() const {
  nlohmann::json j;
  j["kernel_lane"] = kernel_lane;
  j["rows"] = nlohmann::json::array();
  for (const BenchRow& r : rows) {
    nlohmann::json row;
    row["graph"] = r.graph;
    row["query"] = r.query;
    row["engine"] = r.engine;
    row["original_triples"] = r.original_triples;
    row["summary_triples"] = r.summary_triples;
    row["sr_percent"] = r.sr_percent;
    row["size_ratio"] = r.size_ratio;
    row["st_seconds"] = r.st_seconds;
    row["qa_seconds"] = r.qa_seconds;
    row["distinct_answers"] = r.distinct_answers;
    row["bag_answers"] = r.bag_answers;
    if (r.lossless.has_value()) row["lossless"] = *r.lossless;
    if (!r.error.empty()) row["error"] = r.error;
    j["rows"].push_back(std::move(row));
  }
  return j;
}

void print_table(const BenchReport& report, std::ostream& out) {
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %-8s %-7s %10s %10s %7s %9s %9s %9s %8s %-8s",
                "graph", "query", "engine", "orig", "summary", "SR%", "ST(s)", "QA(s)",
                "distinct", "bag", "lossless");
  out << line << '\n';
  for (const BenchRow& r : report.rows) {
    if (!r.error.empty()) {
      std::snprintf(line, sizeof line, "%-10s %-8s %-7s  error: %s", r.graph.c_str(),
                    r.query.c_str(), r.engine.c_str(), r.error.c_str());
      out << line << '\n';
      continue;
    }
    std::string lossless = r.lossless ? (*r.lossless ? "yes" : "no") : "-";
    std::snprintf(line, sizeof line,
                  "%-10s %-8s %-7s %10llu %10llu %6.1f%% %9.4f %9.4f %9llu %8llu %-8s",
                  r.graph.c_str(), r.query.c_str(), r.engine.c_str(),
                  static_cast<unsigned long long>(r.original_triples),
                  static_cast<unsigned long long>(r.summary_triples), r.sr_percent,
                  r.st_seconds, r.qa_seconds,
                  static_cast<unsigned long long>(r.distinct_answers),
                  static_cast<unsigned long long>(r.bag_answers), lossless.c_str());
    out << line << '\n';
  }
}

}  // namespace gsq::bench
