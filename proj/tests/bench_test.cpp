#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "doctest.h"
#include "support.hpp"

#include "graphsquash/bench/bench.hpp"
#include "graphsquash/bench/generate.hpp"
#include "graphsquash/errors.hpp"
#include "graphsquash/sparql/parse.hpp"
#include "graphsquash/summarize/query_based.hpp"

using namespace gsq;

TEST_SUITE("bench") {

TEST_CASE("cluster predicates share most of their object sets") {
  bench::GeneratorSpec spec;
  spec.entity_count = 100;
  spec.predicate_count = 3;
  spec.cluster_sizes = {3};
  spec.triples_per_predicate = 60;
  spec.object_pool_size = 15;
  spec.seed = 11;
  bench::SyntheticGraph sg = bench::generate_synthetic_graph(spec);
  REQUIRE(sg.clusters.size() == 1);
  REQUIRE(sg.clusters[0].size() == 3);

  std::vector<std::set<std::string>> object_sets;
  for (const std::string& p : sg.clusters[0]) {
    std::set<std::string> objs;
    for (const rdf::TripleIds& t :
         sg.graph.match_terms(std::nullopt, rdf::make_iri(p), std::nullopt)) {
      objs.insert(sg.graph.term(t.o).lexical);
    }
    REQUIRE(!objs.empty());
    object_sets.push_back(std::move(objs));
  }
  for (std::size_t i = 0; i < object_sets.size(); ++i) {
    for (std::size_t j = i + 1; j < object_sets.size(); ++j) {
      std::set<std::string> inter, uni;
      std::set_intersection(object_sets[i].begin(), object_sets[i].end(),
                            object_sets[j].begin(), object_sets[j].end(),
                            std::inserter(inter, inter.begin()));
      std::set_union(object_sets[i].begin(), object_sets[i].end(), object_sets[j].begin(),
                     object_sets[j].end(), std::inserter(uni, uni.begin()));
      double jaccard = static_cast<double>(inter.size()) / static_cast<double>(uni.size());
      CHECK(jaccard >= 0.8);
    }
  }
}

TEST_CASE("all-singleton specs make qbs degenerate to identity rewriting") {
  bench::GeneratorSpec spec;
  spec.entity_count = 80;
  spec.predicate_count = 5;
  spec.cluster_sizes = {};
  spec.triples_per_predicate = 30;
  spec.object_pool_size = 10;
  spec.seed = 3;
  bench::SyntheticGraph sg = bench::generate_synthetic_graph(spec);
  CHECK(sg.clusters.size() == 5);

  embed::FixedClusterSimilarity oracle(sg.clusters);
  bench::QueryGenOptions qopt;
  qopt.seed = 4;
  auto queries = bench::generate_queries(sg, 5, qopt);
  for (const auto& gq : queries) {
    sparql::Query q = sparql::parse_query(gq.text);
    rdf::Graph sub = summarize::qbs_extract_subgraph(sg.graph, q);
    summarize::QbsBundle bundle = summarize::qbs_augment(sg.graph, sub, q, oracle, {});
    CHECK(bundle.new_triple_count == 0);
    CHECK(bundle.rewritten.body->equals(*q.body));
  }
}

TEST_CASE("generation is deterministic per spec and seed") {
  bench::GeneratorSpec spec;
  spec.seed = 21;
  bench::SyntheticGraph a = bench::generate_synthetic_graph(spec);
  bench::SyntheticGraph b = bench::generate_synthetic_graph(spec);
  CHECK(rdf::serialize_ntriples(a.graph) == rdf::serialize_ntriples(b.graph));
  CHECK(a.clusters == b.clusters);
  spec.seed = 22;
  bench::SyntheticGraph c = bench::generate_synthetic_graph(spec);
  CHECK(rdf::serialize_ntriples(a.graph) != rdf::serialize_ntriples(c.graph));
}

TEST_CASE("invalid generator specs are rejected") {
  bench::GeneratorSpec spec;
  spec.cluster_sizes = {99};
  spec.predicate_count = 3;
  CHECK_THROWS_AS(bench::generate_synthetic_graph(spec), SpecInvalid);
  spec = bench::GeneratorSpec{};
  spec.entity_count = 1;
  CHECK_THROWS_AS(bench::generate_synthetic_graph(spec), SpecInvalid);
}

TEST_CASE("summarization ratio arithmetic") {
  CHECK(bench::summarization_ratio(2047, 20) == doctest::Approx(99.02).epsilon(0.001));
  CHECK(bench::summarization_ratio(1000, 1000) == 0.0);
  CHECK(bench::summarization_ratio(1000, 430) == doctest::Approx(57.0).epsilon(1e-9));
  CHECK_THROWS_AS(bench::summarization_ratio(0, 5), ZeroOriginal);
}

TEST_CASE("generated queries stay within the pattern budget and parse") {
  bench::GeneratorSpec spec;
  spec.seed = 31;
  bench::SyntheticGraph sg = bench::generate_synthetic_graph(spec);
  bench::QueryGenOptions qopt;
  qopt.seed = 8;
  auto queries = bench::generate_queries(sg, 30, qopt);
  CHECK(queries.size() == 30);
  for (const auto& gq : queries) {
    sparql::Query q = sparql::parse_query(gq.text);
    int patterns = 0;
    std::function<void(const sparql::Node&)> walk = [&](const sparql::Node& n) {
      if (n.kind == sparql::Node::Kind::Bgp) {
        patterns += static_cast<int>(n.patterns.size());
        return;
      }
      walk(*n.left);
      walk(*n.right);
    };
    walk(*q.body);
    CHECK(patterns >= 1);
    CHECK(patterns <= qopt.max_patterns);
    for (const std::string& p : sparql::constant_predicates(q)) {
      CHECK(p.starts_with("urn:gsq:p"));
    }
  }
}

TEST_CASE("benchmark over the desk graph: qbs lossless, gbs lossy") {
  std::filesystem::path dir = std::filesystem::temp_directory_path() / "gsq_bench_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream g(dir / "desk.nt");
    g << test::desk_ntriples();
  }
  {
    std::ofstream q(dir / "q_desk.rq");
    q << test::desk_query_text();
  }
  bench::write_clusters_tsv(test::desk_clusters(), dir / "desk.clusters.tsv");

  bench::BenchConfig cfg;
  bench::BenchGraphSpec gspec;
  gspec.name = "desk";
  gspec.file = dir / "desk.nt";
  gspec.clusters_file = dir / "desk.clusters.tsv";
  cfg.graphs.push_back(gspec);
  cfg.fixed_queries.push_back({"qdesk", test::desk_query_text()});
  cfg.engines = {"direct", "gbs", "qbs"};
  cfg.repetitions = 3;
  cfg.similarity = bench::SimilarityMode::Oracle;
  cfg.rules = test::desk_rules();
  cfg.keep_singletons = true;

  bench::BenchReport report = bench::run_benchmark(cfg);
  REQUIRE(report.rows.size() == 3);

  const bench::BenchRow* direct = nullptr;
  const bench::BenchRow* gbs = nullptr;
  const bench::BenchRow* qbs = nullptr;
  for (const bench::BenchRow& r : report.rows) {
    if (r.engine == "direct") direct = &r;
    if (r.engine == "gbs") gbs = &r;
    if (r.engine == "qbs") qbs = &r;
  }
  REQUIRE(direct != nullptr);
  REQUIRE(gbs != nullptr);
  REQUIRE(qbs != nullptr);

  CHECK(direct->error.empty());
  CHECK(direct->distinct_answers == 4);
  CHECK(!direct->lossless.has_value());

  CHECK(qbs->error.empty());
  CHECK(qbs->distinct_answers == 4);
  REQUIRE(qbs->lossless.has_value());
  CHECK(*qbs->lossless);

  CHECK(gbs->error.empty());
  CHECK(gbs->distinct_answers == 2);  // Anna and Markus lost
  REQUIRE(gbs->lossless.has_value());
  CHECK(!*gbs->lossless);
  CHECK(gbs->st_seconds >= 0.0);

  std::filesystem::remove_all(dir);
}

TEST_CASE("the learned-similarity engine paths run end to end") {
  bench::BenchConfig cfg;
  bench::BenchGraphSpec gspec;
  gspec.name = "gen";
  bench::GeneratorSpec gen;
  gen.entity_count = 120;
  gen.predicate_count = 6;
  gen.cluster_sizes = {3};
  gen.triples_per_predicate = 40;
  gen.seed = 9;
  gspec.generator = gen;
  cfg.graphs.push_back(gspec);
  cfg.generate_query_count = 3;
  cfg.engines = {"gbs", "qbs"};
  cfg.repetitions = 1;
  cfg.similarity = bench::SimilarityMode::Rdf2Vec;
  cfg.keep_singletons = true;
  cfg.train.dims = 16;
  cfg.train.epochs = 3;

  bench::BenchReport report = bench::run_benchmark(cfg);
  REQUIRE(report.rows.size() == 6);
  for (const bench::BenchRow& r : report.rows) {
    CHECK(r.error.empty());
    CHECK(r.summary_triples > 0);
  }
}

TEST_CASE("a failing cell is recorded in its row, not fatal") {
  bench::BenchConfig cfg;
  bench::BenchGraphSpec gspec;
  gspec.name = "gen";
  bench::GeneratorSpec gen;
  gen.seed = 5;
  gspec.generator = gen;
  cfg.graphs.push_back(gspec);
  cfg.fixed_queries.push_back({"bad", "SELECT ?x WHERE { ?x ?p ?o } LIMIT 3"});
  cfg.fixed_queries.push_back({"good", "SELECT ?x WHERE { ?x <urn:gsq:p0> ?o }"});
  cfg.engines = {"direct", "qbs"};
  cfg.repetitions = 1;
  cfg.similarity = bench::SimilarityMode::Oracle;

  bench::BenchReport report = bench::run_benchmark(cfg);
  REQUIRE(report.rows.size() == 4);
  int errors = 0, ok = 0;
  for (const bench::BenchRow& r : report.rows) {
    if (r.query == "bad") {
      CHECK(!r.error.empty());
      ++errors;
    } else {
      CHECK(r.error.empty());
      ++ok;
    }
  }
  CHECK(errors == 2);
  CHECK(ok == 2);
}

TEST_CASE("report JSON is deterministic modulo timing fields") {
  bench::BenchConfig cfg;
  bench::BenchGraphSpec gspec;
  gspec.name = "gen";
  bench::GeneratorSpec gen;
  gen.seed = 77;
  gspec.generator = gen;
  cfg.graphs.push_back(gspec);
  cfg.generate_query_count = 4;
  cfg.engines = {"direct", "qbs"};
  cfg.repetitions = 1;
  cfg.similarity = bench::SimilarityMode::Oracle;

  auto scrub = [](nlohmann::json j) {
    for (auto& row : j["rows"]) {
      row["st_seconds"] = 0;
      row["qa_seconds"] = 0;
    }
    return j;
  };
  nlohmann::json a = scrub(bench::run_benchmark(cfg).to_json());
  nlohmann::json b = scrub(bench::run_benchmark(cfg).to_json());
  CHECK(a == b);
}

TEST_CASE("oracle-mode qbs suite rows are lossless on generated graphs") {
  bench::BenchConfig cfg;
  bench::BenchGraphSpec gspec;
  gspec.name = "gen";
  bench::GeneratorSpec gen;
  gen.entity_count = 150;
  gen.predicate_count = 8;
  gen.cluster_sizes = {3, 2};
  gen.triples_per_predicate = 40;
  gen.seed = 5;
  gspec.generator = gen;
  cfg.graphs.push_back(gspec);
  cfg.generate_query_count = 8;
  cfg.engines = {"qbs"};
  cfg.repetitions = 1;
  cfg.similarity = bench::SimilarityMode::Oracle;

  bench::BenchReport report = bench::run_benchmark(cfg);
  REQUIRE(report.rows.size() == 8);
  for (const bench::BenchRow& r : report.rows) {
    CHECK(r.error.empty());
    REQUIRE(r.lossless.has_value());
    CHECK(*r.lossless);
  }
}

}  // TEST_SUITE
