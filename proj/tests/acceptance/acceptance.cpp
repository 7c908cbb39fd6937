// Acceptance suite. Each criterion prints one PASS/FAIL line; the process
// exits nonzero if any gating criterion fails. Run a single criterion with
// `acceptance --only N`.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../support.hpp"

#include "graphsquash/bench/bench.hpp"
#include "graphsquash/bench/generate.hpp"
#include "graphsquash/embed/similarity.hpp"
#include "graphsquash/embed/train.hpp"
#include "graphsquash/embed/walks.hpp"
#include "graphsquash/errors.hpp"
#include "graphsquash/rdf/ntriples.hpp"
#include "graphsquash/reason/closure.hpp"
#include "graphsquash/rng.hpp"
#include "graphsquash/sparql/eval.hpp"
#include "graphsquash/sparql/parse.hpp"
#include "graphsquash/summarize/grouping.hpp"
#include "graphsquash/summarize/query_based.hpp"
#include "graphsquash/vec/kernels.hpp"

using namespace gsq;
namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  bool gating = true;
  std::string detail;
};

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

// ---------------------------------------------------------------------------
// Shared randomized suite: 200 generated graphs x 10 queries each.

struct SuiteCase {
  bench::SyntheticGraph sg;
  std::vector<bench::GeneratedQuery> queries;
};

std::vector<bench::GeneratorSpec> suite_specs(int count) {
  std::vector<bench::GeneratorSpec> specs;
  const std::vector<std::vector<std::uint32_t>> layouts = {
      {3, 2}, {3, 3}, {2, 2}, {3}, {2, 2, 3}, {2}};
  for (int i = 0; i < count; ++i) {
    std::mt19937_64 rng(mix64(0xACCE97ull, static_cast<std::uint64_t>(i)));
    bench::GeneratorSpec spec;
    spec.cluster_sizes = layouts[i % layouts.size()];
    std::uint32_t clustered = 0;
    for (std::uint32_t s : spec.cluster_sizes) clustered += s;
    spec.predicate_count = clustered + 3 + static_cast<std::uint32_t>(bounded(rng, 6));
    spec.entity_count = 80 + static_cast<std::uint32_t>(bounded(rng, 320));
    spec.triples_per_predicate = 30 + static_cast<std::uint32_t>(bounded(rng, 60));
    spec.object_pool_size = 10 + static_cast<std::uint32_t>(bounded(rng, 20));
    spec.seed = mix64(0x5EEDull, static_cast<std::uint64_t>(i));
    specs.push_back(spec);
  }
  return specs;
}

const std::vector<SuiteCase>& shared_suite() {
  static const std::vector<SuiteCase> suite = [] {
    std::vector<SuiteCase> cases;
    int gi = 0;
    for (const bench::GeneratorSpec& spec : suite_specs(200)) {
      SuiteCase c;
      c.sg = bench::generate_synthetic_graph(spec);
      bench::QueryGenOptions qopt;
      qopt.max_patterns = 4;
      qopt.seed = mix64(0x9E11ull, static_cast<std::uint64_t>(gi));
      c.queries = bench::generate_queries(c.sg, 10, qopt);
      cases.push_back(std::move(c));
      ++gi;
    }
    return cases;
  }();
  return suite;
}

bool has_optional(const sparql::Node& n) {
  if (n.kind == sparql::Node::Kind::Optional) return true;
  if (n.kind == sparql::Node::Kind::Bgp) return false;
  return has_optional(*n.left) || has_optional(*n.right);
}

using Row = std::vector<std::optional<rdf::Term>>;

std::set<Row> distinct_rows_of(const sparql::SolutionTable& t) {
  return {t.rows.begin(), t.rows.end()};
}

// ---------------------------------------------------------------------------
// 1. Lossless answering with oracle similarity sets.

Outcome criterion1() {
  auto t0 = clock_type::now();
  std::size_t cases = 0, lossless = 0;
  std::string first_failure;
  for (const SuiteCase& c : shared_suite()) {
    embed::FixedClusterSimilarity oracle(c.sg.clusters);
    summarize::QbsRunConfig rc;
    rc.embedding = summarize::QbsRunConfig::Embedding::Provider;
    rc.provider = &oracle;
    for (const bench::GeneratedQuery& q : c.queries) {
      ++cases;
      summarize::QbsRun run = summarize::qbs_run(c.sg.graph, q.text, rc);
      summarize::LosslessReport rep =
          summarize::verify_lossless(c.sg.graph, q.text, run.bundle, run.solutions);
      if (rep.equal) {
        ++lossless;
      } else if (first_failure.empty()) {
        first_failure = q.text;
      }
    }
  }
  Outcome out;
  out.pass = (lossless == cases) && cases >= 2000;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%zu/%zu cases lossless in %.1fs", lossless, cases,
                seconds_since(t0));
  out.detail = buf;
  if (!first_failure.empty()) out.detail += "; first failing query: " + first_failure;
  return out;
}

// ---------------------------------------------------------------------------
// 2. Lossless answering with learned (skip-gram over walks) similarity.

Outcome criterion2() {
  auto t0 = clock_type::now();
  std::size_t cases = 0, lossless = 0, failures_attributed = 0, failures_unattributed = 0;
  std::size_t anchors_total = 0, anchors_recovered = 0, rewritten_queries = 0;
  for (const SuiteCase& c : shared_suite()) {
    std::map<std::string, int> planted;
    for (std::size_t k = 0; k < c.sg.clusters.size(); ++k) {
      for (const std::string& p : c.sg.clusters[k]) planted[p] = static_cast<int>(k);
    }
    summarize::QbsRunConfig rc;
    rc.embedding = summarize::QbsRunConfig::Embedding::TrainOnSubgraph;
    rc.train.dims = 32;
    rc.train.epochs = 5;
    rc.train.learning_rate = 0.05f;
    rc.train.seed = 17;
    rc.walk_length = 3;
    rc.walks_per_entity = 6;
    for (const bench::GeneratedQuery& q : c.queries) {
      ++cases;
      summarize::QbsRun run = summarize::qbs_run(c.sg.graph, q.text, rc);
      summarize::LosslessReport rep =
          summarize::verify_lossless(c.sg.graph, q.text, run.bundle, run.solutions);

      // Recovery bookkeeping: a query predicate counts as recovered when its
      // similarity set equals its planted cluster restricted to the
      // candidate vocabulary.
      std::set<std::string> g_preds;
      for (const rdf::Term& p : run.bundle.subgraph.project_terms(rdf::Position::Predicate)) {
        g_preds.insert(p.lexical);
      }
      bool any_mismatch = false;
      for (const auto& [anchor, simset] : run.bundle.similarity) {
        std::set<std::string> expected = {anchor};
        auto it = planted.find(anchor);
        if (it != planted.end()) {
          for (const std::string& mate : c.sg.clusters[it->second]) {
            if (mate == anchor || g_preds.contains(mate)) expected.insert(mate);
          }
        }
        std::set<std::string> recovered;
        for (const auto& [member, score] : simset.members) recovered.insert(member);
        ++anchors_total;
        if (recovered == expected) {
          ++anchors_recovered;
        } else {
          any_mismatch = true;
        }
      }
      if (run.bundle.new_triple_count > 0) ++rewritten_queries;

      if (rep.equal) {
        ++lossless;
      } else if (any_mismatch) {
        ++failures_attributed;
      } else {
        ++failures_unattributed;
      }
    }
  }
  Outcome out;
  double rate = cases ? static_cast<double>(lossless) / static_cast<double>(cases) : 0.0;
  double recovery =
      anchors_total ? static_cast<double>(anchors_recovered) / anchors_total : 0.0;
  out.pass = rate >= 0.95 && failures_unattributed == 0;
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "%zu/%zu lossless (%.2f%%), %zu failures attributed to cluster-recovery "
                "misses, %zu unattributed; cluster recovery %.1f%% of %zu query "
                "predicates, %zu/%zu queries gained canonicalized triples; %.1fs",
                lossless, cases, rate * 100.0, failures_attributed, failures_unattributed,
                recovery * 100.0, anchors_total, rewritten_queries, cases,
                seconds_since(t0));
  out.detail = buf;
  return out;
}

// ---------------------------------------------------------------------------
// 3. Compactness on the large synthetic graph.

bench::GeneratorSpec big_graph_spec() {
  bench::GeneratorSpec spec;
  spec.entity_count = 30000;
  spec.predicate_count = 51;
  spec.cluster_sizes = std::vector<std::uint32_t>(10, 3);
  spec.triples_per_predicate = 2400;
  spec.object_pool_size = 380;
  spec.seed = 0xB16;
  return spec;
}

const bench::SyntheticGraph& big_graph() {
  static const bench::SyntheticGraph sg = bench::generate_synthetic_graph(big_graph_spec());
  return sg;
}

std::vector<bench::GeneratedQuery> big_graph_queries() {
  bench::QueryGenOptions qopt;
  qopt.max_patterns = 3;  // every query touches at most 3 predicates
  qopt.seed = 0xB16C;
  return bench::generate_queries(big_graph(), 12, qopt);
}

Outcome criterion3() {
  auto t0 = clock_type::now();
  const bench::SyntheticGraph& sg = big_graph();
  embed::FixedClusterSimilarity oracle(sg.clusters);
  summarize::QbsRunConfig rc;
  rc.embedding = summarize::QbsRunConfig::Embedding::Provider;
  rc.provider = &oracle;

  double min_qbs_sr = 100.0;
  for (const bench::GeneratedQuery& q : big_graph_queries()) {
    summarize::QbsRun run = summarize::qbs_run(sg.graph, q.text, rc);
    double sr = bench::summarization_ratio(sg.graph.size(), run.bundle.augmented.size());
    min_qbs_sr = std::min(min_qbs_sr, sr);
  }

  summarize::GbsOptions gopt;
  summarize::GbsSummary summary = summarize::gbs_summarize(sg.graph, reason::RuleConfig{}, gopt);
  double gbs_sr = bench::summarization_ratio(sg.graph.size(), summary.summary.size());

  Outcome out;
  out.pass = sg.graph.size() >= 100000 && min_qbs_sr >= 90.0;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "graph %zu triples; min QBS SR %.2f%% over 12 queries; GBS SR %.2f%% "
                "(reported, no threshold); %.1fs",
                sg.graph.size(), min_qbs_sr, gbs_sr, seconds_since(t0));
  out.detail = buf;
  return out;
}

// ---------------------------------------------------------------------------
// 4. Grouping summarization loses answers, never invents them.

Outcome criterion4() {
  auto t0 = clock_type::now();
  std::size_t cases = 0, subset_ok = 0, skipped_optional = 0;
  for (const SuiteCase& c : shared_suite()) {
    embed::FixedClusterSimilarity oracle(c.sg.clusters);
    summarize::GbsOptions gopt;  // singleton groups dropped (default)
    summarize::GbsSummary summary =
        summarize::gbs_summarize(c.sg.graph, reason::RuleConfig{}, gopt);
    for (const bench::GeneratedQuery& gq : c.queries) {
      sparql::Query q = sparql::parse_query(gq.text);
      if (has_optional(*q.body)) {
        // OPTIONAL extends solutions with unbound columns; subset comparison
        // against a lossy summarizer is ill-defined there, so the gate runs
        // on the BGP/UNION cases.
        ++skipped_optional;
        continue;
      }
      ++cases;
      summarize::GbsRewrite rewritten = summarize::gbs_rewrite(q, oracle, 0.5);
      sparql::SolutionTable answers = summarize::gbs_answer(summary, rewritten.query);
      std::set<Row> direct = distinct_rows_of(sparql::evaluate(c.sg.graph, q));
      bool subset = true;
      for (const Row& row : answers.rows) {
        if (!direct.contains(row)) {
          subset = false;
          break;
        }
      }
      if (subset) ++subset_ok;
    }
  }

  // Constructed strict-loss case: the class-hierarchy example graph with
  // singletons kept still loses the nationality/country answers.
  rdf::Graph desk = test::desk_graph();
  embed::FixedClusterSimilarity desk_oracle(test::desk_clusters());
  summarize::GbsOptions keep;
  keep.keep_singletons = true;
  summarize::GbsSummary desk_summary = summarize::gbs_summarize(desk, test::desk_rules(), keep);
  sparql::Query desk_q = sparql::parse_query(test::desk_query_text());
  summarize::GbsRewrite desk_rw = summarize::gbs_rewrite(desk_q, desk_oracle, 0.5);
  sparql::SolutionTable desk_answers = summarize::gbs_answer(desk_summary, desk_rw.query);
  std::set<Row> desk_direct = distinct_rows_of(sparql::evaluate(desk, desk_q));
  std::set<Row> desk_got = distinct_rows_of(desk_answers);
  bool strict_loss = desk_got.size() < desk_direct.size() &&
                     std::includes(desk_direct.begin(), desk_direct.end(), desk_got.begin(),
                                   desk_got.end());

  Outcome out;
  out.pass = (cases > 0) && (subset_ok == cases) && strict_loss;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%zu/%zu BGP/UNION cases answers subset of direct (%zu OPTIONAL cases "
                "reported separately); strict-loss case %zu < %zu answers; %.1fs",
                subset_ok, cases, skipped_optional, desk_got.size(), desk_direct.size(),
                seconds_since(t0));
  out.detail = buf;
  return out;
}

// ---------------------------------------------------------------------------
// 5. Inference: exact example plus brute-force reachability on random DAGs.

Outcome criterion5() {
  auto t0 = clock_type::now();

  rdf::GraphBuilder b;
  b.add(rdf::make_iri("urn:Germany"), rdf::make_iri(rdf::kRdfType),
        rdf::make_iri("urn:EuropeanCountry"));
  b.add(rdf::make_iri("urn:EuropeanCountry"), rdf::make_iri(rdf::kRdfsSubClassOf),
        rdf::make_iri("urn:Country"));
  rdf::Graph g = std::move(b).freeze();
  rdf::Graph closed = reason::transitive_closure(g, reason::RuleConfig{});
  bool example_ok =
      closed.size() == 3 &&
      closed.contains_terms(rdf::make_iri("urn:Germany"), rdf::make_iri(rdf::kRdfType),
                            rdf::make_iri("urn:Country"));

  std::size_t dag_ok = 0;
  const int dags = 100;
  for (int i = 0; i < dags; ++i) {
    std::mt19937_64 rng(mix64(0xDA6ull, static_cast<std::uint64_t>(i)));
    std::size_t nodes = 5 + bounded(rng, 196);  // up to 200 nodes
    rdf::GraphBuilder db;
    for (std::size_t n = 0; n + 1 < nodes; ++n) {
      std::size_t fanout = bounded(rng, 3);
      for (std::size_t k = 0; k < fanout; ++k) {
        std::size_t to = n + 1 + bounded(rng, nodes - n - 1);
        db.add(rdf::make_iri("urn:c" + std::to_string(n)), rdf::make_iri(rdf::kRdfsSubClassOf),
               rdf::make_iri("urn:c" + std::to_string(to)));
      }
    }
    std::size_t instances = bounded(rng, 40);
    for (std::size_t k = 0; k < instances; ++k) {
      db.add(rdf::make_iri("urn:x" + std::to_string(k)), rdf::make_iri(rdf::kRdfType),
             rdf::make_iri("urn:c" + std::to_string(bounded(rng, nodes))));
    }
    rdf::Graph dag = std::move(db).freeze();
    reason::RuleConfig rules;
    rules.budget_factor = 500.0;  // deep chains legitimately expand a lot
    rdf::Graph fast = reason::transitive_closure(dag, rules);
    rdf::Graph slow = test::oracle_closure(dag, rules);
    if (fast.same_triples(slow)) ++dag_ok;
  }

  Outcome out;
  out.pass = example_ok && dag_ok == dags;
  char buf[160];
  std::snprintf(buf, sizeof buf, "example %s; %zu/%d random DAGs match brute force; %.1fs",
                example_ok ? "exact" : "WRONG", dag_ok, dags, seconds_since(t0));
  out.detail = buf;
  return out;
}

// ---------------------------------------------------------------------------
// 6. Evaluator vs exhaustive assignment enumeration.

Outcome criterion6() {
  auto t0 = clock_type::now();
  std::mt19937_64 rng(0xE7A1);
  std::size_t ok = 0;
  const int total = 500;
  for (int i = 0; i < total; ++i) {
    rdf::GraphBuilder b;
    std::size_t nents = 3 + bounded(rng, 12);
    std::size_t npreds = 1 + bounded(rng, 4);
    std::size_t count = 3 + bounded(rng, 30);
    for (std::size_t k = 0; k < count; ++k) {
      b.add(test::ex_iri("e" + std::to_string(bounded(rng, nents))),
            test::ex_iri("p" + std::to_string(bounded(rng, npreds))),
            test::ex_iri("e" + std::to_string(bounded(rng, nents))));
    }
    rdf::Graph g = std::move(b).freeze();

    // random query, <= 4 patterns, <= 3 distinct variables
    auto random_term = [&](bool allow_var_pred) -> sparql::PatternTerm {
      double roll = uniform01(rng);
      static const char* names[] = {"x", "y", "z"};
      if (roll < 0.55) return sparql::Variable{names[bounded(rng, 3)]};
      if (g.term_count() > 0 && roll < 0.95) {
        rdf::Term t = g.term(static_cast<rdf::TermId>(bounded(rng, g.term_count())));
        if (t.kind == rdf::TermKind::Iri || allow_var_pred) return t;
      }
      return test::ex_iri("absent");
    };
    auto random_bgp = [&](int maxp) {
      auto n = std::make_unique<sparql::Node>();
      n->kind = sparql::Node::Kind::Bgp;
      int pc = 1 + static_cast<int>(bounded(rng, static_cast<std::uint64_t>(maxp)));
      for (int k = 0; k < pc; ++k) {
        sparql::TriplePattern tp;
        tp.s = random_term(true);
        tp.p = random_term(false);
        tp.o = random_term(true);
        n->patterns.push_back(std::move(tp));
      }
      return n;
    };
    sparql::Query q;
    double shape = uniform01(rng);
    if (shape < 0.4) {
      q.body = random_bgp(4);
    } else {
      auto n = std::make_unique<sparql::Node>();
      n->kind = shape < 0.7 ? sparql::Node::Kind::Union : sparql::Node::Kind::Optional;
      n->left = random_bgp(2);
      n->right = random_bgp(2);
      q.body = std::move(n);
    }
    q.distinct = uniform01(rng) < 0.5;
    auto vars = q.body_variables();
    if (vars.empty() || uniform01(rng) < 0.5) {
      q.wildcard = true;
    } else {
      q.projection.assign(vars.begin(), vars.begin() + 1 + bounded(rng, vars.size()));
    }

    sparql::SolutionTable got = sparql::evaluate(g, q);
    auto expected = test::oracle_evaluate(g, q);
    std::vector<Row> got_rows = got.rows;
    std::sort(got_rows.begin(), got_rows.end());
    if (got_rows == expected) ++ok;
  }
  Outcome out;
  out.pass = ok == total;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu/%d cases exact bag equality; %.1fs", ok, total,
                seconds_since(t0));
  out.detail = buf;
  return out;
}

// ---------------------------------------------------------------------------
// 7. Cosine against the direct formula; symmetry and scale invariance.

Outcome criterion7() {
  auto t0 = clock_type::now();
  std::mt19937_64 rng(0xC05);
  std::size_t formula_ok = 0, symmetry_ok = 0, scale_ok = 0;
  const int total = 1000;
  static const float alphas[] = {0.25f, 0.5f, 2.0f, 4.0f, 64.0f};
  for (int i = 0; i < total; ++i) {
    std::size_t n = 2 + bounded(rng, 512);
    std::vector<float> u(n), v(n);
    for (std::size_t k = 0; k < n; ++k) {
      u[k] = static_cast<float>(uniform01(rng) * 2 - 1);
      v[k] = static_cast<float>(uniform01(rng) * 2 - 1);
    }
    u[bounded(rng, n)] += 1.0f;
    v[bounded(rng, n)] += 1.0f;

    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      dot += static_cast<double>(u[k]) * static_cast<double>(v[k]);
      nu += static_cast<double>(u[k]) * static_cast<double>(u[k]);
      nv += static_cast<double>(v[k]) * static_cast<double>(v[k]);
    }
    double direct = dot / (std::sqrt(nu) * std::sqrt(nv));
    double got = embed::cosine(u, v);
    if (std::abs(got - direct) <= 1e-12) ++formula_ok;
    if (std::abs(got - embed::cosine(v, u)) <= 1e-9) ++symmetry_ok;

    std::vector<float> u2 = u;
    for (float& x : u2) x *= alphas[i % 5];
    if (std::abs(embed::cosine(u2, v) - got) <= 1e-9) ++scale_ok;
  }
  Outcome out;
  out.pass = formula_ok == total && symmetry_ok == total && scale_ok == total;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "formula %zu/%d within 1e-12; symmetry %zu/%d; scale %zu/%d within 1e-9; %.1fs",
                formula_ok, total, symmetry_ok, total, scale_ok, total, seconds_since(t0));
  out.detail = buf;
  return out;
}

// ---------------------------------------------------------------------------
// 8. Similarity scores concentrate higher on the query-scoped subgraph.

Outcome criterion8() {
  auto t0 = clock_type::now();
  const bench::SyntheticGraph& sg = big_graph();

  embed::WalkCorpus corpus = embed::generate_walks(sg.graph, 4, 4, 0x8A11);
  embed::TrainConfig tc;
  tc.dims = 48;
  tc.epochs = 3;
  tc.seed = 0x8A11;
  embed::VectorStore store = embed::train_skipgram(corpus, tc);

  std::set<std::string> all_preds;
  for (const rdf::Term& p : sg.graph.project_terms(rdf::Position::Predicate)) {
    all_preds.insert(p.lexical);
  }

  auto median_of = [](std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    return values[values.size() / 2];
  };

  std::vector<double> subgraph_scores, whole_scores;
  for (const bench::GeneratedQuery& gq : big_graph_queries()) {
    sparql::Query q = sparql::parse_query(gq.text);
    rdf::Graph sub = summarize::qbs_extract_subgraph(sg.graph, q);
    std::set<std::string> g_preds;
    for (const rdf::Term& p : sub.project_terms(rdf::Position::Predicate)) {
      g_preds.insert(p.lexical);
    }
    for (const std::string& anchor : sparql::constant_predicates(q)) {
      std::vector<float> av;
      try {
        av = embed::predicate_vector(store, anchor);
      } catch (const UnknownPredicate&) {
        continue;
      }
      auto score_into = [&](const std::set<std::string>& candidates,
                            std::vector<double>& sink) {
        for (const std::string& cand : candidates) {
          if (cand == anchor) continue;
          try {
            sink.push_back(embed::cosine(av, embed::predicate_vector(store, cand)));
          } catch (const Error&) {
          }
        }
      };
      score_into(g_preds, subgraph_scores);
      score_into(all_preds, whole_scores);
    }
  }

  double sub_median = median_of(subgraph_scores);
  double whole_median = median_of(whole_scores);
  Outcome out;
  out.pass = !subgraph_scores.empty() && sub_median > whole_median;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "median cosine over subgraph candidates %.4f (%zu pairs) vs whole-graph "
                "%.4f (%zu pairs); %.1fs",
                sub_median, subgraph_scores.size(), whole_median, whole_scores.size(),
                seconds_since(t0));
  out.detail = buf;
  return out;
}

// ---------------------------------------------------------------------------
// 9. Speedup direction (informational, wall-clock dependent).

Outcome criterion9() {
  auto t0 = clock_type::now();
  const bench::SyntheticGraph& sg = big_graph();
  embed::FixedClusterSimilarity oracle(sg.clusters);
  summarize::QbsRunConfig rc;
  rc.embedding = summarize::QbsRunConfig::Embedding::Provider;
  rc.provider = &oracle;

  std::vector<double> direct_times, qbs_times;
  for (const bench::GeneratedQuery& gq : big_graph_queries()) {
    sparql::Query q = sparql::parse_query(gq.text);
    auto d0 = clock_type::now();
    sparql::SolutionTable direct = sparql::evaluate(sg.graph, q);
    direct_times.push_back(seconds_since(d0));

    summarize::QbsRun run = summarize::qbs_run(sg.graph, gq.text, rc);
    qbs_times.push_back(run.summarize_seconds + run.answer_seconds);
  }
  auto median_of = [](std::vector<double> values) {
    std::sort(values.begin(), values.end());
    return values[values.size() / 2];
  };
  double d = median_of(direct_times);
  double s = median_of(qbs_times);
  Outcome out;
  out.gating = false;  // logged, non-gating: wall clock is environment-dependent
  out.pass = s <= d;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "median direct %.4fs vs median QBS end-to-end (ST+QA) %.4fs; %.1fs",
                d, s, seconds_since(t0));
  out.detail = buf;
  return out;
}

// ---------------------------------------------------------------------------
// 10. Byte-identical reruns of the CLI pipelines.

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion10() {
  auto t0 = clock_type::now();
  const char* cli = std::getenv("GSQ_CLI_OVERRIDE");
  std::string bin = cli ? cli : GSQ_CLI_BIN;

  fs::path base = fs::temp_directory_path() / "gsq_acceptance_det";
  fs::remove_all(base);
  fs::create_directories(base);
  {
    std::ofstream spec(base / "spec.json");
    spec << R"({"entities": 150, "predicates": 8, "cluster_sizes": [3, 2],
               "triples_per_predicate": 40, "object_pool": 14, "seed": 99})";
  }
  {
    std::ofstream q(base / "q.rq");
    q << "SELECT ?x WHERE { { ?x <urn:gsq:p0> ?y } UNION { ?x <urn:gsq:p1> ?y } UNION "
         "{ ?x <urn:gsq:p2> ?y } }\n";
  }

  auto run_pipeline = [&](const fs::path& dir) -> bool {
    fs::create_directories(dir);
    std::string gen = bin + " gen --spec " + (base / "spec.json").string() + " --out " +
                      (dir / "g.nt").string() + " >/dev/null 2>&1";
    std::string sum = bin + " summarize --method qbs --input " + (dir / "g.nt").string() +
                      " --query " + (base / "q.rq").string() + " --embedding oracle" +
                      " --clusters " + (dir / "g.nt.clusters.tsv").string() + " --out " +
                      (dir / "bundle").string() + " >/dev/null 2>&1";
    std::string qry = bin + " query --engine qbs --input " + (dir / "g.nt").string() +
                      " --query " + (base / "q.rq").string() + " --embedding oracle" +
                      " --clusters " + (dir / "g.nt.clusters.tsv").string() + " --out " +
                      (dir / "results.tsv").string() + " >/dev/null 2>&1";
    return std::system(gen.c_str()) == 0 && std::system(sum.c_str()) == 0 &&
           std::system(qry.c_str()) == 0;
  };

  bool ran = run_pipeline(base / "run1") && run_pipeline(base / "run2");
  // every non-timing output must be byte-identical across the reruns
  const std::vector<std::string> files = {
      "g.nt",           "g.nt.clusters.tsv",     "bundle/subgraph.nt",
      "bundle/summary.nt", "bundle/query.rq",    "bundle/similarity.tsv",
      "bundle/bundle.json", "results.tsv"};
  std::size_t identical = 0;
  std::string mismatch;
  if (ran) {
    for (const std::string& f : files) {
      std::string a = slurp(base / "run1" / f);
      std::string b = slurp(base / "run2" / f);
      if (!a.empty() && a == b) {
        ++identical;
      } else if (mismatch.empty()) {
        mismatch = f;
      }
    }
  }
  Outcome out;
  out.pass = ran && identical == files.size();
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu/%zu rerun outputs byte-identical%s%s; %.1fs", identical,
                files.size(), mismatch.empty() ? "" : "; first mismatch: ",
                mismatch.c_str(), seconds_since(t0));
  out.detail = buf;
  fs::remove_all(base);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--only") only = std::atoi(argv[i + 1]);
  }

  struct Entry {
    int id;
    const char* name;
    Outcome (*fn)();
  };
  const Entry entries[] = {
      {1, "query-based summarization lossless (oracle similarity)", criterion1},
      {2, "query-based summarization lossless (learned embeddings)", criterion2},
      {3, "compactness on the 100k-triple synthetic graph", criterion3},
      {4, "grouping summarization only loses answers", criterion4},
      {5, "inference matches brute-force reachability", criterion5},
      {6, "evaluator matches exhaustive enumeration", criterion6},
      {7, "cosine similarity matches the direct formula", criterion7},
      {8, "similarity scores concentrate on the query subgraph", criterion8},
      {9, "speedup direction (informational)", criterion9},
      {10, "pipelines are byte-reproducible", criterion10},
  };

  std::printf("acceptance suite (kernel lane: %.*s)\n",
              static_cast<int>(vec::lane_name(vec::active_lane()).size()),
              vec::lane_name(vec::active_lane()).data());
  bool all_pass = true;
  for (const Entry& e : entries) {
    if (only != 0 && e.id != only) continue;
    Outcome out;
    try {
      out = e.fn();
    } catch (const std::exception& ex) {
      out.pass = false;
      out.detail = std::string("exception: ") + ex.what();
    }
    if (!out.pass && out.gating) all_pass = false;
    std::printf("[%2d] %s%s  %s - %s\n", e.id, out.pass ? "PASS" : "FAIL",
                out.gating ? "" : " (non-gating)", e.name, out.detail.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
