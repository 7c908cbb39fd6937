#include "graphsquash/summarize/query_based.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <set>

#include "graphsquash/embed/walks.hpp"
#include "graphsquash/errors.hpp"
#include "graphsquash/rdf/ntriples.hpp"
#include "graphsquash/sparql/parse.hpp"
#include "graphsquash/sparql/rewrite.hpp"

#include "json.hpp"

namespace gsq::summarize {

using rdf::Graph;
using rdf::GraphBuilder;
using rdf::Term;
using rdf::TripleIds;

Graph qbs_extract_subgraph(const Graph& g, const sparql::Query& q,
                           std::vector<std::string>* warnings) {
  std::set<std::string> preds = sparql::constant_predicates(q);
  std::vector<Term> objs = sparql::constant_objects(q);
  if (preds.empty() && objs.empty() && warnings) {
    warnings->push_back("query has no constant predicates or objects; subgraph is empty");
  }

  std::vector<TripleIds> picked;
  for (const std::string& p : preds) {
    auto matched = g.match_terms(std::nullopt, rdf::make_iri(p), std::nullopt);
    picked.insert(picked.end(), matched.begin(), matched.end());
  }
  for (const Term& o : objs) {
    auto matched = g.match_terms(std::nullopt, std::nullopt, o);
    picked.insert(picked.end(), matched.begin(), matched.end());
  }
  std::sort(picked.begin(), picked.end());
  picked.erase(std::unique(picked.begin(), picked.end()), picked.end());

  GraphBuilder b;
  GraphBuilder::Translator from_source(b, g);
  for (const TripleIds& t : picked) {  // (s,p,o) id order
    from_source.add(t);
  }
  return std::move(b).freeze();
}

QbsBundle qbs_augment(const Graph& source, const Graph& g, const sparql::Query& q,
                      const embed::SimilarityProvider& provider, const QbsOptions& opt) {
  QbsBundle out;
  out.subgraph = g;

  const std::set<std::string> query_preds = sparql::constant_predicates(q);

  std::set<std::string> candidates;
  {
    const Graph& vocab_src = opt.candidates_from_whole_graph ? source : g;
    for (const Term& p : vocab_src.project_terms(rdf::Position::Predicate)) {
      candidates.insert(p.lexical);
    }
  }

  for (const std::string& p : query_preds) {
    std::set<std::string> cands = candidates;
    cands.erase(p);
    try {
      out.similarity.emplace(p, provider.similar(p, cands, opt.threshold, &out.warnings));
    } catch (const UnknownPredicate&) {
      out.warnings.push_back("query predicate has no vector, left unrewritten: " + p);
      embed::SimilaritySet identity;
      identity.anchor = p;
      identity.threshold = opt.threshold;
      identity.members[p] = 1.0;
      out.similarity.emplace(p, std::move(identity));
    }
  }

  // Union query predicates with their similarity-set members; connected
  // components are the synonym clusters.
  std::map<std::string, std::string> parent;
  std::function<std::string(const std::string&)> find = [&](const std::string& x) {
    auto it = parent.find(x);
    if (it == parent.end()) {
      parent[x] = x;
      return x;
    }
    if (it->second == x) return x;
    return parent[x] = find(it->second);
  };
  auto unite = [&](const std::string& a, const std::string& b) {
    std::string ra = find(a), rb = find(b);
    if (ra != rb) parent[ra] = rb;
  };
  for (const auto& [p, simset] : out.similarity) {
    for (const auto& [member, score] : simset.members) unite(p, member);
  }

  // Representative per component: the query's own predicate when it is the
  // only one in its cluster, else the lexicographically smallest query
  // predicate of the cluster.
  std::map<std::string, std::vector<std::string>> comp_query_preds;
  for (const std::string& p : query_preds) {
    comp_query_preds[find(p)].push_back(p);
  }
  std::map<std::string, std::string> rep_of_comp;
  for (auto& [root, qps] : comp_query_preds) {
    rep_of_comp[root] = *std::min_element(qps.begin(), qps.end());
  }

  std::map<std::string, std::string> subst;
  for (const std::string& p : query_preds) subst[p] = rep_of_comp.at(find(p));

  out.rewritten = sparql::rewrite(q, subst);

  // Canonicalized triples: every source triple under a similar predicate is
  // re-emitted under the representative, keeping the witness's own object
  // (or, in the explicitly-unsafe mode, paired with the query objects).
  GraphBuilder b;
  {
    GraphBuilder::Translator from_g(b, g);
    for (const TripleIds& t : g.triples()) from_g.add(t);
  }

  const std::vector<Term> query_objs = sparql::constant_objects(q);
  std::set<std::string> member_pool;
  for (const auto& [p, simset] : out.similarity) {
    for (const auto& [member, score] : simset.members) member_pool.insert(member);
  }
  GraphBuilder::Translator from_source(b, source);
  for (const std::string& member : member_pool) {
    const std::string rep = rep_of_comp.at(find(member));
    const rdf::TermId rep_id = b.intern(rdf::make_iri(rep));
    auto witnesses = source.match_terms(std::nullopt, rdf::make_iri(member), std::nullopt);
    if (opt.unsafe_object_substitution) {
      for (const TripleIds& t : witnesses) {
        for (const Term& o : query_objs) {
          b.add(from_source(t.s), rep_id, b.intern(o));
        }
      }
    } else {
      for (const TripleIds& t : witnesses) {
        b.add(from_source(t.s), rep_id, from_source(t.o));
      }
    }
  }

  out.augmented = std::move(b).freeze();
  out.new_triple_count = out.augmented.size() - out.subgraph.size();
  return out;
}

QbsRun qbs_run(const Graph& graph, const std::string& query_text, const QbsRunConfig& cfg) {
  using clock = std::chrono::steady_clock;

  if (!cfg.allow_literals && graph.has_literal_objects()) throw LiteralPresent();

  sparql::Query q = sparql::parse_query(query_text);

  const Graph* source = &graph;
  Graph inferred;
  if (cfg.force_inference) {
    inferred = reason::transitive_closure(graph, cfg.rules);
    source = &inferred;
  }

  QbsRun run;
  auto t0 = clock::now();

  std::vector<std::string> warnings;
  Graph g = qbs_extract_subgraph(*source, q, &warnings);

  embed::VectorStore trained;
  const embed::SimilarityProvider* provider = nullptr;
  std::optional<embed::StoreSimilarity> store_sim;
  embed::FixedClusterSimilarity empty_provider({});

  switch (cfg.embedding) {
    case QbsRunConfig::Embedding::TrainOnSubgraph: {
      if (g.size() == 0) {
        provider = &empty_provider;  // nothing to train on; identity rewriting
        warnings.push_back("subgraph is empty; skipping embedding training");
      } else {
        embed::WalkCorpus corpus =
            embed::generate_walks(g, cfg.walk_length, cfg.walks_per_entity, cfg.train.seed);
        if (!cfg.dump_walks.empty()) {
          std::ofstream out(cfg.dump_walks);
          if (!out) throw Error("cannot write " + cfg.dump_walks.string());
          embed::write_walks(corpus, out);
        }
        trained = embed::train_skipgram(corpus, cfg.train);
        store_sim.emplace(trained);
        provider = &*store_sim;
      }
      break;
    }
    case QbsRunConfig::Embedding::ExternalStore: {
      if (!cfg.store) throw Error("qbs_run: external store not set");
      store_sim.emplace(*cfg.store);
      provider = &*store_sim;
      break;
    }
    case QbsRunConfig::Embedding::Provider: {
      if (!cfg.provider) throw Error("qbs_run: similarity provider not set");
      provider = cfg.provider;
      break;
    }
  }

  run.bundle = qbs_augment(*source, g, q, *provider, cfg.options);
  run.bundle.warnings.insert(run.bundle.warnings.begin(), warnings.begin(), warnings.end());
  auto t1 = clock::now();

  run.solutions = sparql::evaluate(run.bundle.augmented, run.bundle.rewritten);
  auto t2 = clock::now();

  run.summarize_seconds = std::chrono::duration<double>(t1 - t0).count();
  run.answer_seconds = std::chrono::duration<double>(t2 - t1).count();
  return run;
}

LosslessReport verify_lossless(const Graph& graph, const std::string& query_text,
                               const QbsBundle& bundle,
                               const sparql::SolutionTable& solutions) {
  (void)bundle;
  sparql::Query q = sparql::parse_query(query_text);
  sparql::SolutionTable direct = sparql::evaluate(graph, q);

  using Row = std::vector<std::optional<Term>>;
  std::set<Row> direct_set(direct.rows.begin(), direct.rows.end());
  std::set<Row> summary_set;
  if (solutions.vars == direct.vars) {
    summary_set.insert(solutions.rows.begin(), solutions.rows.end());
  } else {
    // Align columns by variable name (rewriting preserves the projection but
    // this keeps the comparison honest if orders ever diverge).
    std::vector<std::optional<std::size_t>> where(direct.vars.size());
    for (std::size_t i = 0; i < direct.vars.size(); ++i) {
      auto it = std::find(solutions.vars.begin(), solutions.vars.end(), direct.vars[i]);
      if (it != solutions.vars.end()) {
        where[i] = static_cast<std::size_t>(it - solutions.vars.begin());
      }
    }
    for (const Row& r : solutions.rows) {
      Row aligned(direct.vars.size());
      for (std::size_t i = 0; i < where.size(); ++i) {
        if (where[i] && *where[i] < r.size()) aligned[i] = r[*where[i]];
      }
      summary_set.insert(std::move(aligned));
    }
  }

  LosslessReport rep;
  rep.direct_bag = direct.rows.size();
  rep.summary_bag = solutions.rows.size();
  rep.direct_distinct = direct_set.size();
  rep.summary_distinct = summary_set.size();
  rep.equal = direct_set == summary_set;
  if (!rep.equal) {
    std::set_difference(direct_set.begin(), direct_set.end(), summary_set.begin(),
                        summary_set.end(), std::back_inserter(rep.missing));
    std::set_difference(summary_set.begin(), summary_set.end(), direct_set.begin(),
                        direct_set.end(), std::back_inserter(rep.extra));
  }
  return rep;
}

void dump_bundle(const QbsBundle& bundle, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  rdf::write_ntriples_file(bundle.subgraph, dir / "subgraph.nt");
  rdf::write_ntriples_file(bundle.augmented, dir / "summary.nt");

  std::ofstream qf(dir / "query.rq");
  qf << sparql::to_text(bundle.rewritten) << '\n';

  std::ofstream sf(dir / "similarity.tsv");
  for (const auto& [p, simset] : bundle.similarity) {
    for (const auto& [member, score] : simset.members) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6f", score);
      sf << p << '\t' << member << '\t' << buf << '\n';
    }
  }

  nlohmann::json meta;
  meta["subgraph_triples"] = bundle.subgraph.size();
  meta["summary_triples"] = bundle.augmented.size();
  meta["new_triples"] = bundle.new_triple_count;
  meta["warnings"] = bundle.warnings;
  std::ofstream mf(dir / "bundle.json");
  mf << meta.dump(2) << '\n';
}

}  // namespace gsq::summarize
