#include "graphsquash/bench/generate.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "graphsquash/errors.hpp"
#include "graphsquash/rng.hpp"

#include "json.hpp"

namespace gsq::bench {

using rdf::Term;

namespace {

std::string entity_iri(std::uint32_t i) { return "urn:gsq:e" + std::to_string(i); }
std::string predicate_iri(std::uint32_t i) { return "urn:gsq:p" + std::to_string(i); }

void validate(const GeneratorSpec& spec) {
  if (spec.entity_count < 10) throw SpecInvalid("generator: entity_count must be >= 10");
  if (spec.predicate_count == 0) throw SpecInvalid("generator: predicate_count must be positive");
  if (spec.triples_per_predicate == 0) {
    throw SpecInvalid("generator: triples_per_predicate must be positive");
  }
  if (spec.object_pool_size == 0) throw SpecInvalid("generator: object_pool_size must be positive");
  std::uint64_t used = 0;
  for (std::uint32_t s : spec.cluster_sizes) {
    if (s == 0) throw SpecInvalid("generator: cluster sizes must be >= 1");
    used += s;
  }
  if (used > spec.predicate_count) {
    throw SpecInvalid("generator: cluster sizes exceed predicate_count");
  }
  if (!(spec.fact_coverage > 0.0) || spec.fact_coverage > 1.0) {
    throw SpecInvalid("generator: fact_coverage must be in (0,1]");
  }
  if (spec.bridge_fraction < 0.0 || spec.bridge_fraction >= 1.0) {
    throw SpecInvalid("generator: bridge_fraction must be in [0,1)");
  }
}

}  // namespace

SyntheticGraph generate_synthetic_graph(const GeneratorSpec& spec) {
  validate(spec);

  SyntheticGraph out;

  // Cluster layout: listed sizes first, then singletons.
  std::uint32_t next_pred = 0;
  for (std::uint32_t size : spec.cluster_sizes) {
    std::vector<std::string> cluster;
    for (std::uint32_t k = 0; k < size; ++k) cluster.push_back(predicate_iri(next_pred++));
    out.clusters.push_back(std::move(cluster));
  }
  while (next_pred < spec.predicate_count) {
    out.clusters.push_back({predicate_iri(next_pred++)});
  }
  const std::size_t nclusters = out.clusters.size();

  // Entity regions: subjects 60%, objects 40%. Each cluster owns an exclusive
  // subject slice plus a globally shared slice; object slices are exclusive
  // except for bridge entries pointing at the next cluster's subjects.
  const std::uint32_t nsub = std::max<std::uint32_t>(spec.entity_count * 3 / 5, 5);
  const std::uint32_t nobj = spec.entity_count - nsub;
  const std::uint32_t shared = std::max<std::uint32_t>(nsub / 5, 1);
  const std::uint32_t exclusive =
      std::max<std::uint32_t>((nsub - shared) / static_cast<std::uint32_t>(nclusters), 1);
  const std::uint32_t obj_slice =
      std::max<std::uint32_t>(nobj / static_cast<std::uint32_t>(nclusters), 1);

  rdf::GraphBuilder b;

  for (std::size_t c = 0; c < nclusters; ++c) {
    std::mt19937_64 rng(mix64(spec.seed, 0xC000 + c));

    std::vector<std::uint32_t> subjects;
    for (std::uint32_t i = 0; i < shared; ++i) subjects.push_back(i);
    const std::uint32_t ex_base =
        shared + static_cast<std::uint32_t>(c) * exclusive;
    for (std::uint32_t i = 0; i < exclusive && ex_base + i < nsub; ++i) {
      subjects.push_back(ex_base + i);
    }

    std::vector<std::uint32_t> objects;
    const std::uint32_t ob_base =
        nsub + std::min<std::uint32_t>(static_cast<std::uint32_t>(c) * obj_slice,
                                       nobj > 0 ? nobj - 1 : 0);
    const std::uint32_t pool =
        std::min<std::uint32_t>(spec.object_pool_size, std::max<std::uint32_t>(obj_slice, 1));
    for (std::uint32_t i = 0; i < pool && ob_base + i < nsub + nobj; ++i) {
      objects.push_back(ob_base + i);
    }
    // Bridges: some objects are the next cluster's exclusive subjects.
    const std::uint32_t bridges = static_cast<std::uint32_t>(
        spec.bridge_fraction * static_cast<double>(objects.size()));
    const std::uint32_t next_base =
        shared + static_cast<std::uint32_t>((c + 1) % nclusters) * exclusive;
    for (std::uint32_t i = 0; i < bridges && !objects.empty(); ++i) {
      std::uint32_t bridge = next_base + i;
      if (bridge < nsub) objects[objects.size() - 1 - i] = bridge;
    }
    if (objects.empty()) objects.push_back(nsub > 0 ? nsub - 1 : 0);

    // Shared fact pool for the cluster.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> facts;
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (std::uint32_t f = 0; f < spec.triples_per_predicate; ++f) {
      for (int attempt = 0; attempt < 8; ++attempt) {
        std::uint32_t s = subjects[bounded(rng, subjects.size())];
        std::uint32_t o = objects[bounded(rng, objects.size())];
        if (seen.emplace(s, o).second) {
          facts.emplace_back(s, o);
          break;
        }
      }
    }

    for (const std::string& pred : out.clusters[c]) {
      const Term p = rdf::make_iri(pred);
      bool any = false;
      for (const auto& [s, o] : facts) {
        if (uniform01(rng) < spec.fact_coverage) {
          b.add(rdf::make_iri(entity_iri(s)), p, rdf::make_iri(entity_iri(o)));
          any = true;
        }
      }
      if (!any && !facts.empty()) {
        b.add(rdf::make_iri(entity_iri(facts[0].first)), p,
              rdf::make_iri(entity_iri(facts[0].second)));
      }
    }
  }

  out.graph = std::move(b).freeze();
  return out;
}

GeneratorSpec load_spec_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SpecInvalid("generator spec: " + std::string(e.what()));
  }
  GeneratorSpec spec;
  try {
    if (j.contains("entities")) spec.entity_count = j["entities"].get<std::uint32_t>();
    if (j.contains("predicates")) spec.predicate_count = j["predicates"].get<std::uint32_t>();
    if (j.contains("cluster_sizes")) {
      spec.cluster_sizes = j["cluster_sizes"].get<std::vector<std::uint32_t>>();
    }
    if (j.contains("triples_per_predicate")) {
      spec.triples_per_predicate = j["triples_per_predicate"].get<std::uint32_t>();
    }
    if (j.contains("object_pool")) spec.object_pool_size = j["object_pool"].get<std::uint32_t>();
    if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("fact_coverage")) spec.fact_coverage = j["fact_coverage"].get<double>();
    if (j.contains("bridge_fraction")) {
      spec.bridge_fraction = j["bridge_fraction"].get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw SpecInvalid("generator spec: " + std::string(e.what()));
  }
  return spec;
}

void write_clusters_tsv(const std::vector<std::vector<std::string>>& clusters,
                        const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  for (const auto& cluster : clusters) {
    for (std::size_t i = 0; i < cluster.size(); ++i) {
      if (i) out << '\t';
      out << cluster[i];
    }
    out << '\n';
  }
}

std::vector<std::vector<std::string>> read_clusters_tsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cluster;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t tab = line.find('\t', start);
      std::string tok =
          line.substr(start, tab == std::string::npos ? std::string::npos : tab - start);
      if (!tok.empty()) cluster.push_back(tok);
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (!cluster.empty()) out.push_back(std::move(cluster));
  }
  return out;
}

namespace {

using sparql::Node;
using sparql::PatternTerm;
using sparql::Query;
using sparql::TriplePattern;
using sparql::Variable;

std::unique_ptr<Node> bgp(std::vector<TriplePattern> patterns) {
  auto n = std::make_unique<Node>();
  n->kind = Node::Kind::Bgp;
  n->patterns = std::move(patterns);
  return n;
}

std::unique_ptr<Node> combine(Node::Kind kind, std::unique_ptr<Node> l,
                              std::unique_ptr<Node> r) {
  auto n = std::make_unique<Node>();
  n->kind = kind;
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}

// UNION over the cluster members of one conceptual pattern slot, optionally
// with extra patterns joined into every branch.
std::unique_ptr<Node> expand_slot(const std::vector<std::string>& cluster,
                                  const PatternTerm& s, const PatternTerm& o,
                                  const std::vector<TriplePattern>& extra) {
  std::unique_ptr<Node> node;
  for (const std::string& pred : cluster) {
    std::vector<TriplePattern> patterns;
    patterns.push_back(TriplePattern{s, rdf::make_iri(pred), o});
    for (const TriplePattern& e : extra) patterns.push_back(e);
    auto branch = bgp(std::move(patterns));
    node = node ? combine(Node::Kind::Union, std::move(node), std::move(branch))
                : std::move(branch);
  }
  return node;
}

struct SlotData {
  const std::vector<std::string>* cluster = nullptr;
  std::optional<Term> const_subject;
  std::optional<Term> const_object;
};

}  // namespace

std::vector<GeneratedQuery> generate_queries(const SyntheticGraph& sg, int count,
                                             const QueryGenOptions& opt) {
  const rdf::Graph& g = sg.graph;

  // Clusters that actually have triples, split by expandable size.
  std::vector<const std::vector<std::string>*> usable;
  std::vector<const std::vector<std::string>*> usable_multi;
  for (const auto& cluster : sg.clusters) {
    if (static_cast<int>(cluster.size()) > opt.max_patterns) continue;
    bool any = false;
    for (const std::string& p : cluster) {
      if (!g.match_terms(std::nullopt, rdf::make_iri(p), std::nullopt).empty()) {
        any = true;
        break;
      }
    }
    if (any) {
      usable.push_back(&cluster);
      if (cluster.size() > 1) usable_multi.push_back(&cluster);
    }
  }
  if (usable.empty()) throw SpecInvalid("query generation: graph has no usable predicates");

  std::vector<GeneratedQuery> out;
  for (int qi = 0; qi < count; ++qi) {
    std::mt19937_64 rng(mix64(opt.seed, 0x9100 + static_cast<std::uint64_t>(qi)));

    auto pick_cluster = [&](int max_size) -> const std::vector<std::string>* {
      // bias toward multi-predicate clusters: those are the queries
      // summarization exists for
      const auto& pool =
          (!usable_multi.empty() && uniform01(rng) < 0.6) ? usable_multi : usable;
      for (int tries = 0; tries < 32; ++tries) {
        const auto* c = pool[bounded(rng, pool.size())];
        if (static_cast<int>(c->size()) <= max_size) return c;
      }
      const std::vector<std::string>* smallest = usable[0];
      for (const auto* c : usable) {
        if (c->size() < smallest->size()) smallest = c;
        if (static_cast<int>(c->size()) <= max_size) return c;
      }
      return smallest;
    };

    // A term from the data so constants usually hit; 20% deliberate misses.
    auto sample_object = [&](const std::vector<std::string>& cluster) -> Term {
      if (uniform01(rng) < 0.2) return rdf::make_iri("urn:gsq:nothing");
      const std::string& pred = cluster[bounded(rng, cluster.size())];
      auto triples = g.match_terms(std::nullopt, rdf::make_iri(pred), std::nullopt);
      if (triples.empty()) return rdf::make_iri("urn:gsq:nothing");
      return g.term(triples[bounded(rng, triples.size())].o);
    };

    const Variable x{"x"}, y{"y"}, z{"z"};
    std::unique_ptr<Node> body;

    enum class Shape { Single, Join, Opt, UnionPair, OptUnion };
    std::vector<Shape> shapes = {Shape::Single};
    if (opt.allow_join) shapes.push_back(Shape::Join);
    if (opt.allow_optional) shapes.push_back(Shape::Opt);
    if (opt.allow_union) shapes.push_back(Shape::UnionPair);
    if (opt.allow_optional && opt.allow_union) shapes.push_back(Shape::OptUnion);
    const Shape shape = shapes[bounded(rng, shapes.size())];

    switch (shape) {
      case Shape::Single: {
        const auto* c = pick_cluster(opt.max_patterns);
        if (uniform01(rng) < 0.6) {
          body = expand_slot(*c, x, sample_object(*c), {});
        } else {
          body = expand_slot(*c, x, y, {});
        }
        break;
      }
      case Shape::Join: {
        const auto* c1 = pick_cluster(opt.max_patterns / 2);
        const auto* c2 = pick_cluster(1);
        const std::string& q2 = (*c2)[0];
        const bool star = uniform01(rng) < 0.5;
        TriplePattern second;
        if (star) {
          second = TriplePattern{x, rdf::make_iri(q2), z};
        } else {
          second = TriplePattern{y, rdf::make_iri(q2), z};
        }
        const PatternTerm slot_obj =
            star && uniform01(rng) < 0.5 ? PatternTerm(sample_object(*c1)) : PatternTerm(y);
        body = expand_slot(*c1, x, slot_obj, {second});
        break;
      }
      case Shape::Opt: {
        const auto* c1 = pick_cluster(opt.max_patterns - 1);
        const auto* c2 = pick_cluster(1);
        auto required = expand_slot(*c1, x, y, {});
        auto optional = bgp({TriplePattern{x, rdf::make_iri((*c2)[0]), z}});
        body = combine(Node::Kind::Optional, std::move(required), std::move(optional));
        break;
      }
      case Shape::UnionPair: {
        const auto* c1 = pick_cluster(opt.max_patterns / 2);
        const auto* c2 = pick_cluster(opt.max_patterns / 2);
        auto left = expand_slot(*c1, x, sample_object(*c1), {});
        auto right = expand_slot(*c2, x, sample_object(*c2), {});
        body = combine(Node::Kind::Union, std::move(left), std::move(right));
        break;
      }
      case Shape::OptUnion: {
        const auto* c1 = pick_cluster(opt.max_patterns / 2);
        const auto* c2 = pick_cluster(opt.max_patterns / 2);
        auto required = expand_slot(*c1, x, y, {});
        auto optional = expand_slot(*c2, y, z, {});
        body = combine(Node::Kind::Optional, std::move(required), std::move(optional));
        break;
      }
    }

    Query q;
    q.body = std::move(body);
    q.distinct = uniform01(rng) < 0.5;
    auto vars = q.body_variables();
    if (uniform01(rng) < 0.4) {
      q.wildcard = true;
    } else {
      // non-empty prefix of the body variables
      std::size_t keep = 1 + bounded(rng, vars.size());
      q.projection.assign(vars.begin(), vars.begin() + keep);
    }

    GeneratedQuery gen;
    gen.name = "q" + std::to_string(qi);
    gen.text = sparql::to_text(q);
    out.push_back(std::move(gen));
  }
  return out;
}

}  // namespace gsq::bench
