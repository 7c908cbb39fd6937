#include "graphsquash/embed/similarity.hpp"

#include <cctype>
#include <cmath>

#include "graphsquash/errors.hpp"
#include "graphsquash/vec/kernels.hpp"

namespace gsq::embed {

double cosine(std::span<const float> u, std::span<const float> v) {
  if (u.size() != v.size()) {
    throw DimensionMismatch(0, "cosine: vector sizes differ");
  }
  const double nu = vec::squared_norm(u);
  const double nv = vec::squared_norm(v);
  if (nu == 0.0 || nv == 0.0) throw ZeroVector();
  return vec::dot(u, v) / (std::sqrt(nu) * std::sqrt(nv));
}

std::vector<std::string> name_tokens(std::string_view iri) {
  std::size_t cut = iri.find_last_of("/#:");
  std::string_view local = cut == std::string_view::npos ? iri : iri.substr(cut + 1);

  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      tokens.push_back(cur);
      cur.clear();
    }
  };
  char prev = '\0';
  for (char c : local) {
    unsigned char u = static_cast<unsigned char>(c);
    if (!std::isalnum(u)) {
      flush();
      prev = '\0';
      continue;
    }
    if (std::isupper(u) && prev != '\0' && !std::isupper(static_cast<unsigned char>(prev))) {
      flush();
    }
    cur += static_cast<char>(std::tolower(u));
    prev = c;
  }
  flush();
  return tokens;
}

std::vector<float> predicate_vector(const VectorStore& store, std::string_view predicate_iri) {
  if (store.mode() == StoreMode::GraphEmbedding) {
    auto idx = store.index_of(predicate_iri);
    if (!idx) throw UnknownPredicate(std::string(predicate_iri));
    auto r = store.row(*idx);
    return {r.begin(), r.end()};
  }

  std::vector<double> acc(store.dims(), 0.0);
  std::size_t found = 0;
  for (const std::string& tok : name_tokens(predicate_iri)) {
    auto idx = store.index_of(tok);
    if (!idx) continue;
    auto r = store.row(*idx);
    for (std::size_t d = 0; d < r.size(); ++d) acc[d] += r[d];
    ++found;
  }
  if (found == 0) throw UnknownPredicate(std::string(predicate_iri));
  std::vector<float> out(store.dims());
  for (std::size_t d = 0; d < out.size(); ++d) {
    out[d] = static_cast<float>(acc[d] / static_cast<double>(found));
  }
  return out;
}

double class_similarity(std::span<const LabeledVec> c1, std::span<const LabeledVec> c2) {
  if (c1.empty() || c2.empty()) throw EmptyClass();
  double sum = 0.0;
  std::size_t pairs = 0;
  for (const LabeledVec& a : c1) {
    for (const LabeledVec& b : c2) {
      if (a.id == b.id) continue;
      sum += cosine(a.v, b.v);
      ++pairs;
    }
  }
  if (pairs == 0) throw UndefinedSimilarity();
  return sum / static_cast<double>(pairs);
}

SimilaritySet similar_predicates(const VectorStore& store, const std::string& anchor,
                                 const std::set<std::string>& candidates, double threshold,
                                 std::vector<std::string>* warnings) {
  if (!(threshold > 0.0) || threshold > 1.0) {
    throw Error("similarity threshold must be in (0,1]");
  }
  SimilaritySet out;
  out.anchor = anchor;
  out.threshold = threshold;
  out.members[anchor] = 1.0;

  std::vector<float> av = predicate_vector(store, anchor);
  for (const std::string& cand : candidates) {
    if (cand == anchor) continue;
    try {
      std::vector<float> cv = predicate_vector(store, cand);
      double score = cosine(av, cv);
      if (score > threshold) out.members[cand] = score;
    } catch (const UnknownPredicate&) {
      if (warnings) warnings->push_back("candidate predicate has no vector: " + cand);
    } catch (const ZeroVector&) {
      if (warnings) warnings->push_back("candidate predicate has a zero vector: " + cand);
    }
  }
  return out;
}

SimilaritySet StoreSimilarity::similar(const std::string& anchor,
                                       const std::set<std::string>& candidates,
                                       double threshold,
                                       std::vector<std::string>* warnings) const {
  return similar_predicates(*store_, anchor, candidates, threshold, warnings);
}

FixedClusterSimilarity::FixedClusterSimilarity(
    const std::vector<std::vector<std::string>>& clusters) {
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    for (const std::string& p : clusters[c]) {
      cluster_of_[p] = static_cast<int>(c);
    }
  }
}

SimilaritySet FixedClusterSimilarity::similar(const std::string& anchor,
                                              const std::set<std::string>& candidates,
                                              double threshold,
                                              std::vector<std::string>*) const {
  SimilaritySet out;
  out.anchor = anchor;
  out.threshold = threshold;
  out.members[anchor] = 1.0;
  auto it = cluster_of_.find(anchor);
  if (it == cluster_of_.end()) return out;
  for (const std::string& cand : candidates) {
    if (cand == anchor) continue;
    auto jt = cluster_of_.find(cand);
    if (jt != cluster_of_.end() && jt->second == it->second && threshold < 1.0) {
      out.members[cand] = 1.0;
    }
  }
  return out;
}

}  // namespace gsq::embed
