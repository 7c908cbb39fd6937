#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "graphsquash/embed/store.hpp"

namespace gsq::embed {

// cos(u,v) = dot / (|u||v|), accumulated in double. Throws DimensionMismatch
// on unequal sizes and ZeroVector when either norm is zero.
double cosine(std::span<const float> u, std::span<const float> v);

// Lowercased word tokens of the IRI's local name (split on camelCase and
// non-alphanumerics): ".../birthPlace" -> {"birth", "place"}.
std::vector<std::string> name_tokens(std::string_view iri);

// Graph-embedding mode: the stored vector for the full IRI token.
// Word-embedding mode: mean of the local-name token vectors present in the
// store. Throws UnknownPredicate when nothing resolves.
std::vector<float> predicate_vector(const VectorStore& store, std::string_view predicate_iri);

struct LabeledVec {
  std::string id;
  std::span<const float> v;
};

// Mean cosine over C1 x C2 excluding pairs with equal ids. Throws EmptyClass
// when either side is empty and UndefinedSimilarity when every pair is
// excluded.
double class_similarity(std::span<const LabeledVec> c1, std::span<const LabeledVec> c2);

struct SimilaritySet {
  std::string anchor;
  std::map<std::string, double> members;  // anchor maps to 1.0
  double threshold = 0.5;
};

// Members are the candidates scoring strictly above the threshold, plus the
// anchor. Candidates that do not resolve are skipped and reported through
// warnings; an unresolvable anchor throws UnknownPredicate.
SimilaritySet similar_predicates(const VectorStore& store, const std::string& anchor,
                                 const std::set<std::string>& candidates, double threshold,
                                 std::vector<std::string>* warnings = nullptr);

// Similarity source abstraction so pipelines run off embeddings or off known
// predicate clusters (generator ground truth) interchangeably.
class SimilarityProvider {
 public:
  virtual ~SimilarityProvider() = default;
  virtual SimilaritySet similar(const std::string& anchor,
                                const std::set<std::string>& candidates, double threshold,
                                std::vector<std::string>* warnings) const = 0;
};

class StoreSimilarity final : public SimilarityProvider {
 public:
  explicit StoreSimilarity(const VectorStore& store) : store_(&store) {}
  SimilaritySet similar(const std::string& anchor, const std::set<std::string>& candidates,
                        double threshold, std::vector<std::string>* warnings) const override;

 private:
  const VectorStore* store_;
};

// Fixed partition of predicates: cluster mates score 1.0, everything else is
// dissimilar. Predicates outside every cluster form singletons.
class FixedClusterSimilarity final : public SimilarityProvider {
 public:
  explicit FixedClusterSimilarity(const std::vector<std::vector<std::string>>& clusters);
  SimilaritySet similar(const std::string& anchor, const std::set<std::string>& candidates,
                        double threshold, std::vector<std::string>* warnings) const override;

 private:
  std::map<std::string, int> cluster_of_;
};

}  // namespace gsq::embed
