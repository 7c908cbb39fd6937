#pragma once

// Immutable, indexed in-memory triple set.
//
// Terms are interned to dense ids (the id table is a bijection per graph).
// Triples live in one array sorted by (s,p,o); two permutation arrays give
// (p,o,s) and (o,s,p) access paths. Construction goes through GraphBuilder;
// a frozen Graph is safe to share read-only across threads.

#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "graphsquash/rdf/term.hpp"

namespace gsq::rdf {

using TermId = std::uint32_t;

struct TripleIds {
  TermId s, p, o;
  friend bool operator==(const TripleIds&, const TripleIds&) = default;
  friend auto operator<=>(const TripleIds&, const TripleIds&) = default;
};

struct Triple {
  Term s, p, o;
  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

enum class Position { Subject, Predicate, Object };

class Graph {
 public:
  Graph() = default;

  std::size_t size() const { return spo_.size(); }
  std::size_t term_count() const { return terms_.size(); }

  const Term& term(TermId id) const { return terms_[id]; }
  std::optional<TermId> find(const Term& t) const;

  // All triples, sorted by (s,p,o) interned-id order.
  const std::vector<TripleIds>& triples() const { return spo_; }

  Triple materialize(const TripleIds& t) const {
    return Triple{terms_[t.s], terms_[t.p], terms_[t.o]};
  }

  // Triples matching the pattern; unbound positions match anything. Output is
  // in (s,p,o) id order.
  std::vector<TripleIds> match(std::optional<TermId> s, std::optional<TermId> p,
                               std::optional<TermId> o) const;
  std::vector<TripleIds> match_terms(const std::optional<Term>& s,
                                     const std::optional<Term>& p,
                                     const std::optional<Term>& o) const;

  // Contiguous slice of triples() with the given subject.
  std::span<const TripleIds> subject_range(TermId s) const;

  // Distinct terms at a position, ascending id order.
  std::vector<TermId> project(Position pos) const;
  std::vector<Term> project_terms(Position pos) const;

  bool contains(const TripleIds& t) const;
  bool contains_terms(const Term& s, const Term& p, const Term& o) const;

  bool has_literal_objects() const { return has_literal_objects_; }

  // Set equality on materialized triples (interning may differ).
  bool same_triples(const Graph& other) const;

 private:
  friend class GraphBuilder;

  std::vector<Term> terms_;
  std::unordered_map<Term, TermId, TermHash> ids_;
  std::vector<TripleIds> spo_;
  std::vector<std::uint32_t> pos_;  // triple indexes ordered by (p,o,s)
  std::vector<std::uint32_t> osp_;  // triple indexes ordered by (o,s,p)
  bool has_literal_objects_ = false;
};

class GraphBuilder {
 public:
  GraphBuilder() = default;

  // Seeds the interner with every term of g (ids are preserved) and copies
  // its triples when copy_triples is set.
  explicit GraphBuilder(const Graph& g, bool copy_triples = true);

  TermId intern(const Term& t);

  // Validates term placement: literals may only be objects, predicates must
  // be IRIs.
  void add(const Term& s, const Term& p, const Term& o);
  void add(TermId s, TermId p, TermId o);

  std::size_t pending() const { return triples_.size(); }

  // Sorts, dedups, and builds the indexes. The builder is spent afterwards.
  Graph freeze() &&;

  // Bulk copy path: translates source-graph ids into this builder, interning
  // each distinct term once. Cheaper than materializing terms per triple.
  class Translator {
   public:
    Translator(GraphBuilder& b, const Graph& src)
        : builder_(&b), src_(&src), map_(src.term_count(), kUnset) {}

    TermId operator()(TermId src_id) {
      TermId& slot = map_[src_id];
      if (slot == kUnset) slot = builder_->intern(src_->term(src_id));
      return slot;
    }

    void add(const TripleIds& t) {
      builder_->add((*this)(t.s), (*this)(t.p), (*this)(t.o));
    }

   private:
    static constexpr TermId kUnset = ~TermId{0};
    GraphBuilder* builder_;
    const Graph* src_;
    std::vector<TermId> map_;
  };

 private:
  std::vector<Term> terms_;
  std::unordered_map<Term, TermId, TermHash> ids_;
  std::vector<TripleIds> triples_;
};

}  // namespace gsq::rdf
