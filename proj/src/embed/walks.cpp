#include "graphsquash/embed/walks.hpp"

#include <ostream>

#include "graphsquash/errors.hpp"
#include "graphsquash/rng.hpp"

namespace gsq::embed {

std::size_t WalkCorpus::token_count() const {
  std::size_t n = 0;
  for (const auto& s : sequences) n += s.size();
  return n;
}

std::string walk_token(const rdf::Term& t) {
  if (t.kind == rdf::TermKind::Blank) return "_:" + t.lexical;
  return t.lexical;
}

WalkCorpus generate_walks(const rdf::Graph& g, int walk_length,
                          int walks_per_entity, std::uint64_t seed) {
  if (walk_length < 1) throw Error("walk_length must be >= 1");
  if (walks_per_entity < 1) throw Error("walks_per_entity must be >= 1");

  WalkCorpus corpus;
  corpus.walk_length = walk_length;
  corpus.walks_per_entity = walks_per_entity;
  corpus.seed = seed;

  for (rdf::TermId start : g.project(rdf::Position::Subject)) {
    std::mt19937_64 rng(mix64(seed, start));
    for (int w = 0; w < walks_per_entity; ++w) {
      std::vector<std::string> seq;
      seq.push_back(walk_token(g.term(start)));
      rdf::TermId cur = start;
      for (int hop = 0; hop < walk_length; ++hop) {
        auto edges = g.subject_range(cur);
        if (edges.empty()) break;
        const rdf::TripleIds& e = edges[bounded(rng, edges.size())];
        seq.push_back(walk_token(g.term(e.p)));
        seq.push_back(walk_token(g.term(e.o)));
        cur = e.o;
      }
      corpus.sequences.push_back(std::move(seq));
    }
  }
  return corpus;
}

void write_walks(const WalkCorpus& corpus, std::ostream& out) {
  for (const auto& seq : corpus.sequences) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (i) out << ' ';
      out << seq[i];
    }
    out << '\n';
  }
}

}  // namespace gsq::embed
