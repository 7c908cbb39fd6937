#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "graphsquash/rdf/graph.hpp"

namespace gsq::embed {

struct WalkCorpus {
  std::vector<std::vector<std::string>> sequences;
  int walk_length = 0;
  int walks_per_entity = 0;
  std::uint64_t seed = 0;

  std::size_t token_count() const;
};

// Uniform random walks: for each subject entity, walks_per_entity sequences of
// the form s, p1, o1, p2, o2, ... with at most walk_length hops, stopping
// early at sinks. Each entity gets its own sub-seeded stream, so the corpus is
// deterministic per seed and independent of entity processing order.
WalkCorpus generate_walks(const rdf::Graph& g, int walk_length,
                          int walks_per_entity, std::uint64_t seed);

// One space-separated sequence per line (for external training).
void write_walks(const WalkCorpus& corpus, std::ostream& out);

std::string walk_token(const rdf::Term& t);

}  // namespace gsq::embed
