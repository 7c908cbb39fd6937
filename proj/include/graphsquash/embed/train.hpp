#pragma once

#include <cstdint>

#include "graphsquash/embed/store.hpp"
#include "graphsquash/embed/walks.hpp"

namespace gsq::embed {

struct TrainConfig {
  int dims = 64;
  int window = 5;
  int negatives = 5;
  int epochs = 5;
  float learning_rate = 0.025f;  // linearly decayed to 1e-4 of itself
  std::uint64_t seed = 1;
};

// Skip-gram with negative sampling over the corpus sequences. Negatives are
// drawn from the unigram distribution raised to 3/4. Single-threaded and
// seeded: identical corpus + config give a bitwise-identical store. Every
// token with frequency >= 1 gets a vector (graph-embedding mode).
VectorStore train_skipgram(const WalkCorpus& corpus, const TrainConfig& cfg);

}  // namespace gsq::embed
