#include "graphsquash/embed/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "graphsquash/errors.hpp"
#include "graphsquash/rng.hpp"
#include "graphsquash/vec/kernels.hpp"

namespace gsq::embed {

namespace {

constexpr int kExpTableSize = 1000;
constexpr float kMaxExp = 6.0f;
constexpr std::size_t kUnigramTableSize = 1u << 20;

struct ExpTable {
  float values[kExpTableSize];
  ExpTable() {
    for (int i = 0; i < kExpTableSize; ++i) {
      float x = (static_cast<float>(i) / kExpTableSize * 2 - 1) * kMaxExp;
      float e = std::exp(x);
      values[i] = e / (e + 1);
    }
  }
  // sigmoid(f) for f in (-kMaxExp, kMaxExp)
  float sigmoid(float f) const {
    int idx = static_cast<int>((f + kMaxExp) * (kExpTableSize / kMaxExp / 2));
    idx = std::clamp(idx, 0, kExpTableSize - 1);
    return values[idx];
  }
};

void validate(const TrainConfig& cfg) {
  if (cfg.dims < 1 || cfg.dims > 1024) {
    throw SpecInvalid("train: dims must be in [1,1024]");
  }
  if (cfg.window < 1) throw SpecInvalid("train: window must be positive");
  if (cfg.negatives < 1) throw SpecInvalid("train: negatives must be positive");
  if (cfg.epochs < 1) throw SpecInvalid("train: epochs must be positive");
  if (!(cfg.learning_rate > 0)) throw SpecInvalid("train: learning rate must be positive");
}

}  // namespace

VectorStore train_skipgram(const WalkCorpus& corpus, const TrainConfig& cfg) {
  validate(cfg);
  if (corpus.sequences.empty() || corpus.token_count() == 0) throw EmptyCorpus();

  // Vocabulary: count, then order by (count desc, first occurrence asc).
  std::unordered_map<std::string, std::size_t> first_seen;
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto& seq : corpus.sequences) {
    for (const auto& tok : seq) {
      auto [it, inserted] = first_seen.try_emplace(tok, first_seen.size());
      (void)it;
      (void)inserted;
      ++counts[tok];
    }
  }
  std::vector<std::string> vocab;
  vocab.reserve(first_seen.size());
  for (const auto& [tok, idx] : first_seen) vocab.push_back(tok);
  std::sort(vocab.begin(), vocab.end(), [&](const std::string& a, const std::string& b) {
    auto ca = counts[a], cb = counts[b];
    if (ca != cb) return ca > cb;
    return first_seen[a] < first_seen[b];
  });
  std::unordered_map<std::string, int> vocab_index;
  for (std::size_t i = 0; i < vocab.size(); ++i) vocab_index[vocab[i]] = static_cast<int>(i);
  const int vsize = static_cast<int>(vocab.size());
  const int dims = cfg.dims;

  // Encode sequences.
  std::vector<std::vector<int>> seqs;
  seqs.reserve(corpus.sequences.size());
  std::uint64_t total_words = 0;
  for (const auto& seq : corpus.sequences) {
    std::vector<int> enc;
    enc.reserve(seq.size());
    for (const auto& tok : seq) enc.push_back(vocab_index[tok]);
    total_words += enc.size();
    seqs.push_back(std::move(enc));
  }

  // Unigram table, counts^(3/4).
  std::vector<int> unigram(kUnigramTableSize);
  {
    double norm = 0.0;
    std::vector<double> pw(vsize);
    for (int i = 0; i < vsize; ++i) {
      pw[i] = std::pow(static_cast<double>(counts[vocab[i]]), 0.75);
      norm += pw[i];
    }
    int w = 0;
    double cum = pw[0] / norm;
    for (std::size_t i = 0; i < kUnigramTableSize; ++i) {
      unigram[i] = w;
      if (static_cast<double>(i + 1) / kUnigramTableSize > cum && w + 1 < vsize) {
        ++w;
        cum += pw[w] / norm;
      }
    }
  }

  std::mt19937_64 rng(mix64(cfg.seed, 0x5347u));  // one stream for the whole run
  std::vector<float> syn0(static_cast<std::size_t>(vsize) * dims);
  std::vector<float> syn1(static_cast<std::size_t>(vsize) * dims, 0.0f);
  for (float& x : syn0) {
    x = static_cast<float>((uniform01(rng) - 0.5) / dims);
  }

  static const ExpTable exp_table;
  const std::uint64_t total = total_words * static_cast<std::uint64_t>(cfg.epochs);
  std::uint64_t processed = 0;
  float alpha = cfg.learning_rate;
  std::vector<float> neu1e(dims);

  auto row = [&](std::vector<float>& m, int i) {
    return std::span<float>(m.data() + static_cast<std::size_t>(i) * dims, dims);
  };

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (const auto& seq : seqs) {
      const int len = static_cast<int>(seq.size());
      for (int pos = 0; pos < len; ++pos) {
        ++processed;
        if (processed % 10000 == 0) {
          float frac = 1.0f - static_cast<float>(processed) / (total + 1);
          alpha = cfg.learning_rate * std::max(frac, 1e-4f);
        }
        const int center = seq[pos];
        const int shrink = static_cast<int>(bounded(rng, cfg.window));
        for (int a = shrink; a < cfg.window * 2 + 1 - shrink; ++a) {
          if (a == cfg.window) continue;
          const int idx = pos - cfg.window + a;
          if (idx < 0 || idx >= len) continue;
          const int input = seq[idx];  // context word carries the input row
          std::span<float> l1 = row(syn0, input);
          std::fill(neu1e.begin(), neu1e.end(), 0.0f);

          for (int d = 0; d <= cfg.negatives; ++d) {
            int target;
            float label;
            if (d == 0) {
              target = center;
              label = 1.0f;
            } else {
              target = unigram[bounded(rng, kUnigramTableSize)];
              if (target == center) continue;
              label = 0.0f;
            }
            std::span<float> l2 = row(syn1, target);
            const float f = static_cast<float>(vec::dot(l1, l2));
            float grad;
            if (f > kMaxExp) {
              grad = (label - 1.0f) * alpha;
            } else if (f < -kMaxExp) {
              grad = label * alpha;
            } else {
              grad = (label - exp_table.sigmoid(f)) * alpha;
            }
            if (grad != 0.0f) {
              vec::axpy(grad, l2, neu1e);
              vec::axpy(grad, l1, l2);
            }
          }
          vec::axpy(1.0f, neu1e, l1);
        }
      }
    }
  }

  VectorStore store(StoreMode::GraphEmbedding, static_cast<std::size_t>(dims));
  for (int i = 0; i < vsize; ++i) {
    store.add(vocab[i], row(syn0, i));
  }
  return store;
}

}  // namespace gsq::embed
