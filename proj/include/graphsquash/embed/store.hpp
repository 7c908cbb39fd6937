#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gsq::embed {

enum class StoreMode { GraphEmbedding, WordEmbedding };

// Token -> fixed-dimension float vector map. Rows live in one contiguous
// buffer; token order is insertion order and is part of the (bitwise)
// equality contract.
class VectorStore {
 public:
  VectorStore() = default;
  VectorStore(StoreMode mode, std::size_t dims);

  StoreMode mode() const { return mode_; }
  std::size_t dims() const { return dims_; }
  std::size_t size() const { return tokens_.size(); }

  // Appends a row. Throws on duplicate token, wrong length, or non-finite
  // components.
  void add(std::string token, std::span<const float> v);

  std::optional<std::size_t> index_of(std::string_view token) const;
  bool contains(std::string_view token) const { return index_of(token).has_value(); }

  std::span<const float> row(std::size_t index) const;
  std::span<float> mutable_row(std::size_t index);
  std::span<const float> vector(std::string_view token) const;  // throws if absent

  const std::vector<std::string>& tokens() const { return tokens_; }

  // Word-vector text format: header "count dims", then "token v1 .. vD".
  void save(std::ostream& out) const;
  // Accepts the optional header; loads in word-embedding mode. Throws
  // DimensionMismatch / VectorParseError with 1-based line numbers.
  static VectorStore load(std::istream& in);

  friend bool operator==(const VectorStore& a, const VectorStore& b);

 private:
  StoreMode mode_ = StoreMode::GraphEmbedding;
  std::size_t dims_ = 0;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<float> data_;
};

}  // namespace gsq::embed
