#include "graphsquash/embed/store.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "graphsquash/errors.hpp"

namespace gsq::embed {

VectorStore::VectorStore(StoreMode mode, std::size_t dims)
    : mode_(mode), dims_(dims) {
  if (dims_ == 0) throw Error("vector store needs dims >= 1");
}

void VectorStore::add(std::string token, std::span<const float> v) {
  if (v.size() != dims_) {
    throw DimensionMismatch(0, "row length " + std::to_string(v.size()) +
                                   " does not match dims " + std::to_string(dims_));
  }
  for (float x : v) {
    if (!std::isfinite(x)) throw Error("non-finite vector component for token " + token);
  }
  if (index_.contains(token)) throw Error("duplicate token: " + token);
  index_.emplace(token, tokens_.size());
  tokens_.push_back(std::move(token));
  data_.insert(data_.end(), v.begin(), v.end());
}

std::optional<std::size_t> VectorStore::index_of(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const float> VectorStore::row(std::size_t index) const {
  return {data_.data() + index * dims_, dims_};
}

std::span<float> VectorStore::mutable_row(std::size_t index) {
  return {data_.data() + index * dims_, dims_};
}

std::span<const float> VectorStore::vector(std::string_view token) const {
  auto idx = index_of(token);
  if (!idx) throw UnknownPredicate(std::string(token));
  return row(*idx);
}

void VectorStore::save(std::ostream& out) const {
  out << tokens_.size() << ' ' << dims_ << '\n';
  char buf[48];
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    out << tokens_[i];
    for (float x : row(i)) {
      std::snprintf(buf, sizeof buf, "%.9g", static_cast<double>(x));
      out << ' ' << buf;
    }
    out << '\n';
  }
}

VectorStore VectorStore::load(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t dims = 0;
  bool have_dims = false;
  VectorStore store;
  bool created = false;

  auto parse_floats = [](const std::vector<std::string>& parts, std::size_t from,
                         std::vector<float>& out) {
    out.clear();
    for (std::size_t i = from; i < parts.size(); ++i) {
      const std::string& s = parts[i];
      char* end = nullptr;
      float v = std::strtof(s.c_str(), &end);
      if (end == s.c_str() || *end != '\0') return false;
      out.push_back(v);
    }
    return true;
  };

  std::vector<float> values;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> parts;
    {
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) parts.push_back(tok);
    }
    if (parts.empty()) continue;

    if (lineno == 1 && parts.size() == 2) {
      // Optional "count dims" header.
      char* e1 = nullptr;
      char* e2 = nullptr;
      long count = std::strtol(parts[0].c_str(), &e1, 10);
      long d = std::strtol(parts[1].c_str(), &e2, 10);
      if (*e1 == '\0' && *e2 == '\0' && count >= 0 && d > 0) {
        dims = static_cast<std::size_t>(d);
        have_dims = true;
        continue;
      }
    }

    if (parts.size() < 2) throw VectorParseError(lineno, "expected token and values");
    if (!parse_floats(parts, 1, values)) {
      throw VectorParseError(lineno, "bad numeric value");
    }
    if (!have_dims) {
      dims = values.size();
      have_dims = true;
    }
    if (values.size() != dims) throw DimensionMismatch(lineno);
    if (!created) {
      store = VectorStore(StoreMode::WordEmbedding, dims);
      created = true;
    }
    store.add(parts[0], values);
  }
  if (!created) {
    if (!have_dims) throw VectorParseError(1, "empty vector file");
    store = VectorStore(StoreMode::WordEmbedding, dims);
  }
  return store;
}

bool operator==(const VectorStore& a, const VectorStore& b) {
  if (a.mode_ != b.mode_ || a.dims_ != b.dims_ || a.tokens_ != b.tokens_) return false;
  if (a.data_.size() != b.data_.size()) return false;
  // bitwise: distinguishes -0.0/0.0 and compares NaN payloads, which is what
  // the determinism contract wants
  return std::memcmp(a.data_.data(), b.data_.data(), a.data_.size() * sizeof(float)) == 0;
}

}  // namespace gsq::embed
