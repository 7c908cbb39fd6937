#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gsq {

// Base class for every library error. The CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text. Positions are 1-based; column counts bytes.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& message)
      : Error("syntax error at " + std::to_string(line) + ":" +
              std::to_string(column) + ": " + message),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

class LiteralRejected : public Error {
 public:
  explicit LiteralRejected(std::size_t line)
      : Error("literal triple rejected at line " + std::to_string(line)),
        line(line) {}
  std::size_t line;
};

// Summarization input contains literal-object triples and the keep-literals
// policy is off.
class LiteralPresent : public Error {
 public:
  LiteralPresent() : Error("graph contains literal triples; pass keep-literals to allow") {}
};

class UnsupportedFeature : public Error {
 public:
  explicit UnsupportedFeature(std::string feature_name)
      : Error("unsupported query feature: " + feature_name),
        feature(std::move(feature_name)) {}
  std::string feature;
};

class FixpointBudgetExceeded : public Error {
 public:
  FixpointBudgetExceeded(std::size_t derived, std::size_t cap)
      : Error("inference fixpoint derived " + std::to_string(derived) +
              " triples, budget is " + std::to_string(cap)) {}
};

// Vector file line with the wrong component count, or mismatched vector sizes
// (line == 0 when no file position applies).
class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(std::size_t line, const std::string& message = "vector dimension mismatch")
      : Error(line ? message + " at line " + std::to_string(line) : message),
        line(line) {}
  std::size_t line;
};

class VectorParseError : public Error {
 public:
  explicit VectorParseError(std::size_t line, const std::string& message = "malformed vector line")
      : Error(message + " at line " + std::to_string(line)), line(line) {}
  std::size_t line;
};

class ZeroVector : public Error {
 public:
  ZeroVector() : Error("cosine of an all-zero vector is undefined") {}
};

class EmptyCorpus : public Error {
 public:
  EmptyCorpus() : Error("walk corpus is empty") {}
};

class EmptyClass : public Error {
 public:
  EmptyClass() : Error("class similarity needs two non-empty entity sets") {}
};

class UndefinedSimilarity : public Error {
 public:
  UndefinedSimilarity() : Error("no distinct entity pairs; class similarity undefined") {}
};

class UnknownPredicate : public Error {
 public:
  explicit UnknownPredicate(std::string predicate_iri)
      : Error("predicate does not resolve to a vector: " + predicate_iri),
        predicate(std::move(predicate_iri)) {}
  std::string predicate;
};

// Invalid generator spec or training configuration.
class SpecInvalid : public Error {
 public:
  explicit SpecInvalid(const std::string& message) : Error(message) {}
};

class ZeroOriginal : public Error {
 public:
  ZeroOriginal() : Error("summarization ratio undefined for an empty original graph") {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& message) : Error(message) {}
};

}  // namespace gsq
