#pragma once

// Parsed SPARQL subset: basic graph patterns composed with binary UNION and
// OPTIONAL under a SELECT projection. No FILTER/ORDER/LIMIT by design; the
// parser raises UnsupportedFeature at that boundary.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "graphsquash/rdf/term.hpp"

namespace gsq::sparql {

struct Variable {
  std::string name;
  friend bool operator==(const Variable&, const Variable&) = default;
  friend auto operator<=>(const Variable&, const Variable&) = default;
};

using PatternTerm = std::variant<rdf::Term, Variable>;

bool is_var(const PatternTerm& t);
const Variable* as_var(const PatternTerm& t);
const rdf::Term* as_term(const PatternTerm& t);

struct TriplePattern {
  PatternTerm s, p, o;
  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

struct Node {
  enum class Kind { Bgp, Union, Optional };
  Kind kind = Kind::Bgp;
  std::vector<TriplePattern> patterns;  // Bgp only
  std::unique_ptr<Node> left, right;    // Union / Optional

  std::unique_ptr<Node> clone() const;
  bool equals(const Node& other) const;
};

struct Query {
  bool wildcard = false;
  bool distinct = false;
  std::vector<std::string> projection;  // empty iff wildcard
  std::map<std::string, std::string> prefixes;
  std::unique_ptr<Node> body;

  Query clone() const;

  // Variables of the body in first-occurrence order (wildcard projection).
  std::vector<std::string> body_variables() const;
  // Projected variable names (wildcard expands to body_variables()).
  std::vector<std::string> projected_variables() const;
};

// Constant predicate IRIs over all patterns.
std::set<std::string> constant_predicates(const Query& q);
// Constant object terms over all patterns, deduplicated, sorted.
std::vector<rdf::Term> constant_objects(const Query& q);

// Query text regenerated from the algebra (full IRIs, no prefixes). Reparses
// to an equal algebra.
std::string to_text(const Query& q);

}  // namespace gsq::sparql
