#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace gsq::rdf {

inline constexpr const char* kRdfType =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr const char* kRdfsSubClassOf =
    "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline constexpr const char* kXsdString =
    "http://www.w3.org/2001/XMLSchema#string";
inline constexpr const char* kRdfLangString =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

enum class TermKind : std::uint8_t { Iri, Literal, Blank };

// One RDF term. Plain literals normalize to xsd:string; language-tagged ones
// to rdf:langString, so equality is purely field-wise.
struct Term {
  TermKind kind = TermKind::Iri;
  std::string lexical;   // IRI text, literal value, or blank-node label
  std::string datatype;  // literals only
  std::string lang;      // literals only

  friend bool operator==(const Term&, const Term&) = default;
  friend std::strong_ordering operator<=>(const Term&, const Term&) = default;
};

// Throws gsq::Error on an empty IRI or one containing whitespace or angle
// brackets.
Term make_iri(std::string text);
Term make_blank(std::string label);
Term make_literal(std::string value, std::string datatype = "",
                  std::string lang = "");

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept;
};

// N-Triples token for the term: <iri>, _:label, or a quoted literal.
std::string to_ntriples(const Term& t);

}  // namespace gsq::rdf
