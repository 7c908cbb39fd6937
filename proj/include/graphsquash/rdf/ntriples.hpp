#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "graphsquash/rdf/graph.hpp"

namespace gsq::rdf {

struct ParseOptions {
  // Raise LiteralRejected instead of accepting a literal-object triple.
  bool reject_literals = false;
  // Silently drop literal-object triples (wins over reject_literals).
  bool strip_literals = false;
};

// RDF 1.1 N-Triples, UTF-8. LF and CRLF line ends accepted; comment lines and
// trailing comments after the '.' are allowed. Duplicate triples collapse
// (set semantics).
Graph parse_ntriples(std::istream& in, const ParseOptions& opt = {});
Graph parse_ntriples(std::string_view text, const ParseOptions& opt = {});
Graph parse_ntriples_file(const std::filesystem::path& path, const ParseOptions& opt = {});

// One triple per line in (s,p,o) interned-id order, LF line ends. Output
// re-parses to an equal graph.
void serialize_ntriples(const Graph& g, std::ostream& out);
std::string serialize_ntriples(const Graph& g);
void write_ntriples_file(const Graph& g, const std::filesystem::path& path);

}  // namespace gsq::rdf
