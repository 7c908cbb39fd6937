#pragma once

#include <string_view>

#include "graphsquash/sparql/algebra.hpp"

namespace gsq::sparql {

// Grammar subset: PREFIX declarations; SELECT [DISTINCT] vars|*; WHERE with
// basic graph patterns composed by UNION and OPTIONAL; braces for grouping.
// Terms are IRIs, prefixed names, 'a', variables, and (object-position)
// literals. Out-of-subset constructs raise UnsupportedFeature; everything
// else malformed raises SyntaxError.
Query parse_query(std::string_view text);

}  // namespace gsq::sparql
