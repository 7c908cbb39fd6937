#pragma once

#include <map>
#include <string>

#include "graphsquash/sparql/algebra.hpp"

namespace gsq::sparql {

// Replaces every constant predicate by its image under the substitution, then
// simplifies to a fixpoint: duplicate patterns within a BGP are dropped and
// UNION(X, X) collapses to X. The projection is untouched. The substitution
// must be idempotent (representatives map to themselves).
Query rewrite(const Query& q, const std::map<std::string, std::string>& predicate_subst);

}  // namespace gsq::sparql
