#include "graphsquash/sparql/rewrite.hpp"

#include <algorithm>

namespace gsq::sparql {

namespace {

void substitute(Node& n, const std::map<std::string, std::string>& subst) {
  if (n.kind == Node::Kind::Bgp) {
    for (TriplePattern& tp : n.patterns) {
      if (const rdf::Term* p = as_term(tp.p)) {
        auto it = subst.find(p->lexical);
        if (it != subst.end() && it->second != p->lexical) {
          tp.p = rdf::make_iri(it->second);
        }
      }
    }
    return;
  }
  substitute(*n.left, subst);
  substitute(*n.right, subst);
}

bool simplify(std::unique_ptr<Node>& n) {
  bool changed = false;
  if (n->kind == Node::Kind::Bgp) {
    std::vector<TriplePattern> kept;
    for (TriplePattern& tp : n->patterns) {
      if (std::find(kept.begin(), kept.end(), tp) == kept.end()) {
        kept.push_back(std::move(tp));
      } else {
        changed = true;
      }
    }
    n->patterns = std::move(kept);
    return changed;
  }
  changed |= simplify(n->left);
  changed |= simplify(n->right);
  if (n->kind == Node::Kind::Union && n->left->equals(*n->right)) {
    n = std::move(n->left);
    return true;
  }
  return changed;
}

}  // namespace

Query rewrite(const Query& q, const std::map<std::string, std::string>& predicate_subst) {
  Query out = q.clone();
  if (!out.body) return out;
  substitute(*out.body, predicate_subst);
  while (simplify(out.body)) {
  }
  return out;
}

}  // namespace gsq::sparql
