#include "graphsquash/sparql/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace gsq::sparql {

bool is_var(const PatternTerm& t) { return std::holds_alternative<Variable>(t); }

const Variable* as_var(const PatternTerm& t) { return std::get_if<Variable>(&t); }

const rdf::Term* as_term(const PatternTerm& t) { return std::get_if<rdf::Term>(&t); }

std::unique_ptr<Node> Node::clone() const {
  auto n = std::make_unique<Node>();
  n->kind = kind;
  n->patterns = patterns;
  if (left) n->left = left->clone();
  if (right) n->right = right->clone();
  return n;
}

bool Node::equals(const Node& other) const {
  if (kind != other.kind) return false;
  if (kind == Kind::Bgp) return patterns == other.patterns;
  return left->equals(*other.left) && right->equals(*other.right);
}

Query Query::clone() const {
  Query q;
  q.wildcard = wildcard;
  q.distinct = distinct;
  q.projection = projection;
  q.prefixes = prefixes;
  if (body) q.body = body->clone();
  return q;
}

namespace {

void collect_vars(const Node& n, std::vector<std::string>& out) {
  auto add = [&out](const PatternTerm& t) {
    if (const Variable* v = as_var(t)) {
      if (std::find(out.begin(), out.end(), v->name) == out.end()) {
        out.push_back(v->name);
      }
    }
  };
  if (n.kind == Node::Kind::Bgp) {
    for (const TriplePattern& tp : n.patterns) {
      add(tp.s);
      add(tp.p);
      add(tp.o);
    }
    return;
  }
  collect_vars(*n.left, out);
  collect_vars(*n.right, out);
}

template <typename F>
void for_each_pattern(const Node& n, F&& f) {
  if (n.kind == Node::Kind::Bgp) {
    for (const TriplePattern& tp : n.patterns) f(tp);
    return;
  }
  for_each_pattern(*n.left, f);
  for_each_pattern(*n.right, f);
}

}  // namespace

std::vector<std::string> Query::body_variables() const {
  std::vector<std::string> out;
  if (body) collect_vars(*body, out);
  return out;
}

std::vector<std::string> Query::projected_variables() const {
  return wildcard ? body_variables() : projection;
}

std::set<std::string> constant_predicates(const Query& q) {
  std::set<std::string> out;
  if (!q.body) return out;
  for_each_pattern(*q.body, [&out](const TriplePattern& tp) {
    if (const rdf::Term* t = as_term(tp.p)) out.insert(t->lexical);
  });
  return out;
}

std::vector<rdf::Term> constant_objects(const Query& q) {
  std::set<rdf::Term> seen;
  if (q.body) {
    for_each_pattern(*q.body, [&seen](const TriplePattern& tp) {
      if (const rdf::Term* t = as_term(tp.o)) seen.insert(*t);
    });
  }
  return {seen.begin(), seen.end()};
}

namespace {

void term_text(const PatternTerm& t, std::ostream& out) {
  if (const Variable* v = as_var(t)) {
    out << '?' << v->name;
  } else {
    out << rdf::to_ntriples(*as_term(t));
  }
}

void node_text(const Node& n, std::ostream& out) {
  switch (n.kind) {
    case Node::Kind::Bgp: {
      bool first = true;
      for (const TriplePattern& tp : n.patterns) {
        if (!first) out << " . ";
        first = false;
        term_text(tp.s, out);
        out << ' ';
        term_text(tp.p, out);
        out << ' ';
        term_text(tp.o, out);
      }
      out << " .";
      break;
    }
    case Node::Kind::Union:
      out << "{ ";
      node_text(*n.left, out);
      out << " } UNION { ";
      node_text(*n.right, out);
      out << " }";
      break;
    case Node::Kind::Optional:
      out << "{ ";
      node_text(*n.left, out);
      out << " } OPTIONAL { ";
      node_text(*n.right, out);
      out << " }";
      break;
  }
}

}  // namespace

std::string to_text(const Query& q) {
  std::ostringstream out;
  out << "SELECT ";
  if (q.distinct) out << "DISTINCT ";
  if (q.wildcard) {
    out << "*";
  } else {
    bool first = true;
    for (const std::string& v : q.projection) {
      if (!first) out << ' ';
      first = false;
      out << '?' << v;
    }
  }
  out << " WHERE { ";
  if (q.body) node_text(*q.body, out);
  out << " }";
  return out.str();
}

}  // namespace gsq::sparql
