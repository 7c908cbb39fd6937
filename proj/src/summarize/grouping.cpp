#include "graphsquash/summarize/grouping.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

#include "graphsquash/errors.hpp"
#include "graphsquash/sparql/rewrite.hpp"

namespace gsq::summarize {

using rdf::Graph;
using rdf::GraphBuilder;
using rdf::Term;
using rdf::TripleIds;

namespace {

std::string supernode_id(const std::vector<Term>& members) {
  // FNV-1a over the sorted serialized member list; stable across runs and
  // independent of interning.
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (const Term& m : members) {
    std::string tok = rdf::to_ntriples(m);
    for (char c : tok) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001B3ull;
    }
    h ^= 0x0A;
    h *= 0x100000001B3ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("urn:sn:") + buf;
}

std::string member_token(const Term& t) {
  return t.kind == rdf::TermKind::Blank ? "_:" + t.lexical : t.lexical;
}

}  // namespace

GbsSummary gbs_summarize(const Graph& g, const reason::RuleConfig& rules,
                         const GbsOptions& opt) {
  if (!opt.allow_literals && g.has_literal_objects()) throw LiteralPresent();

  Graph inferred = reason::transitive_closure(g, rules);

  GbsSummary out;
  out.inferred_triples = inferred.size();

  GraphBuilder b;
  const auto& triples = inferred.triples();
  // (p,o) groups are contiguous in a (p,o,s)-ordered walk.
  std::vector<TripleIds> by_po(triples.begin(), triples.end());
  std::sort(by_po.begin(), by_po.end(), [](const TripleIds& a, const TripleIds& c) {
    return std::tie(a.p, a.o, a.s) < std::tie(c.p, c.o, c.s);
  });

  std::size_t i = 0;
  while (i < by_po.size()) {
    std::size_t j = i;
    while (j < by_po.size() && by_po[j].p == by_po[i].p && by_po[j].o == by_po[i].o) {
      ++j;
    }
    const Term pred = inferred.term(by_po[i].p);
    const Term obj = inferred.term(by_po[i].o);
    if (j - i >= 2) {
      std::vector<Term> members;
      members.reserve(j - i);
      for (std::size_t k = i; k < j; ++k) members.push_back(inferred.term(by_po[k].s));
      std::sort(members.begin(), members.end());
      std::string id = supernode_id(members);
      b.add(rdf::make_iri(id), pred, obj);
      out.membership.try_emplace(id, members);
      out.supernodes.push_back(SuperNode{id, pred, obj, std::move(members)});
    } else if (opt.keep_singletons) {
      b.add(inferred.term(by_po[i].s), pred, obj);
    } else {
      ++out.dropped_singletons;
    }
    i = j;
  }

  out.summary = std::move(b).freeze();
  return out;
}

GbsRewrite gbs_rewrite(const sparql::Query& q, const embed::SimilarityProvider& provider,
                       double threshold) {
  GbsRewrite out;
  std::set<std::string> preds = sparql::constant_predicates(q);

  for (const std::string& p : preds) {
    std::set<std::string> candidates = preds;
    candidates.erase(p);
    try {
      out.similarity.emplace(p, provider.similar(p, candidates, threshold, &out.warnings));
    } catch (const UnknownPredicate&) {
      out.warnings.push_back("query predicate has no vector, left unrewritten: " + p);
      embed::SimilaritySet identity;
      identity.anchor = p;
      identity.threshold = threshold;
      identity.members[p] = 1.0;
      out.similarity.emplace(p, std::move(identity));
    }
  }

  // p and q cluster together when each lies in the other's similarity set;
  // clusters are the connected components of that relation.
  std::map<std::string, std::string> parent;
  for (const std::string& p : preds) parent[p] = p;
  std::function<std::string(const std::string&)> find = [&](const std::string& x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  auto unite = [&](const std::string& a, const std::string& c) {
    std::string ra = find(a), rc = find(c);
    if (ra != rc) parent[std::min(ra, rc)] = std::max(ra, rc);
  };
  for (const std::string& p : preds) {
    for (const auto& [member, score] : out.similarity.at(p).members) {
      if (member == p || !preds.contains(member)) continue;
      const auto& back = out.similarity.at(member).members;
      if (back.contains(p)) unite(p, member);
    }
  }

  std::map<std::string, std::string> rep;  // component root -> representative
  for (const std::string& p : preds) {
    std::string root = find(p);
    auto it = rep.find(root);
    if (it == rep.end() || p < it->second) rep[root] = p;
  }
  std::map<std::string, std::string> subst;
  for (const std::string& p : preds) subst[p] = rep[find(p)];

  out.query = sparql::rewrite(q, subst);
  return out;
}

sparql::SolutionTable gbs_answer(const GbsSummary& summary, const sparql::Query& q) {
  sparql::SolutionTable base = sparql::evaluate(summary.summary, q);

  sparql::SolutionTable out;
  out.vars = base.vars;
  for (const auto& row : base.rows) {
    // Per-cell expansion lists; cross product over super-node bindings.
    std::vector<const std::vector<Term>*> expansions(row.size(), nullptr);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] && row[c]->kind == rdf::TermKind::Iri) {
        auto it = summary.membership.find(row[c]->lexical);
        if (it != summary.membership.end()) expansions[c] = &it->second;
      }
    }
    std::vector<std::optional<Term>> current(row);
    std::function<void(std::size_t)> emit = [&](std::size_t c) {
      if (c == row.size()) {
        out.rows.push_back(current);
        return;
      }
      if (!expansions[c]) {
        emit(c + 1);
        return;
      }
      for (const Term& m : *expansions[c]) {
        current[c] = m;
        emit(c + 1);
      }
      current[c] = row[c];
    };
    emit(0);
  }

  std::sort(out.rows.begin(), out.rows.end());
  if (q.distinct) {
    out.rows.erase(std::unique(out.rows.begin(), out.rows.end()), out.rows.end());
  }
  return out;
}

void write_membership_tsv(const GbsSummary& summary, std::ostream& out) {
  for (const SuperNode& sn : summary.supernodes) {
    out << sn.id << '\t';
    for (std::size_t i = 0; i < sn.members.size(); ++i) {
      if (i) out << ',';
      out << member_token(sn.members[i]);
    }
    out << '\n';
  }
}

std::map<std::string, std::vector<Term>> read_membership_tsv(std::istream& in) {
  std::map<std::string, std::vector<Term>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw SyntaxError(lineno, 1, "membership line has no tab separator");
    }
    std::string id = line.substr(0, tab);
    std::vector<Term> members;
    std::string rest = line.substr(tab + 1);
    std::size_t start = 0;
    while (start <= rest.size()) {
      std::size_t comma = rest.find(',', start);
      std::string tok = rest.substr(start, comma == std::string::npos ? std::string::npos
                                                                      : comma - start);
      if (!tok.empty()) {
        if (tok.starts_with("_:")) {
          members.push_back(rdf::make_blank(tok.substr(2)));
        } else {
          members.push_back(rdf::make_iri(tok));
        }
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (members.empty()) throw SyntaxError(lineno, 1, "membership line has no members");
    out.emplace(std::move(id), std::move(members));
  }
  return out;
}

}  // namespace gsq::summarize
