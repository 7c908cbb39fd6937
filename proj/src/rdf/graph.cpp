#include "graphsquash/rdf/graph.hpp"

#include <algorithm>

#include "graphsquash/errors.hpp"

namespace gsq::rdf {

namespace {

constexpr TermId kMaxId = ~TermId{0};

}  // namespace

std::optional<TermId> Graph::find(const Term& t) const {
  auto it = ids_.find(t);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::span<const TripleIds> Graph::subject_range(TermId s) const {
  auto lo = std::lower_bound(spo_.begin(), spo_.end(), TripleIds{s, 0, 0});
  auto hi = std::upper_bound(spo_.begin(), spo_.end(), TripleIds{s, kMaxId, kMaxId});
  return {spo_.data() + (lo - spo_.begin()), static_cast<std::size_t>(hi - lo)};
}

std::vector<TripleIds> Graph::match(std::optional<TermId> s, std::optional<TermId> p,
                                    std::optional<TermId> o) const {
  std::vector<TripleIds> out;
  auto keep = [&](const TripleIds& t) {
    return (!s || t.s == *s) && (!p || t.p == *p) && (!o || t.o == *o);
  };

  if (s) {
    for (const TripleIds& t : subject_range(*s)) {
      if (keep(t)) out.push_back(t);
    }
    return out;  // subject range is already in (s,p,o) order
  }

  std::vector<std::uint32_t> idx;
  if (p) {
    auto cmp_po = [this](std::uint32_t i, std::pair<TermId, TermId> key) {
      const TripleIds& t = spo_[i];
      return std::pair{t.p, t.o} < key;
    };
    auto lo = std::lower_bound(pos_.begin(), pos_.end(),
                               std::pair{*p, o.value_or(0)}, cmp_po);
    auto hi = o ? std::lower_bound(pos_.begin(), pos_.end(),
                                   std::pair{*p, *o}, cmp_po)
                : std::lower_bound(pos_.begin(), pos_.end(),
                                   std::pair{*p, kMaxId}, cmp_po);
    if (o) {
      // advance past the (p,o) block
      while (hi != pos_.end() && spo_[*hi].p == *p && spo_[*hi].o == *o) ++hi;
    } else {
      while (hi != pos_.end() && spo_[*hi].p == *p) ++hi;
    }
    idx.assign(lo, hi);
  } else if (o) {
    auto cmp_o = [this](std::uint32_t i, TermId key) { return spo_[i].o < key; };
    auto lo = std::lower_bound(osp_.begin(), osp_.end(), *o, cmp_o);
    auto hi = std::lower_bound(osp_.begin(), osp_.end(), *o + 1, cmp_o);
    idx.assign(lo, hi);
  } else {
    return spo_;
  }

  std::sort(idx.begin(), idx.end());  // restore (s,p,o) order
  out.reserve(idx.size());
  for (std::uint32_t i : idx) {
    if (keep(spo_[i])) out.push_back(spo_[i]);
  }
  return out;
}

std::vector<TripleIds> Graph::match_terms(const std::optional<Term>& s,
                                          const std::optional<Term>& p,
                                          const std::optional<Term>& o) const {
  std::optional<TermId> si, pi, oi;
  if (s) {
    si = find(*s);
    if (!si) return {};
  }
  if (p) {
    pi = find(*p);
    if (!pi) return {};
  }
  if (o) {
    oi = find(*o);
    if (!oi) return {};
  }
  return match(si, pi, oi);
}

std::vector<TermId> Graph::project(Position pos) const {
  std::vector<TermId> out;
  switch (pos) {
    case Position::Subject:
      for (const TripleIds& t : spo_) {
        if (out.empty() || out.back() != t.s) out.push_back(t.s);
      }
      break;
    case Position::Predicate:
      for (std::uint32_t i : pos_) {
        TermId p = spo_[i].p;
        if (out.empty() || out.back() != p) out.push_back(p);
      }
      break;
    case Position::Object:
      for (std::uint32_t i : osp_) {
        TermId o = spo_[i].o;
        if (out.empty() || out.back() != o) out.push_back(o);
      }
      break;
  }
  return out;
}

std::vector<Term> Graph::project_terms(Position pos) const {
  std::vector<Term> out;
  for (TermId id : project(pos)) out.push_back(terms_[id]);
  return out;
}

bool Graph::contains(const TripleIds& t) const {
  return std::binary_search(spo_.begin(), spo_.end(), t);
}

bool Graph::contains_terms(const Term& s, const Term& p, const Term& o) const {
  auto si = find(s), pi = find(p), oi = find(o);
  if (!si || !pi || !oi) return false;
  return contains(TripleIds{*si, *pi, *oi});
}

bool Graph::same_triples(const Graph& other) const {
  if (size() != other.size()) return false;
  for (const TripleIds& t : spo_) {
    if (!other.contains_terms(terms_[t.s], terms_[t.p], terms_[t.o])) return false;
  }
  return true;
}

GraphBuilder::GraphBuilder(const Graph& g, bool copy_triples) {
  terms_ = g.terms_;
  ids_ = g.ids_;
  if (copy_triples) triples_ = g.spo_;
}

TermId GraphBuilder::intern(const Term& t) {
  auto it = ids_.find(t);
  if (it != ids_.end()) return it->second;
  TermId id = static_cast<TermId>(terms_.size());
  terms_.push_back(t);
  ids_.emplace(t, id);
  return id;
}

void GraphBuilder::add(const Term& s, const Term& p, const Term& o) {
  if (s.kind == TermKind::Literal) throw Error("literal in subject position");
  if (p.kind != TermKind::Iri) throw Error("predicate must be an IRI");
  triples_.push_back(TripleIds{intern(s), intern(p), intern(o)});
}

void GraphBuilder::add(TermId s, TermId p, TermId o) {
  if (terms_[s].kind == TermKind::Literal) throw Error("literal in subject position");
  if (terms_[p].kind != TermKind::Iri) throw Error("predicate must be an IRI");
  triples_.push_back(TripleIds{s, p, o});
}

Graph GraphBuilder::freeze() && {
  Graph g;
  g.terms_ = std::move(terms_);
  g.ids_ = std::move(ids_);
  g.spo_ = std::move(triples_);

  std::sort(g.spo_.begin(), g.spo_.end());
  g.spo_.erase(std::unique(g.spo_.begin(), g.spo_.end()), g.spo_.end());

  g.pos_.resize(g.spo_.size());
  g.osp_.resize(g.spo_.size());
  for (std::uint32_t i = 0; i < g.spo_.size(); ++i) g.pos_[i] = g.osp_[i] = i;
  std::sort(g.pos_.begin(), g.pos_.end(), [&g](std::uint32_t a, std::uint32_t b) {
    const TripleIds& x = g.spo_[a];
    const TripleIds& y = g.spo_[b];
    return std::tie(x.p, x.o, x.s) < std::tie(y.p, y.o, y.s);
  });
  std::sort(g.osp_.begin(), g.osp_.end(), [&g](std::uint32_t a, std::uint32_t b) {
    const TripleIds& x = g.spo_[a];
    const TripleIds& y = g.spo_[b];
    return std::tie(x.o, x.s, x.p) < std::tie(y.o, y.s, y.p);
  });

  for (const TripleIds& t : g.spo_) {
    if (g.terms_[t.o].kind == TermKind::Literal) {
      g.has_literal_objects_ = true;
      break;
    }
  }
  return g;
}

}  // namespace gsq::rdf
