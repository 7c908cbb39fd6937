#include "graphsquash/sparql/eval.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>

#include "json.hpp"

namespace gsq::sparql {

namespace {

using rdf::Graph;
using rdf::TermId;
using rdf::TripleIds;

// A partial assignment over the query's variable table.
using Binding = std::vector<std::optional<TermId>>;

struct VarTable {
  std::vector<std::string> names;
  std::map<std::string, int> index;

  int id(const std::string& name) {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    int idx = static_cast<int>(names.size());
    names.push_back(name);
    index.emplace(name, idx);
    return idx;
  }
};

void collect(const Node& n, VarTable& vt) {
  if (n.kind == Node::Kind::Bgp) {
    for (const TriplePattern& tp : n.patterns) {
      for (const PatternTerm* t : {&tp.s, &tp.p, &tp.o}) {
        if (const Variable* v = as_var(*t)) vt.id(v->name);
      }
    }
    return;
  }
  collect(*n.left, vt);
  collect(*n.right, vt);
}

class Evaluator {
 public:
  Evaluator(const Graph& g, const Query& q) : g_(g) {
    if (q.body) collect(*q.body, vars_);
  }

  std::vector<Binding> eval(const Node& n) {
    switch (n.kind) {
      case Node::Kind::Bgp:
        return eval_bgp(n);
      case Node::Kind::Union: {
        auto out = eval(*n.left);
        auto rhs = eval(*n.right);
        out.insert(out.end(), std::make_move_iterator(rhs.begin()),
                   std::make_move_iterator(rhs.end()));
        return out;
      }
      case Node::Kind::Optional: {
        return left_join(eval(*n.left), eval(*n.right));
      }
    }
    return {};
  }

  const VarTable& vars() const { return vars_; }

 private:
  const Graph& g_;
  VarTable vars_;

  std::vector<Binding> eval_bgp(const Node& n) {
    std::vector<Binding> acc;
    acc.push_back(Binding(vars_.names.size()));
    for (const TriplePattern& tp : n.patterns) {
      std::vector<Binding> next;
      for (const Binding& b : acc) {
        extend(b, tp, next);
      }
      acc = std::move(next);
      if (acc.empty()) break;
    }
    return acc;
  }

  // Id of a constant term in this graph, nullopt if interned, -1-style
  // "absent" encoded via the bool.
  std::optional<TermId> resolve(const rdf::Term& t, bool& absent) const {
    auto id = g_.find(t);
    if (!id) absent = true;
    return id;
  }

  void extend(const Binding& b, const TriplePattern& tp, std::vector<Binding>& out) {
    std::optional<TermId> s, p, o;
    int vs = -1, vp = -1, vo = -1;
    bool absent = false;

    auto slot = [&](const PatternTerm& t, std::optional<TermId>& fixed, int& var) {
      if (const Variable* v = as_var(t)) {
        var = vars_.index.at(v->name);
        if (b[var]) fixed = b[var];
      } else {
        fixed = resolve(*as_term(t), absent);
      }
    };
    slot(tp.s, s, vs);
    slot(tp.p, p, vp);
    slot(tp.o, o, vo);
    if (absent) return;  // constant term not in graph: no matches

    auto emit = [&](const TripleIds& t) {
      Binding nb = b;
      bool ok = true;
      auto bind = [&](int var, TermId value) {
        if (var < 0) return;
        if (nb[var]) {
          if (*nb[var] != value) ok = false;
        } else {
          nb[var] = value;
        }
      };
      bind(vs, t.s);
      if (ok) bind(vp, t.p);
      if (ok) bind(vo, t.o);
      if (ok) out.push_back(std::move(nb));
    };

    if (s) {
      // hottest join path: scan the subject slice without allocating
      for (const TripleIds& t : g_.subject_range(*s)) {
        if ((!p || t.p == *p) && (!o || t.o == *o)) emit(t);
      }
      return;
    }
    for (const TripleIds& t : g_.match(s, p, o)) emit(t);
  }

  static bool compatible(const Binding& a, const Binding& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] && b[i] && *a[i] != *b[i]) return false;
    }
    return true;
  }

  static Binding merge(const Binding& a, const Binding& b) {
    Binding out = a;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (!out[i]) out[i] = b[i];
    }
    return out;
  }

  static std::vector<Binding> left_join(const std::vector<Binding>& left,
                                        const std::vector<Binding>& right) {
    std::vector<Binding> out;
    for (const Binding& l : left) {
      bool extended = false;
      for (const Binding& r : right) {
        if (compatible(l, r)) {
          out.push_back(merge(l, r));
          extended = true;
        }
      }
      if (!extended) out.push_back(l);
    }
    return out;
  }
};

}  // namespace

std::size_t SolutionTable::distinct_count() const {
  std::set<std::vector<std::optional<rdf::Term>>> seen(rows.begin(), rows.end());
  return seen.size();
}

SolutionTable evaluate(const Graph& g, const Query& q) {
  Evaluator ev(g, q);
  std::vector<Binding> bindings = q.body ? ev.eval(*q.body) : std::vector<Binding>{};

  const std::vector<std::string> proj = q.projected_variables();
  std::vector<int> proj_idx;
  proj_idx.reserve(proj.size());
  for (const std::string& name : proj) {
    proj_idx.push_back(ev.vars().index.at(name));
  }

  std::vector<Binding> rows;
  rows.reserve(bindings.size());
  for (const Binding& b : bindings) {
    Binding r;
    r.reserve(proj_idx.size());
    for (int idx : proj_idx) r.push_back(b[idx]);
    rows.push_back(std::move(r));
  }

  std::sort(rows.begin(), rows.end());
  if (q.distinct) {
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  }

  SolutionTable table;
  table.vars = proj;
  table.rows.reserve(rows.size());
  for (const Binding& r : rows) {
    std::vector<std::optional<rdf::Term>> row;
    row.reserve(r.size());
    for (const std::optional<TermId>& id : r) {
      if (id) {
        row.emplace_back(g.term(*id));
      } else {
        row.emplace_back(std::nullopt);
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

SolutionTable distinct_rows(const SolutionTable& t) {
  SolutionTable out;
  out.vars = t.vars;
  std::set<std::vector<std::optional<rdf::Term>>> seen(t.rows.begin(), t.rows.end());
  out.rows.assign(seen.begin(), seen.end());
  return out;
}

void write_json(const SolutionTable& t, std::ostream& out) {
  nlohmann::json j;
  j["vars"] = t.vars;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json r = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i]) r[t.vars[i]] = rdf::to_ntriples(*row[i]);
    }
    j["rows"].push_back(std::move(r));
  }
  out << j.dump(2) << '\n';
}

void write_tsv(const SolutionTable& t, std::ostream& out) {
  for (std::size_t i = 0; i < t.vars.size(); ++i) {
    if (i) out << '\t';
    out << '?' << t.vars[i];
  }
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << '\t';
      if (row[i]) out << rdf::to_ntriples(*row[i]);
    }
    out << '\n';
  }
}

}  // namespace gsq::sparql
