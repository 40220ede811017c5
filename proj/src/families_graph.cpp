#include <algorithm>
#include <set>
#include <sstream>

#include "combench/errors.hpp"
#include "combench/families.hpp"
#include "combench/graph.hpp"

namespace combench {
namespace {

using detail::fmt;
using detail::for_each_subset;

std::string istr(long long v) { return std::to_string(v); }

int param(const Params& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw Error("missing parameter " + key);
  return it->second;
}

// --- shared edge-variable machinery -------------------------------------------

struct EdgeVars {
  int n = 0;
  std::vector<VarId> vars;  // lex order over pairs (u, v), u < v
  VarId at(int u, int v) const {
    if (u > v) std::swap(u, v);
    int idx = u * (2 * n - u - 1) / 2 + (v - u - 1);
    return vars[static_cast<size_t>(idx)];
  }
};

EdgeVars add_edge_vars(ConstraintModel& m, int n) {
  EdgeVars ev;
  ev.n = n;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      ev.vars.push_back(m.add_var("e[" + istr(u) + "][" + istr(v) + "]", 0, 1));
  return ev;
}

// The structural constraints a pysms-style family may impose. Fields left
// unset are unconstrained. min_connectivity and chromatic_min (>= 3) have no
// CNF encoding here and are handled by the certifier's filter loop.
struct GraphConstraintSet {
  std::optional<int> min_degree, max_degree, min_edges, max_edges;
  std::optional<int> max_clique;        // clique number <= value
  std::optional<int> max_independent;   // independence number <= value
  std::optional<int> chromatic_max;     // proper coloring with <= value colors exists
  std::optional<int> chromatic_min;
  std::optional<int> min_connectivity;
  std::optional<int> min_girth;
  std::optional<int> forbid_clique;     // K_value-free
  bool maximal_triangle_free = false;
  std::optional<std::pair<int, int>> disjoint_cliques;  // (count, size)
  std::optional<std::pair<int, int>> ramsey;            // no K_r, no independent set of s

  bool has_residual() const {
    return min_connectivity.has_value() || (chromatic_min && *chromatic_min >= 3);
  }
};

CheckResult check_graph_constraints(const Graph& g, const GraphConstraintSet& c) {
  auto deg = g.degrees();
  if (c.min_degree)
    for (int v = 0; v < g.n; ++v)
      if (deg[size_t(v)] < *c.min_degree)
        return CheckResult::fail("vertex " + istr(v) + " has degree " + istr(deg[size_t(v)]) +
                                 " < " + istr(*c.min_degree));
  if (c.max_degree)
    for (int v = 0; v < g.n; ++v)
      if (deg[size_t(v)] > *c.max_degree)
        return CheckResult::fail("vertex " + istr(v) + " has degree " + istr(deg[size_t(v)]) +
                                 " > " + istr(*c.max_degree));
  if (c.min_edges && static_cast<int>(g.edge_count()) < *c.min_edges)
    return CheckResult::fail("only " + istr(static_cast<long long>(g.edge_count())) +
                             " edges, need at least " + istr(*c.min_edges));
  if (c.max_edges && static_cast<int>(g.edge_count()) > *c.max_edges)
    return CheckResult::fail(istr(static_cast<long long>(g.edge_count())) +
                             " edges exceed the maximum " + istr(*c.max_edges));
  if (c.max_clique && has_clique_of_size(g, *c.max_clique + 1))
    return CheckResult::fail("contains a clique of size " + istr(*c.max_clique + 1));
  if (c.forbid_clique && has_clique_of_size(g, *c.forbid_clique))
    return CheckResult::fail("contains a forbidden K_" + istr(*c.forbid_clique));
  if (c.max_independent && has_independent_set_of_size(g, *c.max_independent + 1))
    return CheckResult::fail("contains an independent set of size " +
                             istr(*c.max_independent + 1));
  if (c.chromatic_max && !is_k_colorable(g, *c.chromatic_max))
    return CheckResult::fail("not colorable with " + istr(*c.chromatic_max) + " colors");
  if (c.chromatic_min && *c.chromatic_min >= 2 && is_k_colorable(g, *c.chromatic_min - 1))
    return CheckResult::fail("colorable with " + istr(*c.chromatic_min - 1) +
                             " colors, chromatic number too small");
  if (c.min_girth) {
    auto gi = girth(g);
    if (gi && *gi < *c.min_girth)
      return CheckResult::fail("girth " + istr(*gi) + " < " + istr(*c.min_girth));
  }
  if (c.min_connectivity && vertex_connectivity(g) < *c.min_connectivity)
    return CheckResult::fail("vertex connectivity " + istr(vertex_connectivity(g)) + " < " +
                             istr(*c.min_connectivity));
  if (c.maximal_triangle_free) {
    if (!is_triangle_free(g)) return CheckResult::fail("contains a triangle");
    if (!is_maximal_triangle_free(g))
      return CheckResult::fail("not maximal: some non-edge closes no triangle");
  }
  if (c.disjoint_cliques &&
      !is_disjoint_clique_union(g, c.disjoint_cliques->first, c.disjoint_cliques->second))
    return CheckResult::fail("not a disjoint union of " + istr(c.disjoint_cliques->first) +
                             " cliques of size " + istr(c.disjoint_cliques->second));
  if (c.ramsey) {
    if (has_clique_of_size(g, c.ramsey->first))
      return CheckResult::fail("contains a clique of size " + istr(c.ramsey->first));
    if (has_independent_set_of_size(g, c.ramsey->second))
      return CheckResult::fail("contains an independent set of size " + istr(c.ramsey->second));
  }
  return CheckResult::pass();
}

// All cycles of a given length, canonicalized (least vertex first, oriented).
void for_each_cycle(int n, int len, const std::function<void(const std::vector<int>&)>& emit) {
  std::vector<int> path;
  std::vector<bool> used(static_cast<size_t>(n), false);
  std::function<void()> go = [&] {
    if (static_cast<int>(path.size()) == len) {
      if (path[1] < path.back()) emit(path);  // orientation canonical
      return;
    }
    for (int v = path[0] + 1; v < n; ++v) {
      if (used[size_t(v)]) continue;
      used[size_t(v)] = true;
      path.push_back(v);
      go();
      path.pop_back();
      used[size_t(v)] = false;
    }
  };
  for (int start = 0; start + len <= n + 0; ++start) {
    path = {start};
    std::fill(used.begin(), used.end(), false);
    used[size_t(start)] = true;
    go();
    path.clear();
  }
}

// Builds the CNF-encodable portion of a constraint set over edge variables.
BuildOutput build_graph_model(int n, const GraphConstraintSet& c) {
  BuildOutput out;
  auto& m = out.model;
  EdgeVars ev = add_edge_vars(m, n);

  auto degree_card = [&](int v, Cmp cmp, int bound) {
    std::vector<VarId> incident;
    for (int u = 0; u < n; ++u)
      if (u != v) incident.push_back(ev.at(v, u));
    m.add(CardinalityOfValue{incident, 1, cmp, bound});
  };
  std::optional<int> min_deg = c.min_degree;
  // connectivity >= k implies min degree >= k: a sound strengthening that
  // narrows the filter loop's search
  if (c.min_connectivity) min_deg = std::max(min_deg.value_or(0), *c.min_connectivity);
  if (min_deg)
    for (int v = 0; v < n; ++v) degree_card(v, Cmp::Ge, *min_deg);
  if (c.max_degree)
    for (int v = 0; v < n; ++v) degree_card(v, Cmp::Le, *c.max_degree);

  std::optional<int> min_edges = c.min_edges;
  if (c.chromatic_min && *c.chromatic_min >= 2)
    min_edges = std::max(min_edges.value_or(0), 1);  // chromatic >= 2 means non-empty
  if (c.min_connectivity && *c.min_connectivity >= 1)
    min_edges = std::max(min_edges.value_or(0), n - 1);
  if (min_edges) m.add(CardinalityOfValue{ev.vars, 1, Cmp::Ge, *min_edges});
  if (c.max_edges) m.add(CardinalityOfValue{ev.vars, 1, Cmp::Le, *c.max_edges});

  auto forbid_cliques_of = [&](int size) {
    for_each_subset(n, size, [&](const std::vector<int>& sub) {
      ClauseConstraint cl;
      for (size_t a = 0; a < sub.size(); ++a)
        for (size_t b = a + 1; b < sub.size(); ++b)
          cl.lits.push_back({ev.at(sub[a], sub[b]), false});
      m.add(std::move(cl));
    });
  };
  auto forbid_independent_of = [&](int size) {
    for_each_subset(n, size, [&](const std::vector<int>& sub) {
      ClauseConstraint cl;
      for (size_t a = 0; a < sub.size(); ++a)
        for (size_t b = a + 1; b < sub.size(); ++b)
          cl.lits.push_back({ev.at(sub[a], sub[b]), true});
      m.add(std::move(cl));
    });
  };
  if (c.max_clique) forbid_cliques_of(*c.max_clique + 1);
  if (c.forbid_clique) forbid_cliques_of(*c.forbid_clique);
  if (c.max_independent) forbid_independent_of(*c.max_independent + 1);
  if (c.ramsey) {
    forbid_cliques_of(c.ramsey->first);
    forbid_independent_of(c.ramsey->second);
  }
  if (c.min_girth)
    for (int len = 3; len < *c.min_girth; ++len)
      for_each_cycle(n, len, [&](const std::vector<int>& cyc) {
        ClauseConstraint cl;
        for (size_t i = 0; i < cyc.size(); ++i)
          cl.lits.push_back({ev.at(cyc[i], cyc[(i + 1) % cyc.size()]), false});
        m.add(std::move(cl));
      });
  if (c.chromatic_max) {
    int k = *c.chromatic_max;
    std::vector<VarId> col;
    for (int v = 0; v < n; ++v) col.push_back(m.add_var("col[" + istr(v) + "]", 0, k - 1));
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        TableAllowed t;
        t.vars = {ev.at(u, v), col[size_t(u)], col[size_t(v)]};
        for (int a = 0; a < k; ++a)
          for (int b = 0; b < k; ++b) {
            t.tuples.push_back({0, a, b});
            if (a != b) t.tuples.push_back({1, a, b});
          }
        m.add(std::move(t));
      }
  }
  if (c.maximal_triangle_free) {
    forbid_cliques_of(3);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        ClauseConstraint cl;
        cl.lits.push_back({ev.at(u, v), true});
        for (int w = 0; w < n; ++w) {
          if (w == u || w == v) continue;
          VarId t = m.add_var("t[" + istr(u) + "][" + istr(v) + "][" + istr(w) + "]", 0, 1);
          TableAllowed tab;
          tab.vars = {ev.at(u, w), ev.at(v, w), t};
          tab.tuples = {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 1}};
          m.add(std::move(tab));
          cl.lits.push_back({t, true});
        }
        m.add(std::move(cl));
      }
  }
  if (c.disjoint_cliques) {
    auto [count, size] = *c.disjoint_cliques;
    std::vector<VarId> member;
    for (int v = 0; v < n; ++v) member.push_back(m.add_var("cl[" + istr(v) + "]", 0, count - 1));
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        TableAllowed t;
        t.vars = {ev.at(u, v), member[size_t(u)], member[size_t(v)]};
        for (int a = 0; a < count; ++a)
          for (int b = 0; b < count; ++b) {
            if (a == b)
              t.tuples.push_back({1, a, b});
            else
              t.tuples.push_back({0, a, b});
          }
        m.add(std::move(t));
      }
    for (int j = 0; j < count; ++j) m.add(CardinalityOfValue{member, j, Cmp::Eq, size});
  }

  out.witness_vars = ev.vars;
  out.graph_witness = true;
  out.graph_n = n;
  out.hint_vars = {};  // edge-list witnesses are not hinted
  return out;
}

std::string graph_return_clause(int v) {
  return fmt(
      "Return the graph as a list of edges (u, v) with 0 <= u < v < {v}, or state "
      "\"UNSATISFIABLE\" if no graph exists.",
      {{"v", istr(v)}});
}

WitnessSchema edge_schema(int v) {
  WitnessSchema s;
  s.min_len = 0;
  s.max_len = static_cast<long long>(v) * (v - 1);  // flat pairs
  s.value_lo = 0;
  s.value_hi = v - 1;
  s.edge_pairs = true;
  return s;
}

// Registers one pysms-style family from a constraint-set builder.
void reg_pysms(const std::string& name, std::vector<ParamSpec> schema,
               std::function<GraphConstraintSet(const Params&)> to_constraints,
               std::function<std::string(const Params&)> prompt) {
  FamilySpec s;
  s.name = name;
  s.backend_class = "pysms";
  s.param_schema = std::move(schema);
  auto extract = std::move(to_constraints);
  s.check_witness = [extract](const Params& p, const VData&,
                              const std::vector<int>& w) -> CheckResult {
    auto g = Graph::from_flat(param(p, "v"), w);
    if (!g)
      return CheckResult::shape(
          "edge list must be flat (u, v) pairs without loops or duplicates");
    return check_graph_constraints(*g, extract(p));
  };
  s.witness_schema = [](const Params& p, const VData&) { return edge_schema(param(p, "v")); };
  s.render_prompt = [prompt](const Params& p, const VData&) { return prompt(p); };
  bool residual = false;
  {
    // The build path is a property of the family, not of parameter values:
    // probe the constraint set at the schema midpoint.
    Params mid;
    for (const auto& ps : s.param_schema) mid[ps.name] = (ps.lo + ps.hi) / 2;
    GraphConstraintSet probe = extract(mid);
    residual = probe.min_connectivity.has_value() || probe.chromatic_min.has_value();
  }
  if (residual) {
    s.search_model = [extract](const Params& p, const VData&) {
      return build_graph_model(param(p, "v"), extract(p));
    };
    s.native_filter = [extract](const Params& p, const VData&,
                                const std::vector<int>& w) -> bool {
      auto g = Graph::from_flat(param(p, "v"), w);
      if (!g) return false;
      const auto c = extract(p);
      if (c.min_connectivity && vertex_connectivity(*g) < *c.min_connectivity) return false;
      if (c.chromatic_min && *c.chromatic_min >= 2 && is_k_colorable(*g, *c.chromatic_min - 1))
        return false;
      return true;
    };
  } else {
    s.build_model = [extract](const Params& p, const VData&) {
      return build_graph_model(param(p, "v"), extract(p));
    };
  }
  detail::register_family(std::move(s));
}

// --- random-graph decision families --------------------------------------------

VData sample_edges(const Params& p, uint64_t seed) {
  int n = param(p, "n");
  int m = param(p, "m");
  Rng rng(seed);
  Graph g = sample_gnm(n, m, rng);
  VData out;
  out["edges"] = VData::array();
  for (const auto& [u, v] : g.edges) out["edges"].push_back({u, v});
  return out;
}

Graph graph_from_vdata(int n, const VData& vd) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : vd.at("edges")) edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  auto g = Graph::from_edges(n, std::move(edges));
  if (!g) throw DataError("malformed edge list in variable data");
  return *g;
}

std::string edges_block(const Graph& g) {
  return fmt("Edges of G ({m} edges):\n{edges}",
             {{"m", istr(static_cast<long long>(g.edge_count()))}, {"edges", g.render_edge_list()}});
}

void reg_graph_k_coloring() {
  FamilySpec s;
  s.name = "graph_k_coloring";
  s.backend_class = "pycsp";
  s.param_schema = {{"n", 3, 40}, {"k", 2, 6}, {"m", 0, 400}};
  s.needs_variable_data = true;
  s.sample_variable_data = sample_edges;
  s.build_model = [](const Params& p, const VData& vd) {
    int n = param(p, "n");
    int k = param(p, "k");
    Graph g = graph_from_vdata(n, vd);
    BuildOutput out;
    auto& m = out.model;
    std::vector<VarId> col;
    for (int v = 0; v < n; ++v) col.push_back(m.add_var("c[" + istr(v) + "]", 0, k - 1));
    for (const auto& [u, v] : g.edges) m.add(NotEqualOffset{col[size_t(u)], col[size_t(v)], 0});
    out.witness_vars = col;
    out.hint_vars = col;
    return out;
  };
  s.check_witness = [](const Params& p, const VData& vd, const std::vector<int>& w) {
    int n = param(p, "n");
    int k = param(p, "k");
    if (static_cast<int>(w.size()) != n)
      return CheckResult::shape("expected " + istr(n) + " colors");
    for (int v : w)
      if (v < 0 || v >= k) return CheckResult::fail("color out of range");
    Graph g = graph_from_vdata(n, vd);
    for (const auto& [u, v] : g.edges)
      if (w[size_t(u)] == w[size_t(v)])
        return CheckResult::fail("adjacent vertices " + istr(u) + " and " + istr(v) +
                                 " share a color");
    return CheckResult::pass();
  };
  s.render_prompt = [](const Params& p, const VData& vd) {
    int n = param(p, "n");
    int k = param(p, "k");
    Graph g = graph_from_vdata(n, vd);
    return fmt(
        "Decide whether the following random graph G with {n} vertices (numbered 0 to {n1}) "
        "admits a proper {k}-coloring (each vertex assigned a color from {0, 1, ..., {k1}} such "
        "that no two adjacent vertices share a color). NP-complete decision.\n\n"
        "{edges}\n\n"
        "Return the coloring as a flat list of {n} integers in {0, ..., {k1}}, or state "
        "\"UNSATISFIABLE\" if no proper {k}-coloring exists.",
        {{"n", istr(n)},
         {"n1", istr(n - 1)},
         {"k", istr(k)},
         {"k1", istr(k - 1)},
         {"edges", edges_block(g)}});
  };
  s.witness_schema = [](const Params& p, const VData&) {
    WitnessSchema w;
    w.min_len = w.max_len = param(p, "n");
    w.value_lo = 0;
    w.value_hi = param(p, "k") - 1;
    return w;
  };
  detail::register_family(std::move(s));
}

void reg_hamilton() {
  FamilySpec s;
  s.name = "hamilton_cycle";
  s.backend_class = "pycsp";
  s.param_schema = {{"n", 3, 20}, {"m", 0, 190}};
  s.needs_variable_data = true;
  s.sample_variable_data = sample_edges;
  s.build_model = [](const Params& p, const VData& vd) {
    int n = param(p, "n");
    Graph g = graph_from_vdata(n, vd);
    BuildOutput out;
    auto& m = out.model;
    std::vector<VarId> o;
    o.push_back(m.add_var("o[0]", 0, 0));
    for (int t = 1; t < n; ++t) o.push_back(m.add_var("o[" + istr(t) + "]", 0, n - 1));
    m.add(AllDifferent{o});
    TableAllowed proto;
    for (const auto& [u, v] : g.edges) {
      proto.tuples.push_back({u, v});
      proto.tuples.push_back({v, u});
    }
    for (int t = 0; t < n; ++t) {
      TableAllowed tab = proto;
      tab.vars = {o[size_t(t)], o[size_t((t + 1) % n)]};
      m.add(std::move(tab));
    }
    out.witness_vars = o;
    out.hint_vars = o;
    return out;
  };
  s.check_witness = [](const Params& p, const VData& vd, const std::vector<int>& w) {
    int n = param(p, "n");
    if (static_cast<int>(w.size()) != n) return CheckResult::shape("expected " + istr(n) + " vertices");
    if (w[0] != 0) return CheckResult::fail("cycle must start at vertex 0");
    std::set<int> seen(w.begin(), w.end());
    if (static_cast<int>(seen.size()) != n || *seen.begin() < 0 || *seen.rbegin() >= n)
      return CheckResult::fail("not a permutation of the vertices");
    Graph g = graph_from_vdata(n, vd);
    for (int t = 0; t < n; ++t)
      if (!g.has_edge(w[size_t(t)], w[size_t((t + 1) % n)]))
        return CheckResult::fail("consecutive pair (" + istr(w[size_t(t)]) + ", " +
                                 istr(w[size_t((t + 1) % n)]) + ") is not an edge");
    return CheckResult::pass();
  };
  s.render_prompt = [](const Params& p, const VData& vd) {
    int n = param(p, "n");
    Graph g = graph_from_vdata(n, vd);
    return fmt(
        "Decide whether the following random graph G with {n} vertices (numbered 0 to {n1}) "
        "contains a Hamiltonian cycle - a cyclic ordering visiting every vertex exactly once "
        "where every consecutive pair (and the pair (last, first)) is an edge of G. "
        "NP-complete.\n\n"
        "{edges}\n\n"
        "Return the Hamiltonian cycle as a flat list of {n} distinct integers in [0, {n}) giving "
        "the cycle order (with implicit wrap-around between last and first), starting at vertex "
        "0. State \"UNSATISFIABLE\" if no Hamiltonian cycle exists.",
        {{"n", istr(n)}, {"n1", istr(n - 1)}, {"edges", edges_block(g)}});
  };
  s.witness_schema = [](const Params& p, const VData&) {
    WitnessSchema w;
    w.min_len = w.max_len = param(p, "n");
    w.value_lo = 0;
    w.value_hi = param(p, "n") - 1;
    return w;
  };
  detail::register_family(std::move(s));
}

void reg_max_clique() {
  FamilySpec s;
  s.name = "max_clique";
  s.backend_class = "pycsp";
  s.param_schema = {{"n", 3, 40}, {"k", 2, 20}, {"m", 0, 400}};
  s.needs_variable_data = true;
  s.sample_variable_data = sample_edges;
  s.build_model = [](const Params& p, const VData& vd) {
    int n = param(p, "n");
    int k = param(p, "k");
    Graph g = graph_from_vdata(n, vd);
    auto adj = g.adjacency();
    BuildOutput out;
    auto& m = out.model;
    std::vector<VarId> sel;
    for (int v = 0; v < n; ++v) sel.push_back(m.add_var("s[" + istr(v) + "]", 0, 1));
    m.add(CardinalityOfValue{sel, 1, Cmp::Ge, k});
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (!adj[size_t(u)][size_t(v)])
          m.add(ClauseConstraint{{{sel[size_t(u)], false}, {sel[size_t(v)], false}}});
    out.witness_vars = sel;
    out.hint_vars = sel;
    return out;
  };
  s.check_witness = [](const Params& p, const VData& vd, const std::vector<int>& w) {
    int n = param(p, "n");
    int k = param(p, "k");
    if (static_cast<int>(w.size()) != n) return CheckResult::shape("expected a 0/1 vector of length " + istr(n));
    int count = 0;
    for (int v : w) {
      if (v != 0 && v != 1) return CheckResult::fail("entries must be 0/1");
      count += v;
    }
    if (count < k) return CheckResult::fail("only " + istr(count) + " vertices selected, need " + istr(k));
    Graph g = graph_from_vdata(n, vd);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (w[size_t(u)] == 1 && w[size_t(v)] == 1 && !g.has_edge(u, v))
          return CheckResult::fail("selected vertices " + istr(u) + " and " + istr(v) +
                                   " are not adjacent");
    return CheckResult::pass();
  };
  s.render_prompt = [](const Params& p, const VData& vd) {
    int n = param(p, "n");
    int k = param(p, "k");
    Graph g = graph_from_vdata(n, vd);
    return fmt(
        "Decide whether the following random graph G with {n} vertices (numbered 0 to {n1}) "
        "contains a clique of size at least {k}: a subset of {k} vertices, all pairwise "
        "adjacent. NP-hard.\n\n"
        "{edges}\n\n"
        "Return the clique as a flat 0/1 vector of length {n} (entry i is 1 iff vertex i is in "
        "the clique). The number of 1s must be at least {k}. State \"UNSATISFIABLE\" if no such "
        "clique exists.",
        {{"n", istr(n)}, {"n1", istr(n - 1)}, {"k", istr(k)}, {"edges", edges_block(g)}});
  };
  s.witness_schema = [](const Params& p, const VData&) {
    WitnessSchema w;
    w.min_len = w.max_len = param(p, "n");
    w.value_lo = 0;
    w.value_hi = 1;
    return w;
  };
  detail::register_family(std::move(s));
}

void reg_max_independent_set() {
  FamilySpec s;
  s.name = "max_independent_set";
  s.backend_class = "pycsp";
  s.param_schema = {{"n", 3, 40}, {"k", 2, 20}, {"m", 0, 400}};
  s.needs_variable_data = true;
  s.sample_variable_data = sample_edges;
  s.build_model = [](const Params& p, const VData& vd) {
    int n = param(p, "n");
    int k = param(p, "k");
    Graph g = graph_from_vdata(n, vd);
    BuildOutput out;
    auto& m = out.model;
    std::vector<VarId> sel;
    for (int v = 0; v < n; ++v) sel.push_back(m.add_var("s[" + istr(v) + "]", 0, 1));
    m.add(CardinalityOfValue{sel, 1, Cmp::Ge, k});
    for (const auto& [u, v] : g.edges)
      m.add(ClauseConstraint{{{sel[size_t(u)], false}, {sel[size_t(v)], false}}});
    out.witness_vars = sel;
    out.hint_vars = sel;
    return out;
  };
  s.check_witness = [](const Params& p, const VData& vd, const std::vector<int>& w) {
    int n = param(p, "n");
    int k = param(p, "k");
    if (static_cast<int>(w.size()) != n) return CheckResult::shape("expected a 0/1 vector of length " + istr(n));
    int count = 0;
    for (int v : w) {
      if (v != 0 && v != 1) return CheckResult::fail("entries must be 0/1");
      count += v;
    }
    if (count < k) return CheckResult::fail("only " + istr(count) + " vertices selected, need " + istr(k));
    Graph g = graph_from_vdata(n, vd);
    for (const auto& [u, v] : g.edges)
      if (w[size_t(u)] == 1 && w[size_t(v)] == 1)
        return CheckResult::fail("selected vertices " + istr(u) + " and " + istr(v) +
                                 " are adjacent");
    return CheckResult::pass();
  };
  s.render_prompt = [](const Params& p, const VData& vd) {
    int n = param(p, "n");
    int k = param(p, "k");
    Graph g = graph_from_vdata(n, vd);
    return fmt(
        "Decide whether the following random graph G with {n} vertices (numbered 0 to {n1}) has "
        "an independent set of size at least {k} (a subset of vertices, no two of which are "
        "adjacent). NP-hard.\n\n"
        "{edges}\n\n"
        "Return an independent set as a flat 0/1 vector of length {n} (entry i is 1 iff vertex i "
        "is in the set). The number of 1s must be at least {k}. State \"UNSATISFIABLE\" if no "
        "such set exists.",
        {{"n", istr(n)}, {"n1", istr(n - 1)}, {"k", istr(k)}, {"edges", edges_block(g)}});
  };
  s.witness_schema = [](const Params& p, const VData&) {
    WitnessSchema w;
    w.min_len = w.max_len = param(p, "n");
    w.value_lo = 0;
    w.value_hi = 1;
    return w;
  };
  detail::register_family(std::move(s));
}

void reg_vertex_cover() {
  FamilySpec s;
  s.name = "vertex_cover";
  s.backend_class = "pycsp";
  s.param_schema = {{"n", 3, 40}, {"k", 1, 40}, {"m", 0, 400}};
  s.needs_variable_data = true;
  s.sample_variable_data = sample_edges;
  s.build_model = [](const Params& p, const VData& vd) {
    int n = param(p, "n");
    int k = param(p, "k");
    Graph g = graph_from_vdata(n, vd);
    BuildOutput out;
    auto& m = out.model;
    std::vector<VarId> sel;
    for (int v = 0; v < n; ++v) sel.push_back(m.add_var("s[" + istr(v) + "]", 0, 1));
    m.add(CardinalityOfValue{sel, 1, Cmp::Le, k});
    for (const auto& [u, v] : g.edges)
      m.add(ClauseConstraint{{{sel[size_t(u)], true}, {sel[size_t(v)], true}}});
    out.witness_vars = sel;
    out.hint_vars = sel;
    return out;
  };
  s.check_witness = [](const Params& p, const VData& vd, const std::vector<int>& w) {
    int n = param(p, "n");
    int k = param(p, "k");
    if (static_cast<int>(w.size()) != n) return CheckResult::shape("expected a 0/1 vector of length " + istr(n));
    int count = 0;
    for (int v : w) {
      if (v != 0 && v != 1) return CheckResult::fail("entries must be 0/1");
      count += v;
    }
    if (count > k) return CheckResult::fail(istr(count) + " vertices selected, at most " + istr(k) + " allowed");
    Graph g = graph_from_vdata(n, vd);
    for (const auto& [u, v] : g.edges)
      if (w[size_t(u)] == 0 && w[size_t(v)] == 0)
        return CheckResult::fail("edge (" + istr(u) + ", " + istr(v) + ") is uncovered");
    return CheckResult::pass();
  };
  s.render_prompt = [](const Params& p, const VData& vd) {
    int n = param(p, "n");
    int k = param(p, "k");
    Graph g = graph_from_vdata(n, vd);
    return fmt(
        "Decide whether the following random graph G with {n} vertices (numbered 0 to {n1}) has "
        "a vertex cover of size at most {k}: a subset S of vertices such that every edge of G "
        "has at least one endpoint in S, and |S| <= {k}. NP-complete.\n\n"
        "{edges}\n\n"
        "Return the cover as a flat 0/1 vector of length {n} (entry i is 1 iff vertex i is in "
        "S). The number of 1s must be at most {k}. State \"UNSATISFIABLE\" if no such cover "
        "exists.",
        {{"n", istr(n)}, {"n1", istr(n - 1)}, {"k", istr(k)}, {"edges", edges_block(g)}});
  };
  s.witness_schema = [](const Params& p, const VData&) {
    WitnessSchema w;
    w.min_len = w.max_len = param(p, "n");
    w.value_lo = 0;
    w.value_hi = 1;
    return w;
  };
  detail::register_family(std::move(s));
}

}  // namespace

void detail::register_graph_families() {
  reg_graph_k_coloring();
  reg_hamilton();
  reg_max_clique();
  reg_max_independent_set();
  reg_vertex_cover();

  reg_pysms(
      "pysms_chromatic_girth",
      {{"v", 4, 20}, {"chromatic_max", 2, 6}, {"min_girth", 3, 9}, {"min_edges", 0, 60}},
      [](const Params& p) {
        GraphConstraintSet c;
        c.chromatic_max = param(p, "chromatic_max");
        c.min_girth = param(p, "min_girth");
        c.min_edges = param(p, "min_edges");
        return c;
      },
      [](const Params& p) {
        return fmt(
            "Generate a graph with {v} vertices that is colorable with at most {chi} colors, has "
            "girth (shortest cycle) at least {g}, and has at least {e} edges.\n\n{ret}",
            {{"v", istr(param(p, "v"))},
             {"chi", istr(param(p, "chromatic_max"))},
             {"g", istr(param(p, "min_girth"))},
             {"e", istr(param(p, "min_edges"))},
             {"ret", graph_return_clause(param(p, "v"))}});
      });

  reg_pysms(
      "pysms_clique_coloring",
      {{"v", 4, 20}, {"max_clique", 2, 6}, {"chromatic_max", 2, 6}, {"min_degree", 0, 12}},
      [](const Params& p) {
        GraphConstraintSet c;
        c.max_clique = param(p, "max_clique");
        c.chromatic_max = param(p, "chromatic_max");
        c.min_degree = param(p, "min_degree");
        return c;
      },
      [](const Params& p) {
        return fmt(
            "Generate a graph with {v} vertices where the maximum clique size is at most {w}, "
            "the chromatic number is at most {chi}, and every vertex has degree at least "
            "{d}.\n\n{ret}",
            {{"v", istr(param(p, "v"))},
             {"w", istr(param(p, "max_clique"))},
             {"chi", istr(param(p, "chromatic_max"))},
             {"d", istr(param(p, "min_degree"))},
             {"ret", graph_return_clause(param(p, "v"))}});
      });

  reg_pysms(
      "pysms_combined_graph",
      {{"v", 4, 16},
       {"min_degree", 0, 10},
       {"max_degree", 0, 15},
       {"min_edges", 0, 60},
       {"max_edges", 0, 120},
       {"max_clique", 2, 8},
       {"max_independent", 2, 8},
       {"chromatic_max", 2, 6},
       {"min_connectivity", 0, 6},
       {"min_girth", 3, 8},
       {"forbid_clique", 3, 8}},
      [](const Params& p) {
        GraphConstraintSet c;
        c.min_degree = param(p, "min_degree");
        c.max_degree = param(p, "max_degree");
        c.min_edges = param(p, "min_edges");
        c.max_edges = param(p, "max_edges");
        c.max_clique = param(p, "max_clique");
        c.max_independent = param(p, "max_independent");
        c.chromatic_max = param(p, "chromatic_max");
        c.min_connectivity = param(p, "min_connectivity");
        c.min_girth = param(p, "min_girth");
        c.forbid_clique = param(p, "forbid_clique");
        return c;
      },
      [](const Params& p) {
        return fmt(
            "Generate a graph with {v} vertices that has the following constraints:\n"
            "  - minimum degree at least {mind}\n"
            "  - maximum degree at most {maxd}\n"
            "  - minimum number of edges: {mine}\n"
            "  - maximum number of edges: {maxe}\n"
            "  - maximum clique size at most {mc}\n"
            "  - maximum independent set size at most {mi}\n"
            "  - chromatic number at most {chi}\n"
            "  - vertex-connectivity at least {conn}\n"
            "  - girth at least {g}\n"
            "  - free of $K_{fk}$ subgraphs\n\n{ret}",
            {{"v", istr(param(p, "v"))},
             {"mind", istr(param(p, "min_degree"))},
             {"maxd", istr(param(p, "max_degree"))},
             {"mine", istr(param(p, "min_edges"))},
             {"maxe", istr(param(p, "max_edges"))},
             {"mc", istr(param(p, "max_clique"))},
             {"mi", istr(param(p, "max_independent"))},
             {"chi", istr(param(p, "chromatic_max"))},
             {"conn", istr(param(p, "min_connectivity"))},
             {"g", istr(param(p, "min_girth"))},
             {"fk", istr(param(p, "forbid_clique"))},
             {"ret", graph_return_clause(param(p, "v"))}});
      });

  reg_pysms(
      "pysms_contains_cliques", {{"v", 4, 18}, {"cliques", 1, 6}, {"clique_size", 2, 8}},
      [](const Params& p) {
        GraphConstraintSet c;
        c.disjoint_cliques = std::make_pair(param(p, "cliques"), param(p, "clique_size"));
        return c;
      },
      [](const Params& p) {
        return fmt(
            "Generate a graph with {v} vertices that consists of exactly {c} vertex-disjoint "
            "clique(s), each of size {s}. Every vertex must belong to one of these cliques, and "
            "the only edges in the graph are those within these cliques.\n\n{ret}",
            {{"v", istr(param(p, "v"))},
             {"c", istr(param(p, "cliques"))},
             {"s", istr(param(p, "clique_size"))},
             {"ret", graph_return_clause(param(p, "v"))}});
      });

  reg_pysms(
      "pysms_degree_bounds", {{"v", 3, 20}, {"min_degree", 0, 12}, {"max_degree", 0, 19}},
      [](const Params& p) {
        GraphConstraintSet c;
        c.min_degree = param(p, "min_degree");
        c.max_degree = param(p, "max_degree");
        return c;
      },
      [](const Params& p) {
        return fmt(
            "Generate a graph with {v} vertices where every vertex has degree between {lo} and "
            "{hi}.\n\n{ret}",
            {{"v", istr(param(p, "v"))},
             {"lo", istr(param(p, "min_degree"))},
             {"hi", istr(param(p, "max_degree"))},
             {"ret", graph_return_clause(param(p, "v"))}});
      });

  reg_pysms(
      "pysms_girth_degree",
      {{"v", 4, 20}, {"min_girth", 3, 9}, {"min_degree", 0, 12}, {"max_degree", 0, 19}},
      [](const Params& p) {
        GraphConstraintSet c;
        c.min_girth = param(p, "min_girth");
        c.min_degree = param(p, "min_degree");
        c.max_degree = param(p, "max_degree");
        return c;
      },
      [](const Params& p) {
        return fmt(
            "Generate a graph with {v} vertices where the girth (shortest cycle) is at least {g} "
            "and every vertex has degree between {lo} and {hi}.\n\n{ret}",
            {{"v", istr(param(p, "v"))},
             {"g", istr(param(p, "min_girth"))},
             {"lo", istr(param(p, "min_degree"))},
             {"hi", istr(param(p, "max_degree"))},
             {"ret", graph_return_clause(param(p, "v"))}});
      });

  reg_pysms(
      "pysms_graph_builder",
      {{"v", 4, 16},
       {"min_degree", 0, 10},
       {"max_degree", 0, 15},
       {"min_edges", 0, 60},
       {"max_edges", 0, 120},
       {"chromatic_min", 2, 5},
       {"chromatic_max", 2, 6}},
      [](const Params& p) {
        GraphConstraintSet c;
        c.min_degree = param(p, "min_degree");
        c.max_degree = param(p, "max_degree");
        c.min_edges = param(p, "min_edges");
        c.max_edges = param(p, "max_edges");
        c.chromatic_min = param(p, "chromatic_min");
        c.chromatic_max = param(p, "chromatic_max");
        return c;
      },
      [](const Params& p) {
        return fmt(
            "Generate a graph with {v} vertices satisfying:\n"
            "  - minimum degree at least {mind}\n"
            "  - maximum degree at most {maxd}\n"
            "  - number of edges between {mine} and {maxe}\n"
            "  - chromatic number between {clo} and {chi}\n\n{ret}",
            {{"v", istr(param(p, "v"))},
             {"mind", istr(param(p, "min_degree"))},
             {"maxd", istr(param(p, "max_degree"))},
             {"mine", istr(param(p, "min_edges"))},
             {"maxe", istr(param(p, "max_edges"))},
             {"clo", istr(param(p, "chromatic_min"))},
             {"chi", istr(param(p, "chromatic_max"))},
             {"ret", graph_return_clause(param(p, "v"))}});
      });

  reg_pysms(
      "pysms_independent_connectivity",
      {{"v", 4, 16}, {"max_independent", 2, 8}, {"min_connectivity", 1, 6}},
      [](const Params& p) {
        GraphConstraintSet c;
        c.max_independent = param(p, "max_independent");
        c.min_connectivity = param(p, "min_connectivity");
        return c;
      },
      [](const Params& p) {
        return fmt(
            "Generate a graph with {v} vertices where the maximum independent set size is at "
            "most {a} and the vertex-connectivity is at least {k}.\n\n{ret}",
            {{"v", istr(param(p, "v"))},
             {"a", istr(param(p, "max_independent"))},
             {"k", istr(param(p, "min_connectivity"))},
             {"ret", graph_return_clause(param(p, "v"))}});
      });

  reg_pysms(
      "pysms_min_girth", {{"v", 3, 20}, {"min_girth", 3, 10}},
      [](const Params& p) {
        GraphConstraintSet c;
        c.min_girth = param(p, "min_girth");
        return c;
      },
      [](const Params& p) {
        return fmt(
            "Generate a graph with {v} vertices where the girth (shortest cycle length) is at "
            "least {g}.\n\n{ret}",
            {{"v", istr(param(p, "v"))},
             {"g", istr(param(p, "min_girth"))},
             {"ret", graph_return_clause(param(p, "v"))}});
      });

  reg_pysms(
      "pysms_mtf", {{"v", 3, 16}},
      [](const Params&) {
        GraphConstraintSet c;
        c.maximal_triangle_free = true;
        return c;
      },
      [](const Params& p) {
        return fmt("Generate a maximal triangle-free graph with {v} vertices.\n\n{ret}",
                   {{"v", istr(param(p, "v"))}, {"ret", graph_return_clause(param(p, "v"))}});
      });

  reg_pysms(
      "pysms_ramsey", {{"v", 3, 18}, {"clique_avoid", 3, 5}, {"indset_avoid", 3, 5}},
      [](const Params& p) {
        GraphConstraintSet c;
        c.ramsey = std::make_pair(param(p, "clique_avoid"), param(p, "indset_avoid"));
        return c;
      },
      [](const Params& p) {
        return fmt(
            "Generate a graph with {v} vertices that contains no clique of size {r} and no "
            "independent set of size {s}. (A Ramsey-witness graph: such graphs exist iff "
            "vertices < R(clique_avoid, indset_avoid).)\n\n{ret}",
            {{"v", istr(param(p, "v"))},
             {"r", istr(param(p, "clique_avoid"))},
             {"s", istr(param(p, "indset_avoid"))},
             {"ret", graph_return_clause(param(p, "v"))}});
      });

  reg_pysms(
      "pysms_min_connectivity", {{"v", 3, 16}, {"min_connectivity", 1, 6}},
      [](const Params& p) {
        GraphConstraintSet c;
        c.min_connectivity = param(p, "min_connectivity");
        return c;
      },
      [](const Params& p) {
        return fmt(
            "Generate a graph with {v} vertices where the vertex-connectivity is at least "
            "{k}.\n\n{ret}",
            {{"v", istr(param(p, "v"))},
             {"k", istr(param(p, "min_connectivity"))},
             {"ret", graph_return_clause(param(p, "v"))}});
      });

  reg_pysms(
      "pysms_min_degree", {{"v", 3, 20}, {"min_degree", 0, 12}},
      [](const Params& p) {
        GraphConstraintSet c;
        c.min_degree = param(p, "min_degree");
        return c;
      },
      [](const Params& p) {
        return fmt(
            "Generate a graph with {v} vertices where every vertex has degree at least "
            "{d}.\n\n{ret}",
            {{"v", istr(param(p, "v"))},
             {"d", istr(param(p, "min_degree"))},
             {"ret", graph_return_clause(param(p, "v"))}});
      });

  reg_pysms(
      "pysms_num_edges_bounds", {{"v", 3, 20}, {"min_edges", 0, 100}, {"max_edges", 0, 190}},
      [](const Params& p) {
        GraphConstraintSet c;
        c.min_edges = param(p, "min_edges");
        c.max_edges = param(p, "max_edges");
        return c;
      },
      [](const Params& p) {
        return fmt(
            "Generate a graph with {v} vertices where the number of edges is between {lo} and "
            "{hi}.\n\n{ret}",
            {{"v", istr(param(p, "v"))},
             {"lo", istr(param(p, "min_edges"))},
             {"hi", istr(param(p, "max_edges"))},
             {"ret", graph_return_clause(param(p, "v"))}});
      });
}

}  // namespace combench
