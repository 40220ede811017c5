#include "combench/graph.hpp"

#include <algorithm>
#include <climits>
#include <queue>
#include <set>
#include <sstream>

#include "combench/cnf.hpp"
#include "combench/model.hpp"
#include "combench/solver.hpp"

namespace combench {

std::optional<Graph> Graph::from_edges(int n, std::vector<std::pair<int, int>> edges) {
  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= n || u == v) return std::nullopt;
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) return std::nullopt;
  return Graph{n, std::move(edges)};
}

std::optional<Graph> Graph::from_flat(int n, const std::vector<int>& flat) {
  if (flat.size() % 2 != 0) return std::nullopt;
  std::vector<std::pair<int, int>> edges;
  for (size_t i = 0; i < flat.size(); i += 2) edges.emplace_back(flat[i], flat[i + 1]);
  return from_edges(n, std::move(edges));
}

std::vector<int> Graph::to_flat() const {
  std::vector<int> out;
  out.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) {
    out.push_back(u);
    out.push_back(v);
  }
  return out;
}

std::vector<std::vector<bool>> Graph::adjacency() const {
  std::vector<std::vector<bool>> adj(static_cast<size_t>(n),
                                     std::vector<bool>(static_cast<size_t>(n), false));
  for (const auto& [u, v] : edges) adj[size_t(u)][size_t(v)] = adj[size_t(v)][size_t(u)] = true;
  return adj;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(static_cast<size_t>(n), 0);
  for (const auto& [u, v] : edges) {
    ++deg[size_t(u)];
    ++deg[size_t(v)];
  }
  return deg;
}

bool Graph::has_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

std::string Graph::render_edge_list() const {
  std::ostringstream out;
  for (size_t i = 0; i < edges.size(); ++i) {
    if (i) out << '\n';
    out << '(' << edges[i].first << ", " << edges[i].second << ')';
  }
  return out.str();
}

Graph sample_gnm(int n, int m, Rng& rng) {
  std::vector<std::pair<int, int>> all;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) all.emplace_back(u, v);
  m = std::min<int>(m, static_cast<int>(all.size()));
  rng.shuffle(all);
  all.resize(static_cast<size_t>(m));
  std::sort(all.begin(), all.end());
  return Graph{n, std::move(all)};
}

std::optional<int> girth(const Graph& g) {
  // BFS from each vertex; a cross or back edge at depths d1, d2 closes a cycle
  // of length d1 + d2 + 1. Exact for the shortest cycle overall.
  int best = INT_MAX;
  std::vector<std::vector<int>> adj(static_cast<size_t>(g.n));
  for (const auto& [u, v] : g.edges) {
    adj[size_t(u)].push_back(v);
    adj[size_t(v)].push_back(u);
  }
  for (int src = 0; src < g.n; ++src) {
    std::vector<int> dist(static_cast<size_t>(g.n), -1);
    std::vector<int> parent(static_cast<size_t>(g.n), -1);
    std::queue<int> q;
    dist[size_t(src)] = 0;
    q.push(src);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : adj[size_t(u)]) {
        if (dist[size_t(v)] == -1) {
          dist[size_t(v)] = dist[size_t(u)] + 1;
          parent[size_t(v)] = u;
          q.push(v);
        } else if (v != parent[size_t(u)]) {
          best = std::min(best, dist[size_t(u)] + dist[size_t(v)] + 1);
        }
      }
    }
  }
  if (best == INT_MAX) return std::nullopt;
  return best;
}

namespace {

bool clique_search(const std::vector<std::vector<bool>>& adj, std::vector<int>& cand,
                   size_t start, int need) {
  if (need == 0) return true;
  for (size_t i = start; i < cand.size(); ++i) {
    if (static_cast<int>(cand.size() - i) < need) return false;
    int v = cand[i];
    std::vector<int> next;
    for (size_t j = i + 1; j < cand.size(); ++j)
      if (adj[size_t(v)][size_t(cand[j])]) next.push_back(cand[j]);
    if (static_cast<int>(next.size()) >= need - 1 && clique_search(adj, next, 0, need - 1))
      return true;
  }
  return false;
}

}  // namespace

bool has_clique_of_size(const Graph& g, int k) {
  if (k <= 0) return true;
  if (k == 1) return g.n >= 1;
  auto adj = g.adjacency();
  std::vector<int> all;
  for (int v = 0; v < g.n; ++v) all.push_back(v);
  return clique_search(adj, all, 0, k);
}

bool has_independent_set_of_size(const Graph& g, int k) {
  Graph comp;
  comp.n = g.n;
  auto adj = g.adjacency();
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v)
      if (!adj[size_t(u)][size_t(v)]) comp.edges.emplace_back(u, v);
  return has_clique_of_size(comp, k);
}

bool is_k_colorable(const Graph& g, int k) {
  if (g.n == 0) return true;
  if (k <= 0) return g.n == 0;
  ConstraintModel m;
  std::vector<VarId> col;
  for (int v = 0; v < g.n; ++v) col.push_back(m.add_var("c" + std::to_string(v), 0, k - 1));
  for (const auto& [u, v] : g.edges) m.add(NotEqualOffset{col[size_t(u)], col[size_t(v)], 0});
  auto compiled = compile_to_cnf(m);
  auto r = solve(SolverHandle::embedded(60.0), compiled.cnf);
  return r.status == SolveStatus::Sat;
}

namespace {

// Max-flow (unit capacities, BFS augmenting) on the vertex-split digraph,
// excluding s and t from splitting. Returns min vertex cut between s and t.
int vertex_cut(const Graph& g, int s, int t) {
  int n = g.n;
  // node 2v = in, 2v+1 = out
  int N = 2 * n;
  std::vector<std::vector<int>> cap(static_cast<size_t>(N), std::vector<int>(size_t(N), 0));
  for (int v = 0; v < n; ++v) cap[size_t(2 * v)][size_t(2 * v + 1)] = (v == s || v == t) ? n : 1;
  for (const auto& [u, v] : g.edges) {
    cap[size_t(2 * u + 1)][size_t(2 * v)] = n;
    cap[size_t(2 * v + 1)][size_t(2 * u)] = n;
  }
  int source = 2 * s + 1, sink = 2 * t;
  int flow = 0;
  for (;;) {
    std::vector<int> prev(static_cast<size_t>(N), -1);
    std::queue<int> q;
    q.push(source);
    prev[size_t(source)] = source;
    while (!q.empty() && prev[size_t(sink)] == -1) {
      int u = q.front();
      q.pop();
      for (int v = 0; v < N; ++v)
        if (prev[size_t(v)] == -1 && cap[size_t(u)][size_t(v)] > 0) {
          prev[size_t(v)] = u;
          q.push(v);
        }
    }
    if (prev[size_t(sink)] == -1) break;
    for (int v = sink; v != source; v = prev[size_t(v)]) {
      int u = prev[size_t(v)];
      --cap[size_t(u)][size_t(v)];
      ++cap[size_t(v)][size_t(u)];
    }
    ++flow;
    if (flow > n) break;
  }
  return flow;
}

}  // namespace

int vertex_connectivity(const Graph& g) {
  if (g.n <= 1) return 0;
  auto adj = g.adjacency();
  bool complete = true;
  for (int u = 0; u < g.n && complete; ++u)
    for (int v = u + 1; v < g.n; ++v)
      if (!adj[size_t(u)][size_t(v)]) {
        complete = false;
        break;
      }
  if (complete) return g.n - 1;
  int best = INT_MAX;
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v)
      if (!adj[size_t(u)][size_t(v)]) best = std::min(best, vertex_cut(g, u, v));
  return best;
}

bool is_connected(const Graph& g) {
  if (g.n <= 1) return true;
  std::vector<std::vector<int>> adj(static_cast<size_t>(g.n));
  for (const auto& [u, v] : g.edges) {
    adj[size_t(u)].push_back(v);
    adj[size_t(v)].push_back(u);
  }
  std::vector<bool> seen(static_cast<size_t>(g.n), false);
  std::queue<int> q;
  q.push(0);
  seen[0] = true;
  int count = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : adj[size_t(u)])
      if (!seen[size_t(v)]) {
        seen[size_t(v)] = true;
        ++count;
        q.push(v);
      }
  }
  return count == g.n;
}

bool is_triangle_free(const Graph& g) { return !has_clique_of_size(g, 3); }

bool is_maximal_triangle_free(const Graph& g) {
  if (!is_triangle_free(g)) return false;
  auto adj = g.adjacency();
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v) {
      if (adj[size_t(u)][size_t(v)]) continue;
      bool creates = false;
      for (int w = 0; w < g.n; ++w)
        if (w != u && w != v && adj[size_t(u)][size_t(w)] && adj[size_t(v)][size_t(w)]) {
          creates = true;
          break;
        }
      if (!creates) return false;
    }
  return true;
}

bool is_disjoint_clique_union(const Graph& g, int count, int size) {
  if (static_cast<long long>(count) * size != g.n) return false;
  // components must all be cliques of the given size
  std::vector<std::vector<int>> adj(static_cast<size_t>(g.n));
  for (const auto& [u, v] : g.edges) {
    adj[size_t(u)].push_back(v);
    adj[size_t(v)].push_back(u);
  }
  std::vector<int> comp(static_cast<size_t>(g.n), -1);
  int ncomp = 0;
  for (int s = 0; s < g.n; ++s) {
    if (comp[size_t(s)] != -1) continue;
    std::queue<int> q;
    q.push(s);
    comp[size_t(s)] = ncomp;
    std::vector<int> members{s};
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : adj[size_t(u)])
        if (comp[size_t(v)] == -1) {
          comp[size_t(v)] = ncomp;
          members.push_back(v);
          q.push(v);
        }
    }
    if (static_cast<int>(members.size()) != size) return false;
    for (int u : members)
      if (static_cast<int>(adj[size_t(u)].size()) != size - 1) return false;
    ++ncomp;
  }
  return ncomp == count;
}

}  // namespace combench
