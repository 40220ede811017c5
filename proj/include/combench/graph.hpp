#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "combench/rng.hpp"

namespace combench {

// Simple undirected graph: vertices 0..n-1, edges stored as (u, v) with u < v,
// no self-loops, no duplicates.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  static Graph empty(int n) { return Graph{n, {}}; }
  // Normalizes pair order, sorts lexicographically, rejects loops/dups/range.
  static std::optional<Graph> from_edges(int n, std::vector<std::pair<int, int>> edges);
  // Parses a flat (u0,v0,u1,v1,...) sequence.
  static std::optional<Graph> from_flat(int n, const std::vector<int>& flat);

  std::vector<int> to_flat() const;
  std::vector<std::vector<bool>> adjacency() const;
  std::vector<int> degrees() const;
  size_t edge_count() const { return edges.size(); }
  bool has_edge(int u, int v) const;

  // One "(u, v)" pair per line, lexicographic order.
  std::string render_edge_list() const;
};

// Erdos-Renyi G(n, m): exactly m edges sampled without replacement.
Graph sample_gnm(int n, int m, Rng& rng);

// --- exact graph predicates --------------------------------------------------

// Length of the shortest cycle; nullopt for forests.
std::optional<int> girth(const Graph& g);
bool has_clique_of_size(const Graph& g, int k);
bool has_independent_set_of_size(const Graph& g, int k);
// Existence of a proper k-coloring, decided by a coloring sub-model and the
// embedded solver; exact.
bool is_k_colorable(const Graph& g, int k);
// Minimum vertex connectivity (Menger via max-flow on the vertex-split graph).
// For complete graphs this is n-1 by convention.
int vertex_connectivity(const Graph& g);
bool is_connected(const Graph& g);
bool is_triangle_free(const Graph& g);
// Triangle-free and adding any non-edge would create a triangle.
bool is_maximal_triangle_free(const Graph& g);
// Exactly `count` vertex-disjoint cliques of size `size`, no other edges.
bool is_disjoint_clique_union(const Graph& g, int count, int size);

}  // namespace combench
