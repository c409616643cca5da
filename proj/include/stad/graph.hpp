#pragma once

#include <cstdint>
#include <vector>

#include "stad/types.hpp"

namespace stad {

/// All candidate edges ascending by (w, u, v). In filter mode the retained
/// mask removes inter-nonadjacent pairs before sorting.
struct SortedEdgeList {
  int n = 0;
  std::vector<Edge> edges;
};

/// Unweighted simple graph whose hop metric approximates the input distances.
/// Always contains the spanning-tree edge set, so it is connected.
class UnitGraph {
public:
  UnitGraph(int n, std::vector<Edge> edges, int tree_edge_count,
            int extra_edge_count);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int tree_edge_count() const { return tree_edge_count_; }
  int extra_edge_count() const { return extra_edge_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const int32_t> neighbors(int v) const {
    return {neighbors_.data() + offsets_[v],
            static_cast<std::size_t>(offsets_[v + 1] - offsets_[v])};
  }

private:
  int n_ = 0;
  std::vector<Edge> edges_;
  int tree_edge_count_ = 0;
  int extra_edge_count_ = 0;
  std::vector<int32_t> offsets_;    // CSR over both edge directions
  std::vector<int32_t> neighbors_;
};

/// Condensed matrix of shortest-path edge counts.
struct HopMatrix {
  int n = 0;
  std::vector<int32_t> hops;

  int32_t operator()(int i, int j) const {
    return i == j ? 0 : hops[condensed_index(n, i, j)];
  }
};

/// Deterministic total edge order. `retained`, when given, is a condensed
/// pair-inclusion mask; masked-out pairs are absent from the output.
SortedEdgeList sort_edges(const DistanceMatrix& d,
                          const std::vector<uint8_t>* retained = nullptr);

/// Kruskal over the sorted list with union-find: exactly n-1 edges, spanning,
/// minimal total weight, canonical under the (w, u, v) tie rule. Throws
/// DataError naming the separated components when the input is disconnected.
std::vector<Edge> mst(const SortedEdgeList& edges);

/// The sorted list minus the tree edges, order preserved.
SortedEdgeList non_tree_edges(const SortedEdgeList& sorted,
                              const std::vector<Edge>& tree);

/// Adjacency = tree edges plus the first `extra` non-tree edges in sorted
/// order; build(i) is a subgraph of build(i+1).
UnitGraph build_unit_graph(const std::vector<Edge>& tree_edges,
                           const SortedEdgeList& sorted_non_tree, int extra);

/// One BFS per source. Sources are independent, so they may be fanned out
/// over `threads` workers; the result never depends on scheduling. Dense
/// graphs switch to a bitset frontier internally (same BFS, word-parallel).
HopMatrix bfs_apsp(const UnitGraph& g, int threads = 0);

namespace detail {
// Both strategies exposed for cross-checking; bfs_apsp dispatches on density.
HopMatrix bfs_apsp_queue(const UnitGraph& g, int threads);
HopMatrix bfs_apsp_bitset(const UnitGraph& g, int threads);
}  // namespace detail

}  // namespace stad
