#pragma once

#include <vector>

#include "stad/types.hpp"

namespace stad {

struct WeightedEdge {
  int u = 0;
  int v = 0;
  double w = 0.0;  // affinity, strictly positive
};

/// Simple undirected graph with positive edge affinities (larger = closer).
struct AffinityGraph {
  int n = 0;
  std::vector<WeightedEdge> edges;
};

struct CommunityPartition {
  std::vector<int> community_of;  // ids contiguous from 0
  int count = 0;
};

/// Walktrap wants affinities; the pipeline has distances. The linear
/// inversion (d_max - d + eps) / d_max is bounded, strictly positive and
/// order-reversing. All-zero distances map to uniform affinity 1.
AffinityGraph distances_to_affinities(int n,
                                      const std::vector<Edge>& distance_edges);

/// Weighted Newman modularity of a labeled partition (labels need not be
/// contiguous).
double modularity(const AffinityGraph& g, const std::vector<int>& community_of);

/// Random-walk community detection: agglomerative Ward merging of t-step
/// walk probability profiles, restricted to adjacent communities; the
/// returned partition is the merge step of maximum modularity, preferring
/// the finer partition on ties. Deterministic given input order.
CommunityPartition walktrap(const AffinityGraph& g, int walk_length = 4);

}  // namespace stad
