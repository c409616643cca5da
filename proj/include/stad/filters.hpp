#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stad/community.hpp"
#include "stad/graph.hpp"
#include "stad/types.hpp"

namespace stad {

enum class FilterStrategy { equal_width, equal_frequency };

FilterStrategy filter_strategy_from_string(const std::string& name);
std::string to_string(FilterStrategy s);

struct FilterDimension {
  std::vector<double> values;  // one per point; reals or pre-assigned indices
  int intervals = 1;           // r
  bool cyclic = false;
};

/// One or two dimensions; each discretized independently.
struct FilterSpec {
  std::vector<FilterDimension> dims;
  FilterStrategy strategy = FilterStrategy::equal_width;
};

/// Per-point interval assignment plus the adjacency relation over occupied
/// intervals. Empty intervals are omitted; in 2D they transitively bridge
/// their occupied neighbors (8-neighborhood, wrapping on cyclic dimensions).
struct FilterAssignment {
  int n = 0;
  int dims = 1;
  std::array<int, 2> grid = {1, 1};  // intervals per dimension (1 when unused)
  std::array<bool, 2> cyclic = {false, false};
  std::vector<std::array<int, 2>> interval_of;  // raw (b0, b1) per vertex
  std::vector<int> cell_of;                     // vertex -> occupied cell id
  std::vector<std::array<int, 2>> cells;        // occupied id -> coordinates
  std::vector<uint8_t> adjacency;               // k*k symmetric, irreflexive
  std::vector<std::string> warnings;

  int cell_count() const { return static_cast<int>(cells.size()); }
  bool cells_adjacent(int a, int b) const {
    return adjacency[static_cast<std::size_t>(a) * cells.size() + b] != 0;
  }
};

FilterAssignment discretize(const FilterSpec& spec);

enum class EdgeClass { intra, inter_adjacent, inter_nonadjacent };

inline EdgeClass classify_edge(int a, int b, const FilterAssignment& fa) {
  if (fa.cell_of[a] == fa.cell_of[b]) return EdgeClass::intra;
  return fa.cells_adjacent(fa.cell_of[a], fa.cell_of[b])
             ? EdgeClass::inter_adjacent
             : EdgeClass::inter_nonadjacent;
}

/// The original matrix with inter-nonadjacent pairs masked out.
struct ReducedDistanceMatrix {
  DistanceMatrix base;
  std::vector<uint8_t> retained;  // condensed inclusion mask
  std::size_t retained_count = 0;
};

/// Throws DataError when the retained graph cannot span all points.
ReducedDistanceMatrix reduce_matrix(const DistanceMatrix& d,
                                    const FilterAssignment& fa);

using CommunityDetector = std::function<CommunityPartition(const AffinityGraph&)>;

struct FilterMstResult {
  std::vector<Edge> step1_edges;      // per-interval MSTs + adjacent connectors
  std::vector<Edge> validated_edges;  // intra-edges kept after detection
  std::vector<Edge> final_edges;      // spanning tree over retained pairs
  CommunityPartition partition;
};

/// Filter-aware spanning tree: per-interval MSTs joined by inter-adjacent
/// edges, intra-edges validated by community detection on the original
/// distances, then cheapest retained edges restore a single component.
/// The default detector is walktrap with walk length 4.
FilterMstResult filter_mst(const ReducedDistanceMatrix& rd,
                           const FilterAssignment& fa,
                           const CommunityDetector& detector = {});

}  // namespace stad
