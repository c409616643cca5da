#pragma once

#include <span>
#include <vector>

#include "stad/graph.hpp"
#include "stad/types.hpp"

namespace stad {

/// Product-moment correlation in [-1, 1], single-pass running-means update.
/// Zero variance on either side returns 0 by convention, which keeps the
/// complete unit-distance graph (constant hops) scored instead of undefined.
double pearson(std::span<const double> a, std::span<const double> b);

/// Everything needed to score a candidate edge count: the reference condensed
/// distances, the pairs the correlation runs over, the spanning-tree edges,
/// and the sorted non-tree remainder.
class ObjectiveContext {
public:
  /// `pair_mask` is a condensed inclusion mask; empty means all pairs.
  ObjectiveContext(const DistanceMatrix& reference, std::vector<Edge> tree_edges,
                   SortedEdgeList sorted_non_tree,
                   std::vector<uint8_t> pair_mask = {}, int threads = 0);

  int vertex_count() const { return n_; }
  /// Largest admissible i; the optimizer domain is {0, ..., domain_max()}.
  int domain_max() const { return static_cast<int>(non_tree_.edges.size()); }
  const std::vector<Edge>& tree_edges() const { return tree_; }
  const SortedEdgeList& sorted_non_tree() const { return non_tree_; }

  /// Correlation between hop counts of U_i and the reference distances over
  /// the masked pairs. Pure: identical calls return bit-identical values.
  double evaluate(int i) const;

private:
  int n_ = 0;
  std::vector<double> reference_;
  std::vector<uint8_t> mask_;  // empty = all pairs
  std::vector<Edge> tree_;
  SortedEdgeList non_tree_;
  int threads_ = 0;
};

struct TracePoint {
  int i = 0;
  double r = 0.0;
};

/// Correlation as a function of edges added beyond the tree; i strictly
/// ascending, argmax is the first maximum.
struct CorrelationTrace {
  std::vector<TracePoint> points;
  std::size_t argmax = 0;

  const TracePoint& best() const { return points[argmax]; }
};

/// Evaluate i = 0, stride, 2*stride, ..., always including domain_max().
CorrelationTrace correlation_trace(const ObjectiveContext& ctx, int stride = 1);

}  // namespace stad
