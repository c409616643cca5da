#include "stad/objective.hpp"

#include <cmath>

namespace stad {

namespace {

// Welford-style accumulator; summation order is fixed by the caller.
struct Corr {
  long long count = 0;
  double mean_a = 0.0, mean_b = 0.0;
  double m2a = 0.0, m2b = 0.0, cab = 0.0;

  void add(double a, double b) {
    ++count;
    const double da = a - mean_a;
    mean_a += da / count;
    const double db = b - mean_b;
    mean_b += db / count;
    m2a += da * (a - mean_a);
    m2b += db * (b - mean_b);
    cab += da * (b - mean_b);
  }
  double value() const {
    if (m2a <= 0.0 || m2b <= 0.0) return 0.0;
    const double r = cab / std::sqrt(m2a * m2b);
    return r > 1.0 ? 1.0 : (r < -1.0 ? -1.0 : r);
  }
};

}  // namespace

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw ConfigError("pearson: length mismatch (" + std::to_string(a.size()) +
                      " vs " + std::to_string(b.size()) + ")");
  if (a.size() < 3)
    throw ConfigError("pearson needs at least 3 values");
  Corr acc;
  for (std::size_t k = 0; k < a.size(); ++k) acc.add(a[k], b[k]);
  return acc.value();
}

ObjectiveContext::ObjectiveContext(const DistanceMatrix& reference,
                                   std::vector<Edge> tree_edges,
                                   SortedEdgeList sorted_non_tree,
                                   std::vector<uint8_t> pair_mask, int threads)
    : n_(reference.size()),
      reference_(reference.condensed()),
      mask_(std::move(pair_mask)),
      tree_(std::move(tree_edges)),
      non_tree_(std::move(sorted_non_tree)),
      threads_(threads) {
  if (!mask_.empty() && mask_.size() != reference_.size())
    throw ConfigError("pair mask length does not match the distance matrix");
  std::size_t pairs = mask_.empty() ? reference_.size() : 0;
  if (!mask_.empty())
    for (uint8_t m : mask_)
      if (m) ++pairs;
  if (pairs < 3)
    throw ConfigError("correlation needs at least 3 pairs, got " +
                      std::to_string(pairs));
}

double ObjectiveContext::evaluate(int i) const {
  const UnitGraph g = build_unit_graph(tree_, non_tree_, i);
  const HopMatrix h = bfs_apsp(g, threads_);
  Corr acc;
  if (mask_.empty()) {
    for (std::size_t k = 0; k < reference_.size(); ++k)
      acc.add(static_cast<double>(h.hops[k]), reference_[k]);
  } else {
    for (std::size_t k = 0; k < reference_.size(); ++k)
      if (mask_[k]) acc.add(static_cast<double>(h.hops[k]), reference_[k]);
  }
  return acc.value();
}

CorrelationTrace correlation_trace(const ObjectiveContext& ctx, int stride) {
  if (stride < 1) throw ConfigError("stride must be >= 1");
  CorrelationTrace trace;
  const int last = ctx.domain_max();
  for (int i = 0;; i += stride) {
    if (i >= last) i = last;
    trace.points.push_back({i, ctx.evaluate(i)});
    if (i == last) break;
  }
  for (std::size_t k = 1; k < trace.points.size(); ++k)
    if (trace.points[k].r > trace.points[trace.argmax].r) trace.argmax = k;
  return trace;
}

}  // namespace stad
