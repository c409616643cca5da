#include "stad/pipeline.hpp"

namespace stad {

MstMode mst_mode_from_string(const std::string& name) {
  if (name == "classical") return MstMode::classical;
  if (name == "filter-aware") return MstMode::filter_aware;
  throw ConfigError("unknown MST mode: " + name);
}

std::string to_string(MstMode mode) {
  return mode == MstMode::classical ? "classical" : "filter-aware";
}

CorrelationTarget correlation_target_from_string(const std::string& name) {
  if (name == "reduced") return CorrelationTarget::reduced;
  if (name == "full") return CorrelationTarget::full;
  throw ConfigError("unknown correlation target: " + name);
}

std::string to_string(CorrelationTarget target) {
  return target == CorrelationTarget::reduced ? "reduced" : "full";
}

PipelineSetup make_setup(const DistanceMatrix& d,
                         const std::optional<FilterSpec>& filter,
                         const PipelineOptions& options) {
  if (options.mst_mode == MstMode::filter_aware && !filter)
    throw ConfigError("filter-aware MST mode requires a filter");

  std::optional<FilterAssignment> assignment;
  std::optional<ReducedDistanceMatrix> reduced;
  if (filter) {
    assignment = discretize(*filter);
    reduced = reduce_matrix(d, *assignment);
  }

  const SortedEdgeList sorted =
      sort_edges(d, reduced ? &reduced->retained : nullptr);

  std::vector<Edge> tree;
  std::optional<FilterMstResult> filter_tree;
  if (options.mst_mode == MstMode::filter_aware) {
    filter_tree = filter_mst(*reduced, *assignment);
    tree = filter_tree->final_edges;
  } else {
    tree = mst(sorted);
  }

  SortedEdgeList rest = non_tree_edges(sorted, tree);
  std::vector<uint8_t> pair_mask;
  if (reduced && options.correlate_against == CorrelationTarget::reduced)
    pair_mask = reduced->retained;

  ObjectiveContext context(d, tree, std::move(rest), std::move(pair_mask),
                           options.threads);
  return {std::move(context), std::move(tree), std::move(assignment),
          std::move(filter_tree)};
}

PipelineResult run_pipeline(const DistanceMatrix& d,
                            const std::optional<FilterSpec>& filter,
                            const PipelineOptions& options,
                            std::map<std::string, std::string> meta,
                            std::vector<std::string> labels) {
  PipelineSetup setup = make_setup(d, filter, options);
  OptimizationResult optimum = anneal(setup.context, options.schedule);

  double tree_r = 0.0;
  for (const TracePoint& p : optimum.trace.points)
    if (p.i == 0) {
      tree_r = p.r;
      break;
    }

  const UnitGraph graph = build_unit_graph(
      setup.tree_edges, setup.context.sorted_non_tree(), optimum.best_i);
  StadNetwork net = annotate(graph, d, std::move(meta), std::move(labels));
  net.correlation = optimum.best_r;
  if (setup.assignment) {
    const FilterAssignment& fa = *setup.assignment;
    for (int dim = 0; dim < fa.dims; ++dim) {
      auto& column = net.node_attrs["filter_index_" + std::to_string(dim + 1)];
      column.resize(net.n);
      for (int v = 0; v < net.n; ++v)
        column[v] = static_cast<double>(fa.interval_of[v][dim]);
    }
  }

  PipelineResult result;
  result.network = std::move(net);
  result.optimum = std::move(optimum);
  result.tree_correlation = tree_r;
  result.tree_edges = std::move(setup.tree_edges);
  result.assignment = std::move(setup.assignment);
  result.filter_tree = std::move(setup.filter_tree);
  return result;
}

}  // namespace stad
