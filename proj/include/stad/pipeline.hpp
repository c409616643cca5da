#pragma once

#include <map>
#include <optional>
#include <string>

#include "stad/filters.hpp"
#include "stad/network.hpp"
#include "stad/optimizer.hpp"

namespace stad {

enum class MstMode { classical, filter_aware };
enum class CorrelationTarget { reduced, full };

MstMode mst_mode_from_string(const std::string& name);
std::string to_string(MstMode mode);
CorrelationTarget correlation_target_from_string(const std::string& name);
std::string to_string(CorrelationTarget target);

struct PipelineOptions {
  MstMode mst_mode = MstMode::classical;
  /// In filter mode, correlate against the retained pairs of the reduced
  /// matrix (default) or against the full matrix for comparison.
  CorrelationTarget correlate_against = CorrelationTarget::reduced;
  AnnealSchedule schedule;
  int threads = 0;
};

/// Produces the objective context for a run: discretize/reduce when a filter
/// is present, sort edges, build the spanning tree in the requested mode.
struct PipelineSetup {
  ObjectiveContext context;
  std::vector<Edge> tree_edges;
  std::optional<FilterAssignment> assignment;
  std::optional<FilterMstResult> filter_tree;
};

PipelineSetup make_setup(const DistanceMatrix& d,
                         const std::optional<FilterSpec>& filter,
                         const PipelineOptions& options);

struct PipelineResult {
  StadNetwork network;
  OptimizationResult optimum;
  double tree_correlation = 0.0;  // r at i = 0
  std::vector<Edge> tree_edges;
  std::optional<FilterAssignment> assignment;
  std::optional<FilterMstResult> filter_tree;
};

/// Full run: setup, annealing, final network annotated with original
/// distances. Filter interval indices are attached as node attributes.
PipelineResult run_pipeline(const DistanceMatrix& d,
                            const std::optional<FilterSpec>& filter,
                            const PipelineOptions& options,
                            std::map<std::string, std::string> meta = {},
                            std::vector<std::string> labels = {});

}  // namespace stad
