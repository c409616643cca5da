#pragma once

#include <cstdint>

#include "stad/objective.hpp"

namespace stad {

struct AnnealSchedule {
  /// 0 = calibrate from a warm-up probe so early proposals accept at >= 0.8.
  double initial_temperature = 0.0;
  double cooling_ratio = 0.9;
  int steps_per_temperature = 10;
  /// Distinct objective evaluations allowed; memoized revisits are free.
  int evaluation_budget = 250;
  std::uint64_t seed = 17;
};

struct OptimizationResult {
  int best_i = 0;
  double best_r = 0.0;
  int evaluations = 0;
  /// Every evaluated point, ascending by i.
  CorrelationTrace trace;
  std::uint64_t seed = 0;
  /// Temperature actually used (calibrated or as configured).
  double initial_temperature = 0.0;
};

/// Simulated annealing over the edge-count domain {0, ..., domain_max}.
/// Metropolis acceptance on -r; the candidate step is Gaussian in index space
/// with sigma shrinking alongside the temperature. The objective is
/// deterministic in i, so evaluations are memoized, and when the budget
/// covers the whole domain the search degenerates to an exhaustive sweep.
/// Returns the best state ever seen, reproducible from the seed.
OptimizationResult anneal(const ObjectiveContext& ctx,
                          const AnnealSchedule& schedule);

/// Exact argmax by evaluating every i; smallest i wins ties. Refuses domains
/// larger than `evaluation_cap`.
OptimizationResult brute_force_optimum(const ObjectiveContext& ctx,
                                       int evaluation_cap = 5000);

}  // namespace stad
