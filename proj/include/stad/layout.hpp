#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "stad/network.hpp"

namespace stad {

struct LayoutResult {
  std::vector<std::array<double, 2>> pos;
  /// Stress after each accepted descent step; nonincreasing by construction.
  std::vector<double> stress_history;
};

/// Stress-minimizing 2D layout: target separations are the weighted graph
/// geodesics (edge weights = original distances), descended from a seeded
/// random circle with a monotone line search. Deterministic per seed.
LayoutResult layout(const StadNetwork& net, std::uint64_t seed,
                    int iterations = 300);

}  // namespace stad
