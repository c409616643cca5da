#pragma once

#include <string>

#include "stad/types.hpp"

namespace stad {

enum class Metric { euclidean, manhattan, cosine };

Metric metric_from_string(const std::string& name);
std::string to_string(Metric metric);

/// Pairwise distances under the chosen metric. Cosine is dissimilarity,
/// 1 - cosine similarity; zero-norm rows are rejected under it. Each pair is
/// accumulated in a fixed column order, so results do not depend on how the
/// work is scheduled.
DistanceMatrix compute_distances(const PointCloud& cloud,
                                 Metric metric = Metric::euclidean);

}  // namespace stad
