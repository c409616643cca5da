#pragma once

#include <map>
#include <string>
#include <vector>

#include "stad/graph.hpp"
#include "stad/types.hpp"

namespace stad {

/// Final result: the chosen unit-distance graph re-annotated with original
/// distances, plus labels, per-node attributes for styling, the achieved
/// correlation and a provenance block.
struct StadNetwork {
  int n = 0;
  std::vector<std::string> labels;                       // size n
  std::map<std::string, std::vector<double>> node_attrs; // per-node columns
  std::vector<Edge> edges;                               // w = original distance
  double correlation = 0.0;
  std::map<std::string, std::string> meta;  // seed, schedule, filter, version...
};

/// Attach original distances as edge weights; topology is untouched.
StadNetwork annotate(const UnitGraph& u, const DistanceMatrix& d,
                     std::map<std::string, std::string> meta = {},
                     std::vector<std::string> labels = {});

}  // namespace stad
