#include "stad/network.hpp"

namespace stad {

StadNetwork annotate(const UnitGraph& u, const DistanceMatrix& d,
                     std::map<std::string, std::string> meta,
                     std::vector<std::string> labels) {
  if (u.vertex_count() != d.size())
    throw ConfigError("unit graph and distance matrix sizes differ");
  StadNetwork net;
  net.n = u.vertex_count();
  if (labels.empty()) {
    net.labels.reserve(net.n);
    for (int v = 0; v < net.n; ++v) net.labels.push_back(std::to_string(v));
  } else {
    if (static_cast<int>(labels.size()) != net.n)
      throw ConfigError("label count does not match vertex count");
    net.labels = std::move(labels);
  }
  net.edges.reserve(u.edges().size());
  for (const Edge& e : u.edges()) net.edges.push_back({e.u, e.v, d(e.u, e.v)});
  net.meta = std::move(meta);
  return net;
}

}  // namespace stad
