#include "stad/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>

namespace stad {

namespace {

// Weighted geodesics between all pairs, Dijkstra per source.
std::vector<double> weighted_geodesics(const StadNetwork& net) {
  const int n = net.n;
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const Edge& e : net.edges) {
    adj[e.u].push_back({e.v, e.w});
    adj[e.v].push_back({e.u, e.w});
  }
  std::vector<double> out(condensed_size(n), 0.0);
  std::vector<double> dist(n);
  using Item = std::pair<double, int>;
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[s] = 0.0;
    heap.push({0.0, s});
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u]) continue;
      for (const auto& [v, w] : adj[u]) {
        const double nd = d + w;
        if (nd < dist[v]) {
          dist[v] = nd;
          heap.push({nd, v});
        }
      }
    }
    for (int t = s + 1; t < n; ++t) {
      if (!std::isfinite(dist[t]))
        throw DataError("network is disconnected; cannot lay it out");
      out[condensed_index(n, s, t)] = dist[t];
    }
  }
  return out;
}

double stress_of(const std::vector<std::array<double, 2>>& pos,
                 const std::vector<double>& target,
                 const std::vector<double>& weight, int n) {
  double s = 0.0;
  std::size_t k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++k) {
      const double dx = pos[i][0] - pos[j][0];
      const double dy = pos[i][1] - pos[j][1];
      const double d = std::sqrt(dx * dx + dy * dy);
      const double e = d - target[k];
      s += weight[k] * e * e;
    }
  return s;
}

}  // namespace

LayoutResult layout(const StadNetwork& net, std::uint64_t seed, int iterations) {
  const int n = net.n;
  if (n < 1) throw ConfigError("empty network");
  LayoutResult res;
  if (n == 1) {
    res.pos = {{0.0, 0.0}};
    return res;
  }

  const std::vector<double> target = weighted_geodesics(net);
  double scale = 0.0;
  for (double t : target) scale = std::max(scale, t);
  if (scale == 0.0) scale = 1.0;

  // Kamada-Kawai weighting 1/d^2; coincident points get a capped weight.
  std::vector<double> weight(target.size());
  const double floor = 1e-9 * scale;
  for (std::size_t k = 0; k < target.size(); ++k) {
    const double d = std::max(target[k], floor);
    weight[k] = 1.0 / (d * d);
  }

  std::mt19937_64 rng(seed);
  auto uniform = [&] { return (rng() >> 11) * 0x1.0p-53; };
  res.pos.resize(n);
  const double radius = scale / 2.0;
  for (int v = 0; v < n; ++v) {
    const double angle = 2.0 * M_PI * uniform();
    const double rad = radius * (0.5 + 0.5 * uniform());
    res.pos[v] = {rad * std::cos(angle), rad * std::sin(angle)};
  }

  // Localized stress majorization: each point moves to the minimizer of its
  // majorizing function, so a sweep never increases the stress. A sweep that
  // rounds upward in floating point is reverted and descent stops.
  const double tiny = 1e-12 * scale;
  res.stress_history.push_back(stress_of(res.pos, target, weight, n));
  std::vector<std::array<double, 2>> before(n);
  for (int it = 0; it < iterations; ++it) {
    before = res.pos;
    for (int i = 0; i < n; ++i) {
      double num_x = 0.0, num_y = 0.0, den = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const std::size_t k = condensed_index(n, i, j);
        const double w = weight[k];
        const double dx = res.pos[i][0] - res.pos[j][0];
        const double dy = res.pos[i][1] - res.pos[j][1];
        const double dist = std::max(std::sqrt(dx * dx + dy * dy), tiny);
        const double ratio = target[k] / dist;
        num_x += w * (res.pos[j][0] + ratio * dx);
        num_y += w * (res.pos[j][1] + ratio * dy);
        den += w;
      }
      res.pos[i] = {num_x / den, num_y / den};
    }
    const double stress = stress_of(res.pos, target, weight, n);
    const double previous = res.stress_history.back();
    if (stress > previous) {
      res.pos = before;
      break;
    }
    res.stress_history.push_back(stress);
    if (previous - stress <= 1e-14 * std::max(previous, 1e-300)) break;
  }
  return res;
}

}  // namespace stad
