#include "stad/community.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <queue>
#include <unordered_map>

namespace stad {

AffinityGraph distances_to_affinities(int n,
                                      const std::vector<Edge>& distance_edges) {
  AffinityGraph g;
  g.n = n;
  g.edges.reserve(distance_edges.size());
  double d_max = 0.0;
  for (const Edge& e : distance_edges) {
    if (e.w < 0.0) throw DataError("negative distance weight");
    d_max = std::max(d_max, e.w);
  }
  if (d_max == 0.0) {
    for (const Edge& e : distance_edges) g.edges.push_back({e.u, e.v, 1.0});
    return g;
  }
  const double eps = 1e-9 * d_max;
  for (const Edge& e : distance_edges)
    g.edges.push_back({e.u, e.v, (d_max - e.w + eps) / d_max});
  return g;
}

double modularity(const AffinityGraph& g, const std::vector<int>& community_of) {
  if (static_cast<int>(community_of.size()) != g.n)
    throw ConfigError("community labels do not cover the graph");
  std::unordered_map<int, double> in_c, tot_c;
  double m = 0.0;
  for (const WeightedEdge& e : g.edges) {
    m += e.w;
    tot_c[community_of[e.u]] += e.w;
    tot_c[community_of[e.v]] += e.w;
    if (community_of[e.u] == community_of[e.v]) in_c[community_of[e.u]] += e.w;
  }
  if (m <= 0.0) return 0.0;
  double q = 0.0;
  for (const auto& [c, tot] : tot_c) {
    const double in = in_c.count(c) ? in_c.at(c) : 0.0;
    q += in / m - (tot / (2.0 * m)) * (tot / (2.0 * m));
  }
  return q;
}

namespace {

struct Candidate {
  double delta;
  int a, b;  // community ids, a < b

  bool operator>(const Candidate& o) const {
    if (delta != o.delta) return delta > o.delta;
    if (a != o.a) return a > o.a;
    return b > o.b;
  }
};

int64_t pair_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<int64_t>(a) << 32) | static_cast<uint32_t>(b);
}

}  // namespace

CommunityPartition walktrap(const AffinityGraph& g, int walk_length) {
  const int n = g.n;
  if (walk_length < 1) throw ConfigError("walk length must be >= 1");
  if (n <= 0) throw ConfigError("empty graph");
  if (n == 1) return {{0}, 1};

  std::vector<std::vector<std::pair<int, double>>> adj(n);
  std::vector<double> degree(n, 0.0);
  for (const WeightedEdge& e : g.edges) {
    if (e.u == e.v) throw DataError("self-loop in affinity graph");
    if (!(e.w > 0.0)) throw DataError("non-positive affinity");
    adj[e.u].push_back({e.v, e.w});
    adj[e.v].push_back({e.u, e.w});
    degree[e.u] += e.w;
    degree[e.v] += e.w;
  }
  for (int v = 0; v < n; ++v)
    if (adj[v].empty()) throw DataError("walktrap requires a connected graph");

  // t-step lazy-walk profile per vertex: row v of ((I + P)/2)^t with
  // P_uv = w_uv/d(u). The lazy step removes parity artifacts on bipartite
  // stretches, which would otherwise make adjacent profiles disjoint.
  std::vector<std::vector<double>> profile(n);
  {
    std::vector<double> cur(n), nxt(n);
    for (int v = 0; v < n; ++v) {
      std::fill(cur.begin(), cur.end(), 0.0);
      cur[v] = 1.0;
      for (int step = 0; step < walk_length; ++step) {
        std::fill(nxt.begin(), nxt.end(), 0.0);
        for (int u = 0; u < n; ++u) {
          if (cur[u] == 0.0) continue;
          nxt[u] += 0.5 * cur[u];
          const double scale = 0.5 * cur[u] / degree[u];
          for (const auto& [w, weight] : adj[u]) nxt[w] += scale * weight;
        }
        std::swap(cur, nxt);
      }
      profile[v] = cur;
    }
  }

  const int max_ids = 2 * n;
  std::vector<uint8_t> alive(max_ids, 0);
  std::vector<int> size(max_ids, 0), min_vertex(max_ids, 0);
  std::vector<std::vector<double>> comm_profile(max_ids);
  std::vector<std::unordered_map<int, double>> cross(max_ids);
  std::vector<int> community_of(n);

  for (int v = 0; v < n; ++v) {
    alive[v] = 1;
    size[v] = 1;
    min_vertex[v] = v;
    comm_profile[v] = std::move(profile[v]);
    community_of[v] = v;
  }
  for (const WeightedEdge& e : g.edges) {
    cross[e.u][e.v] += e.w;
    cross[e.v][e.u] += e.w;
  }

  auto ward_delta = [&](int a, int b) {
    const auto& pa = comm_profile[a];
    const auto& pb = comm_profile[b];
    double r2 = 0.0;
    for (int k = 0; k < n; ++k) {
      const double d = pa[k] - pb[k];
      r2 += d * d / degree[k];
    }
    const double sa = size[a], sb = size[b];
    return (sa * sb / (sa + sb)) * r2 / n;
  };

  std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> heap;
  std::unordered_map<int64_t, double> current_delta;
  auto push_candidate = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    const double delta = ward_delta(a, b);
    current_delta[pair_key(a, b)] = delta;
    heap.push({delta, a, b});
  };
  for (int v = 0; v < n; ++v)
    for (const auto& [w, weight] : cross[v])
      if (v < w) push_candidate(v, w);

  // Merge to a single community, tracking modularity at every step; the
  // best partition comes from replaying merges up to the best step.
  std::vector<std::pair<int, int>> merges;  // (vertex rep of a, vertex rep of b)
  double best_q = modularity(g, community_of);
  std::size_t best_step = 0;
  int next_id = n;

  for (int step = 1; step < n; ++step) {
    Candidate top{};
    for (;;) {
      if (heap.empty())
        throw DataError("walktrap requires a connected graph");
      top = heap.top();
      heap.pop();
      if (!alive[top.a] || !alive[top.b]) continue;
      const auto it = current_delta.find(pair_key(top.a, top.b));
      if (it == current_delta.end() || it->second != top.delta) continue;
      break;
    }
    const int a = top.a, b = top.b, c = next_id++;
    alive[a] = alive[b] = 0;
    alive[c] = 1;
    size[c] = size[a] + size[b];
    min_vertex[c] = std::min(min_vertex[a], min_vertex[b]);
    merges.push_back({min_vertex[a], min_vertex[b]});

    comm_profile[c].resize(n);
    const double sa = size[a], sb = size[b], sc = sa + sb;
    for (int k = 0; k < n; ++k)
      comm_profile[c][k] =
          (sa * comm_profile[a][k] + sb * comm_profile[b][k]) / sc;
    comm_profile[a].clear();
    comm_profile[a].shrink_to_fit();
    comm_profile[b].clear();
    comm_profile[b].shrink_to_fit();

    // Neighbor cross-weights of the union; drop the internal pair.
    auto& merged = cross[c];
    for (int side : {a, b})
      for (const auto& [x, w] : cross[side])
        if (x != a && x != b) merged[x] += w;
    cross[a].clear();
    cross[b].clear();
    for (const auto& [x, w] : merged) {
      cross[x].erase(a);
      cross[x].erase(b);
      cross[x][c] = w;
      push_candidate(std::min(x, c), std::max(x, c));
    }

    for (int v = 0; v < n; ++v)
      if (community_of[v] == a || community_of[v] == b) community_of[v] = c;
    const double q = modularity(g, community_of);
    if (q > best_q) {
      best_q = q;
      best_step = merges.size();
    }
  }

  // Replay the chosen prefix of merges over a plain union-find.
  std::vector<int> parent(n);
  for (int v = 0; v < n; ++v) parent[v] = v;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t s = 0; s < best_step; ++s)
    parent[find(merges[s].first)] = find(merges[s].second);

  CommunityPartition part;
  part.community_of.assign(n, -1);
  std::unordered_map<int, int> label;
  for (int v = 0; v < n; ++v) {
    const int r = find(v);
    auto [it, inserted] = label.try_emplace(r, part.count);
    if (inserted) ++part.count;
    part.community_of[v] = it->second;
  }
  return part;
}

}  // namespace stad
