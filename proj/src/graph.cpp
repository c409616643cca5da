#include "stad/graph.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <functional>
#include <thread>
#include <unordered_set>

namespace stad {

namespace {

struct UnionFind {
  std::vector<int> parent, rank_;

  explicit UnionFind(int n) : parent(n), rank_(n, 0) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }
};

int resolve_threads(int threads, int n) {
  if (threads <= 0) {
    unsigned hc = std::thread::hardware_concurrency();
    threads = hc == 0 ? 1 : static_cast<int>(hc);
  }
  threads = std::min(threads, 8);
  if (n < 128) threads = 1;  // not worth spawning for tiny graphs
  return std::max(1, threads);
}

void parallel_sources(int n, int threads, const std::function<void(int)>& run_source) {
  if (threads <= 1) {
    for (int s = 0; s < n; ++s) run_source(s);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int s = next.fetch_add(1);
      if (s >= n) return;
      run_source(s);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

}  // namespace

UnitGraph::UnitGraph(int n, std::vector<Edge> edges, int tree_edge_count,
                     int extra_edge_count)
    : n_(n),
      edges_(std::move(edges)),
      tree_edge_count_(tree_edge_count),
      extra_edge_count_(extra_edge_count) {
  offsets_.assign(n_ + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (int v = 0; v < n_; ++v) offsets_[v + 1] += offsets_[v];
  neighbors_.resize(offsets_[n_]);
  std::vector<int32_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    neighbors_[cursor[e.u]++] = e.v;
    neighbors_[cursor[e.v]++] = e.u;
  }
}

SortedEdgeList sort_edges(const DistanceMatrix& d,
                          const std::vector<uint8_t>* retained) {
  const int n = d.size();
  SortedEdgeList list;
  list.n = n;
  list.edges.reserve(retained ? 0 : d.pair_count());
  std::size_t k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++k) {
      if (retained && !(*retained)[k]) continue;
      list.edges.push_back(Edge{i, j, d.at_pair(k)});
    }
  std::stable_sort(list.edges.begin(), list.edges.end(), edge_order);
  return list;
}

std::vector<Edge> mst(const SortedEdgeList& edges) {
  const int n = edges.n;
  UnionFind uf(n);
  std::vector<Edge> tree;
  tree.reserve(n - 1);
  for (const Edge& e : edges.edges) {
    if (uf.unite(e.u, e.v)) {
      tree.push_back(e);
      if (static_cast<int>(tree.size()) == n - 1) break;
    }
  }
  if (static_cast<int>(tree.size()) != n - 1) {
    // Name the separated components to make the failure actionable.
    std::vector<std::vector<int>> groups;
    std::vector<int> root_of(n, -1);
    for (int v = 0; v < n; ++v) {
      const int r = uf.find(v);
      if (root_of[r] < 0) {
        root_of[r] = static_cast<int>(groups.size());
        groups.emplace_back();
      }
      if (groups[root_of[r]].size() < 5) groups[root_of[r]].push_back(v);
    }
    std::string msg = "graph is disconnected into " +
                      std::to_string(groups.size()) + " components:";
    for (const auto& g : groups) {
      msg += " {";
      for (std::size_t i = 0; i < g.size(); ++i)
        msg += (i ? "," : "") + std::to_string(g[i]);
      msg += g.size() == 5 ? ",...}" : "}";
    }
    throw DataError(msg);
  }
  return tree;
}

SortedEdgeList non_tree_edges(const SortedEdgeList& sorted,
                              const std::vector<Edge>& tree) {
  std::unordered_set<int64_t> in_tree;
  in_tree.reserve(tree.size() * 2);
  for (const Edge& e : tree)
    in_tree.insert(static_cast<int64_t>(e.u) * sorted.n + e.v);
  SortedEdgeList rest;
  rest.n = sorted.n;
  rest.edges.reserve(sorted.edges.size() - tree.size());
  for (const Edge& e : sorted.edges)
    if (!in_tree.count(static_cast<int64_t>(e.u) * sorted.n + e.v))
      rest.edges.push_back(e);
  return rest;
}

UnitGraph build_unit_graph(const std::vector<Edge>& tree_edges,
                           const SortedEdgeList& sorted_non_tree, int extra) {
  if (extra < 0 || extra > static_cast<int>(sorted_non_tree.edges.size()))
    throw ConfigError("edge count " + std::to_string(extra) +
                      " outside [0, " +
                      std::to_string(sorted_non_tree.edges.size()) + "]");
  std::vector<Edge> edges = tree_edges;
  edges.insert(edges.end(), sorted_non_tree.edges.begin(),
               sorted_non_tree.edges.begin() + extra);
  return UnitGraph(sorted_non_tree.n, std::move(edges),
                   static_cast<int>(tree_edges.size()), extra);
}

namespace detail {

HopMatrix bfs_apsp_queue(const UnitGraph& g, int threads) {
  const int n = g.vertex_count();
  HopMatrix h;
  h.n = n;
  h.hops.assign(condensed_size(n), 0);

  std::atomic<bool> disconnected{false};
  auto run_source = [&](int s) {
    thread_local std::vector<int32_t> dist;
    thread_local std::vector<int32_t> queue;
    dist.assign(n, -1);
    queue.clear();
    queue.push_back(s);
    dist[s] = 0;
    std::size_t head = 0;
    while (head < queue.size()) {
      const int u = queue[head++];
      const int32_t du = dist[u];
      for (int32_t v : g.neighbors(u)) {
        if (dist[v] < 0) {
          dist[v] = du + 1;
          queue.push_back(v);
        }
      }
    }
    if (static_cast<int>(queue.size()) != n) {
      disconnected.store(true);
      return;
    }
    for (int t = s + 1; t < n; ++t)
      h.hops[condensed_index(n, s, t)] = dist[t];
  };

  parallel_sources(n, resolve_threads(threads, n), run_source);
  if (disconnected.load())
    throw std::logic_error("internal: unit graph is disconnected");
  return h;
}

HopMatrix bfs_apsp_bitset(const UnitGraph& g, int threads) {
  const int n = g.vertex_count();
  const int words = (n + 63) / 64;
  std::vector<uint64_t> adj(static_cast<std::size_t>(n) * words, 0);
  for (const Edge& e : g.edges()) {
    adj[static_cast<std::size_t>(e.u) * words + e.v / 64] |= 1ull << (e.v % 64);
    adj[static_cast<std::size_t>(e.v) * words + e.u / 64] |= 1ull << (e.u % 64);
  }

  HopMatrix h;
  h.n = n;
  h.hops.assign(condensed_size(n), 0);

  std::atomic<bool> disconnected{false};
  auto run_source = [&](int s) {
    thread_local std::vector<uint64_t> visited, frontier, next;
    thread_local std::vector<int32_t> dist;
    visited.assign(words, 0);
    frontier.assign(words, 0);
    next.assign(words, 0);
    dist.assign(n, -1);
    visited[s / 64] |= 1ull << (s % 64);
    frontier[s / 64] |= 1ull << (s % 64);
    dist[s] = 0;
    int reached = 1;
    for (int32_t level = 1; reached < n; ++level) {
      std::fill(next.begin(), next.end(), 0);
      for (int w = 0; w < words; ++w) {
        uint64_t bits = frontier[w];
        while (bits) {
          const int v = w * 64 + std::countr_zero(bits);
          bits &= bits - 1;
          const uint64_t* row = adj.data() + static_cast<std::size_t>(v) * words;
          for (int x = 0; x < words; ++x) next[x] |= row[x];
        }
      }
      bool any = false;
      for (int w = 0; w < words; ++w) {
        next[w] &= ~visited[w];
        visited[w] |= next[w];
        uint64_t bits = next[w];
        if (bits) any = true;
        while (bits) {
          const int v = w * 64 + std::countr_zero(bits);
          bits &= bits - 1;
          dist[v] = level;
          ++reached;
        }
      }
      if (!any) break;
      std::swap(frontier, next);
    }
    if (reached != n) {
      disconnected.store(true);
      return;
    }
    for (int t = s + 1; t < n; ++t)
      h.hops[condensed_index(n, s, t)] = dist[t];
  };

  parallel_sources(n, resolve_threads(threads, n), run_source);
  if (disconnected.load())
    throw std::logic_error("internal: unit graph is disconnected");
  return h;
}

}  // namespace detail

HopMatrix bfs_apsp(const UnitGraph& g, int threads) {
  const int n = g.vertex_count();
  // Word-parallel frontier pays off once average degree passes ~n/16.
  const bool dense =
      n >= 16 && static_cast<std::size_t>(g.edge_count()) * 32 >=
                     static_cast<std::size_t>(n) * n;
  return dense ? detail::bfs_apsp_bitset(g, threads)
               : detail::bfs_apsp_queue(g, threads);
}

}  // namespace stad
