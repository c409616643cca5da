#include "stad/filters.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

namespace stad {

FilterStrategy filter_strategy_from_string(const std::string& name) {
  if (name == "equal-width") return FilterStrategy::equal_width;
  if (name == "equal-frequency") return FilterStrategy::equal_frequency;
  throw ConfigError("unknown filter strategy: " + name);
}

std::string to_string(FilterStrategy s) {
  return s == FilterStrategy::equal_width ? "equal-width" : "equal-frequency";
}

namespace {

// Bin assignment for one dimension; r may collapse to 1 for degenerate
// equal-frequency input (reported through `warnings`).
std::vector<int> bin_dimension(const FilterDimension& dim, FilterStrategy strategy,
                               int dim_index, int& r_out,
                               std::vector<std::string>& warnings) {
  const auto& values = dim.values;
  const int n = static_cast<int>(values.size());
  int r = dim.intervals;
  if (r < 1) throw ConfigError("filter intervals must be >= 1");
  for (double v : values)
    if (!std::isfinite(v)) throw DataError("non-finite filter value");

  const double lo = *std::min_element(values.begin(), values.end());
  const double hi = *std::max_element(values.begin(), values.end());

  std::vector<int> bins(n, 0);
  if (r == 1) {
    r_out = 1;
    return bins;
  }

  if (strategy == FilterStrategy::equal_width) {
    const double width = (hi - lo) / r;
    if (width == 0.0) {
      r_out = 1;
      return bins;  // all identical: a single occupied interval
    }
    for (int i = 0; i < n; ++i) {
      int b = static_cast<int>(std::floor((values[i] - lo) / width));
      bins[i] = std::clamp(b, 0, r - 1);  // right-closed last interval
    }
    r_out = r;
    return bins;
  }

  // equal-frequency
  if (n < r)
    throw ConfigError("equal-frequency filter needs n >= r (n=" +
                      std::to_string(n) + ", r=" + std::to_string(r) + ")");
  if (lo == hi) {
    warnings.push_back("filter dimension " + std::to_string(dim_index + 1) +
                       ": all values identical, collapsing to one interval");
    r_out = 1;
    return bins;
  }
  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> cuts;
  for (int k = 1; k < r; ++k)
    cuts.push_back(sorted[static_cast<std::size_t>(k) * n / r]);
  // Ties resolve leftward: a value equal to a cut stays in the left interval.
  for (int i = 0; i < n; ++i) {
    int b = 0;
    for (double c : cuts)
      if (c < values[i]) ++b;
    bins[i] = b;
  }
  r_out = r;
  return bins;
}

}  // namespace

FilterAssignment discretize(const FilterSpec& spec) {
  const int p = static_cast<int>(spec.dims.size());
  if (p < 1 || p > 2)
    throw ConfigError("filters are one- or two-dimensional, got " +
                      std::to_string(p) + " dimensions");
  const int n = static_cast<int>(spec.dims[0].values.size());
  if (n < 1) throw ConfigError("empty filter dimension");
  for (const auto& d : spec.dims)
    if (static_cast<int>(d.values.size()) != n)
      throw ConfigError("filter dimensions have mismatched lengths");

  FilterAssignment fa;
  fa.n = n;
  fa.dims = p;

  std::array<std::vector<int>, 2> bins;
  for (int d = 0; d < p; ++d) {
    int r = 1;
    bins[d] = bin_dimension(spec.dims[d], spec.strategy, d, r, fa.warnings);
    fa.grid[d] = r;
    fa.cyclic[d] = spec.dims[d].cyclic;
  }
  if (p == 1) bins[1].assign(n, 0);

  fa.interval_of.resize(n);
  for (int i = 0; i < n; ++i) fa.interval_of[i] = {bins[0][i], bins[1][i]};

  // Occupied cells in (b0, b1) lexicographic order.
  const int r0 = fa.grid[0], r1 = fa.grid[1];
  std::vector<int> cell_id(static_cast<std::size_t>(r0) * r1, -1);
  std::map<std::array<int, 2>, int> seen;
  for (int i = 0; i < n; ++i) seen.try_emplace(fa.interval_of[i], 0);
  for (auto& [coords, id] : seen) {
    id = fa.cell_count();
    fa.cells.push_back(coords);
    cell_id[static_cast<std::size_t>(coords[0]) * r1 + coords[1]] = id;
  }
  fa.cell_of.resize(n);
  for (int i = 0; i < n; ++i)
    fa.cell_of[i] =
        cell_id[static_cast<std::size_t>(fa.interval_of[i][0]) * r1 +
                fa.interval_of[i][1]];

  // Grid adjacency with the 8-neighborhood (a chain in 1D), wrapping on
  // cyclic dimensions. Occupied cells are adjacent when joined directly or
  // through a path of empty cells.
  const int k = fa.cell_count();
  fa.adjacency.assign(static_cast<std::size_t>(k) * k, 0);
  auto neighbors_of = [&](int c0, int c1) {
    std::vector<std::pair<int, int>> out;
    for (int d0 = -1; d0 <= 1; ++d0)
      for (int d1 = -1; d1 <= 1; ++d1) {
        if (d0 == 0 && d1 == 0) continue;
        int a0 = c0 + d0, a1 = c1 + d1;
        if (fa.cyclic[0] && r0 > 2) a0 = (a0 + r0) % r0;
        if (fa.cyclic[1] && r1 > 2) a1 = (a1 + r1) % r1;
        if (a0 < 0 || a0 >= r0 || a1 < 0 || a1 >= r1) continue;
        out.push_back({a0, a1});
      }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };

  for (int start = 0; start < k; ++start) {
    // BFS from an occupied cell through empty cells only.
    std::vector<uint8_t> visited(static_cast<std::size_t>(r0) * r1, 0);
    std::queue<std::pair<int, int>> frontier;
    frontier.push({fa.cells[start][0], fa.cells[start][1]});
    visited[static_cast<std::size_t>(fa.cells[start][0]) * r1 +
            fa.cells[start][1]] = 1;
    while (!frontier.empty()) {
      const auto [c0, c1] = frontier.front();
      frontier.pop();
      for (const auto& [a0, a1] : neighbors_of(c0, c1)) {
        const std::size_t flat = static_cast<std::size_t>(a0) * r1 + a1;
        if (visited[flat]) continue;
        visited[flat] = 1;
        const int id = cell_id[flat];
        if (id >= 0) {
          if (id != start) {
            fa.adjacency[static_cast<std::size_t>(start) * k + id] = 1;
            fa.adjacency[static_cast<std::size_t>(id) * k + start] = 1;
          }
        } else {
          frontier.push({a0, a1});  // empty cells bridge onward
        }
      }
    }
  }
  return fa;
}

ReducedDistanceMatrix reduce_matrix(const DistanceMatrix& d,
                                    const FilterAssignment& fa) {
  if (fa.n != d.size())
    throw ConfigError("filter assignment does not match the distance matrix");
  const int n = d.size();
  ReducedDistanceMatrix rd{d, std::vector<uint8_t>(d.pair_count(), 0), 0};

  std::vector<int> parent(n);
  for (int v = 0; v < n; ++v) parent[v] = v;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  std::size_t idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++idx) {
      if (classify_edge(i, j, fa) == EdgeClass::inter_nonadjacent) continue;
      rd.retained[idx] = 1;
      ++rd.retained_count;
      parent[find(i)] = find(j);
    }

  int components = 0;
  for (int v = 0; v < n; ++v)
    if (find(v) == v) ++components;
  if (components > 1)
    throw DataError(
        "filter reduction disconnects the data into " +
        std::to_string(components) +
        " components; use fewer intervals (smaller r) so intervals overlap "
        "more points");
  return rd;
}

FilterMstResult filter_mst(const ReducedDistanceMatrix& rd,
                           const FilterAssignment& fa,
                           const CommunityDetector& detector) {
  const int n = rd.base.size();
  FilterMstResult result;

  // Step 1: MST inside each interval, then cheapest inter-adjacent edges
  // until everything is one component.
  std::vector<Edge> intra, inter;
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++idx) {
      if (!rd.retained[idx]) continue;
      const Edge e{i, j, rd.base.at_pair(idx)};
      (classify_edge(i, j, fa) == EdgeClass::intra ? intra : inter).push_back(e);
    }
  std::stable_sort(intra.begin(), intra.end(), edge_order);
  std::stable_sort(inter.begin(), inter.end(), edge_order);

  std::vector<int> parent(n);
  for (int v = 0; v < n; ++v) parent[v] = v;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  };

  for (const Edge& e : intra)
    if (unite(e.u, e.v)) result.step1_edges.push_back(e);
  for (const Edge& e : inter)
    if (unite(e.u, e.v)) result.step1_edges.push_back(e);

  int components = 0;
  for (int v = 0; v < n; ++v)
    if (find(v) == v) ++components;
  if (components > 1)
    throw DataError("retained pairs cannot span all points");

  // Step 2: validate intra-edges by community detection on the original
  // distances; inter-adjacent connectors are always re-evaluated.
  const AffinityGraph affinity = distances_to_affinities(n, result.step1_edges);
  result.partition = detector ? detector(affinity) : walktrap(affinity, 4);
  if (static_cast<int>(result.partition.community_of.size()) != n)
    throw DataError("community detector returned a partial partition");

  for (const Edge& e : result.step1_edges) {
    if (classify_edge(e.u, e.v, fa) != EdgeClass::intra) continue;
    if (result.partition.community_of[e.u] == result.partition.community_of[e.v])
      result.validated_edges.push_back(e);
  }

  // Step 3: validated edges are fixed; the cheapest retained edges restore a
  // single component.
  for (int v = 0; v < n; ++v) parent[v] = v;
  result.final_edges = result.validated_edges;
  for (const Edge& e : result.validated_edges) unite(e.u, e.v);

  std::vector<Edge> retained_sorted;
  retained_sorted.reserve(rd.retained_count);
  idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++idx)
      if (rd.retained[idx])
        retained_sorted.push_back(Edge{i, j, rd.base.at_pair(idx)});
  std::stable_sort(retained_sorted.begin(), retained_sorted.end(), edge_order);
  for (const Edge& e : retained_sorted) {
    if (static_cast<int>(result.final_edges.size()) == n - 1) break;
    if (unite(e.u, e.v)) result.final_edges.push_back(e);
  }
  std::stable_sort(result.final_edges.begin(), result.final_edges.end(),
                   edge_order);
  return result;
}

}  // namespace stad
