#include <algorithm>
#include <set>

#include "doctest.h"
#include "datasets.hpp"
#include "oracles.hpp"
#include "stad/filters.hpp"
#include "stad/metrics.hpp"

using namespace stad;

namespace {

FilterSpec spec_1d(std::vector<double> values, int r,
                   FilterStrategy strategy = FilterStrategy::equal_width,
                   bool cyclic = false) {
  FilterSpec spec;
  spec.strategy = strategy;
  spec.dims.push_back({std::move(values), r, cyclic});
  return spec;
}

std::vector<int> raw_bins(const FilterAssignment& fa, int dim = 0) {
  std::vector<int> out(fa.n);
  for (int v = 0; v < fa.n; ++v) out[v] = fa.interval_of[v][dim];
  return out;
}

}  // namespace

TEST_CASE("equal-width split of 0..9 into two intervals") {
  std::vector<double> values;
  for (int i = 0; i < 10; ++i) values.push_back(i);
  const FilterAssignment fa = discretize(spec_1d(values, 2));
  for (int v = 0; v < 10; ++v) CHECK(fa.interval_of[v][0] == (v < 5 ? 0 : 1));
  CHECK(fa.cell_count() == 2);
  CHECK(fa.cells_adjacent(0, 1));
}

TEST_CASE("cyclic week filter joins interval 52 back to interval 1") {
  std::vector<double> weeks;
  for (int w = 1; w <= 52; ++w) weeks.push_back(w);
  const FilterAssignment fa =
      discretize(spec_1d(weeks, 52, FilterStrategy::equal_width, true));
  REQUIRE(fa.cell_count() == 52);
  CHECK(fa.cells_adjacent(51, 0));  // Sunday-to-Monday wraparound
  CHECK(fa.cells_adjacent(0, 1));
  CHECK_FALSE(fa.cells_adjacent(0, 2));

  const FilterAssignment linear = discretize(spec_1d(weeks, 52));
  CHECK_FALSE(linear.cells_adjacent(51, 0));
}

TEST_CASE("equal-frequency bins match the reference quantile oracle") {
  // Hand-checked populations for the skewed sample: [4, 1, 2].
  const std::vector<double> skewed = {1, 1, 1, 1, 2, 3, 100};
  const FilterAssignment fa =
      discretize(spec_1d(skewed, 3, FilterStrategy::equal_frequency));
  CHECK(raw_bins(fa) == oracle::equal_frequency_bins(skewed, 3));
  std::array<int, 3> pop = {0, 0, 0};
  for (int v = 0; v < fa.n; ++v) ++pop[fa.interval_of[v][0]];
  CHECK(pop == std::array<int, 3>{4, 1, 2});

  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> values(40);
    for (auto& v : values)
      v = std::round(datasets::uniform01(rng) * 20.0) / 2.0;  // many ties
    const int r = 2 + static_cast<int>(rng() % 5);
    const FilterAssignment random_fa =
        discretize(spec_1d(values, r, FilterStrategy::equal_frequency));
    CHECK(raw_bins(random_fa) == oracle::equal_frequency_bins(values, r));
  }
}

TEST_CASE("identical values under equal-frequency collapse to one interval") {
  const std::vector<double> flat(10, 3.5);
  const FilterAssignment fa =
      discretize(spec_1d(flat, 3, FilterStrategy::equal_frequency));
  CHECK(fa.cell_count() == 1);
  REQUIRE(fa.warnings.size() == 1);
  CHECK(fa.warnings[0].find("collapsing") != std::string::npos);
}

TEST_CASE("equal-frequency requires n >= r") {
  const std::vector<double> values = {1, 2, 3};
  CHECK_THROWS_AS(discretize(spec_1d(values, 4, FilterStrategy::equal_frequency)),
                  ConfigError);
}

TEST_CASE("empty intervals are omitted and adjacency re-chains") {
  // Values leave the middle interval of three empty.
  const std::vector<double> values = {0.0, 0.1, 2.9, 3.0};
  const FilterAssignment fa = discretize(spec_1d(values, 3));
  REQUIRE(fa.cell_count() == 2);
  CHECK(fa.cells_adjacent(0, 1));  // bridged through the empty interval
}

TEST_CASE("discretize is permutation-equivariant") {
  std::mt19937_64 rng(17);
  std::vector<double> values(30);
  for (auto& v : values) v = datasets::uniform01(rng) * 7;
  const FilterAssignment base = discretize(spec_1d(values, 4));

  std::vector<int> perm(30);
  for (int i = 0; i < 30; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<double> shuffled(30);
  for (int i = 0; i < 30; ++i) shuffled[perm[i]] = values[i];
  const FilterAssignment moved = discretize(spec_1d(shuffled, 4));
  for (int i = 0; i < 30; ++i)
    CHECK(base.interval_of[i] == moved.interval_of[perm[i]]);
}

TEST_CASE("classify_edge follows the three-way taxonomy") {
  const std::vector<double> values = {0.0, 0.1, 1.0, 1.1, 2.0, 2.1};
  const FilterAssignment fa = discretize(spec_1d(values, 3));
  REQUIRE(fa.cell_count() == 3);
  CHECK(classify_edge(0, 1, fa) == EdgeClass::intra);
  CHECK(classify_edge(0, 2, fa) == EdgeClass::inter_adjacent);
  CHECK(classify_edge(0, 4, fa) == EdgeClass::inter_nonadjacent);

  const FilterAssignment cyclic =
      discretize(spec_1d(values, 3, FilterStrategy::equal_width, true));
  CHECK(classify_edge(0, 4, cyclic) == EdgeClass::inter_adjacent);
}

TEST_CASE("2D grids use the 8-neighborhood with empty-cell bridging") {
  // Occupied cells: (0,0), (1,1), (2,0) in a 3x3 grid; (0,2) far corner.
  FilterSpec spec;
  spec.dims.push_back({{0.0, 1.5, 2.9, 0.1}, 3, false});
  spec.dims.push_back({{0.0, 1.5, 0.0, 2.9}, 3, false});
  const FilterAssignment fa = discretize(spec);
  REQUIRE(fa.cell_count() == 4);
  // cells sorted lexicographically: (0,0)=0, (0,2)=1, (1,1)=2, (2,0)=3
  CHECK(fa.cells[0] == std::array<int, 2>{0, 0});
  CHECK(fa.cells[1] == std::array<int, 2>{0, 2});
  CHECK(fa.cells[2] == std::array<int, 2>{1, 1});
  CHECK(fa.cells[3] == std::array<int, 2>{2, 0});
  CHECK(fa.cells_adjacent(0, 2));   // diagonal
  CHECK(fa.cells_adjacent(1, 2));   // diagonal
  CHECK(fa.cells_adjacent(2, 3));   // diagonal
  CHECK(fa.cells_adjacent(0, 3));   // bridged through empty (1,0)
  CHECK(fa.cells_adjacent(0, 1));   // bridged through empty (0,1)
}

TEST_CASE("2D cyclic x linear adjacency wraps only the cyclic dimension") {
  FilterSpec spec;
  // dim0: 4 intervals, cyclic; dim1: 2 intervals, linear. One point per cell.
  std::vector<double> d0, d1;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 2; ++b) {
      d0.push_back(a);
      d1.push_back(b);
    }
  spec.dims.push_back({d0, 4, true});
  spec.dims.push_back({d1, 2, false});
  const FilterAssignment fa = discretize(spec);
  REQUIRE(fa.cell_count() == 8);
  auto id = [&](int a, int b) {
    for (int c = 0; c < fa.cell_count(); ++c)
      if (fa.cells[c] == std::array<int, 2>{a, b}) return c;
    return -1;
  };
  CHECK(fa.cells_adjacent(id(0, 0), id(3, 0)));  // wraps in dim0
  CHECK(fa.cells_adjacent(id(0, 0), id(3, 1)));  // wrap + diagonal
  CHECK(fa.cells_adjacent(id(0, 0), id(0, 1)));
  CHECK_FALSE(fa.cells_adjacent(id(0, 0), id(2, 0)));
  CHECK_FALSE(fa.cells_adjacent(id(0, 1), id(2, 1)));
}

TEST_CASE("reduce_matrix keeps everything for r <= 2") {
  const PointCloud cloud = datasets::random_cloud(12, 3, 31);
  const DistanceMatrix d = compute_distances(cloud);
  for (int r : {1, 2}) {
    const FilterAssignment fa = discretize(spec_1d(cloud.column(0), r));
    const ReducedDistanceMatrix rd = reduce_matrix(d, fa);
    CHECK(rd.retained_count == d.pair_count());
  }
}

TEST_CASE("reduce_matrix masks exactly the non-adjacent interval pair") {
  const std::vector<double> values = {0.0, 1.0, 2.0};
  const FilterAssignment fa = discretize(spec_1d(values, 3));
  const DistanceMatrix d(3, {1.0, 1.0, 1.0});
  const ReducedDistanceMatrix rd = reduce_matrix(d, fa);
  CHECK(rd.retained_count == 2);
  CHECK(rd.retained[condensed_index(3, 0, 1)] == 1);
  CHECK(rd.retained[condensed_index(3, 1, 2)] == 1);
  CHECK(rd.retained[condensed_index(3, 0, 2)] == 0);
}

TEST_CASE("reduce_matrix retained mask matches the classification oracle") {
  const PointCloud cloud = datasets::random_cloud(40, 4, 33);
  const DistanceMatrix d = compute_distances(cloud);
  const FilterAssignment fa = discretize(spec_1d(cloud.column(1), 5));
  const ReducedDistanceMatrix rd = reduce_matrix(d, fa);

  // Oracle: re-apply the taxonomy with a plain double loop over cells.
  std::size_t count = 0, idx = 0;
  for (int i = 0; i < 40; ++i)
    for (int j = i + 1; j < 40; ++j, ++idx) {
      const auto a = fa.interval_of[i][0], b = fa.interval_of[j][0];
      const bool keep = std::abs(a - b) <= 1;  // chain adjacency, no empties
      CHECK(static_cast<bool>(rd.retained[idx]) == keep);
      count += keep;
    }
  CHECK(rd.retained_count == count);
  // Never masks a same-interval pair.
  idx = 0;
  for (int i = 0; i < 40; ++i)
    for (int j = i + 1; j < 40; ++j, ++idx)
      if (fa.interval_of[i] == fa.interval_of[j]) CHECK(rd.retained[idx] == 1);
}

TEST_CASE("reduce_matrix reports a disconnecting reduction") {
  // Hand-built assignment with two occupied cells declared non-adjacent.
  FilterAssignment fa;
  fa.n = 4;
  fa.dims = 1;
  fa.grid = {2, 1};
  fa.interval_of = {{0, 0}, {0, 0}, {1, 0}, {1, 0}};
  fa.cell_of = {0, 0, 1, 1};
  fa.cells = {{0, 0}, {1, 0}};
  fa.adjacency = {0, 0, 0, 0};
  const DistanceMatrix d(4, std::vector<double>(6, 1.0));
  CHECK_THROWS_WITH_AS(reduce_matrix(d, fa), doctest::Contains("disconnects"),
                       DataError);
}

TEST_CASE("filter_mst with one interval and one community is the plain MST") {
  const PointCloud cloud = datasets::random_cloud(15, 3, 41);
  const DistanceMatrix d = compute_distances(cloud);
  const FilterAssignment fa = discretize(spec_1d(cloud.column(0), 1));
  const ReducedDistanceMatrix rd = reduce_matrix(d, fa);
  const CommunityDetector one_community = [](const AffinityGraph& g) {
    return CommunityPartition{std::vector<int>(g.n, 0), 1};
  };
  const FilterMstResult result = filter_mst(rd, fa, one_community);

  std::vector<Edge> classical = mst(sort_edges(d));
  std::stable_sort(classical.begin(), classical.end(), edge_order);
  REQUIRE(result.final_edges.size() == classical.size());
  for (std::size_t k = 0; k < classical.size(); ++k)
    CHECK(result.final_edges[k] == classical[k]);
}

TEST_CASE("filter_mst severs the artificial bridge between planted blobs") {
  // Two tight spatial blobs share filter interval 0; interval 1 and 2 hold
  // separate groups. The intra-MST of interval 0 must bridge the blobs, the
  // detector must cut that bridge, and step 3 must reconnect elsewhere.
  std::mt19937_64 rng(55);
  PointCloud cloud;
  cloud.m = 2;
  std::vector<double> filter_values;
  auto blob = [&](double cx, double cy, int count, double fv) {
    for (int i = 0; i < count; ++i) {
      cloud.values.push_back(cx + 0.2 * datasets::gaussian(rng));
      cloud.values.push_back(cy + 0.2 * datasets::gaussian(rng));
      filter_values.push_back(fv);
    }
  };
  blob(0.0, 0.0, 8, 0.05);   // blob A, interval 0
  blob(10.0, 0.0, 8, 0.05);  // blob B, interval 0 as well
  blob(5.0, 8.0, 8, 0.5);    // interval 1
  blob(5.0, 16.0, 8, 0.9);   // interval 2
  cloud.n = 32;

  const DistanceMatrix d = compute_distances(cloud);
  const FilterAssignment fa = discretize(spec_1d(filter_values, 3));
  REQUIRE(fa.cell_count() == 3);
  const ReducedDistanceMatrix rd = reduce_matrix(d, fa);
  const FilterMstResult result = filter_mst(rd, fa);

  auto crosses_blobs = [](const Edge& e) {
    return (e.u < 8) != (e.v < 8) && e.u < 16 && e.v < 16;
  };
  int bridges_in_step1 = 0, bridges_in_validated = 0;
  for (const Edge& e : result.step1_edges) bridges_in_step1 += crosses_blobs(e);
  for (const Edge& e : result.validated_edges)
    bridges_in_validated += crosses_blobs(e);
  CHECK(bridges_in_step1 >= 1);       // the artificial connection exists
  CHECK(bridges_in_validated == 0);   // and community detection removes it

  // Tree contract: n-1 edges, spanning, acyclic, retained pairs only.
  REQUIRE(result.final_edges.size() == 31);
  std::vector<int> parent(32);
  for (int v = 0; v < 32; ++v) parent[v] = v;
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const Edge& e : result.final_edges) {
    CHECK(rd.retained[condensed_index(32, e.u, e.v)] == 1);
    const int a = find(e.u), b = find(e.v);
    CHECK(a != b);  // acyclic
    parent[a] = b;
  }
  for (int v = 1; v < 32; ++v) CHECK(find(0) == find(v));  // spanning
}

TEST_CASE("filter_mst keeps only same-community same-interval intra edges") {
  const PointCloud cloud = datasets::random_cloud(20, 3, 77);
  const DistanceMatrix d = compute_distances(cloud);
  const FilterAssignment fa = discretize(spec_1d(cloud.column(2), 3));
  const ReducedDistanceMatrix rd = reduce_matrix(d, fa);
  const FilterMstResult result = filter_mst(rd, fa);

  // Post-hoc re-check of the validation predicate.
  for (const Edge& e : result.validated_edges) {
    CHECK(fa.cell_of[e.u] == fa.cell_of[e.v]);
    CHECK(result.partition.community_of[e.u] ==
          result.partition.community_of[e.v]);
  }
  CHECK(result.final_edges.size() == 19);
}

TEST_CASE("filters reject bad dimension counts and non-finite values") {
  FilterSpec empty;
  CHECK_THROWS_AS(discretize(empty), ConfigError);
  FilterSpec spec = spec_1d({1.0, 2.0, std::nan("")}, 2);
  CHECK_THROWS_AS(discretize(spec), DataError);
}
