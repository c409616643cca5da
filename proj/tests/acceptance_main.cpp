// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Runs the library directly plus the real CLI binary end to end.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "datasets.hpp"
#include "oracles.hpp"
#include "stad/export.hpp"
#include "stad/filters.hpp"
#include "stad/metrics.hpp"
#include "stad/optimizer.hpp"
#include "stad/pipeline.hpp"

namespace fs = std::filesystem;
using namespace stad;

namespace {

int failures = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
  std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", id.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

ObjectiveContext context_for(const DistanceMatrix& d) {
  const SortedEdgeList sorted = sort_edges(d);
  std::vector<Edge> tree = mst(sorted);
  SortedEdgeList rest = non_tree_edges(sorted, tree);
  return ObjectiveContext(d, std::move(tree), std::move(rest));
}

std::string slurp(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string command =
      std::string("\"") + STAD_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// ---------------------------------------------------------------------------

// A1: anneal within 0.005 of the exhaustive optimum, 20 seeds out of 20,
// under 60 s total.
void a1_oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  const DistanceMatrix d = compute_distances(datasets::two_gaussians(25, 42));
  const ObjectiveContext ctx = context_for(d);
  const OptimizationResult exact = brute_force_optimum(ctx);
  int passed = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    AnnealSchedule schedule;
    schedule.seed = seed;
    const OptimizationResult res = anneal(ctx, schedule);
    const double gap = exact.best_r - res.best_r;
    worst = std::max(worst, gap);
    if (gap <= 0.005) ++passed;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "%d/20 seeds within 0.005 of r*=%.4f (worst gap %.5f) in %.1fs",
                passed, exact.best_r, worst, secs);
  report("A1", passed == 20 && secs < 60.0, detail);
}

// A2: on a 200-point noisy circle the optimized network beats the tree by
// at least 0.01 and closes at least one cycle.
void a2_improvement_over_mst() {
  const DistanceMatrix d = compute_distances(datasets::noisy_circle(200, 7));
  PipelineOptions options;
  const PipelineResult res = run_pipeline(d, std::nullopt, options);
  const double gain = res.optimum.best_r - res.tree_correlation;
  const int edges = static_cast<int>(res.network.edges.size());
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "r(i*)=%.4f vs r(MST)=%.4f (gain %.4f), %d edges on %d nodes",
                res.optimum.best_r, res.tree_correlation, gain, edges,
                res.network.n);
  report("A2", gain >= 0.01 && edges > res.network.n - 1, detail);
}

// A3: the complete graph scores the zero-variance convention 0, and every
// trace value stays inside [0,1] on 50 random metric datasets.
void a3_degenerate_endpoint() {
  bool in_range = true;
  bool complete_zero = true;
  for (std::uint64_t seed = 1; seed <= 50 && in_range; ++seed) {
    const int n = 8 + static_cast<int>(seed % 23);  // up to 30
    const PointCloud cloud =
        datasets::random_cloud(n, 2 + static_cast<int>(seed % 4), seed);
    const DistanceMatrix d = compute_distances(cloud);
    const ObjectiveContext ctx = context_for(d);
    complete_zero &= ctx.evaluate(ctx.domain_max()) == 0.0;
    const CorrelationTrace trace = correlation_trace(ctx, 1);
    for (const TracePoint& p : trace.points)
      in_range &= p.r >= 0.0 && p.r <= 1.0;
  }
  report("A3", in_range && complete_zero,
         in_range ? "complete graph scores 0; 50/50 traces inside [0,1]"
                  : "a trace value left [0,1]");
}

// A4: MST weight equals the exhaustive minimum over all 16807 labeled trees
// for 100 random 7-point matrices, exactly.
void a4_mst_exactness() {
  int matched = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const DistanceMatrix d = datasets::random_matrix(7, seed);
    const std::vector<Edge> tree = mst(sort_edges(d));
    std::vector<std::pair<int, int>> pairs;
    for (const Edge& e : tree) pairs.push_back({e.u, e.v});
    if (oracle::tree_weight(pairs, d) == oracle::min_tree_weight_exhaustive(d))
      ++matched;
  }
  char detail[96];
  std::snprintf(detail, sizeof(detail),
                "%d/100 matrices match the 16807-tree enumeration exactly",
                matched);
  report("A4", matched == 100, detail);
}

// A5: bfs_apsp equals Floyd-Warshall on 200 random connected graphs, n<=64.
void a5_apsp_exactness() {
  std::mt19937 rng(4242);
  int matched = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 61);
    const std::size_t all = condensed_size(n);
    const int extra = static_cast<int>(rng() % (all - (n - 1) + 1));
    const auto pairs = oracle::random_connected_graph(n, extra, rng);
    std::vector<Edge> edges;
    for (const auto& [u, v] : pairs) edges.push_back({u, v, 1.0});
    const UnitGraph g(n, std::move(edges), n - 1,
                      static_cast<int>(pairs.size()) - (n - 1));
    const HopMatrix h = bfs_apsp(g);
    const std::vector<int> fw = oracle::floyd_warshall_hops(n, pairs);
    bool same = true;
    for (int i = 0; i < n && same; ++i)
      for (int j = 0; j < n && same; ++j)
        same = h(i, j) == fw[static_cast<std::size_t>(i) * n + j];
    matched += same;
  }
  char detail[96];
  std::snprintf(detail, sizeof(detail),
                "%d/200 graphs agree with Floyd-Warshall exactly", matched);
  report("A5", matched == 200, detail);
}

// A6: a 1D non-cyclic filter with r<=2 yields the same final edge set as the
// filter-free run with the same seed.
void a6_filter_equivalence() {
  bool identical = true;
  std::string note = "edge sets identical for r=1 and r=2 on 3 datasets";
  for (std::uint64_t seed : {3, 8, 15}) {
    const PointCloud cloud = datasets::random_cloud(20, 3, seed);
    const DistanceMatrix d = compute_distances(cloud);
    PipelineOptions options;
    options.schedule.evaluation_budget = 80;
    options.schedule.seed = 17;
    const PipelineResult plain = run_pipeline(d, std::nullopt, options);
    std::set<std::pair<int, int>> base;
    for (const Edge& e : plain.network.edges) base.insert({e.u, e.v});

    for (int r : {1, 2}) {
      FilterSpec filter;
      filter.dims.push_back({cloud.column(0), r, false});
      const PipelineResult with_filter = run_pipeline(d, filter, options);
      std::set<std::pair<int, int>> got;
      for (const Edge& e : with_filter.network.edges) got.insert({e.u, e.v});
      if (got != base) {
        identical = false;
        note = "edge sets differ (seed " + std::to_string(seed) +
               ", r=" + std::to_string(r) + ")";
      }
    }
  }
  report("A6", identical, note);
}

// A7: on planted blobs sharing an interval, the step-1 bridge disappears in
// step 2 and the final filter-MST is a spanning tree over retained pairs.
void a7_filter_mst_contract() {
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
  blob(0.0, 0.0, 8, 0.05);
  blob(10.0, 0.0, 8, 0.05);  // same interval as the first blob
  blob(5.0, 8.0, 8, 0.5);
  blob(5.0, 16.0, 8, 0.9);
  cloud.n = 32;
  const DistanceMatrix d = compute_distances(cloud);
  FilterSpec filter;
  filter.dims.push_back({filter_values, 3, false});
  const FilterAssignment fa = discretize(filter);
  const ReducedDistanceMatrix rd = reduce_matrix(d, fa);
  const FilterMstResult res = filter_mst(rd, fa);

  auto crosses = [](const Edge& e) {
    return (e.u < 8) != (e.v < 8) && e.u < 16 && e.v < 16;
  };
  int step1_bridges = 0, kept_bridges = 0;
  for (const Edge& e : res.step1_edges) step1_bridges += crosses(e);
  for (const Edge& e : res.validated_edges) kept_bridges += crosses(e);

  bool tree_ok = res.final_edges.size() == 31;
  std::vector<int> parent(32);
  for (int v = 0; v < 32; ++v) parent[v] = v;
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const Edge& e : res.final_edges) {
    tree_ok &= rd.retained[condensed_index(32, e.u, e.v)] == 1;
    const int a = find(e.u), b = find(e.v);
    tree_ok &= a != b;
    parent[a] = b;
  }
  for (int v = 1; v < 32; ++v) tree_ok &= find(0) == find(v);

  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "step-1 bridges %d, kept after validation %d; tree n-1/span/"
                "acyclic/retained %s",
                step1_bridges, kept_bridges, tree_ok ? "ok" : "VIOLATED");
  report("A7", step1_bridges >= 1 && kept_bridges == 0 && tree_ok, detail);
}

// A8: planted clique recovery plus exhaustive modularity agreement on n=4.
void a8_walktrap_recovery() {
  bool recovered = true;
  for (int k = 2; k <= 4 && recovered; ++k)
    for (int size = 3; size <= 6 && recovered; ++size) {
      AffinityGraph g;
      g.n = k * size;
      for (int c = 0; c < k; ++c) {
        const int base = c * size;
        for (int i = 0; i < size; ++i)
          for (int j = i + 1; j < size; ++j)
            g.edges.push_back({base + i, base + j, 1.0});
        if (c > 0) g.edges.push_back({base - 1, base, 1.0});
      }
      const CommunityPartition p = walktrap(g, 4);
      recovered &= p.count == k;
      for (int v = 0; v < g.n && recovered; ++v)
        recovered &= p.community_of[v] == p.community_of[(v / size) * size];
    }

  // n=4 instances against exhaustive enumeration of all 15 partitions.
  bool exhaustive_ok = true;
  const std::vector<AffinityGraph> instances = {
      {4, {{0, 1, 10.0}, {1, 2, 1.0}, {2, 3, 10.0}}},
      {4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}, {1, 2, 1.0}, {1, 3, 1.0},
           {2, 3, 1.0}}},
      {4, {{0, 1, 10.0}, {1, 2, 1.0}, {2, 3, 10.0}, {0, 3, 1.0}}},
  };
  for (const AffinityGraph& g : instances) {
    const CommunityPartition p = walktrap(g, 4);
    std::vector<std::tuple<int, int, double>> tuples;
    for (const auto& e : g.edges) tuples.push_back({e.u, e.v, e.w});
    const double got = oracle::modularity_pairwise(4, tuples, p.community_of);
    double best = -1.0;
    for (const auto& labels : oracle::all_partitions(4))
      best = std::max(best, oracle::modularity_pairwise(4, tuples, labels));
    exhaustive_ok &= std::abs(got - best) <= 1e-12;
  }
  report("A8", recovered && exhaustive_ok,
         std::string("cliques (k<=4, size 3..6) recovered: ") +
             (recovered ? "yes" : "NO") +
             "; n=4 partitions hit the exhaustive modularity maximum: " +
             (exhaustive_ok ? "yes" : "NO"));
}

// A9: synthetic 1139x7 dataset end to end through the CLI with the default
// budget in under 5 minutes.
void a9_scale_anchor() {
  const fs::path csv = fs::temp_directory_path() / "stad_a9_air.csv";
  {
    std::mt19937_64 rng(1139);
    std::ofstream out(csv);
    char buf[64];
    for (int i = 0; i < 1139; ++i) {
      const int cluster = i < 300 ? 0 : (i < 750 ? 1 : 2);
      for (int k = 0; k < 7; ++k) {
        const double v = cluster * 3.0 + 0.8 * k +
                         std::sin(2.0 * M_PI * i / 52.0 + k) +
                         datasets::gaussian(rng);
        std::snprintf(buf, sizeof(buf), "%.10f", v);
        out << buf << (k < 6 ? "," : "\n");
      }
    }
  }
  const fs::path dir = fresh_dir("stad_a9_run");
  const auto t0 = std::chrono::steady_clock::now();
  const int code =
      run_cli("run --input " + csv.string() + " --out-dir " + dir.string());
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  const bool artifacts = fs::exists(dir / "network.json") &&
                         fs::exists(dir / "trace.csv") &&
                         fs::exists(dir / "run.log");
  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "1139x7 cmd_run finished in %.1fs (limit 300s), exit %d", secs,
                code);
  report("A9", code == 0 && artifacts && secs < 300.0, detail);
}

// A10: byte-identical canonical JSON across two runs of the same config.
void a10_determinism() {
  const fs::path a = fresh_dir("stad_a10_a");
  const fs::path b = fresh_dir("stad_a10_b");
  const std::string input = std::string(STAD_DATA_DIR) + "/circle30.csv";
  const std::string base = "run --input " + input + " --seed 17 --threads 2 ";
  const int code_a = run_cli(base + "--out-dir " + a.string());
  const int code_b = run_cli(base + "--out-dir " + b.string());
  const std::string ja = slurp(a / "network.json");
  const std::string jb = slurp(b / "network.json");
  const bool same = !ja.empty() && ja == jb &&
                    slurp(a / "trace.csv") == slurp(b / "trace.csv");
  report("A10", code_a == 0 && code_b == 0 && same,
         same ? "network.json and trace.csv byte-identical across reruns"
              : "exports differ across reruns");
}

// A11: pearson matches the closed-form product-moment value on 1000 random
// pairs within 1e-12, plus the three fixed examples.
void a11_pearson_correctness() {
  std::mt19937_64 rng(1111);
  int matched = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t len = 3 + rng() % 200;
    std::vector<double> a(len), b(len);
    for (auto& x : a) x = datasets::uniform01(rng) * 20.0 - 10.0;
    for (auto& x : b) x = datasets::uniform01(rng) * 20.0 - 10.0;
    if (std::abs(pearson(a, b) - oracle::pearson(a, b)) <= 1e-12) ++matched;
  }
  const std::vector<double> up = {1, 2, 3};
  const std::vector<double> down = {3, 2, 1};
  const std::vector<double> x = {1, 2, 3, 4};
  const std::vector<double> y = {1, 3, 2, 4};
  const bool fixed = std::abs(pearson(up, up) - 1.0) <= 1e-12 &&
                     std::abs(pearson(up, down) + 1.0) <= 1e-12 &&
                     std::abs(pearson(x, y) - 0.8) <= 1e-12;
  char detail[96];
  std::snprintf(detail, sizeof(detail),
                "%d/1000 random pairs within 1e-12; fixed examples %s", matched,
                fixed ? "exact" : "WRONG");
  report("A11", matched == 1000 && fixed, detail);
}

}  // namespace

int main() {
  a1_oracle_equivalence();
  a2_improvement_over_mst();
  a3_degenerate_endpoint();
  a4_mst_exactness();
  a5_apsp_exactness();
  a6_filter_equivalence();
  a7_filter_mst_contract();
  a8_walktrap_recovery();
  a9_scale_anchor();
  a10_determinism();
  a11_pearson_correctness();
  if (failures == 0)
    std::printf("acceptance: all 11 criteria passed\n");
  else
    std::printf("acceptance: %d criterion(s) FAILED\n", failures);
  return failures;
}
