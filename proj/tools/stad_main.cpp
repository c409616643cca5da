// Command-line front end: ingest -> (optional filter) -> optimize -> export,
// plus curve/oracle diagnostics and re-export of saved networks.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "stad/export.hpp"
#include "stad/io.hpp"
#include "stad/layout.hpp"
#include "stad/metrics.hpp"
#include "stad/pipeline.hpp"
#include "stad/version.hpp"

namespace fs = std::filesystem;
using namespace stad;

namespace {

struct RunConfig {
  std::string input;
  std::string input_kind = "points";  // points | distances
  std::string metric = "euclidean";
  std::string delimiter = ",";
  bool header = false;
  bool labels = false;

  std::vector<std::string> filter_dims;  // column:<name>|file:<path>[:col]|stat:<name>
  std::vector<int> filter_r;
  std::string filter_strategy = "equal-width";
  std::vector<bool> cyclic;

  std::string mst_mode = "classical";
  std::string correlate_against = "reduced";

  std::uint64_t seed = 17;  // fixed documented default
  int budget = 250;
  double sa_initial_temp = 0.0;  // 0 = calibrate
  double sa_cooling = 0.9;
  int sa_steps_per_temp = 10;

  int threads = 0;
  std::string out_dir;
  std::vector<std::string> formats = {"json"};
  int stride = 1;
  int oracle_cap = 5000;
  int layout_iterations = 300;
  int verbosity = 0;
};

// Hash of the semantic configuration; output routing and verbosity excluded,
// so re-runs into different directories stay comparable.
std::string config_hash(const RunConfig& c, const std::string& command) {
  std::ostringstream s;
  s << command << '|' << c.input << '|' << c.input_kind << '|' << c.metric
    << '|' << c.delimiter << '|' << c.header << '|' << c.labels << '|';
  for (const auto& d : c.filter_dims) s << d << ';';
  s << '|';
  for (int r : c.filter_r) s << r << ';';
  s << '|' << c.filter_strategy << '|';
  for (bool b : c.cyclic) s << b << ';';
  s << '|' << c.mst_mode << '|' << c.correlate_against << '|' << c.seed << '|'
    << c.budget << '|' << c.sa_initial_temp << '|' << c.sa_cooling << '|'
    << c.sa_steps_per_temp << '|' << c.stride << '|' << c.oracle_cap;
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char ch : s.str()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

char parse_delimiter(const std::string& d) {
  if (d == "\\t" || d == "tab") return '\t';
  if (d.size() != 1) throw ConfigError("delimiter must be a single character");
  return d[0];
}

struct LoadedInput {
  DistanceMatrix distances;
  std::optional<PointCloud> cloud;
  std::vector<std::string> labels;
};

LoadedInput load_input(const RunConfig& c) {
  if (c.input.empty()) throw ConfigError("--input is required");
  if (!fs::exists(c.input))
    throw DataError("input path does not exist: " + c.input);
  LoadedInput in;
  if (c.input_kind == "points") {
    CsvOptions opts;
    opts.delimiter = parse_delimiter(c.delimiter);
    opts.header = c.header;
    opts.label_column = c.labels;
    in.cloud = load_points(c.input, opts);
    in.labels = in.cloud->row_labels;
    in.distances = compute_distances(*in.cloud, metric_from_string(c.metric));
  } else if (c.input_kind == "distances") {
    in.distances = load_distance_matrix(c.input, parse_delimiter(c.delimiter));
  } else {
    throw ConfigError("--input-kind must be 'points' or 'distances'");
  }
  return in;
}

std::vector<double> eccentricity(const DistanceMatrix& d) {
  std::vector<double> out(d.size(), 0.0);
  for (int i = 0; i < d.size(); ++i)
    for (int j = 0; j < d.size(); ++j)
      if (i != j) out[i] = std::max(out[i], d(i, j));
  return out;
}

std::vector<double> filter_dim_values(const std::string& spec,
                                      const LoadedInput& in,
                                      const RunConfig& c) {
  const auto colon = spec.find(':');
  const std::string kind = colon == std::string::npos ? "column" : spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? spec : spec.substr(colon + 1);

  if (kind == "column") {
    if (!in.cloud)
      throw ConfigError("filter dimension '" + spec +
                        "' needs point-cloud input");
    int k = in.cloud->column_index(arg);
    if (k < 0) {
      try {
        k = std::stoi(arg);
      } catch (...) {
        throw ConfigError("unknown filter column: " + arg);
      }
    }
    if (k < 0 || k >= in.cloud->m)
      throw ConfigError("filter column out of range: " + arg);
    return in.cloud->column(k);
  }
  if (kind == "file") {
    std::string path = arg;
    int column = 0;
    const auto second = arg.rfind(':');
    if (second != std::string::npos && second > 0) {
      // Treat a trailing :<int> as a column selector.
      try {
        column = std::stoi(arg.substr(second + 1));
        path = arg.substr(0, second);
      } catch (...) {
        column = 0;
      }
    }
    if (!fs::exists(path)) throw DataError("filter file does not exist: " + path);
    CsvOptions opts;
    opts.delimiter = parse_delimiter(c.delimiter);
    std::vector<double> values;
    {
      std::ifstream f(path);
      std::string line;
      std::size_t row = 0;
      while (std::getline(f, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        int k = 0;
        bool found = false;
        while (std::getline(ss, cell, opts.delimiter)) {
          if (k++ == column) {
            try {
              values.push_back(std::stod(cell));
            } catch (...) {
              throw DataError("filter file row " + std::to_string(row) +
                              ": cannot parse '" + cell + "'");
            }
            found = true;
            break;
          }
        }
        if (!found)
          throw DataError("filter file row " + std::to_string(row) +
                          " lacks column " + std::to_string(column));
      }
    }
    if (static_cast<int>(values.size()) != in.distances.size())
      throw DataError("filter file has " + std::to_string(values.size()) +
                      " values for " + std::to_string(in.distances.size()) +
                      " points");
    return values;
  }
  if (kind == "stat") {
    if (arg == "row-mean") {
      if (!in.cloud)
        throw ConfigError("stat:row-mean needs point-cloud input");
      std::vector<double> out(in.cloud->n, 0.0);
      for (int i = 0; i < in.cloud->n; ++i) {
        double s = 0.0;
        for (int k = 0; k < in.cloud->m; ++k) s += in.cloud->at(i, k);
        out[i] = s / in.cloud->m;
      }
      return out;
    }
    if (arg == "eccentricity") return eccentricity(in.distances);
    throw ConfigError("unknown derived statistic: " + arg +
                      " (expected row-mean or eccentricity)");
  }
  throw ConfigError("unknown filter dimension source: " + spec);
}

std::optional<FilterSpec> build_filter(const RunConfig& c, const LoadedInput& in) {
  if (c.filter_dims.empty()) {
    if (c.mst_mode == "filter-aware")
      throw ConfigError("filter-aware MST mode requires --filter-dim");
    return std::nullopt;
  }
  if (c.filter_dims.size() > 2)
    throw ConfigError("filters are one- or two-dimensional");
  FilterSpec spec;
  spec.strategy = filter_strategy_from_string(c.filter_strategy);
  for (std::size_t d = 0; d < c.filter_dims.size(); ++d) {
    FilterDimension dim;
    dim.values = filter_dim_values(c.filter_dims[d], in, c);
    dim.intervals = d < c.filter_r.size() ? c.filter_r[d]
                    : (c.filter_r.empty() ? 1 : c.filter_r.back());
    dim.cyclic = d < c.cyclic.size() ? static_cast<bool>(c.cyclic[d]) : false;
    spec.dims.push_back(std::move(dim));
  }
  return spec;
}

PipelineOptions build_options(const RunConfig& c) {
  PipelineOptions opt;
  opt.mst_mode = mst_mode_from_string(c.mst_mode);
  opt.correlate_against = correlation_target_from_string(c.correlate_against);
  opt.schedule.initial_temperature = c.sa_initial_temp;
  opt.schedule.cooling_ratio = c.sa_cooling;
  opt.schedule.steps_per_temperature = c.sa_steps_per_temp;
  opt.schedule.evaluation_budget = c.budget;
  opt.schedule.seed = c.seed;
  opt.threads = c.threads;
  return opt;
}

fs::path prepare_out_dir(const RunConfig& c, const std::string& hash) {
  fs::path dir = c.out_dir.empty() ? fs::path("stad-runs") / hash
                                   : fs::path(c.out_dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << bytes;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::map<std::string, std::string> provenance(const RunConfig& c,
                                              const std::string& hash,
                                              const PipelineResult& result) {
  std::map<std::string, std::string> meta;
  meta["version"] = STAD_VERSION;
  meta["config_hash"] = hash;
  meta["seed"] = std::to_string(c.seed);
  meta["budget"] = std::to_string(c.budget);
  meta["cooling_ratio"] = format_double(c.sa_cooling);
  meta["steps_per_temperature"] = std::to_string(c.sa_steps_per_temp);
  meta["initial_temperature"] =
      format_double(result.optimum.initial_temperature);
  meta["metric"] = c.metric;
  meta["mst_mode"] = c.mst_mode;
  meta["best_i"] = std::to_string(result.optimum.best_i);
  meta["evaluations"] = std::to_string(result.optimum.evaluations);
  meta["tree_correlation"] = format_double(result.tree_correlation);
  if (!c.filter_dims.empty()) {
    std::string desc;
    for (std::size_t d = 0; d < c.filter_dims.size(); ++d) {
      if (d) desc += " x ";
      desc += c.filter_dims[d] + "(r=" +
              std::to_string(d < c.filter_r.size() ? c.filter_r[d]
                             : c.filter_r.empty() ? 1 : c.filter_r.back()) +
              (d < c.cyclic.size() && c.cyclic[d] ? ",cyclic" : "") + ")";
    }
    meta["filter"] = desc;
    meta["filter_strategy"] = c.filter_strategy;
    meta["correlate_against"] = c.correlate_against;
  }
  return meta;
}

void write_log(const fs::path& dir, const RunConfig& c, const std::string& hash,
               const PipelineResult& result, double seconds) {
  std::ostringstream log;
  const auto now = std::chrono::system_clock::now();
  const auto time = std::chrono::system_clock::to_time_t(now);
  char stamp[64];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&time));
  log << "stad " << STAD_VERSION << " run " << stamp << "\n";
  log << "config_hash " << hash << "\n";
  log << "input " << c.input << " (" << c.input_kind << ", metric " << c.metric
      << ", delimiter '" << c.delimiter << "', header " << c.header
      << ", labels " << c.labels << ")\n";
  log << "seed " << c.seed << " budget " << c.budget << " cooling "
      << c.sa_cooling << " steps/T " << c.sa_steps_per_temp
      << " T0 " << format_double(result.optimum.initial_temperature)
      << (c.sa_initial_temp == 0.0 ? " (calibrated)" : " (configured)") << "\n";
  log << "mst_mode " << c.mst_mode << " correlate_against "
      << c.correlate_against << " threads " << c.threads << "\n";
  {
    std::string fmts;
    for (const auto& f : c.formats) fmts += (fmts.empty() ? "" : ",") + f;
    log << "formats " << fmts << "\n";
  }
  if (result.assignment) {
    log << "filter cells " << result.assignment->cell_count() << "\n";
    for (const auto& w : result.assignment->warnings) log << "warning " << w << "\n";
  }
  log << "best_i " << result.optimum.best_i << " best_r "
      << format_double(result.optimum.best_r) << " evaluations "
      << result.optimum.evaluations << "\n";
  log << "tree_r " << format_double(result.tree_correlation) << "\n";
  log << "elapsed_seconds " << seconds << "\n";
  write_file(dir / "run.log", log.str());
}

void export_network(const StadNetwork& net, const RunConfig& c,
                    const fs::path& dir) {
  for (const std::string& format : c.formats) {
    if (format == "json") {
      write_file(dir / "network.json", export_json(net));
    } else if (format == "graphml") {
      write_file(dir / "network.graphml", export_graphml(net));
    } else if (format == "dot") {
      write_file(dir / "network.dot", export_dot(net));
    } else if (format == "svg") {
      const LayoutResult lay =
          layout(net, std::stoull(net.meta.count("seed") ? net.meta.at("seed")
                                                         : "17"),
                 c.layout_iterations);
      SvgStyle style;
      if (net.node_attrs.count("filter_index_1"))
        style.color_attr = "filter_index_1";
      write_file(dir / "network.svg", render_svg(net, lay, style));
    } else {
      throw ConfigError("unknown format: " + format +
                        " (expected json, graphml, dot or svg)");
    }
  }
}

int cmd_run(const RunConfig& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string hash = config_hash(c, "run");
  const LoadedInput in = load_input(c);
  const std::optional<FilterSpec> filter = build_filter(c, in);
  PipelineResult result = run_pipeline(in.distances, filter, build_options(c),
                                       {}, in.labels);
  result.network.meta = provenance(c, hash, result);

  const fs::path dir = prepare_out_dir(c, hash);
  export_network(result.network, c, dir);
  write_file(dir / "trace.csv", trace_csv(result.optimum.trace, hash));
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  write_log(dir, c, hash, result, seconds);

  if (result.assignment)
    for (const auto& w : result.assignment->warnings)
      std::cerr << "warning: " << w << "\n";
  std::cout << "network: " << (dir / "network.json").string()
            << "\nbest_i: " << result.optimum.best_i
            << "\nbest_r: " << format_double(result.optimum.best_r)
            << "\nevaluations: " << result.optimum.evaluations << "\n";
  return 0;
}

int cmd_curve(const RunConfig& c) {
  if (c.stride < 1) throw ConfigError("--stride must be >= 1");
  const std::string hash = config_hash(c, "curve");
  const LoadedInput in = load_input(c);
  const std::optional<FilterSpec> filter = build_filter(c, in);
  const PipelineSetup setup = make_setup(in.distances, filter, build_options(c));
  const CorrelationTrace trace = correlation_trace(setup.context, c.stride);

  const fs::path dir = prepare_out_dir(c, hash);
  write_file(dir / "curve.csv", trace_csv(trace, hash));
  write_file(dir / "curve.svg", render_curve_svg(trace, hash));
  std::cout << "points: " << trace.points.size() << "\nbest_i: "
            << trace.best().i << "\nbest_r: " << format_double(trace.best().r)
            << "\n";
  return 0;
}

int cmd_oracle(const RunConfig& c) {
  const std::string hash = config_hash(c, "oracle");
  const LoadedInput in = load_input(c);
  const std::optional<FilterSpec> filter = build_filter(c, in);
  const PipelineSetup setup = make_setup(in.distances, filter, build_options(c));
  const OptimizationResult result =
      brute_force_optimum(setup.context, c.oracle_cap);

  const fs::path dir = prepare_out_dir(c, hash);
  nlohmann::json j;
  j["best_i"] = result.best_i;
  j["best_r"] = result.best_r;
  j["evaluations"] = result.evaluations;
  j["config_hash"] = hash;
  write_file(dir / "oracle.json", j.dump(2) + "\n");
  write_file(dir / "trace.csv", trace_csv(result.trace, hash));
  std::cout << "best_i: " << result.best_i
            << "\nbest_r: " << format_double(result.best_r)
            << "\nevaluations: " << result.evaluations << "\n";
  return 0;
}

int cmd_export(const RunConfig& c) {
  if (c.input.empty()) throw ConfigError("--input is required");
  if (!fs::exists(c.input))
    throw DataError("input path does not exist: " + c.input);
  std::ifstream f(c.input, std::ios::binary);
  std::stringstream buffer;
  buffer << f.rdbuf();
  const StadNetwork net = import_json(buffer.str());

  const fs::path dir = c.out_dir.empty() ? fs::path(".") : fs::path(c.out_dir);
  fs::create_directories(dir);
  export_network(net, c, dir);
  std::cout << "exported " << c.formats.size() << " format(s) to "
            << dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"STAD: spanning-tree approximation of high-dimensional data"};
  app.set_version_flag("--version", STAD_VERSION);
  app.set_config("--config", "",
                 "Key-value config file with [run]/[curve]/[oracle] sections; "
                 "flags win on conflict");

  RunConfig c;
  auto add_common = [&](CLI::App* cmd, bool wants_formats) {
    cmd->fallthrough();
    cmd->add_option("--input", c.input, "Input file");
    cmd->add_option("--input-kind", c.input_kind, "points | distances");
    cmd->add_option("--metric", c.metric,
                    "euclidean | manhattan | cosine-dissimilarity");
    cmd->add_option("--delimiter", c.delimiter, "Field delimiter (or 'tab')");
    cmd->add_flag("--header", c.header, "First row is a header");
    cmd->add_flag("--labels", c.labels, "First column holds row labels");
    cmd->add_option("--filter-dim", c.filter_dims,
                    "Filter source: column:<name>, file:<path>[:col], "
                    "stat:row-mean, stat:eccentricity (repeatable)");
    cmd->add_option("--filter-r", c.filter_r,
                    "Intervals per filter dimension (repeatable)");
    cmd->add_option("--filter-strategy", c.filter_strategy,
                    "equal-width | equal-frequency");
    cmd->add_option("--cyclic", c.cyclic,
                    "Cyclic flag per filter dimension (repeatable)");
    cmd->add_option("--mst-mode", c.mst_mode, "classical | filter-aware");
    cmd->add_option("--correlate-against", c.correlate_against,
                    "reduced | full (filter mode only)");
    cmd->add_option("--seed", c.seed, "Random seed (default 17)");
    cmd->add_option("--budget", c.budget, "SA evaluation budget");
    cmd->add_option("--sa-initial-temp", c.sa_initial_temp,
                    "SA initial temperature (0 = calibrate)");
    cmd->add_option("--sa-cooling", c.sa_cooling, "SA cooling ratio");
    cmd->add_option("--sa-steps-per-temp", c.sa_steps_per_temp,
                    "SA steps per temperature level");
    cmd->add_option("--threads", c.threads, "Worker threads (0 = auto)");
    cmd->add_option("--out-dir", c.out_dir,
                    "Output directory (default stad-runs/<config-hash>)");
    if (wants_formats)
      cmd->add_option("--format", c.formats,
                      "Export formats: json, graphml, dot, svg (repeatable)");
    cmd->add_flag("-v,--verbose", c.verbosity, "Verbose logging");
  };

  CLI::App* run = app.add_subcommand("run", "Build an optimized STAD network");
  add_common(run, true);
  CLI::App* curve =
      app.add_subcommand("curve", "Trace correlation against edge count");
  add_common(curve, false);
  curve->add_option("--stride", c.stride, "Evaluate every stride-th i");
  CLI::App* oracle =
      app.add_subcommand("oracle", "Exhaustive optimum for verification");
  add_common(oracle, false);
  oracle->add_option("--cap", c.oracle_cap, "Evaluation cap for brute force");
  CLI::App* exp =
      app.add_subcommand("export", "Re-export a saved JSON network");
  exp->fallthrough();
  exp->add_option("--input", c.input, "network.json produced by 'run'");
  exp->add_option("--out-dir", c.out_dir, "Output directory");
  exp->add_option("--format", c.formats, "json, graphml, dot, svg (repeatable)");
  exp->add_option("--seed", c.seed, "Layout seed for svg");
  exp->add_option("--layout-iterations", c.layout_iterations,
                  "Descent iterations for svg layout");

  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(c);
    if (curve->parsed()) return cmd_curve(c);
    if (oracle->parsed()) return cmd_oracle(c);
    if (exp->parsed()) return cmd_export(c);
    return 1;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
