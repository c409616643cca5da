#include "stad/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace stad {

std::vector<double> PointCloud::column(int k) const {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = at(i, k);
  return out;
}

int PointCloud::column_index(const std::string& name) const {
  for (std::size_t k = 0; k < column_names.size(); ++k)
    if (column_names[k] == name) return static_cast<int>(k);
  return -1;
}

void validate(const PointCloud& cloud) {
  if (cloud.n < 3)
    throw DataError("point cloud needs at least 3 points, got " +
                    std::to_string(cloud.n));
  if (cloud.m < 1) throw DataError("point cloud has no numeric columns");
  for (double v : cloud.values)
    if (!std::isfinite(v)) throw DataError("point cloud contains a non-finite value");
}

DistanceMatrix::DistanceMatrix(int n, std::vector<double> condensed)
    : n_(n), entries_(std::move(condensed)) {
  if (n_ < 2) throw DataError("distance matrix needs at least 2 elements");
  if (entries_.size() != condensed_size(n_))
    throw DataError("condensed distance storage has wrong length");
  for (double v : entries_) {
    if (!std::isfinite(v)) throw DataError("non-finite distance entry");
    if (v < 0.0) throw DataError("negative distance entry");
  }
}

namespace {

struct Table {
  std::vector<std::vector<std::string>> cells;  // raw fields per line
};

std::vector<std::string> split_fields(const std::string& line, char delimiter) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (c == delimiter) {
      out.push_back(field);
      field.clear();
    } else {
      field += c;
    }
  }
  out.push_back(field);
  return out;
}

Table read_table(const std::filesystem::path& file, char delimiter) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open input file: " + file.string());
  Table t;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) { blank = false; break; }
    if (blank) continue;
    t.cells.push_back(split_fields(line, delimiter));
  }
  if (t.cells.empty()) throw DataError("input file is empty: " + file.string());
  return t;
}

std::string trimmed(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// row/col are 1-based positions in the file, for diagnostics.
double parse_cell(const std::string& raw, std::size_t row, std::size_t col) {
  const std::string s = trimmed(raw);
  double value = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw DataError("row " + std::to_string(row) + ", column " +
                    std::to_string(col) + ": cannot parse '" + s +
                    "' as a number");
  if (!std::isfinite(value))
    throw DataError("row " + std::to_string(row) + ", column " +
                    std::to_string(col) + ": non-finite value");
  return value;
}

}  // namespace

PointCloud load_points(const std::filesystem::path& file,
                       const CsvOptions& options) {
  Table t = read_table(file, options.delimiter);

  PointCloud cloud;
  std::size_t first_row = 0;
  const std::size_t skip_cols = options.label_column ? 1 : 0;

  if (options.header) {
    const auto& h = t.cells[0];
    for (std::size_t k = skip_cols; k < h.size(); ++k)
      cloud.column_names.push_back(trimmed(h[k]));
    first_row = 1;
  }

  if (t.cells.size() <= first_row) throw DataError("no data rows in " + file.string());
  const std::size_t width = t.cells[first_row].size();
  if (width <= skip_cols) throw DataError("no numeric columns in " + file.string());

  for (std::size_t r = first_row; r < t.cells.size(); ++r) {
    const auto& row = t.cells[r];
    if (row.size() != width)
      throw DataError("ragged table: row " + std::to_string(r + 1) + " has " +
                      std::to_string(row.size()) + " fields, expected " +
                      std::to_string(width));
    if (options.label_column) cloud.row_labels.push_back(trimmed(row[0]));
    for (std::size_t c = skip_cols; c < width; ++c)
      cloud.values.push_back(parse_cell(row[c], r + 1, c + 1));
  }

  cloud.n = static_cast<int>(t.cells.size() - first_row);
  cloud.m = static_cast<int>(width - skip_cols);
  validate(cloud);
  return cloud;
}

DistanceMatrix load_distance_matrix(const std::filesystem::path& file,
                                    char delimiter) {
  Table t = read_table(file, delimiter);
  const std::size_t n = t.cells.size();
  if (n < 3) throw DataError("distance matrix needs at least 3 rows");

  std::vector<double> full(n * n);
  double scale = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    if (t.cells[r].size() != n)
      throw DataError("distance matrix is not square: row " +
                      std::to_string(r + 1) + " has " +
                      std::to_string(t.cells[r].size()) + " fields, expected " +
                      std::to_string(n));
    for (std::size_t c = 0; c < n; ++c) {
      const double v = parse_cell(t.cells[r][c], r + 1, c + 1);
      if (v < 0.0)
        throw DataError("negative distance at row " + std::to_string(r + 1) +
                        ", column " + std::to_string(c + 1));
      full[r * n + c] = v;
      scale = std::max(scale, std::abs(v));
    }
  }

  const double tol = 1e-9;
  const double diag_tol = tol * std::max(1.0, scale);
  std::vector<double> condensed;
  condensed.reserve(condensed_size(static_cast<int>(n)));
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(full[i * n + i]) > diag_tol)
      throw DataError("nonzero diagonal at row " + std::to_string(i + 1));
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = full[i * n + j];
      const double b = full[j * n + i];
      const double diff = std::abs(a - b);
      if (diff > tol * std::max({std::abs(a), std::abs(b), 1.0}))
        throw DataError("asymmetric beyond tolerance at (" +
                        std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                        "): " + std::to_string(a) + " vs " + std::to_string(b));
      condensed.push_back(0.5 * (a + b));
    }
  }
  return DistanceMatrix(static_cast<int>(n), std::move(condensed));
}

void write_distance_matrix(const DistanceMatrix& d,
                           const std::filesystem::path& file, char delimiter) {
  std::ofstream out(file);
  if (!out) throw DataError("cannot write file: " + file.string());
  const int n = d.size();
  char buf[64];
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", d(i, j));
      out << buf;
      if (j + 1 < n) out << delimiter;
    }
    out << '\n';
  }
}

}  // namespace stad
