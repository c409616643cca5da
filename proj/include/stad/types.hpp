#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stad {

// Bad configuration: invalid flags, schedules, caps.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad data: parse failures, asymmetry, negative distances, disconnection.
class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline std::size_t condensed_size(int n) {
  return static_cast<std::size_t>(n) * (n - 1) / 2;
}

// Position of pair (i, j), i != j, in upper-triangular row-major storage.
inline std::size_t condensed_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return static_cast<std::size_t>(i) * n -
         static_cast<std::size_t>(i) * (i + 1) / 2 +
         static_cast<std::size_t>(j - i - 1);
}

struct PointCloud {
  int n = 0;
  int m = 0;
  std::vector<double> values;             // row-major, n*m
  std::vector<std::string> row_labels;    // empty or size n
  std::vector<std::string> column_names;  // empty or size m

  double at(int i, int k) const {
    return values[static_cast<std::size_t>(i) * m + k];
  }
  std::span<const double> row(int i) const {
    return {values.data() + static_cast<std::size_t>(i) * m,
            static_cast<std::size_t>(m)};
  }
  std::vector<double> column(int k) const;
  // Index of a column by header name, -1 if unknown.
  int column_index(const std::string& name) const;
};

// n >= 3, finite values only.
void validate(const PointCloud& cloud);

/// Symmetric nonnegative dissimilarities with zero diagonal, stored condensed
/// (upper triangle only), so symmetry holds by construction.
class DistanceMatrix {
public:
  DistanceMatrix() = default;
  DistanceMatrix(int n, std::vector<double> condensed);

  int size() const { return n_; }
  std::size_t pair_count() const { return entries_.size(); }
  double operator()(int i, int j) const {
    return i == j ? 0.0 : entries_[condensed_index(n_, i, j)];
  }
  double at_pair(std::size_t k) const { return entries_[k]; }
  const std::vector<double>& condensed() const { return entries_; }

private:
  int n_ = 0;
  std::vector<double> entries_;
};

// Undirected edge with endpoints normalized to u < v; w is the original
// distance the edge came from.
struct Edge {
  int u = 0;
  int v = 0;
  double w = 0.0;

  bool operator==(const Edge& o) const { return u == o.u && v == o.v; }
};

// Ascending by (w, u, v): deterministic total order even under weight ties.
inline bool edge_order(const Edge& a, const Edge& b) {
  if (a.w != b.w) return a.w < b.w;
  if (a.u != b.u) return a.u < b.u;
  return a.v < b.v;
}

}  // namespace stad
