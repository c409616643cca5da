#include "stad/metrics.hpp"

#include <cmath>

namespace stad {

Metric metric_from_string(const std::string& name) {
  if (name == "euclidean") return Metric::euclidean;
  if (name == "manhattan") return Metric::manhattan;
  if (name == "cosine" || name == "cosine-dissimilarity") return Metric::cosine;
  throw ConfigError("unknown metric: " + name);
}

std::string to_string(Metric metric) {
  switch (metric) {
    case Metric::euclidean: return "euclidean";
    case Metric::manhattan: return "manhattan";
    case Metric::cosine: return "cosine-dissimilarity";
  }
  return "?";
}

namespace {

double euclidean(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

double manhattan(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]);
  return s;
}

double cosine_dissimilarity(std::span<const double> a, std::span<const double> b,
                            int i, int j) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    dot += a[k] * b[k];
    na += a[k] * a[k];
    nb += b[k] * b[k];
  }
  if (na == 0.0)
    throw DataError("zero-norm row " + std::to_string(i) + " under cosine metric");
  if (nb == 0.0)
    throw DataError("zero-norm row " + std::to_string(j) + " under cosine metric");
  const double c = 1.0 - dot / std::sqrt(na * nb);
  return c < 0.0 ? 0.0 : c;  // rounding can push cos similarity past 1
}

}  // namespace

DistanceMatrix compute_distances(const PointCloud& cloud, Metric metric) {
  validate(cloud);
  const int n = cloud.n;
  std::vector<double> condensed(condensed_size(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double d = 0.0;
      switch (metric) {
        case Metric::euclidean: d = euclidean(cloud.row(i), cloud.row(j)); break;
        case Metric::manhattan: d = manhattan(cloud.row(i), cloud.row(j)); break;
        case Metric::cosine:
          d = cosine_dissimilarity(cloud.row(i), cloud.row(j), i, j);
          break;
      }
      condensed[condensed_index(n, i, j)] = d;
    }
  }
  return DistanceMatrix(n, std::move(condensed));
}

}  // namespace stad
