#pragma once

#include <filesystem>

#include "stad/types.hpp"

namespace stad {

struct CsvOptions {
  char delimiter = ',';
  bool header = false;
  bool label_column = false;  // first column holds row labels
};

/// Parse a rectangular numeric table into a PointCloud. Blank lines are
/// skipped; no quoting support. Parse failures report 1-based row/column.
PointCloud load_points(const std::filesystem::path& file,
                       const CsvOptions& options = {});

/// Read a square numeric matrix. Asymmetry within 1e-9 relative tolerance is
/// symmetrized by averaging, diagonal entries within tolerance are forced to
/// zero; anything worse is an error, as are negative entries.
DistanceMatrix load_distance_matrix(const std::filesystem::path& file,
                                    char delimiter = ',');

void write_distance_matrix(const DistanceMatrix& d,
                           const std::filesystem::path& file,
                           char delimiter = ',');

}  // namespace stad
