#pragma once

#include <string>

#include "stad/layout.hpp"
#include "stad/network.hpp"
#include "stad/objective.hpp"

namespace stad {

/// GraphML 1.0 with <key> declarations for weight, label and node attributes;
/// numerics carry 17 significant digits.
std::string export_graphml(const StadNetwork& net);

/// Graphviz DOT with weight edge attributes; provenance as comments.
std::string export_dot(const StadNetwork& net);

/// Canonical interchange format: {nodes, links, meta}. Deterministic bytes
/// for identical networks; numerics round-trip losslessly.
std::string export_json(const StadNetwork& net);

StadNetwork import_json(const std::string& bytes);

struct SvgStyle {
  std::string size_attr;   // numeric attribute mapped to radius
  std::string color_attr;  // attribute treated as categories
  double radius_min = 4.0;
  double radius_max = 14.0;
  std::string default_fill = "#4878a8";
};

/// One circle per vertex, one line per edge, correlation in the caption.
std::string render_svg(const StadNetwork& net, const LayoutResult& lay,
                       const SvgStyle& style = {});

/// Trace as CSV (columns i, r) with the config hash in a comment line.
std::string trace_csv(const CorrelationTrace& trace,
                      const std::string& config_hash = "");

/// Correlation-vs-edges line plot.
std::string render_curve_svg(const CorrelationTrace& trace,
                             const std::string& config_hash = "");

}  // namespace stad
