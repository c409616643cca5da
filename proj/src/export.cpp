#include "stad/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace stad {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

const char* kPalette[] = {"#4878a8", "#e1812c", "#3a923a", "#c03d3e",
                          "#9372b2", "#84584e", "#d684bd", "#797979",
                          "#bcbd45", "#56bcc2", "#1f4e79", "#f2c14e"};

}  // namespace

std::string export_graphml(const StadNetwork& net) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
      << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n";
  int key_index = 0;
  std::map<std::string, std::string> attr_key;
  for (const auto& [name, _] : net.node_attrs) {
    const std::string id = "a" + std::to_string(key_index++);
    attr_key[name] = id;
    out << "  <key id=\"" << id << "\" for=\"node\" attr.name=\""
        << xml_escape(name) << "\" attr.type=\"double\"/>\n";
  }
  for (const auto& [name, _] : net.meta) {
    out << "  <key id=\"meta_" << xml_escape(name)
        << "\" for=\"graph\" attr.name=\"" << xml_escape(name)
        << "\" attr.type=\"string\"/>\n";
  }
  out << "  <key id=\"meta_correlation\" for=\"graph\" attr.name=\"correlation\""
      << " attr.type=\"double\"/>\n";
  out << "  <graph id=\"stad\" edgedefault=\"undirected\">\n";
  out << "    <data key=\"meta_correlation\">" << num(net.correlation)
      << "</data>\n";
  for (const auto& [name, value] : net.meta)
    out << "    <data key=\"meta_" << xml_escape(name) << "\">"
        << xml_escape(value) << "</data>\n";
  for (int v = 0; v < net.n; ++v) {
    out << "    <node id=\"n" << v << "\">";
    out << "<data key=\"label\">" << xml_escape(net.labels[v]) << "</data>";
    for (const auto& [name, column] : net.node_attrs)
      out << "<data key=\"" << attr_key[name] << "\">" << num(column[v])
          << "</data>";
    out << "</node>\n";
  }
  for (const Edge& e : net.edges)
    out << "    <edge source=\"n" << e.u << "\" target=\"n" << e.v
        << "\"><data key=\"weight\">" << num(e.w) << "</data></edge>\n";
  out << "  </graph>\n</graphml>\n";
  return out.str();
}

std::string export_dot(const StadNetwork& net) {
  std::ostringstream out;
  out << "graph stad {\n";
  out << "  // correlation=" << num(net.correlation) << "\n";
  for (const auto& [name, value] : net.meta)
    out << "  // " << name << "=" << value << "\n";
  for (int v = 0; v < net.n; ++v)
    out << "  n" << v << " [label=\"" << dot_escape(net.labels[v]) << "\"];\n";
  for (const Edge& e : net.edges)
    out << "  n" << e.u << " -- n" << e.v << " [weight=\"" << num(e.w)
        << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string export_json(const StadNetwork& net) {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (int v = 0; v < net.n; ++v) {
    nlohmann::json node;
    node["id"] = v;
    node["label"] = net.labels[v];
    nlohmann::json attrs = nlohmann::json::object();
    for (const auto& [name, column] : net.node_attrs) attrs[name] = column[v];
    node["attrs"] = attrs;
    j["nodes"].push_back(node);
  }
  j["links"] = nlohmann::json::array();
  for (const Edge& e : net.edges) {
    nlohmann::json link;
    link["source"] = e.u;
    link["target"] = e.v;
    link["weight"] = e.w;
    j["links"].push_back(link);
  }
  nlohmann::json meta = nlohmann::json::object();
  for (const auto& [name, value] : net.meta) meta[name] = value;
  meta["correlation"] = net.correlation;
  j["meta"] = meta;
  return j.dump(2) + "\n";
}

StadNetwork import_json(const std::string& bytes) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("cannot parse network JSON: ") + e.what());
  }
  StadNetwork net;
  if (!j.contains("nodes") || !j.contains("links"))
    throw DataError("network JSON lacks nodes/links");
  net.n = static_cast<int>(j["nodes"].size());
  net.labels.resize(net.n);
  for (const auto& node : j["nodes"]) {
    const int id = node.at("id").get<int>();
    if (id < 0 || id >= net.n) throw DataError("node id out of range");
    net.labels[id] = node.value("label", std::to_string(id));
    if (node.contains("attrs"))
      for (const auto& [name, value] : node["attrs"].items()) {
        auto& column = net.node_attrs[name];
        column.resize(net.n, 0.0);
        column[id] = value.get<double>();
      }
  }
  for (const auto& link : j["links"]) {
    Edge e;
    e.u = link.at("source").get<int>();
    e.v = link.at("target").get<int>();
    e.w = link.at("weight").get<double>();
    if (e.u > e.v) std::swap(e.u, e.v);
    net.edges.push_back(e);
  }
  if (j.contains("meta")) {
    for (const auto& [name, value] : j["meta"].items()) {
      if (name == "correlation")
        net.correlation = value.get<double>();
      else
        net.meta[name] = value.is_string() ? value.get<std::string>()
                                           : value.dump();
    }
  }
  return net;
}

std::string render_svg(const StadNetwork& net, const LayoutResult& lay,
                       const SvgStyle& style) {
  if (static_cast<int>(lay.pos.size()) != net.n)
    throw ConfigError("layout does not cover all vertices");

  std::vector<double> radius(net.n, 0.5 * (style.radius_min + style.radius_max));
  if (!style.size_attr.empty()) {
    const auto it = net.node_attrs.find(style.size_attr);
    if (it == net.node_attrs.end())
      throw ConfigError("size mapping references missing attribute '" +
                        style.size_attr + "'");
    const auto [lo_it, hi_it] =
        std::minmax_element(it->second.begin(), it->second.end());
    const double lo = *lo_it, hi = *hi_it;
    for (int v = 0; v < net.n; ++v) {
      const double t = hi > lo ? (it->second[v] - lo) / (hi - lo) : 0.5;
      radius[v] = style.radius_min + t * (style.radius_max - style.radius_min);
    }
  }

  std::vector<std::string> fill(net.n, style.default_fill);
  if (!style.color_attr.empty()) {
    const auto it = net.node_attrs.find(style.color_attr);
    if (it == net.node_attrs.end())
      throw ConfigError("color mapping references missing attribute '" +
                        style.color_attr + "'");
    std::set<double> values(it->second.begin(), it->second.end());
    std::map<double, int> category;
    int next = 0;
    for (double v : values) category[v] = next++;
    const int palette_size = static_cast<int>(std::size(kPalette));
    for (int v = 0; v < net.n; ++v)
      fill[v] = kPalette[category[it->second[v]] % palette_size];
  }

  double lo_x = 0, hi_x = 1, lo_y = 0, hi_y = 1;
  if (net.n > 0) {
    lo_x = hi_x = lay.pos[0][0];
    lo_y = hi_y = lay.pos[0][1];
    for (const auto& p : lay.pos) {
      lo_x = std::min(lo_x, p[0]);
      hi_x = std::max(hi_x, p[0]);
      lo_y = std::min(lo_y, p[1]);
      hi_y = std::max(hi_y, p[1]);
    }
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
  const double canvas = 720.0, margin = 40.0;
  auto sx = [&](double x) {
    return margin + (x - lo_x) / span * (canvas - 2 * margin);
  };
  auto sy = [&](double y) {
    return margin + (y - lo_y) / span * (canvas - 2 * margin);
  };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << canvas
      << "\" height=\"" << canvas + 30 << "\" viewBox=\"0 0 " << canvas << " "
      << canvas + 30 << "\">\n";
  if (net.meta.count("config_hash"))
    out << "  <!-- config_hash=" << xml_escape(net.meta.at("config_hash"))
        << " -->\n";
  for (const Edge& e : net.edges)
    out << "  <line x1=\"" << sx(lay.pos[e.u][0]) << "\" y1=\""
        << sy(lay.pos[e.u][1]) << "\" x2=\"" << sx(lay.pos[e.v][0])
        << "\" y2=\"" << sy(lay.pos[e.v][1])
        << "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
  for (int v = 0; v < net.n; ++v)
    out << "  <circle cx=\"" << sx(lay.pos[v][0]) << "\" cy=\""
        << sy(lay.pos[v][1]) << "\" r=\"" << radius[v] << "\" fill=\""
        << fill[v] << "\"><title>" << xml_escape(net.labels[v])
        << "</title></circle>\n";
  char caption[64];
  std::snprintf(caption, sizeof(caption), "correlation r = %.4f",
                net.correlation);
  out << "  <text x=\"" << margin << "\" y=\"" << canvas + 20
      << "\" font-family=\"sans-serif\" font-size=\"14\">" << caption
      << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::string trace_csv(const CorrelationTrace& trace,
                      const std::string& config_hash) {
  std::ostringstream out;
  if (!config_hash.empty()) out << "# config_hash=" << config_hash << "\n";
  out << "i,r\n";
  for (const TracePoint& p : trace.points) out << p.i << "," << num(p.r) << "\n";
  return out.str();
}

std::string render_curve_svg(const CorrelationTrace& trace,
                             const std::string& config_hash) {
  const double width = 720.0, height = 420.0, margin = 50.0;
  double i_max = 1.0;
  for (const TracePoint& p : trace.points)
    i_max = std::max(i_max, static_cast<double>(p.i));
  auto sx = [&](double i) { return margin + i / i_max * (width - 2 * margin); };
  auto sy = [&](double r) {
    return height - margin - r * (height - 2 * margin);  // r plotted in [0,1]
  };
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  if (!config_hash.empty())
    out << "  <!-- config_hash=" << xml_escape(config_hash) << " -->\n";
  out
      << "  <line x1=\"" << margin << "\" y1=\"" << sy(0) << "\" x2=\""
      << width - margin << "\" y2=\"" << sy(0)
      << "\" stroke=\"#333333\"/>\n"
      << "  <line x1=\"" << margin << "\" y1=\"" << sy(0) << "\" x2=\""
      << margin << "\" y2=\"" << sy(1) << "\" stroke=\"#333333\"/>\n";
  out << "  <polyline fill=\"none\" stroke=\"#4878a8\" stroke-width=\"1.5\" "
         "points=\"";
  for (const TracePoint& p : trace.points)
    out << sx(p.i) << "," << sy(std::clamp(p.r, 0.0, 1.0)) << " ";
  out << "\"/>\n";
  if (!trace.points.empty()) {
    const TracePoint& best = trace.best();
    out << "  <circle cx=\"" << sx(best.i) << "\" cy=\""
        << sy(std::clamp(best.r, 0.0, 1.0))
        << "\" r=\"4\" fill=\"#c03d3e\"/>\n";
    char label[96];
    std::snprintf(label, sizeof(label), "max r = %.4f at i = %d", best.r,
                  best.i);
    out << "  <text x=\"" << margin + 10 << "\" y=\"" << margin
        << "\" font-family=\"sans-serif\" font-size=\"14\">" << label
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace stad
