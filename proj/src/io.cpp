#include "danforge/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "danforge/error.hpp"

namespace danforge {

namespace {

[[noreturn]] void parse_error(const std::string& message) { throw Error(ErrorCode::Parse, message); }

Json number_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

template <typename T>
T field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) parse_error(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    parse_error(std::string("bad value for '") + key + "'");
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json parse_json(const std::string& text, const std::string& path) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_error("'" + path + "': " + e.what());
  }
}

Json edge_list(const HostNetwork& graph) {
  Json edges = Json::array();
  for (const auto& e : graph.edges()) edges.push_back({e.u, e.v});
  return edges;
}

}  // namespace

Json demand_to_json(const Demand& demand) {
  Json entries = Json::array();
  for (const auto& e : demand.entries()) entries.push_back({{"src", e.src}, {"dst", e.dst}, {"w", e.p}});
  return {{"n", demand.node_count()}, {"entries", std::move(entries)}, {"normalized", true}};
}

Demand demand_from_json(const Json& doc) {
  const auto n = field<std::size_t>(doc, "n");
  const bool normalized = doc.contains("normalized") && field<bool>(doc, "normalized");
  const auto& list = doc.contains("entries") ? doc.at("entries") : Json();
  if (!list.is_array()) parse_error("'entries' must be an array");
  std::vector<WeightedPair> raw;
  raw.reserve(list.size());
  for (const auto& item : list) {
    const auto src = field<std::int64_t>(item, "src");
    const auto dst = field<std::int64_t>(item, "dst");
    if (src < 0 || dst < 0 || src > std::numeric_limits<NodeId>::max() ||
        dst > std::numeric_limits<NodeId>::max()) {
      throw Error(ErrorCode::InvalidDemand, "node id out of range");
    }
    raw.push_back({static_cast<NodeId>(src), static_cast<NodeId>(dst), field<double>(item, "w")});
  }
  if (!normalized) return normalize(n, raw);
  std::vector<DemandEntry> entries;
  entries.reserve(raw.size());
  for (const auto& r : raw) entries.push_back({r.src, r.dst, r.w});
  return Demand::from_entries(n, std::move(entries));
}

std::string graph_to_text(const HostNetwork& graph) {
  std::ostringstream out;
  out << graph.node_count() << ' ' << graph.edge_count() << '\n';
  for (const auto& e : graph.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

HostNetwork graph_from_text(std::istream& in) {
  long long n = -1, m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) parse_error("graph header must be 'n m'");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long k = 0; k < m; ++k) {
    long long u = -1, v = -1;
    if (!(in >> u >> v)) parse_error("graph file ends before " + std::to_string(m) + " edges");
    if (u < 0 || v < 0 || u >= n || v >= n) throw Error(ErrorCode::ShapeMismatch, "edge endpoint out of range");
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  std::string extra;
  if (in >> extra) parse_error("trailing data after " + std::to_string(m) + " edges");
  return HostNetwork::from_edges(static_cast<std::size_t>(n), edges);
}

Json graph_to_json(const HostNetwork& graph) {
  return {{"n", graph.node_count()}, {"edges", edge_list(graph)}};
}

HostNetwork graph_from_json(const Json& doc) {
  const auto n = field<std::size_t>(doc, "n");
  const auto pairs = field<std::vector<std::pair<std::int64_t, std::int64_t>>>(doc, "edges");
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [u, v] : pairs) {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
      throw Error(ErrorCode::ShapeMismatch, "edge endpoint out of range");
    }
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  return HostNetwork::from_edges(n, edges);
}

Demand read_demand(const std::string& path) { return demand_from_json(parse_json(slurp(path), path)); }

HostNetwork read_graph(const std::string& path) {
  const auto text = slurp(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return graph_from_json(parse_json(text, path));
  std::istringstream in(text);
  return graph_from_text(in);
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << contents)) parse_error("cannot write '" + path + "'");
}

Json report_to_json(const BuildReport& r) {
  Json helpers = Json::array();
  for (const auto& h : r.helpers) helpers.push_back({{"helper", h.helper}, {"src", h.src}, {"dst", h.dst}});
  Json doc = {{"algo", r.algo},
              {"max_degree", r.max_degree},
              {"degree_bound", r.degree_bound},
              {"epl", number_or_null(r.epl)},
              {"h_xy", r.h_xy},
              {"h_yx", r.h_yx},
              {"ratio", number_or_null(r.ratio)},
              {"helpers", std::move(helpers)}};
  if (r.spanner_epl) doc["spanner_epl"] = number_or_null(*r.spanner_epl);
  if (r.certificate) {
    doc["certificate"] = {{"degree_bound", r.certificate->degree_bound},
                          {"stretch_bound", r.certificate->stretch_bound},
                          {"max_stretch", r.certificate->max_stretch},
                          {"helpers_over_capacity", r.certificate->helpers_over_capacity}};
  }
  if (!r.warnings.empty()) doc["warnings"] = r.warnings;
  return doc;
}

Json spanner_stats_to_json(const SpannerResult& r) {
  return {{"edges", r.edge_count},
          {"nd", number_or_null(r.distortion.nd)},
          {"apd", number_or_null(r.distortion.apd)},
          {"max_stretch", number_or_null(r.distortion.max_demand_distortion)},
          {"variant", r.variant == SpannerVariant::subgraph ? "subgraph" : "metric"}};
}

Json oracle_to_json(const OracleResult& r) {
  return {{"optimum", number_or_null(r.optimum)}, {"witness_edges", edge_list(r.witness)}, {"searched", r.searched}};
}

Json bound_to_json(const BoundReport& b) {
  return {{"delta", b.delta},
          {"h_xy", b.hx_given_y},
          {"h_yx", b.hy_given_x},
          {"raw", b.raw},
          {"lower_bound", b.lower_bound}};
}

Json tree_to_json(const RootedTree& tree) {
  Json parents = Json::array();
  for (std::size_t p : tree.parents()) {
    if (p == kNoParent) {
      parents.push_back(nullptr);
    } else {
      parents.push_back(p);
    }
  }
  return {{"arity", tree.arity()}, {"parents", std::move(parents)}, {"items", tree.items()}};
}

}  // namespace danforge
