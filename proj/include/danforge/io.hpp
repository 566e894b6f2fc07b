#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "danforge/bounds.hpp"
#include "danforge/construct.hpp"
#include "danforge/demand.hpp"
#include "danforge/netgraph.hpp"
#include "danforge/spanners.hpp"
#include "danforge/trees.hpp"

namespace danforge {

using Json = nlohmann::ordered_json;

// {"n", "entries": [{"src", "dst", "w"}], "normalized": true}
Json demand_to_json(const Demand& demand);
// Normalizes the weights unless "normalized" is true. Throws Parse on a
// malformed document and the usual demand errors on invalid content.
Demand demand_from_json(const Json& doc);

// Text format: "n m" then one "u v" line per edge.
std::string graph_to_text(const HostNetwork& graph);
HostNetwork graph_from_text(std::istream& in);
Json graph_to_json(const HostNetwork& graph);
HostNetwork graph_from_json(const Json& doc);

// Files: a graph file starting with '{' is read as JSON, otherwise as text.
Demand read_demand(const std::string& path);
HostNetwork read_graph(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

Json report_to_json(const BuildReport& report);
Json spanner_stats_to_json(const SpannerResult& result);
Json oracle_to_json(const OracleResult& result);
Json bound_to_json(const BoundReport& bound);
Json tree_to_json(const RootedTree& tree);

}  // namespace danforge
