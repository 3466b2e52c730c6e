#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "l1prom/graph.hpp"

namespace l1prom {

struct FlowRecord {
  std::string origin;
  std::string destination;
  double count = 0.0;
};

/// Aggregated origin-destination table: each (origin, destination) pair
/// appears once. Regions are listed in order of first appearance.
struct FlowTable {
  std::vector<std::string> regions;
  std::vector<FlowRecord> records;
};

/// Row predicates applied before aggregation. Each one needs its column
/// (`age`, `hour`, `day`) in the header; an absent filter ignores the column.
struct FlowFilter {
  std::optional<double> age_min;
  std::optional<double> age_max;
  std::optional<std::pair<int, int>> hour_range;  // inclusive
  std::vector<std::string> days;                  // empty = any day

  bool empty() const { return !age_min && !age_max && !hour_range && days.empty(); }
};

/// Count written for suppressed cells (the literal `*`).
inline constexpr double kSuppressedCount = 2.0;

/// Reads `origin,destination,count[,age,hour,day,...]`. Suppressed counts
/// become kSuppressedCount; rows are filtered, then summed per pair; pairs
/// whose total is zero are dropped.
FlowTable parse_flow_csv(std::istream& in, const FlowFilter& filter = {}, std::string_view source = "<flows>");
FlowTable parse_flow_csv(const std::filesystem::path& path, const FlowFilter& filter = {});

FlowTable aggregate_flows(std::span<const FlowRecord> raw);

/// Vertices are the table's regions; each off-diagonal record becomes an
/// edge of length 1/count and each self record becomes the region's
/// multiplicity (0 when absent).
Graph build_flow_graph(const FlowTable& table);

}  // namespace l1prom
