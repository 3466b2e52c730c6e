#include "l1prom/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <unordered_map>

#include "l1prom/csv.hpp"
#include "l1prom/error.hpp"

namespace l1prom {

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<std::string, std::string>& p) const noexcept {
    const std::size_t a = std::hash<std::string>{}(p.first);
    return a ^ (std::hash<std::string>{}(p.second) + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  }
};

}  // namespace

FlowTable aggregate_flows(std::span<const FlowRecord> raw) {
  FlowTable table;
  std::unordered_map<std::string, std::size_t> regions;
  std::unordered_map<std::pair<std::string, std::string>, std::size_t, PairHash> slots;
  auto region = [&](const std::string& name) {
    if (regions.emplace(name, table.regions.size()).second) table.regions.push_back(name);
  };
  for (const auto& r : raw) {
    if (r.origin.empty() || r.destination.empty()) throw Error(Errc::MalformedRow, "flow record with empty region");
    if (!(r.count >= 0.0) || !std::isfinite(r.count)) {
      throw Error(Errc::NegativeCount, "negative count for " + r.origin + "->" + r.destination);
    }
    region(r.origin);
    region(r.destination);
    auto [it, inserted] = slots.emplace(std::pair(r.origin, r.destination), table.records.size());
    if (inserted) {
      table.records.push_back(r);
    } else {
      table.records[it->second].count += r.count;
    }
  }
  std::erase_if(table.records, [](const FlowRecord& r) { return r.count == 0.0; });
  return table;
}

FlowTable parse_flow_csv(std::istream& in, const FlowFilter& filter, std::string_view source) {
  CsvReader reader(in, std::string(source));
  const auto origin_col = reader.require_column("origin");
  const auto dest_col = reader.require_column("destination");
  const auto count_col = reader.require_column("count");
  std::optional<std::size_t> age_col, hour_col, day_col;
  if (filter.age_min || filter.age_max) age_col = reader.require_column("age");
  if (filter.hour_range) hour_col = reader.require_column("hour");
  if (!filter.days.empty()) day_col = reader.require_column("day");

  std::vector<FlowRecord> raw;
  std::vector<std::string> row;
  std::size_t rows = 0;
  while (reader.next(row)) {
    ++rows;
    if (row[origin_col].empty() || row[dest_col].empty()) reader.fail("empty region name");
    double count = 0.0;
    if (row[count_col] == "*") {
      count = kSuppressedCount;
    } else {
      count = reader.number(row[count_col]);
      if (count < 0.0) {
        throw Error(Errc::NegativeCount,
                    std::string(source) + ":" + std::to_string(reader.line()) + ": negative count " + row[count_col]);
      }
    }
    if (age_col) {
      const double age = reader.number(row[*age_col]);
      if (filter.age_min && age < *filter.age_min) continue;
      if (filter.age_max && age > *filter.age_max) continue;
    }
    if (hour_col) {
      const double hour = reader.number(row[*hour_col]);
      if (hour < filter.hour_range->first || hour > filter.hour_range->second) continue;
    }
    if (day_col && std::find(filter.days.begin(), filter.days.end(), row[*day_col]) == filter.days.end()) continue;
    raw.push_back({row[origin_col], row[dest_col], count});
  }
  if (raw.empty()) {
    throw Error(Errc::EmptyAfterFilter, std::string(source) + ": no flow rows remain" +
                                            (rows > 0 ? " after filtering" : ""));
  }
  FlowTable table = aggregate_flows(raw);
  if (table.records.empty()) throw Error(Errc::EmptyAfterFilter, std::string(source) + ": all counts are zero");
  return table;
}

FlowTable parse_flow_csv(const std::filesystem::path& path, const FlowFilter& filter) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  return parse_flow_csv(in, filter, path.string());
}

Graph build_flow_graph(const FlowTable& table) {
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::string> names = table.regions;
  for (std::size_t i = 0; i < names.size(); ++i) index.emplace(names[i], i);
  std::vector<double> multiplicities(names.size(), 0.0);
  std::vector<NamedEdge> edges;
  for (const auto& r : table.records) {
    if (!index.contains(r.origin) || !index.contains(r.destination)) {
      throw Error(Errc::UnknownVertexName, "flow record references a region missing from the region list");
    }
    if (!(r.count > 0.0)) throw Error(Errc::NegativeCount, "flow counts must be positive");
    if (r.origin == r.destination) {
      multiplicities[index.at(r.origin)] += r.count;
    } else {
      edges.push_back({r.origin, r.destination, 1.0 / r.count});
    }
  }
  return build_graph(std::move(names), std::move(multiplicities), edges);
}

}  // namespace l1prom
