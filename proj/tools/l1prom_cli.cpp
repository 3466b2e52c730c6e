// l1prom: command-line front end over the C API in l1prom.h.
//
// Exit status: 0 success, 1 domain error (e.g. graph not strongly
// connected), 2 unreadable or malformed input.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "l1prom/l1prom.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitDomain = 1;
constexpr int kExitInput = 2;

struct CliError {
  int exit_code;
  std::string message;
};

void check(l1p_status status) {
  if (status == L1P_OK) return;
  const int code = l1p_status_is_input_error(status) ? kExitInput : kExitDomain;
  throw CliError{code, std::string(l1p_status_name(status)) + ": " + l1p_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using GraphPtr = std::unique_ptr<l1p_graph, Deleter<l1p_graph, l1p_graph_free>>;
using DistPtr = std::unique_ptr<l1p_distances, Deleter<l1p_distances, l1p_distances_free>>;
using ConnPtr = std::unique_ptr<l1p_connectivity, Deleter<l1p_connectivity, l1p_connectivity_free>>;
using FlowsPtr = std::unique_ptr<l1p_flows, Deleter<l1p_flows, l1p_flows_free>>;
using TablePtr = std::unique_ptr<l1p_table, Deleter<l1p_table, l1p_table_free>>;

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// JSON numbers carry the same 12 significant digits as CSV output.
double json12(double v) { return std::stod(fmt12(v)); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// Writes content to path through a temporary file and rename, or to stdout
/// when path is empty.
void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CliError{kExitInput, "cannot write " + tmp.string()};
    out << content;
    if (!out) throw CliError{kExitInput, "failed writing " + tmp.string()};
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw CliError{kExitInput, "cannot move output into place: " + ec.message()};
}

struct GraphOptions {
  std::string edges;
  std::string vertices;
  std::string cache;
  unsigned threads = 0;

  void add(CLI::App* cmd, bool required = true) {
    auto* e = cmd->add_option("--edges", edges, "Edge list CSV (source,target,weight)");
    if (required) e->required();
    cmd->add_option("--vertices", vertices, "Vertex CSV (name,multiplicity); default multiplicity 1");
    cmd->add_option("--cache", cache, "Distance-matrix cache file (reused while the edge list is unchanged)");
    cmd->add_option("--threads", threads, "Worker threads (0 = all hardware threads)");
  }
};

GraphPtr load_graph(const GraphOptions& o) {
  l1p_graph* g = nullptr;
  check(l1p_graph_load(o.edges.c_str(), o.vertices.empty() ? nullptr : o.vertices.c_str(), &g));
  return GraphPtr(g);
}

std::vector<std::string> vertex_names(const l1p_graph* g) {
  std::vector<std::string> names;
  for (size_t v = 0; v < l1p_graph_vertex_count(g); ++v) names.emplace_back(l1p_graph_vertex_name(g, v));
  return names;
}

std::vector<double> multiplicities(const l1p_graph* g) {
  std::vector<double> eta(l1p_graph_vertex_count(g));
  check(l1p_graph_multiplicities(g, eta.data()));
  return eta;
}

std::string describe_components(const l1p_graph* g, const l1p_connectivity* c) {
  std::ostringstream out;
  const size_t count = l1p_connectivity_component_count(c);
  out << "graph is not strongly connected: " << count << " strongly connected components\n";
  for (size_t i = 0; i < count; ++i) {
    const size_t* members = l1p_connectivity_component(c, i);
    out << "  component " << i + 1 << ":";
    for (size_t k = 0; k < l1p_connectivity_component_size(c, i); ++k) out << ' ' << l1p_graph_vertex_name(g, members[k]);
    out << '\n';
  }
  return out.str();
}

void require_strongly_connected(const l1p_graph* g) {
  l1p_connectivity* raw = nullptr;
  check(l1p_connectivity_compute(g, &raw));
  ConnPtr c(raw);
  if (!l1p_connectivity_strongly_connected(c.get())) throw CliError{kExitDomain, describe_components(g, c.get())};
}

DistPtr distances(const l1p_graph* g, const GraphOptions& o) {
  l1p_distances* d = nullptr;
  if (o.cache.empty()) {
    check(l1p_distances_compute(g, o.threads, &d));
  } else {
    check(l1p_distances_cached(g, o.edges.c_str(), o.cache.c_str(), o.threads, &d, nullptr));
  }
  return DistPtr(d);
}

double symmetry(const l1p_distances* d) {
  if (l1p_distances_size(d) < 2) return 1.0;
  double s = 0.0;
  check(l1p_symmetry_constant(d, &s));
  return s;
}

l1p_kind parse_kind(const std::string& s) { return s == "centrality" ? L1P_CENTRALITY : L1P_PRESTIGE; }
const char* kind_name(l1p_kind k) { return k == L1P_PRESTIGE ? "prestige" : "centrality"; }

// ---- validate ----------------------------------------------------------

struct ValidateCmd {
  GraphOptions graph;

  int run() {
    GraphPtr g = load_graph(graph);
    const auto eta = multiplicities(g.get());
    std::cout << "vertices: " << l1p_graph_vertex_count(g.get()) << '\n'
              << "edges: " << l1p_graph_edge_count(g.get()) << '\n'
              << "total_multiplicity: " << fmt12(std::accumulate(eta.begin(), eta.end(), 0.0)) << '\n';
    l1p_connectivity* raw = nullptr;
    check(l1p_connectivity_compute(g.get(), &raw));
    ConnPtr c(raw);
    if (!l1p_connectivity_strongly_connected(c.get())) {
      std::cout << "strongly_connected: false\n"
                << "condensation_edges: " << l1p_connectivity_condensation_edge_count(c.get()) << '\n';
      std::cerr << describe_components(g.get(), c.get());
      return kExitDomain;
    }
    DistPtr d = distances(g.get(), graph);
    std::cout << "strongly_connected: true\n";
    if (l1p_distances_size(d.get()) >= 2) std::cout << "symmetry_constant: " << fmt12(symmetry(d.get())) << '\n';
    return 0;
  }
};

// ---- global ------------------------------------------------------------

struct GlobalCmd {
  GraphOptions graph;
  std::string kind = "both";
  std::string format = "csv";
  std::string output;
  bool matrix_form = false;

  int run() {
    GraphPtr g = load_graph(graph);
    require_strongly_connected(g.get());
    DistPtr d = distances(g.get(), graph);
    const auto eta = multiplicities(g.get());
    const auto names = vertex_names(g.get());
    const size_t n = names.size();
    const double s = symmetry(d.get());

    std::vector<l1p_kind> kinds;
    if (kind == "prestige" || kind == "both") kinds.push_back(L1P_PRESTIGE);
    if (kind == "centrality" || kind == "both") kinds.push_back(L1P_CENTRALITY);

    std::vector<std::vector<double>> values;
    std::vector<std::vector<unsigned char>> medians;
    for (l1p_kind k : kinds) {
      values.emplace_back(n);
      medians.emplace_back(n);
      check(l1p_prominence(d.get(), eta.data(), n, s, k, matrix_form ? 1 : 0, values.back().data()));
      check(l1p_median(d.get(), eta.data(), n, k, 0.0, medians.back().data()));
    }

    std::ostringstream out;
    if (format == "json") {
      json doc;
      doc["symmetry_constant"] = json12(s);
      json rows = json::array();
      for (size_t v = 0; v < n; ++v) {
        json row;
        row["vertex"] = names[v];
        for (size_t k = 0; k < kinds.size(); ++k) row[kind_name(kinds[k])] = json12(values[k][v]);
        rows.push_back(row);
      }
      doc["vertices"] = rows;
      for (size_t k = 0; k < kinds.size(); ++k) {
        json m = json::array();
        for (size_t v = 0; v < n; ++v)
          if (medians[k][v]) m.push_back(names[v]);
        doc[std::string("median_") + kind_name(kinds[k])] = m;
      }
      out << doc.dump(2) << '\n';
    } else {
      out << "vertex";
      for (l1p_kind k : kinds) out << ',' << kind_name(k);
      out << '\n';
      for (size_t v = 0; v < n; ++v) {
        out << csv_field(names[v]);
        for (size_t k = 0; k < kinds.size(); ++k) out << ',' << fmt12(values[k][v]);
        out << '\n';
      }
    }
    emit(output, out.str());
    return 0;
  }
};

// ---- multiscale --------------------------------------------------------

std::vector<double> parse_grid(const std::string& text) {
  size_t count = 0;
  check(l1p_parse_alpha_grid(text.c_str(), nullptr, 0, &count));
  std::vector<double> grid(count);
  check(l1p_parse_alpha_grid(text.c_str(), grid.data(), grid.size(), &count));
  return grid;
}

struct MultiscaleCmd {
  GraphOptions graph;
  std::string kind = "prestige";
  std::string grid_text;
  std::optional<double> screen;
  std::string output;
  std::string wide;
  std::string report;

  int run() {
    GraphPtr g = load_graph(graph);
    require_strongly_connected(g.get());
    DistPtr d = distances(g.get(), graph);
    const auto eta = multiplicities(g.get());
    const auto names = vertex_names(g.get());
    const size_t n = names.size();
    const double s = symmetry(d.get());
    const l1p_kind k = parse_kind(kind);

    std::vector<double> grid;
    if (grid_text.empty()) {
      grid.resize(l1p_default_alpha_grid(n, nullptr, 0));
      l1p_default_alpha_grid(n, grid.data(), grid.size());
      if (grid.empty()) throw CliError{kExitDomain, "graph too small for any feasible alpha"};
    } else {
      grid = parse_grid(grid_text);
    }
    const size_t m = grid.size();
    std::vector<double> values(n * m), margins(n * m);
    size_t clamps = 0;
    check(l1p_multiscale(d.get(), eta.data(), n, s, k, grid.data(), m, graph.threads, values.data(), margins.data(),
                         &clamps));

    std::ostringstream out;
    out << "vertex,alpha,value,uniform_margin\n";
    for (size_t v = 0; v < n; ++v)
      for (size_t a = 0; a < m; ++a)
        out << csv_field(names[v]) << ',' << fmt12(grid[a]) << ',' << fmt12(values[v * m + a]) << ','
            << fmt12(margins[v * m + a]) << '\n';
    emit(output, out.str());

    if (!wide.empty()) {
      std::ostringstream w;
      w << "vertex";
      for (double a : grid) w << ',' << fmt12(a);
      w << '\n';
      for (size_t v = 0; v < n; ++v) {
        w << csv_field(names[v]);
        for (size_t a = 0; a < m; ++a) w << ',' << fmt12(values[v * m + a]);
        w << '\n';
      }
      emit(wide, w.str());
    }

    if (screen) {
      std::vector<unsigned char> flags(n);
      check(l1p_curve_variation_screen(margins.data(), n, m, *screen, flags.data()));
      json screened = json::array();
      for (size_t v = 0; v < n; ++v)
        if (flags[v]) screened.push_back(names[v]);
      if (report.empty()) {
        std::cerr << "screened (" << screened.size() << " with margin range > " << fmt12(*screen) << "):";
        for (const auto& name : screened) std::cerr << ' ' << name.get<std::string>();
        std::cerr << '\n';
      } else {
        json doc;
        doc["kind"] = kind_name(k);
        doc["threshold"] = json12(*screen);
        doc["screened"] = screened;
        doc["clamp_events"] = clamps;
        emit(report, doc.dump(2) + "\n");
      }
    }
    return 0;
  }
};

// ---- neighborhood ------------------------------------------------------

struct NeighborhoodCmd {
  GraphOptions graph;
  std::string kind = "prestige";
  std::string vertex;
  std::string alpha_text;
  std::string output;

  int run() {
    GraphPtr g = load_graph(graph);
    require_strongly_connected(g.get());
    size_t anchor = 0;
    check(l1p_graph_find_vertex(g.get(), vertex.c_str(), &anchor));
    const auto alpha = parse_grid(alpha_text);
    if (alpha.size() != 1) throw CliError{kExitDomain, "--alpha takes a single value"};
    DistPtr d = distances(g.get(), graph);
    const auto eta = multiplicities(g.get());
    const auto names = vertex_names(g.get());
    const size_t n = names.size();
    const l1p_kind k = parse_kind(kind);

    std::vector<unsigned char> flags(n);
    std::vector<double> modified(n);
    check(l1p_neighborhood(d.get(), eta.data(), n, symmetry(d.get()), k, anchor, alpha.front(), flags.data(),
                           modified.data()));
    std::vector<size_t> members;
    for (size_t v = 0; v < n; ++v)
      if (flags[v]) members.push_back(v);
    std::stable_sort(members.begin(), members.end(), [&](size_t a, size_t b) {
      if (a == anchor || b == anchor) return a == anchor && b != anchor;
      return modified[a] > modified[b];
    });

    std::ostringstream out;
    out << "vertex,modified_" << kind_name(k) << '\n';
    for (size_t v : members) out << csv_field(names[v]) << ',' << fmt12(modified[v]) << '\n';
    emit(output, out.str());
    return 0;
  }
};

// ---- ingest ------------------------------------------------------------

struct FlowOptions {
  std::string flows;
  std::optional<double> age_min, age_max;
  std::string hour_range;
  std::string days;

  void add(CLI::App* cmd, bool required) {
    auto* f = cmd->add_option("--flows", flows, "Flow CSV (origin,destination,count[,age,hour,day])");
    if (required) f->required();
    cmd->add_option("--age-min", age_min, "Keep rows with age >= value");
    cmd->add_option("--age-max", age_max, "Keep rows with age <= value");
    cmd->add_option("--hour-range", hour_range, "Keep rows with hour in START-END (inclusive)");
    cmd->add_option("--days", days, "Comma-separated day values to keep");
  }

  FlowsPtr load() const {
    l1p_flow_filter filter{};
    if (age_min) filter.has_age_min = 1, filter.age_min = *age_min;
    if (age_max) filter.has_age_max = 1, filter.age_max = *age_max;
    if (!hour_range.empty()) {
      const auto dash = hour_range.find('-');
      int lo = 0, hi = 0;
      const auto a = std::from_chars(hour_range.data(), hour_range.data() + dash, lo);
      const auto b = dash == std::string::npos
                         ? std::from_chars_result{nullptr, std::errc::invalid_argument}
                         : std::from_chars(hour_range.data() + dash + 1, hour_range.data() + hour_range.size(), hi);
      if (dash == std::string::npos || a.ec != std::errc() || b.ec != std::errc() || lo > hi) {
        throw CliError{kExitInput, "--hour-range expects START-END, got '" + hour_range + "'"};
      }
      filter.has_hours = 1;
      filter.hour_min = lo;
      filter.hour_max = hi;
    }
    std::vector<std::string> day_list;
    std::vector<const char*> day_ptrs;
    if (!days.empty()) {
      std::stringstream ss(days);
      for (std::string d; std::getline(ss, d, ',');)
        if (!d.empty()) day_list.push_back(d);
      for (const auto& d : day_list) day_ptrs.push_back(d.c_str());
      filter.days = day_ptrs.data();
      filter.day_count = day_ptrs.size();
    }
    l1p_flows* f = nullptr;
    check(l1p_flows_parse(flows.c_str(), &filter, &f));
    return FlowsPtr(f);
  }
};

struct IngestCmd {
  FlowOptions flows;
  std::string edges_out;
  std::string vertices_out;

  int run() {
    FlowsPtr f = flows.load();
    l1p_graph* raw = nullptr;
    check(l1p_flows_build_graph(f.get(), &raw));
    GraphPtr g(raw);
    check(l1p_graph_save(g.get(), edges_out.c_str(), vertices_out.c_str()));
    std::cout << "regions: " << l1p_flows_region_count(f.get()) << '\n'
              << "records: " << l1p_flows_record_count(f.get()) << '\n'
              << "edges: " << l1p_graph_edge_count(g.get()) << '\n';
    l1p_connectivity* c = nullptr;
    check(l1p_connectivity_compute(g.get(), &c));
    ConnPtr conn(c);
    std::cout << "strongly_connected: " << (l1p_connectivity_strongly_connected(c) ? "true" : "false") << '\n';
    return 0;
  }
};

// ---- analyze -----------------------------------------------------------

struct Column {
  std::vector<std::string> names;
  std::vector<double> values;
};

TablePtr read_table(const std::string& path) {
  l1p_table* t = nullptr;
  check(l1p_table_read(path.c_str(), &t));
  return TablePtr(t);
}

size_t require_column(const l1p_table* t, const std::string& name, const std::string& path) {
  const size_t c = l1p_table_find_column(t, name.c_str());
  if (c == static_cast<size_t>(-1)) throw CliError{kExitInput, path + ": missing column '" + name + "'"};
  return c;
}

Column read_column(const std::string& path, const std::string& name) {
  TablePtr t = read_table(path);
  const size_t vc = require_column(t.get(), "vertex", path);
  const size_t c = require_column(t.get(), name, path);
  Column col;
  for (size_t r = 0; r < l1p_table_row_count(t.get()); ++r) {
    double v = 0.0;
    check(l1p_table_number(t.get(), r, c, &v));
    col.names.emplace_back(l1p_table_cell(t.get(), r, vc));
    col.values.push_back(v);
  }
  return col;
}

std::vector<double> margins_of(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  check(l1p_uniform_margin(v.data(), v.size(), out.data()));
  return out;
}

json correlate(const std::string& xname, const std::vector<double>& x, const std::string& yname,
               const std::vector<double>& y, const std::string& direction) {
  l1p_correlation res{};
  l1p_direction dir = direction == "negative" ? L1P_NEGATIVE : L1P_POSITIVE;
  if (direction == "auto") {
    check(l1p_correlation_test(x.data(), y.data(), x.size(), L1P_POSITIVE, &res));
    dir = res.r < 0.0 ? L1P_NEGATIVE : L1P_POSITIVE;
  }
  check(l1p_correlation_test(x.data(), y.data(), x.size(), dir, &res));
  json j;
  j["x"] = xname;
  j["y"] = yname;
  j["n"] = res.n;
  j["r"] = json12(res.r);
  j["t_stat"] = std::isfinite(res.t_stat) ? json(json12(res.t_stat)) : json(res.t_stat > 0 ? "inf" : "-inf");
  j["direction"] = dir == L1P_NEGATIVE ? "negative" : "positive";
  j["p_one_sided"] = json12(res.p_one_sided);
  return j;
}

json summary_json(const l1p_outlier_summary& s) {
  return json{{"q1", json12(s.q1)},
              {"q3", json12(s.q3)},
              {"iqr", json12(s.iqr)},
              {"lower_fence", json12(s.lower_fence)},
              {"upper_fence", json12(s.upper_fence)},
              {"high_count", s.high_count},
              {"low_count", s.low_count}};
}

struct AnalyzeCmd {
  GraphOptions graph;
  FlowOptions flows;
  std::string prominence;
  std::string multiscale;
  std::string index;
  std::string direction = "auto";
  std::string quantile = "linear";
  double screen = 0.6;
  std::string output;

  int run() {
    if (prominence.empty() && graph.edges.empty() && flows.flows.empty() && multiscale.empty()) {
      throw CliError{kExitInput, "analyze needs --prominence, --edges, --flows or --multiscale"};
    }
    json report;
    FlowsPtr f;
    if (!flows.flows.empty()) f = flows.load();

    // Global measures from a CSV, a graph, or the graph built from the flows.
    Column pres, cent;
    if (!prominence.empty()) {
      pres = read_column(prominence, "prestige");
      cent = read_column(prominence, "centrality");
    } else if (!graph.edges.empty() || f) {
      GraphPtr g;
      if (!graph.edges.empty()) {
        g = load_graph(graph);
      } else {
        l1p_graph* raw = nullptr;
        check(l1p_flows_build_graph(f.get(), &raw));
        g.reset(raw);
      }
      require_strongly_connected(g.get());
      GraphOptions o = graph;
      if (graph.edges.empty()) o.cache.clear();
      DistPtr d = distances(g.get(), o);
      const auto eta = multiplicities(g.get());
      const size_t n = eta.size();
      const double s = symmetry(d.get());
      pres.names = cent.names = vertex_names(g.get());
      pres.values.resize(n);
      cent.values.resize(n);
      check(l1p_prominence(d.get(), eta.data(), n, s, L1P_PRESTIGE, 0, pres.values.data()));
      check(l1p_prominence(d.get(), eta.data(), n, s, L1P_CENTRALITY, 0, cent.values.data()));
    }

    json correlations = json::array();
    if (!pres.values.empty()) {
      const auto pm = margins_of(pres.values);
      const auto cm = margins_of(cent.values);
      correlations.push_back(correlate("prestige", pm, "centrality", cm, direction));
      if (!index.empty()) {
        const Column idx = read_column(index, "value");
        std::unordered_map<std::string, double> by_name;
        for (size_t i = 0; i < idx.names.size(); ++i) by_name[idx.names[i]] = idx.values[i];
        std::vector<double> iv, pv, cv;
        for (size_t v = 0; v < pres.names.size(); ++v) {
          auto it = by_name.find(pres.names[v]);
          if (it == by_name.end()) continue;
          iv.push_back(it->second);
          pv.push_back(pres.values[v]);
          cv.push_back(cent.values[v]);
        }
        const auto im = margins_of(iv);
        correlations.push_back(correlate("index", im, "prestige", margins_of(pv), direction));
        correlations.push_back(correlate("index", im, "centrality", margins_of(cv), direction));
      }
    }
    report["correlations"] = correlations;

    if (f) {
      const size_t r = l1p_flows_region_count(f.get());
      std::vector<double> in(r), out(r);
      check(l1p_flows_totals(f.get(), in.data(), out.data()));
      const l1p_quantile method = quantile == "weibull" ? L1P_QUANTILE_WEIBULL
                                  : quantile == "hazen" ? L1P_QUANTILE_HAZEN
                                                        : L1P_QUANTILE_LINEAR;
      std::vector<signed char> in_flags(r), out_flags(r);
      l1p_outlier_summary in_sum{}, out_sum{};
      check(l1p_tukey_outliers(in.data(), r, method, &in_sum, in_flags.data()));
      check(l1p_tukey_outliers(out.data(), r, method, &out_sum, out_flags.data()));
      std::vector<unsigned char> hub_flags(r);
      check(l1p_flows_hubs(f.get(), method, hub_flags.data(), nullptr, nullptr));
      json high_in = json::array(), high_out = json::array(), hubs = json::array();
      for (size_t v = 0; v < r; ++v) {
        const std::string name = l1p_flows_region(f.get(), v);
        if (in_flags[v] > 0) high_in.push_back(name);
        if (out_flags[v] > 0) high_out.push_back(name);
        if (hub_flags[v]) hubs.push_back(name);
      }
      report["hubs"] = {{"quantile_method", quantile},
                        {"incoming", summary_json(in_sum)},
                        {"outgoing", summary_json(out_sum)},
                        {"incoming_outliers", high_in},
                        {"outgoing_outliers", high_out},
                        {"hubs", hubs}};
    }

    if (!multiscale.empty()) {
      TablePtr t = read_table(multiscale);
      const size_t vc = require_column(t.get(), "vertex", multiscale);
      const size_t mc = require_column(t.get(), "uniform_margin", multiscale);
      std::vector<std::string> order;
      std::unordered_map<std::string, std::pair<double, double>> range;
      for (size_t row = 0; row < l1p_table_row_count(t.get()); ++row) {
        double m = 0.0;
        check(l1p_table_number(t.get(), row, mc, &m));
        const std::string name = l1p_table_cell(t.get(), row, vc);
        auto [it, inserted] = range.emplace(name, std::pair(m, m));
        if (inserted) order.push_back(name);
        it->second.first = std::min(it->second.first, m);
        it->second.second = std::max(it->second.second, m);
      }
      // Rows are ragged-safe: screen on per-vertex ranges through the C API.
      std::vector<double> mins_maxes;
      for (const auto& name : order) {
        mins_maxes.push_back(range[name].first);
        mins_maxes.push_back(range[name].second);
      }
      std::vector<unsigned char> flags(order.size());
      if (!order.empty()) check(l1p_curve_variation_screen(mins_maxes.data(), order.size(), 2, screen, flags.data()));
      json screened = json::array();
      for (size_t v = 0; v < order.size(); ++v)
        if (flags[v]) screened.push_back(order[v]);
      report["screened"] = {{"threshold", json12(screen)}, {"vertices", screened}};
    }

    emit(output, report.dump(2) + "\n");
    return 0;
  }
};

// ---- generate (test fixtures) -------------------------------------------

struct GenerateCmd {
  size_t n = 10;
  double extra = 0.2;
  std::uint64_t seed = 1;
  std::string edges_out;
  std::string vertices_out;

  int run() {
    if (n < 2) throw CliError{kExitDomain, "--n must be at least 2"};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> weight(0.0, 10.0), eta(0.0, 5.0), coin(0.0, 1.0);
    std::vector<std::string> names(n);
    for (size_t i = 0; i < n; ++i) names[i] = "v" + std::to_string(i + 1);
    std::vector<double> mult(n);
    for (auto& m : mult) m = eta(rng);
    if (std::accumulate(mult.begin(), mult.end(), 0.0) <= 0.0) mult[0] = 1.0;
    auto positive = [&] {
      double w = 0.0;
      while (w <= 0.0) w = weight(rng);
      return w;
    };
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<char>> has(n, std::vector<char>(n, 0));
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < n; ++i) {
      const size_t a = perm[i], b = perm[(i + 1) % n];
      if (!has[a][b]) pairs.emplace_back(a, b), has[a][b] = 1;
    }
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b)
        if (a != b && !has[a][b] && coin(rng) < extra) pairs.emplace_back(a, b), has[a][b] = 1;
    std::vector<l1p_edge> edges;
    for (auto [a, b] : pairs) edges.push_back({names[a].c_str(), names[b].c_str(), positive()});
    std::vector<const char*> name_ptrs;
    for (const auto& s : names) name_ptrs.push_back(s.c_str());
    l1p_graph* raw = nullptr;
    check(l1p_graph_build(name_ptrs.data(), mult.data(), n, edges.data(), edges.size(), 0, &raw));
    GraphPtr g(raw);
    check(l1p_graph_save(g.get(), edges_out.c_str(), vertices_out.c_str()));
    std::cout << "vertices: " << n << "\nedges: " << edges.size() << '\n';
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"L1 prestige and centrality for vertex- and edge-weighted directed graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", l1p_version());

  ValidateCmd validate;
  auto* v = app.add_subcommand("validate", "Check a graph and report its symmetry constant");
  validate.graph.add(v);

  GlobalCmd global;
  auto* g = app.add_subcommand("global", "Global L1 prestige and/or centrality with median sets");
  global.graph.add(g);
  g->add_option("--kind", global.kind, "prestige, centrality or both")
      ->check(CLI::IsMember({"prestige", "centrality", "both"}));
  g->add_option("--format", global.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  g->add_option("-o,--output", global.output, "Output path (default stdout)");
  g->add_flag("--matrix-form", global.matrix_form, "Evaluate through the matrix expression");

  MultiscaleCmd ms;
  auto* m = app.add_subcommand("multiscale", "Local measures over a grid of locality levels");
  ms.graph.add(m);
  m->add_option("--kind", ms.kind, "prestige or centrality")->check(CLI::IsMember({"prestige", "centrality"}));
  m->add_option("--grid", ms.grid_text, "Alpha grid: 'a,b,c' or 'start:stop:step' (p/q allowed)");
  m->add_option("--screen", ms.screen, "Report vertices whose uniform-margin range exceeds this");
  m->add_option("-o,--output", ms.output, "Long-format CSV path (default stdout)");
  m->add_option("--wide", ms.wide, "Also write a vertex x alpha matrix CSV");
  m->add_option("--report", ms.report, "Write the screening result as JSON");

  NeighborhoodCmd nb;
  auto* n = app.add_subcommand("neighborhood", "Order-alpha neighborhood of one vertex");
  nb.graph.add(n);
  n->add_option("--kind", nb.kind, "prestige or centrality")->check(CLI::IsMember({"prestige", "centrality"}));
  n->add_option("--vertex", nb.vertex, "Anchor vertex name")->required();
  n->add_option("--alpha", nb.alpha_text, "Locality level in (0, 1], decimal or p/q")->required();
  n->add_option("-o,--output", nb.output, "Output path (default stdout)");

  AnalyzeCmd an;
  auto* a = app.add_subcommand("analyze", "Correlations, flow hubs and multiscale screening");
  an.graph.add(a, false);
  an.flows.add(a, false);
  a->add_option("--prominence", an.prominence, "CSV with vertex,prestige,centrality");
  a->add_option("--multiscale", an.multiscale, "Long-format multiscale CSV to screen");
  a->add_option("--index", an.index, "CSV vertex,value correlated against both measures");
  a->add_option("--direction", an.direction, "auto, positive or negative")
      ->check(CLI::IsMember({"auto", "positive", "negative"}));
  a->add_option("--quantile", an.quantile, "Quartile method: linear, weibull or hazen")
      ->check(CLI::IsMember({"linear", "weibull", "hazen"}));
  a->add_option("--screen", an.screen, "Curve-variation threshold");
  a->add_option("-o,--output", an.output, "Report path (default stdout)");

  IngestCmd ing;
  auto* i = app.add_subcommand("ingest", "Build a flow graph from an origin-destination table");
  ing.flows.add(i, true);
  i->add_option("--edges-out", ing.edges_out, "Edge list to write")->required();
  i->add_option("--vertices-out", ing.vertices_out, "Vertex list to write")->required();

  GenerateCmd gen;
  auto* r = app.add_subcommand("generate", "Random strongly connected graph (test fixtures)");
  r->add_option("--n", gen.n, "Vertex count");
  r->add_option("--extra", gen.extra, "Probability of each additional edge");
  r->add_option("--seed", gen.seed, "Random seed");
  r->add_option("--edges-out", gen.edges_out, "Edge list to write")->required();
  r->add_option("--vertices-out", gen.vertices_out, "Vertex list to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*v) return validate.run();
    if (*g) return global.run();
    if (*m) return ms.run();
    if (*n) return nb.run();
    if (*a) return an.run();
    if (*i) return ing.run();
    if (*r) return gen.run();
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message;
    if (e.message.empty() || e.message.back() != '\n') std::cerr << '\n';
    return e.exit_code;
  }
  return 0;
}
