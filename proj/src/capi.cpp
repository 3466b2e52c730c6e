#include "l1prom/l1prom.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <limits>
#include <optional>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "l1prom/analytics.hpp"
#include "l1prom/csv.hpp"
#include "l1prom/error.hpp"
#include "l1prom/geodesics.hpp"
#include "l1prom/graph.hpp"
#include "l1prom/graph_io.hpp"
#include "l1prom/ingest.hpp"
#include "l1prom/locality.hpp"
#include "l1prom/prominence.hpp"

struct l1p_graph {
  l1prom::Graph graph;
};

struct l1p_connectivity {
  l1prom::ConnectivityReport report;
};

struct l1p_distances {
  l1prom::DistanceMatrix d;
};

struct l1p_flows {
  l1prom::FlowTable table;
};

struct l1p_table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> lines;
  std::string source;
};

namespace {

thread_local std::string last_error;

l1p_status to_status(l1prom::Errc code) { return static_cast<l1p_status>(static_cast<int>(code)); }

template <class Fn>
l1p_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return L1P_OK;
  } catch (const l1prom::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return L1P_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return L1P_INTERNAL_ERROR;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw l1prom::Error(l1prom::Errc::InvalidArgument, what);
}

l1prom::Kind to_kind(l1p_kind kind) {
  require(kind == L1P_PRESTIGE || kind == L1P_CENTRALITY, "unknown measure kind");
  return kind == L1P_PRESTIGE ? l1prom::Kind::Prestige : l1prom::Kind::Centrality;
}

l1prom::QuantileMethod to_method(l1p_quantile q) {
  switch (q) {
    case L1P_QUANTILE_LINEAR: return l1prom::QuantileMethod::Linear;
    case L1P_QUANTILE_WEIBULL: return l1prom::QuantileMethod::Weibull;
    case L1P_QUANTILE_HAZEN: return l1prom::QuantileMethod::Hazen;
  }
  throw l1prom::Error(l1prom::Errc::InvalidArgument, "unknown quantile method");
}

std::span<const double> eta_span(const l1p_distances* d, const double* eta, std::size_t n) {
  require(d != nullptr && eta != nullptr, "null argument");
  if (n != d->d.size()) throw l1prom::Error(l1prom::Errc::DimensionMismatch, "multiplicity count differs from graph size");
  return {eta, n};
}

void fill_summary(const l1prom::OutlierReport& r, l1p_outlier_summary* out) {
  if (out == nullptr) return;
  *out = {r.q1, r.q3, r.iqr, r.lower_fence, r.upper_fence, r.high_outliers.size(), r.low_outliers.size()};
}

}  // namespace

extern "C" {

const char* l1p_version(void) { return "1.0.0"; }

const char* l1p_status_name(l1p_status status) {
  if (status == L1P_OK) return "Ok";
  if (status == L1P_INTERNAL_ERROR) return "InternalError";
  static thread_local std::string name;
  name = l1prom::errc_name(static_cast<l1prom::Errc>(status));
  return name.c_str();
}

int l1p_status_is_input_error(l1p_status status) {
  if (status == L1P_OK || status == L1P_INTERNAL_ERROR) return 0;
  return l1prom::is_input_error(static_cast<l1prom::Errc>(status)) ? 1 : 0;
}

const char* l1p_last_error(void) { return last_error.c_str(); }

l1p_status l1p_graph_build(const char* const* names, const double* multiplicities, size_t n, const l1p_edge* edges,
                           size_t m, int undirected, l1p_graph** out) {
  return guarded([&] {
    require(out != nullptr && (n == 0 || (names != nullptr && multiplicities != nullptr)) &&
                (m == 0 || edges != nullptr),
            "null argument");
    std::vector<std::string> name_list;
    for (size_t i = 0; i < n; ++i) {
      require(names[i] != nullptr, "null vertex name");
      name_list.emplace_back(names[i]);
    }
    std::vector<l1prom::NamedEdge> list;
    for (size_t i = 0; i < m; ++i) {
      require(edges[i].source != nullptr && edges[i].target != nullptr, "null edge endpoint");
      list.push_back({edges[i].source, edges[i].target, edges[i].weight});
    }
    std::vector<double> mult(multiplicities, multiplicities + n);
    auto g = std::make_unique<l1p_graph>(undirected ? l1prom::from_undirected(std::move(name_list), std::move(mult), list)
                                                    : l1prom::build_graph(std::move(name_list), std::move(mult), list));
    *out = g.release();
  });
}

l1p_status l1p_graph_load(const char* edges_path, const char* vertices_path, l1p_graph** out) {
  return guarded([&] {
    require(edges_path != nullptr && out != nullptr, "null argument");
    std::optional<std::filesystem::path> vertices;
    if (vertices_path != nullptr) vertices = vertices_path;
    *out = new l1p_graph{l1prom::load_graph(edges_path, vertices)};
  });
}

l1p_status l1p_graph_save(const l1p_graph* g, const char* edges_path, const char* vertices_path) {
  return guarded([&] {
    require(g != nullptr && edges_path != nullptr && vertices_path != nullptr, "null argument");
    l1prom::save_graph(g->graph, edges_path, vertices_path);
  });
}

void l1p_graph_free(l1p_graph* g) { delete g; }

size_t l1p_graph_vertex_count(const l1p_graph* g) { return g ? g->graph.size() : 0; }
size_t l1p_graph_edge_count(const l1p_graph* g) { return g ? g->graph.edge_count() : 0; }

const char* l1p_graph_vertex_name(const l1p_graph* g, size_t v) {
  if (g == nullptr || v >= g->graph.size()) return nullptr;
  return g->graph.names()[v].c_str();
}

l1p_status l1p_graph_find_vertex(const l1p_graph* g, const char* name, size_t* out) {
  return guarded([&] {
    require(g != nullptr && name != nullptr && out != nullptr, "null argument");
    const auto v = g->graph.find(name);
    if (!v) throw l1prom::Error(l1prom::Errc::UnknownVertexName, std::string("unknown vertex '") + name + "'");
    *out = *v;
  });
}

l1p_status l1p_graph_multiplicities(const l1p_graph* g, double* out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    std::copy(g->graph.multiplicities().begin(), g->graph.multiplicities().end(), out);
  });
}

l1p_status l1p_connectivity_compute(const l1p_graph* g, l1p_connectivity** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    *out = new l1p_connectivity{l1prom::check_strong_connectivity(g->graph)};
  });
}

void l1p_connectivity_free(l1p_connectivity* c) { delete c; }
int l1p_connectivity_strongly_connected(const l1p_connectivity* c) { return c && c->report.strongly_connected; }
size_t l1p_connectivity_component_count(const l1p_connectivity* c) { return c ? c->report.components.size() : 0; }

size_t l1p_connectivity_component_size(const l1p_connectivity* c, size_t i) {
  if (c == nullptr || i >= c->report.components.size()) return 0;
  return c->report.components[i].size();
}

const size_t* l1p_connectivity_component(const l1p_connectivity* c, size_t i) {
  if (c == nullptr || i >= c->report.components.size()) return nullptr;
  static_assert(sizeof(l1prom::VertexId) == sizeof(size_t));
  return c->report.components[i].data();
}

size_t l1p_connectivity_condensation_edge_count(const l1p_connectivity* c) {
  return c ? c->report.condensation_edge_count : 0;
}

l1p_status l1p_distances_compute(const l1p_graph* g, unsigned threads, l1p_distances** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    *out = new l1p_distances{l1prom::all_pairs_shortest(g->graph, threads)};
  });
}

l1p_status l1p_distances_from_matrix(const double* row_major, size_t n, l1p_distances** out) {
  return guarded([&] {
    require(row_major != nullptr && out != nullptr, "null argument");
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        const double v = row_major[i * n + j];
        const bool ok = i == j ? v == 0.0 : (v > 0.0 && std::isfinite(v));
        if (!ok) throw l1prom::Error(l1prom::Errc::InvalidArgument, "distance matrix needs a zero diagonal and finite positive entries");
      }
    }
    *out = new l1p_distances{l1prom::DistanceMatrix(n, std::vector<double>(row_major, row_major + n * n))};
  });
}

l1p_status l1p_distances_cached(const l1p_graph* g, const char* edges_path, const char* cache_path, unsigned threads,
                                l1p_distances** out, int* cache_hit) {
  return guarded([&] {
    require(g != nullptr && edges_path != nullptr && cache_path != nullptr && out != nullptr, "null argument");
    const auto checksum = l1prom::file_checksum(edges_path);
    auto cached = l1prom::read_distance_cache(cache_path, checksum);
    if (cached && cached->size() == g->graph.size()) {
      if (cache_hit) *cache_hit = 1;
      *out = new l1p_distances{std::move(*cached)};
      return;
    }
    auto d = l1prom::all_pairs_shortest(g->graph, threads);
    l1prom::write_distance_cache(cache_path, d, checksum);
    if (cache_hit) *cache_hit = 0;
    *out = new l1p_distances{std::move(d)};
  });
}

void l1p_distances_free(l1p_distances* d) { delete d; }
size_t l1p_distances_size(const l1p_distances* d) { return d ? d->d.size() : 0; }

double l1p_distances_at(const l1p_distances* d, size_t i, size_t j) {
  if (d == nullptr || i >= d->d.size() || j >= d->d.size()) return std::numeric_limits<double>::quiet_NaN();
  return d->d.at(i, j);
}

l1p_status l1p_symmetry_constant(const l1p_distances* d, double* out) {
  return guarded([&] {
    require(d != nullptr && out != nullptr, "null argument");
    *out = l1prom::symmetry_constant(d->d);
  });
}

l1p_status l1p_weighted_distance_sums(const l1p_distances* d, const double* eta, size_t n, l1p_kind kind,
                                      double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const auto sums = l1prom::weighted_distance_sums(d->d, eta_span(d, eta, n), to_kind(kind));
    std::copy(sums.begin(), sums.end(), out);
  });
}

l1p_status l1p_median(const l1p_distances* d, const double* eta, size_t n, l1p_kind kind, double tie_tolerance,
                      unsigned char* member_flags) {
  return guarded([&] {
    require(member_flags != nullptr, "null argument");
    const double tol = tie_tolerance > 0.0 ? tie_tolerance : l1prom::kDefaultTieTolerance;
    const auto m = l1prom::median(d->d, eta_span(d, eta, n), to_kind(kind), tol);
    std::fill(member_flags, member_flags + n, 0);
    for (auto v : m.members) member_flags[v] = 1;
  });
}

l1p_status l1p_prominence(const l1p_distances* d, const double* eta, size_t n, double symmetry, l1p_kind kind,
                          int matrix_form, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const auto span = eta_span(d, eta, n);
    const auto v = matrix_form ? l1prom::l1_prominence_matrix_form(d->d, span, symmetry, to_kind(kind))
                               : l1prom::l1_prominence(d->d, span, symmetry, to_kind(kind));
    std::copy(v.values.begin(), v.values.end(), out);
  });
}

l1p_status l1p_oracle_prominence(const l1p_distances* d, const double* eta, size_t n, double symmetry, l1p_kind kind,
                                 size_t k, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = l1prom::oracle_prominence(d->d, eta_span(d, eta, n), symmetry, k, to_kind(kind));
  });
}

l1p_status l1p_modified_multiplicities(const double* eta, size_t n, double symmetry, size_t k, double* out) {
  return guarded([&] {
    require(eta != nullptr && out != nullptr, "null argument");
    const auto m = l1prom::modified_multiplicities({eta, n}, symmetry, k);
    std::copy(m.begin(), m.end(), out);
  });
}

l1p_status l1p_neighborhood(const l1p_distances* d, const double* eta, size_t n, double symmetry, l1p_kind kind,
                            size_t k, double alpha, unsigned char* member_flags, double* modified_values) {
  return guarded([&] {
    require(member_flags != nullptr, "null argument");
    const auto nb = l1prom::neighborhood(d->d, eta_span(d, eta, n), symmetry, k, alpha, to_kind(kind));
    std::fill(member_flags, member_flags + n, 0);
    for (auto v : nb.members) member_flags[v] = 1;
    if (modified_values) std::copy(nb.modified.begin(), nb.modified.end(), modified_values);
  });
}

l1p_status l1p_local_prominence(const l1p_distances* d, const double* eta, size_t n, double symmetry, l1p_kind kind,
                                double alpha, unsigned threads, double* out, size_t* clamp_events) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const auto r = l1prom::local_l1_prominence(d->d, eta_span(d, eta, n), symmetry, alpha, to_kind(kind), threads);
    std::copy(r.measure.values.begin(), r.measure.values.end(), out);
    if (clamp_events) *clamp_events = r.clamps.events;
  });
}

l1p_status l1p_multiscale(const l1p_distances* d, const double* eta, size_t n, double symmetry, l1p_kind kind,
                          const double* grid, size_t grid_size, unsigned threads, double* values, double* margins,
                          size_t* clamp_events) {
  return guarded([&] {
    require(grid != nullptr && values != nullptr, "null argument");
    const auto p = l1prom::multiscale_profile(d->d, eta_span(d, eta, n), symmetry, to_kind(kind),
                                              {grid, grid_size}, margins != nullptr, threads);
    for (size_t v = 0; v < n; ++v) {
      std::copy(p.values[v].begin(), p.values[v].end(), values + v * grid_size);
      if (margins) std::copy((*p.uniform_margin)[v].begin(), (*p.uniform_margin)[v].end(), margins + v * grid_size);
    }
    if (clamp_events) *clamp_events = p.clamps.events;
  });
}

size_t l1p_default_alpha_grid(size_t n, double* out, size_t capacity) {
  const auto grid = l1prom::default_alpha_grid(n);
  if (out) std::copy_n(grid.begin(), std::min(capacity, grid.size()), out);
  return grid.size();
}

l1p_status l1p_parse_alpha_grid(const char* text, double* out, size_t capacity, size_t* count) {
  return guarded([&] {
    require(text != nullptr && count != nullptr, "null argument");
    const auto grid = l1prom::parse_alpha_grid(text);
    *count = grid.size();
    if (out) std::copy_n(grid.begin(), std::min(capacity, grid.size()), out);
  });
}

l1p_status l1p_uniform_margin(const double* values, size_t n, double* out) {
  return guarded([&] {
    require((values != nullptr || n == 0) && out != nullptr, "null argument");
    const auto r = l1prom::uniform_margin({values, n});
    std::copy(r.margins.begin(), r.margins.end(), out);
  });
}

l1p_status l1p_correlation_test(const double* x, const double* y, size_t n, l1p_direction direction,
                                l1p_correlation* out) {
  return guarded([&] {
    require(x != nullptr && y != nullptr && out != nullptr, "null argument");
    require(direction == L1P_POSITIVE || direction == L1P_NEGATIVE, "unknown direction");
    const auto r = l1prom::correlation_test({x, n}, {y, n},
                                            direction == L1P_POSITIVE ? l1prom::Direction::Positive
                                                                      : l1prom::Direction::Negative);
    *out = {r.r, r.n, r.t_stat, r.p_one_sided, direction};
  });
}

l1p_status l1p_tukey_outliers(const double* values, size_t n, l1p_quantile method, l1p_outlier_summary* out,
                              signed char* flags) {
  return guarded([&] {
    require(values != nullptr, "null argument");
    const auto r = l1prom::tukey_outliers({values, n}, to_method(method));
    fill_summary(r, out);
    if (flags) {
      std::fill(flags, flags + n, 0);
      for (auto i : r.high_outliers) flags[i] = 1;
      for (auto i : r.low_outliers) flags[i] = -1;
    }
  });
}

l1p_status l1p_curve_variation_screen(const double* margins, size_t n, size_t grid_size, double threshold,
                                      unsigned char* flags) {
  return guarded([&] {
    require(margins != nullptr && flags != nullptr, "null argument");
    std::vector<std::vector<double>> rows(n);
    for (size_t v = 0; v < n; ++v) rows[v].assign(margins + v * grid_size, margins + (v + 1) * grid_size);
    std::fill(flags, flags + n, 0);
    for (auto v : l1prom::curve_variation_screen(rows, threshold)) flags[v] = 1;
  });
}

l1p_status l1p_flows_parse(const char* path, const l1p_flow_filter* filter, l1p_flows** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    l1prom::FlowFilter f;
    if (filter) {
      if (filter->has_age_min) f.age_min = filter->age_min;
      if (filter->has_age_max) f.age_max = filter->age_max;
      if (filter->has_hours) f.hour_range = std::pair(filter->hour_min, filter->hour_max);
      for (size_t i = 0; i < filter->day_count; ++i) {
        require(filter->days[i] != nullptr, "null day name");
        f.days.emplace_back(filter->days[i]);
      }
    }
    *out = new l1p_flows{l1prom::parse_flow_csv(std::filesystem::path(path), f)};
  });
}

void l1p_flows_free(l1p_flows* f) { delete f; }
size_t l1p_flows_region_count(const l1p_flows* f) { return f ? f->table.regions.size() : 0; }

const char* l1p_flows_region(const l1p_flows* f, size_t i) {
  if (f == nullptr || i >= f->table.regions.size()) return nullptr;
  return f->table.regions[i].c_str();
}

size_t l1p_flows_record_count(const l1p_flows* f) { return f ? f->table.records.size() : 0; }

l1p_status l1p_flows_record(const l1p_flows* f, size_t i, const char** origin, const char** destination,
                            double* count) {
  return guarded([&] {
    require(f != nullptr && i < f->table.records.size(), "record index out of range");
    const auto& r = f->table.records[i];
    if (origin) *origin = r.origin.c_str();
    if (destination) *destination = r.destination.c_str();
    if (count) *count = r.count;
  });
}

l1p_status l1p_flows_totals(const l1p_flows* f, double* incoming, double* outgoing) {
  return guarded([&] {
    require(f != nullptr && incoming != nullptr && outgoing != nullptr, "null argument");
    const auto t = l1prom::flow_totals(f->table);
    std::copy(t.incoming.begin(), t.incoming.end(), incoming);
    std::copy(t.outgoing.begin(), t.outgoing.end(), outgoing);
  });
}

l1p_status l1p_flows_hubs(const l1p_flows* f, l1p_quantile method, unsigned char* hub_flags,
                          l1p_outlier_summary* incoming, l1p_outlier_summary* outgoing) {
  return guarded([&] {
    require(f != nullptr && hub_flags != nullptr, "null argument");
    const auto totals = l1prom::flow_totals(f->table);
    const auto h = l1prom::detect_hubs(totals, to_method(method));
    std::fill(hub_flags, hub_flags + totals.regions.size(), 0);
    for (auto v : h.hubs) hub_flags[v] = 1;
    fill_summary(h.incoming, incoming);
    fill_summary(h.outgoing, outgoing);
  });
}

l1p_status l1p_flows_build_graph(const l1p_flows* f, l1p_graph** out) {
  return guarded([&] {
    require(f != nullptr && out != nullptr, "null argument");
    *out = new l1p_graph{l1prom::build_flow_graph(f->table)};
  });
}

l1p_status l1p_table_read(const char* path, l1p_table** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    std::ifstream in(path);
    if (!in) throw l1prom::Error(l1prom::Errc::Io, std::string("cannot open ") + path);
    auto t = std::make_unique<l1p_table>();
    t->source = path;
    l1prom::CsvReader reader(in, path);
    t->header = reader.header();
    std::vector<std::string> row;
    while (reader.next(row)) {
      t->rows.push_back(row);
      t->lines.push_back(reader.line());
    }
    *out = t.release();
  });
}

void l1p_table_free(l1p_table* t) { delete t; }
size_t l1p_table_column_count(const l1p_table* t) { return t ? t->header.size() : 0; }
size_t l1p_table_row_count(const l1p_table* t) { return t ? t->rows.size() : 0; }

const char* l1p_table_header(const l1p_table* t, size_t column) {
  if (t == nullptr || column >= t->header.size()) return nullptr;
  return t->header[column].c_str();
}

size_t l1p_table_find_column(const l1p_table* t, const char* name) {
  if (t == nullptr || name == nullptr) return static_cast<size_t>(-1);
  for (size_t i = 0; i < t->header.size(); ++i)
    if (t->header[i] == name) return i;
  return static_cast<size_t>(-1);
}

const char* l1p_table_cell(const l1p_table* t, size_t row, size_t column) {
  if (t == nullptr || row >= t->rows.size() || column >= t->header.size()) return nullptr;
  return t->rows[row][column].c_str();
}

l1p_status l1p_table_number(const l1p_table* t, size_t row, size_t column, double* out) {
  return guarded([&] {
    require(t != nullptr && out != nullptr && row < t->rows.size() && column < t->header.size(), "cell out of range");
    const std::string& cell = t->rows[row][column];
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
      throw l1prom::Error(l1prom::Errc::MalformedRow, t->source + ":" + std::to_string(t->lines[row]) + ": '" + cell +
                                                          "' is not a number");
    }
    *out = v;
  });
}

}  // extern "C"
