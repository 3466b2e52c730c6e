#include "l1prom/graph_io.hpp"

#include <cstdio>
#include <fstream>
#include <unordered_map>

#include "l1prom/csv.hpp"
#include "l1prom/error.hpp"

namespace l1prom {

std::string format_measure(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string format_exact(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string csv_field(const std::string& value) {
  const bool quote = value.find_first_of(",\"") != std::string::npos ||
                     (!value.empty() && (value.front() == ' ' || value.back() == ' '));
  if (!quote) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

Graph read_graph(std::istream& edges, std::istream* vertices, const std::string& edges_name,
                 const std::string& vertices_name) {
  std::vector<std::string> names;
  std::vector<double> multiplicities;
  std::unordered_map<std::string, std::size_t> known;

  if (vertices != nullptr) {
    CsvReader reader(*vertices, vertices_name);
    const auto name_col = reader.require_column("name");
    const auto mult_col = reader.require_column("multiplicity");
    std::vector<std::string> row;
    while (reader.next(row)) {
      if (row[name_col].empty()) reader.fail("empty vertex name");
      if (!known.emplace(row[name_col], names.size()).second) reader.fail("duplicate vertex '" + row[name_col] + "'");
      names.push_back(row[name_col]);
      multiplicities.push_back(reader.number(row[mult_col]));
    }
  }

  CsvReader reader(edges, edges_name);
  const auto src_col = reader.require_column("source");
  const auto dst_col = reader.require_column("target");
  const auto w_col = reader.require_column("weight");
  std::vector<NamedEdge> list;
  std::vector<std::string> row;
  while (reader.next(row)) {
    if (row[src_col].empty() || row[dst_col].empty()) reader.fail("empty vertex name");
    list.push_back({row[src_col], row[dst_col], reader.number(row[w_col])});
    for (const auto* name : {&row[src_col], &row[dst_col]}) {
      if (known.contains(*name)) continue;
      if (vertices != nullptr) {
        throw Error(Errc::UnknownVertexName, edges_name + ":" + std::to_string(reader.line()) + ": vertex '" + *name +
                                                 "' is not in the vertex file");
      }
      known.emplace(*name, names.size());
      names.push_back(*name);
      multiplicities.push_back(1.0);
    }
  }

  if (names.size() > 1) {
    std::vector<bool> touched(names.size(), false);
    for (const auto& e : list) touched[known.at(e.source)] = touched[known.at(e.target)] = true;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (!touched[i]) throw Error(Errc::IsolatedVertex, "vertex '" + names[i] + "' has no edges");
    }
  }
  return build_graph(std::move(names), std::move(multiplicities), list);
}

Graph load_graph(const std::filesystem::path& edges, const std::optional<std::filesystem::path>& vertices) {
  std::ifstream e(edges);
  if (!e) throw Error(Errc::Io, "cannot open " + edges.string());
  if (!vertices) return read_graph(e, nullptr, edges.string());
  std::ifstream v(*vertices);
  if (!v) throw Error(Errc::Io, "cannot open " + vertices->string());
  return read_graph(e, &v, edges.string(), vertices->string());
}

void write_graph(std::ostream& edges, std::ostream& vertices, const Graph& g) {
  edges << "source,target,weight\n";
  for (const auto& e : g.edges()) {
    edges << csv_field(g.name(e.source)) << ',' << csv_field(g.name(e.target)) << ',' << format_exact(e.weight) << '\n';
  }
  vertices << "name,multiplicity\n";
  for (std::size_t v = 0; v < g.size(); ++v) {
    vertices << csv_field(g.name(v)) << ',' << format_exact(g.multiplicities()[v]) << '\n';
  }
}

void save_graph(const Graph& g, const std::filesystem::path& edges, const std::filesystem::path& vertices) {
  std::ofstream e(edges, std::ios::trunc);
  std::ofstream v(vertices, std::ios::trunc);
  if (!e) throw Error(Errc::Io, "cannot write " + edges.string());
  if (!v) throw Error(Errc::Io, "cannot write " + vertices.string());
  write_graph(e, v, g);
  if (!e || !v) throw Error(Errc::Io, "failed writing graph files");
}

}  // namespace l1prom
