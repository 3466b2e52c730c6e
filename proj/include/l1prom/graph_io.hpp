#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "l1prom/graph.hpp"

namespace l1prom {

/// Edge list `source,target,weight` plus optional vertex list
/// `name,multiplicity`. Without a vertex list every vertex has multiplicity 1
/// and vertices are numbered in order of first appearance in the edge list;
/// with one, its row order defines the numbering. A listed vertex that
/// touches no edge is rejected (IsolatedVertex) unless it is the only one.
Graph read_graph(std::istream& edges, std::istream* vertices, const std::string& edges_name = "<edges>",
                 const std::string& vertices_name = "<vertices>");
Graph load_graph(const std::filesystem::path& edges, const std::optional<std::filesystem::path>& vertices);

/// Writes weights and multiplicities with 17 significant digits so that
/// reading the pair back reproduces the graph exactly.
void write_graph(std::ostream& edges, std::ostream& vertices, const Graph& g);
void save_graph(const Graph& g, const std::filesystem::path& edges, const std::filesystem::path& vertices);

/// 12 significant digits, the precision of every measure output.
std::string format_measure(double value);

/// Round-trip precision (17 significant digits).
std::string format_exact(double value);

/// Quotes a CSV field when it contains a comma, quote or surrounding space.
std::string csv_field(const std::string& value);

}  // namespace l1prom
