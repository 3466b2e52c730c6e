#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace l1prom {

using VertexId = std::size_t;

struct Edge {
  VertexId source;
  VertexId target;
  double weight;  // positive length
};

struct NamedEdge {
  std::string source;
  std::string target;
  double weight;
};

/// Immutable vertex- and edge-weighted directed graph.
///
/// Vertices are indexed in input order. Edge weights are lengths (> 0),
/// multiplicities are nonnegative with a positive total. Duplicate
/// (source, target) pairs and self-loops are rejected at construction.
class Graph {
 public:
  std::size_t size() const noexcept { return names_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(VertexId v) const { return names_.at(v); }
  std::optional<VertexId> find(std::string_view name) const;

  const std::vector<double>& multiplicities() const noexcept { return multiplicities_; }
  double total_multiplicity() const noexcept { return total_multiplicity_; }

  /// Edges sorted by (source, target).
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Outgoing edges of v, as a contiguous slice of edges().
  std::span<const Edge> out_edges(VertexId v) const;

 private:
  friend Graph build_graph(std::vector<std::string>, std::vector<double>, std::span<const NamedEdge>);

  std::vector<std::string> names_;
  std::vector<double> multiplicities_;
  double total_multiplicity_ = 0.0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;  // CSR row starts into edges_
  std::unordered_map<std::string, VertexId> index_;
};

/// Validates and assembles a graph. Throws l1prom::Error on any violated invariant.
Graph build_graph(std::vector<std::string> names, std::vector<double> multiplicities,
                  std::span<const NamedEdge> edges);

/// Each undirected edge {a, b, w} becomes (a, b, w) and (b, a, w).
Graph from_undirected(std::vector<std::string> names, std::vector<double> multiplicities,
                      std::span<const NamedEdge> undirected_edges);

struct ConnectivityReport {
  bool strongly_connected = false;
  /// Strongly connected components, each sorted ascending; components are
  /// ordered by their smallest member.
  std::vector<std::vector<VertexId>> components;
  /// Number of distinct edges between components in the condensation DAG.
  std::size_t condensation_edge_count = 0;
};

ConnectivityReport check_strong_connectivity(const Graph& g);

}  // namespace l1prom
