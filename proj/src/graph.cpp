#include "l1prom/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "l1prom/error.hpp"

namespace l1prom {

std::optional<VertexId> Graph::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const Edge> Graph::out_edges(VertexId v) const {
  return std::span<const Edge>(edges_).subspan(offsets_.at(v), offsets_.at(v + 1) - offsets_.at(v));
}

Graph build_graph(std::vector<std::string> names, std::vector<double> multiplicities,
                  std::span<const NamedEdge> edges) {
  if (names.size() != multiplicities.size()) {
    throw Error(Errc::DimensionMismatch, "got " + std::to_string(names.size()) + " names but " +
                                             std::to_string(multiplicities.size()) + " multiplicities");
  }
  if (names.empty()) throw Error(Errc::EmptyInput, "graph has no vertices");

  Graph g;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) throw Error(Errc::EmptyVertexName, "vertex " + std::to_string(i) + " has an empty name");
    if (!g.index_.emplace(names[i], i).second) {
      throw Error(Errc::DuplicateVertexName, "duplicate vertex name '" + names[i] + "'");
    }
  }

  double total = 0.0;
  for (std::size_t i = 0; i < multiplicities.size(); ++i) {
    const double eta = multiplicities[i];
    if (!(eta >= 0.0) || !std::isfinite(eta)) {
      throw Error(Errc::NegativeMultiplicity, "vertex '" + names[i] + "' has invalid multiplicity");
    }
    total += eta;
  }
  if (!(total > 0.0)) throw Error(Errc::ZeroTotalMultiplicity, "total multiplicity must be positive");

  auto lookup = [&](const std::string& name) {
    auto it = g.index_.find(name);
    if (it == g.index_.end()) throw Error(Errc::UnknownVertexName, "unknown vertex '" + name + "'");
    return it->second;
  };

  g.edges_.reserve(edges.size());
  for (const auto& e : edges) {
    const VertexId s = lookup(e.source);
    const VertexId t = lookup(e.target);
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(Errc::NonPositiveEdgeWeight, "edge " + e.source + "->" + e.target + " has non-positive weight");
    }
    if (s == t) throw Error(Errc::SelfLoopEdge, "self-loop on '" + e.source + "'");
    g.edges_.push_back({s, t, e.weight});
  }
  std::sort(g.edges_.begin(), g.edges_.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.source, a.target) < std::pair(b.source, b.target);
  });
  for (std::size_t i = 1; i < g.edges_.size(); ++i) {
    if (g.edges_[i].source == g.edges_[i - 1].source && g.edges_[i].target == g.edges_[i - 1].target) {
      throw Error(Errc::DuplicateEdge, "duplicate edge " + names[g.edges_[i].source] + "->" + names[g.edges_[i].target]);
    }
  }

  g.offsets_.assign(names.size() + 1, 0);
  for (const auto& e : g.edges_) ++g.offsets_[e.source + 1];
  for (std::size_t v = 0; v < names.size(); ++v) g.offsets_[v + 1] += g.offsets_[v];

  g.names_ = std::move(names);
  g.multiplicities_ = std::move(multiplicities);
  g.total_multiplicity_ = total;
  return g;
}

Graph from_undirected(std::vector<std::string> names, std::vector<double> multiplicities,
                      std::span<const NamedEdge> undirected_edges) {
  std::vector<NamedEdge> directed;
  directed.reserve(2 * undirected_edges.size());
  for (const auto& e : undirected_edges) {
    directed.push_back(e);
    directed.push_back({e.target, e.source, e.weight});
  }
  return build_graph(std::move(names), std::move(multiplicities), directed);
}

// Iterative Tarjan.
ConnectivityReport check_strong_connectivity(const Graph& g) {
  const std::size_t n = g.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<VertexId> stack;
  std::vector<std::pair<VertexId, std::size_t>> call;  // (vertex, next edge offset)
  std::size_t counter = 0, ncomp = 0;

  for (VertexId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      const auto out = g.out_edges(v);
      if (next < out.size()) {
        const VertexId w = out[next++].target;
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const VertexId done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        VertexId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = ncomp;
        } while (w != done);
        ++ncomp;
      }
    }
  }

  ConnectivityReport report;
  report.components.resize(ncomp);
  for (VertexId v = 0; v < n; ++v) report.components[comp[v]].push_back(v);
  std::sort(report.components.begin(), report.components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  std::set<std::pair<std::size_t, std::size_t>> dag_edges;
  for (const auto& e : g.edges()) {
    if (comp[e.source] != comp[e.target]) dag_edges.emplace(comp[e.source], comp[e.target]);
  }
  report.condensation_edge_count = dag_edges.size();
  report.strongly_connected = ncomp == 1;
  return report;
}

}  // namespace l1prom
