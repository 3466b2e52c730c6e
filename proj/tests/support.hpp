#pragma once

// Shared helpers for the test binaries: seeded random instances and
// reference implementations written independently of the library code.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "l1prom/geodesics.hpp"
#include "l1prom/graph.hpp"

namespace testsupport {

struct Instance {
  l1prom::Graph graph;
  l1prom::DistanceMatrix d;
  std::vector<double> eta;
  double s = 1.0;
};

inline std::vector<std::string> vertex_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i + 1));
  return names;
}

struct RandomSpec {
  std::size_t n = 5;
  double extra_edge_probability = 0.3;
  double max_weight = 10.0;   // weights in (0, max_weight]
  double max_eta = 5.0;       // multiplicities in [0, max_eta]
  bool integer_values = false;  // integer weights in [1, max_weight], eta in [0, max_eta]
  bool undirected = false;
};

/// Strongly connected by construction: a random Hamiltonian cycle plus
/// independent extra arcs.
inline std::vector<l1prom::NamedEdge> random_edges(std::mt19937_64& rng, const RandomSpec& spec) {
  const std::size_t n = spec.n;
  const auto names = vertex_names(n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> whole(1, static_cast<int>(spec.max_weight));
  auto weight = [&] {
    if (spec.integer_values) return static_cast<double>(whole(rng));
    double w = 0.0;
    while (w <= 0.0) w = spec.max_weight * (1.0 - unit(rng));  // (0, max]
    return w;
  };
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<char>> used(n, std::vector<char>(n, 0));
  std::vector<l1prom::NamedEdge> edges;
  auto add = [&](std::size_t a, std::size_t b) {
    if (a == b || used[a][b] || (spec.undirected && used[b][a])) return;
    used[a][b] = 1;
    edges.push_back({names[a], names[b], weight()});
  };
  for (std::size_t i = 0; i < n; ++i) add(perm[i], perm[(i + 1) % n]);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (unit(rng) < spec.extra_edge_probability) add(a, b);
  return edges;
}

inline std::vector<double> random_eta(std::mt19937_64& rng, const RandomSpec& spec) {
  std::vector<double> eta(spec.n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> whole(0, static_cast<int>(spec.max_eta));
  for (double& e : eta) e = spec.integer_values ? whole(rng) : spec.max_eta * unit(rng);
  if (std::accumulate(eta.begin(), eta.end(), 0.0) <= 0.0) eta[0] = 1.0;
  return eta;
}

inline Instance make_instance(std::vector<std::string> names, std::vector<double> eta,
                              const std::vector<l1prom::NamedEdge>& edges, bool undirected = false) {
  Instance inst{undirected ? l1prom::from_undirected(names, eta, edges) : l1prom::build_graph(names, eta, edges),
                {}, eta, 1.0};
  inst.d = l1prom::all_pairs_shortest(inst.graph);
  inst.s = inst.d.size() >= 2 ? l1prom::symmetry_constant(inst.d) : 1.0;
  return inst;
}

inline Instance random_instance(std::mt19937_64& rng, const RandomSpec& spec) {
  const auto edges = random_edges(rng, spec);
  return make_instance(vertex_names(spec.n), random_eta(rng, spec), edges, spec.undirected);
}

/// Floyd-Warshall from a raw arc list; an independent check on Dijkstra.
inline std::vector<std::vector<double>> floyd_warshall(const l1prom::Graph& g) {
  const std::size_t n = g.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const auto& e : g.edges()) d[e.source][e.target] = std::min(d[e.source][e.target], e.weight);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

/// Textbook prestige of every vertex, straight from the definition of the
/// closed form with unnormalized sums; centrality via `transpose`.
inline std::vector<double> reference_prominence(const std::vector<std::vector<double>>& dist,
                                                const std::vector<double>& eta, bool transpose) {
  const std::size_t n = dist.size();
  auto d = [&](std::size_t i, std::size_t j) { return transpose ? dist[j][i] : dist[i][j]; };
  double s = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s = std::min(s, dist[i][j] / dist[j][i]);
  const double total = std::accumulate(eta.begin(), eta.end(), 0.0);
  std::vector<double> out(n, 1.0);
  for (std::size_t k = 0; k < n; ++k) {
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      double diff = 0.0;
      for (std::size_t i = 0; i < n; ++i) diff += eta[i] * (d(i, k) - d(i, j));
      worst = std::max(worst, diff / (total * d(k, j)));
    }
    out[k] = std::max(0.0, 1.0 - s * worst);
  }
  return out;
}

inline bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) return false;
  return true;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// The asymmetric 3-cycle a -> b (1), b -> c (1), c -> a (10), uniform eta.
inline Instance three_cycle() {
  return make_instance({"v1", "v2", "v3"}, {1, 1, 1}, {{"v1", "v2", 1}, {"v2", "v3", 1}, {"v3", "v1", 10}});
}

/// Two vertices: v1 -> v2 length 1, v2 -> v1 length 2.
inline Instance two_vertex() { return make_instance({"v1", "v2"}, {1, 1}, {{"v1", "v2", 1}, {"v2", "v1", 2}}); }

}  // namespace testsupport
