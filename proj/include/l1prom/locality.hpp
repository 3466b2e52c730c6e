#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "l1prom/geodesics.hpp"
#include "l1prom/prominence.hpp"

namespace l1prom {

struct NeighborhoodSet {
  VertexId anchor = 0;
  Kind kind = Kind::Prestige;
  double alpha = 1.0;
  std::vector<VertexId> members;  // ascending, contains anchor
  std::vector<double> modified;   // prominence of every vertex in the graph modified w.r.t. anchor
};

/// eta with eta_total / S added to entry k. This makes k a median of the
/// modified graph (the unique one when eta_k > 0).
std::vector<double> modified_multiplicities(std::span<const double> eta, double symmetry, VertexId k);

/// Number of vertices an order-alpha neighborhood asks for before tie
/// expansion: ceil(alpha * n), with a 1e-9 guard so grid points such as
/// 15/424 are not pushed up by representation error.
std::size_t neighborhood_target_size(double alpha, std::size_t n);

/// Vertices ordered for neighborhood selection around an anchor: the anchor
/// first, then by descending modified prominence, ties by index.
struct AnchorRanking {
  VertexId anchor = 0;
  std::vector<VertexId> order;
  std::vector<double> modified;  // indexed by vertex
};

AnchorRanking rank_for_anchor(const DistanceMatrix& d, std::span<const double> eta, double symmetry, VertexId k,
                              Kind kind);

/// Top neighborhood_target_size(alpha, n) vertices of the anchor's ranking,
/// expanded with every vertex tied (within tie_tolerance) with the cutoff.
/// Throws NeighborhoodTooSmall when fewer than two vertices are requested.
NeighborhoodSet neighborhood(const DistanceMatrix& d, std::span<const double> eta, double symmetry, VertexId k,
                             double alpha, Kind kind, double tie_tolerance = kDefaultTieTolerance);

inline NeighborhoodSet prestige_neighborhood(const DistanceMatrix& d, std::span<const double> eta, double symmetry,
                                             VertexId k, double alpha) {
  return neighborhood(d, eta, symmetry, k, alpha, Kind::Prestige);
}
inline NeighborhoodSet centrality_neighborhood(const DistanceMatrix& d, std::span<const double> eta, double symmetry,
                                               VertexId k, double alpha) {
  return neighborhood(d, eta, symmetry, k, alpha, Kind::Centrality);
}

/// Values below zero are clamped; these counters record how often and by
/// how much (raw minimum), so callers can check clamping is only round-off.
struct ClampStats {
  std::size_t events = 0;
  double lowest_raw = 0.0;

  void merge(const ClampStats& other);
};

struct LocalResult {
  ProminenceVector measure;
  ClampStats clamps;
};

/// Order-alpha local prominence: the closed form with sums, mass and the
/// max restricted to each vertex's own neighborhood; S stays global.
/// alpha == 1 reproduces l1_prominence bit for bit.
LocalResult local_l1_prominence(const DistanceMatrix& d, std::span<const double> eta, double symmetry, double alpha,
                                Kind kind, unsigned threads = 1);

inline LocalResult local_l1_prestige(const DistanceMatrix& d, std::span<const double> eta, double symmetry,
                                     double alpha, unsigned threads = 1) {
  return local_l1_prominence(d, eta, symmetry, alpha, Kind::Prestige, threads);
}
inline LocalResult local_l1_centrality(const DistanceMatrix& d, std::span<const double> eta, double symmetry,
                                       double alpha, unsigned threads = 1) {
  return local_l1_prominence(d, eta, symmetry, alpha, Kind::Centrality, threads);
}

struct MultiscaleProfile {
  Kind kind = Kind::Prestige;
  std::vector<double> alpha_grid;
  std::vector<std::vector<double>> values;  // [vertex][grid point]
  std::optional<std::vector<std::vector<double>>> uniform_margin;  // same shape, per-column ranks
  ClampStats clamps;
};

/// Local values at every grid point. Grid must be strictly increasing in
/// (0, 1] with every point requesting at least two vertices.
MultiscaleProfile multiscale_profile(const DistanceMatrix& d, std::span<const double> eta, double symmetry, Kind kind,
                                     std::span<const double> alpha_grid, bool with_margins = true,
                                     unsigned threads = 1);

/// m/n for m = 15, 20, ... up to n - 4 when n >= 19 (82 points at n = 424);
/// otherwise every feasible m/n for m = 2..n.
std::vector<double> default_alpha_grid(std::size_t n);

/// Parses "a,b,c" or "start:stop:step". Entries are decimals or p/q
/// fractions; ranges are enumerated in exact rational arithmetic, so
/// "15/424:420/424:5/424" yields exactly 82 points.
std::vector<double> parse_alpha_grid(std::string_view text);

}  // namespace l1prom
