#pragma once

#include <span>
#include <vector>

#include "l1prom/geodesics.hpp"
#include "l1prom/graph.hpp"

namespace l1prom {

/// Prestige looks at incoming proximity (distances *to* a vertex),
/// centrality at outgoing proximity (distances *from* it).
enum class Kind { Prestige, Centrality };

inline constexpr double kDefaultTieTolerance = 1e-9;

struct ProminenceVector {
  Kind kind = Kind::Prestige;
  double alpha = 1.0;  // 1 for the global measure
  std::vector<double> values;
};

struct MedianSet {
  Kind kind = Kind::Prestige;
  std::vector<VertexId> members;  // ascending, nonempty
};

/// Distances oriented so that prestige formulas apply: D itself for
/// prestige, its transpose for centrality. Only the transpose is stored.
class OrientedDistances {
 public:
  OrientedDistances(const DistanceMatrix& d, Kind kind) : view_(&d) {
    if (kind == Kind::Centrality) {
      transposed_ = d.transposed();
      view_ = &transposed_;
    }
  }
  OrientedDistances(const OrientedDistances&) = delete;
  OrientedDistances& operator=(const OrientedDistances&) = delete;

  const DistanceMatrix& get() const noexcept { return *view_; }

 private:
  DistanceMatrix transposed_;
  const DistanceMatrix* view_;
};

/// Entry i is sum_j (eta_j / eta_total) d(j, i) for prestige and
/// sum_j (eta_j / eta_total) d(i, j) for centrality.
std::vector<double> weighted_distance_sums(const DistanceMatrix& d, std::span<const double> eta, Kind kind);

/// Argmin set of the weighted distance sums. Two sums tie when they differ
/// by at most tie_tolerance * max(1, |smallest sum|).
MedianSet median(const DistanceMatrix& d, std::span<const double> eta, Kind kind,
                 double tie_tolerance = kDefaultTieTolerance);

/// Closed-form L1 prestige/centrality:
///   1 - S * max_{j != k} { sum_i eta_i (d(i,k) - d(i,j)) / (eta_total d(k,j)) }^+
/// on the oriented distances. `symmetry` is symmetry_constant(d); it is
/// unused when n == 1, where the single vertex gets value 1.
ProminenceVector l1_prominence(const DistanceMatrix& d, std::span<const double> eta, double symmetry, Kind kind);

inline ProminenceVector l1_prestige(const DistanceMatrix& d, std::span<const double> eta, double symmetry) {
  return l1_prominence(d, eta, symmetry, Kind::Prestige);
}
inline ProminenceVector l1_centrality(const DistanceMatrix& d, std::span<const double> eta, double symmetry) {
  return l1_prominence(d, eta, symmetry, Kind::Centrality);
}

/// Same measure through explicit matrices: 1 - (S/eta_total) rowmax{(D^T eta 1^T - 1 eta^T D) / D}^+
/// with element-wise division and diagonals skipped in rowmax.
ProminenceVector l1_prominence_matrix_form(const DistanceMatrix& d, std::span<const double> eta, double symmetry,
                                           Kind kind);

struct OracleOptions {
  int max_iterations = 80;
  double width_tolerance = 1e-12;
};

/// Definitional prominence of vertex k: 1 - S * w*, where w* is the least
/// extra weight on k's normalized multiplicity that makes k a median. Found
/// by bisection over [0, 1/S + 1] using direct median-membership checks.
/// Throws NoConvergence if the upper end of the bracket is not a member.
double oracle_prominence(const DistanceMatrix& d, std::span<const double> eta, double symmetry, VertexId k,
                         Kind kind = Kind::Prestige, OracleOptions options = {});

namespace detail {

/// Validates eta against n; returns the total mass.
double check_multiplicities(std::size_t n, std::span<const double> eta);

/// sums[p] = sum over members i (in the given order) of eta_i * d(i, members[p]).
void member_sums(const DistanceMatrix& d, std::span<const double> eta, std::span<const VertexId> members,
                 std::span<double> sums);

/// 1 - S * max over members p != anchor_pos of {(sums[anchor] - sums[p]) / (mass * d(anchor, members[p]))}^+.
double restricted_value(const DistanceMatrix& d, std::span<const VertexId> members, std::span<const double> sums,
                        std::size_t anchor_pos, double mass, double symmetry);

/// Closed-form values on already-oriented distances; n >= 2.
std::vector<double> oriented_prominence(const DistanceMatrix& od, std::span<const double> eta, double symmetry);

}  // namespace detail

}  // namespace l1prom
