#include "l1prom/prominence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "l1prom/error.hpp"

namespace l1prom {

namespace detail {

double check_multiplicities(std::size_t n, std::span<const double> eta) {
  if (eta.size() != n) {
    throw Error(Errc::DimensionMismatch,
                "expected " + std::to_string(n) + " multiplicities, got " + std::to_string(eta.size()));
  }
  double total = 0.0;
  for (double e : eta) {
    if (!(e >= 0.0) || !std::isfinite(e)) throw Error(Errc::NegativeMultiplicity, "multiplicities must be >= 0");
    total += e;
  }
  if (!(total > 0.0)) throw Error(Errc::ZeroTotalMultiplicity, "total multiplicity must be positive");
  return total;
}

void member_sums(const DistanceMatrix& d, std::span<const double> eta, std::span<const VertexId> members,
                 std::span<double> sums) {
  std::fill(sums.begin(), sums.end(), 0.0);
  for (VertexId i : members) {
    const double w = eta[i];
    const auto row = d.row(i);
    for (std::size_t p = 0; p < members.size(); ++p) sums[p] += w * row[members[p]];
  }
}

double restricted_value(const DistanceMatrix& d, std::span<const VertexId> members, std::span<const double> sums,
                        std::size_t anchor_pos, double mass, double symmetry) {
  const VertexId k = members[anchor_pos];
  const auto row_k = d.row(k);
  double best = 0.0;
  for (std::size_t p = 0; p < members.size(); ++p) {
    if (p == anchor_pos) continue;
    const double bracket = (sums[anchor_pos] - sums[p]) / (mass * row_k[members[p]]);
    if (bracket > best) best = bracket;
  }
  return 1.0 - symmetry * best;
}

std::vector<double> oriented_prominence(const DistanceMatrix& od, std::span<const double> eta, double symmetry) {
  const std::size_t n = od.size();
  std::vector<VertexId> all(n);
  std::iota(all.begin(), all.end(), VertexId{0});
  std::vector<double> sums(n);
  member_sums(od, eta, all, sums);
  double mass = 0.0;
  for (VertexId i : all) mass += eta[i];
  std::vector<double> values(n);
  for (std::size_t k = 0; k < n; ++k) values[k] = std::max(0.0, restricted_value(od, all, sums, k, mass, symmetry));
  return values;
}

}  // namespace detail

std::vector<double> weighted_distance_sums(const DistanceMatrix& d, std::span<const double> eta, Kind kind) {
  const std::size_t n = d.size();
  const double total = detail::check_multiplicities(n, eta);
  std::vector<double> sums(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double w = eta[j] / total;
    for (std::size_t i = 0; i < n; ++i) sums[i] += w * (kind == Kind::Prestige ? d.at(j, i) : d.at(i, j));
  }
  return sums;
}

MedianSet median(const DistanceMatrix& d, std::span<const double> eta, Kind kind, double tie_tolerance) {
  const auto sums = weighted_distance_sums(d, eta, kind);
  const double best = *std::min_element(sums.begin(), sums.end());
  const double slack = tie_tolerance * std::max(1.0, std::abs(best));
  MedianSet m{kind, {}};
  for (std::size_t i = 0; i < sums.size(); ++i)
    if (sums[i] - best <= slack) m.members.push_back(i);
  return m;
}

ProminenceVector l1_prominence(const DistanceMatrix& d, std::span<const double> eta, double symmetry, Kind kind) {
  const std::size_t n = d.size();
  detail::check_multiplicities(n, eta);
  ProminenceVector out{kind, 1.0, std::vector<double>(n, 1.0)};
  if (n < 2) return out;

  const OrientedDistances od(d, kind);
  out.values = detail::oriented_prominence(od.get(), eta, symmetry);
  return out;
}

ProminenceVector l1_prominence_matrix_form(const DistanceMatrix& d, std::span<const double> eta, double symmetry,
                                           Kind kind) {
  const std::size_t n = d.size();
  const double total = detail::check_multiplicities(n, eta);
  ProminenceVector out{kind, 1.0, std::vector<double>(n, 1.0)};
  if (n < 2) return out;

  const OrientedDistances oriented_d(d, kind);
  const DistanceMatrix& od = oriented_d.get();
  // incoming[k] = (D^T eta)_k, outgoing[j] = (eta^T D)_j
  std::vector<double> incoming(n, 0.0), outgoing(n, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) incoming[k] += od.at(i, k) * eta[i];
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) outgoing[j] += eta[i] * od.at(i, j);

  DistanceMatrix ratio(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      if (k != j) ratio.at(k, j) = (incoming[k] - outgoing[j]) / od.at(k, j);

  for (std::size_t k = 0; k < n; ++k) {
    double rowmax = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
      if (j != k) rowmax = std::max(rowmax, ratio.at(k, j));
    out.values[k] = std::max(0.0, 1.0 - (symmetry / total) * std::max(0.0, rowmax));
  }
  return out;
}

double oracle_prominence(const DistanceMatrix& d, std::span<const double> eta, double symmetry, VertexId k,
                         Kind kind, OracleOptions options) {
  const std::size_t n = d.size();
  const double total = detail::check_multiplicities(n, eta);
  if (k >= n) throw Error(Errc::InvalidArgument, "vertex index out of range");
  if (n < 2) return 1.0;
  if (!(symmetry > 0.0)) throw Error(Errc::InvalidArgument, "symmetry constant must be positive");

  const OrientedDistances oriented_d(d, kind);
  const DistanceMatrix& od = oriented_d.get();
  std::vector<double> base(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) base[i] += (eta[j] / total) * od.at(j, i);

  // k is a median once its sum is no larger than every other vertex's sum
  // after the extra weight w is placed on k.
  auto is_member = [&](double w) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      if (base[k] > base[i] + w * od.at(k, i)) return false;
    }
    return true;
  };

  if (is_member(0.0)) return 1.0;
  double lo = 0.0, hi = 1.0 / symmetry + 1.0;
  if (!is_member(hi)) throw Error(Errc::NoConvergence, "bisection bracket does not contain the median threshold");
  for (int it = 0; it < options.max_iterations && hi - lo >= options.width_tolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    (is_member(mid) ? hi : lo) = mid;
  }
  return 1.0 - symmetry * hi;
}

}  // namespace l1prom
