#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "l1prom/graph.hpp"

namespace l1prom {

/// Dense row-major n x n geodesic distance matrix; at(i, j) is the
/// shortest path length from i to j.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}
  DistanceMatrix(std::size_t n, std::vector<double> row_major);

  std::size_t size() const noexcept { return n_; }
  double at(std::size_t i, std::size_t j) const noexcept { return d_[i * n_ + j]; }
  double& at(std::size_t i, std::size_t j) noexcept { return d_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return std::span<const double>(d_).subspan(i * n_, n_); }
  std::span<double> row(std::size_t i) { return std::span<double>(d_).subspan(i * n_, n_); }
  const std::vector<double>& data() const noexcept { return d_; }

  DistanceMatrix transposed() const;

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

/// Dijkstra from every source, parallel over sources. Throws
/// NotStronglyConnected if any pair is unreachable.
DistanceMatrix all_pairs_shortest(const Graph& g, unsigned threads = 1);

/// min over ordered pairs i != j of d(i,j)/d(j,i); lies in (0, 1].
/// Throws DegenerateGraph when n < 2.
double symmetry_constant(const DistanceMatrix& d);

// On-disk cache: 8-byte little-endian u64 n, then n*n little-endian doubles
// row-major. A sidecar "<path>.checksum" holds the hex FNV-1a 64 of the
// edge-list bytes the matrix was computed from.

std::uint64_t fnv1a64(std::span<const std::byte> bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::uint64_t file_checksum(const std::filesystem::path& path);

void write_distance_cache(const std::filesystem::path& path, const DistanceMatrix& d, std::uint64_t source_checksum);

/// Returns nullopt when the cache or its sidecar is absent or when the stored
/// checksum differs from `source_checksum`. Throws Io on a truncated file.
std::optional<DistanceMatrix> read_distance_cache(const std::filesystem::path& path, std::uint64_t source_checksum);

}  // namespace l1prom
