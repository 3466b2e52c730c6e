#include "l1prom/geodesics.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <queue>
#include <sstream>
#include <string>

#include "l1prom/error.hpp"
#include "l1prom/parallel.hpp"

namespace l1prom {

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> row_major) : n_(n), d_(std::move(row_major)) {
  if (d_.size() != n * n) throw Error(Errc::DimensionMismatch, "distance data is not n*n");
}

DistanceMatrix DistanceMatrix::transposed() const {
  DistanceMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t.at(j, i) = at(i, j);
  return t;
}

namespace {

void dijkstra(const Graph& g, VertexId source, std::span<double> dist) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::fill(dist.begin(), dist.end(), kInf);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [du, u] = heap.top();
    heap.pop();
    if (du > dist[u]) continue;
    for (const Edge& e : g.out_edges(u)) {
      const double cand = du + e.weight;
      if (cand < dist[e.target]) {
        dist[e.target] = cand;
        heap.emplace(cand, e.target);
      }
    }
  }
}

bool has_symmetric_arcs(const Graph& g) {
  for (const Edge& e : g.edges()) {
    const auto back = g.out_edges(e.target);
    const auto it = std::lower_bound(back.begin(), back.end(), e.source,
                                     [](const Edge& x, VertexId v) { return x.target < v; });
    if (it == back.end() || it->target != e.source || it->weight != e.weight) return false;
  }
  return true;
}

}  // namespace

DistanceMatrix all_pairs_shortest(const Graph& g, unsigned threads) {
  const std::size_t n = g.size();
  DistanceMatrix d(n);
  parallel_for(n, threads, [&](std::size_t s) { dijkstra(g, s, d.row(s)); });
  // Opposite directions of one undirected path are summed in different
  // orders and may round apart; pick one value so the matrix is exactly
  // symmetric whenever the graph is.
  if (has_symmetric_arcs(g)) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) d.at(i, j) = d.at(j, i) = std::min(d.at(i, j), d.at(j, i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(d.at(i, j))) {
        throw Error(Errc::NotStronglyConnected,
                    "no path from '" + g.name(i) + "' to '" + g.name(j) + "'");
      }
    }
  }
  return d;
}

double symmetry_constant(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  if (n < 2) throw Error(Errc::DegenerateGraph, "symmetry constant needs at least two vertices");
  double s = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s = std::min(s, d.at(i, j) / d.at(j, i));
  return s;
}

std::uint64_t fnv1a64(std::span<const std::byte> bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (std::byte b : bytes) {
    h ^= static_cast<std::uint64_t>(b);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t file_checksum(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return fnv1a64(std::as_bytes(std::span(content.data(), content.size())));
}

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    auto raw = std::bit_cast<std::array<std::byte, sizeof(T)>>(v);
    std::reverse(raw.begin(), raw.end());
    return std::bit_cast<T>(raw);
  }
}

std::filesystem::path sidecar(const std::filesystem::path& path) {
  auto p = path;
  p += ".checksum";
  return p;
}

}  // namespace

void write_distance_cache(const std::filesystem::path& path, const DistanceMatrix& d, std::uint64_t source_checksum) {
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::Io, "cannot write " + path.string());
    const std::uint64_t n = to_little<std::uint64_t>(d.size());
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    for (double v : d.data()) {
      const double le = to_little(v);
      out.write(reinterpret_cast<const char*>(&le), sizeof le);
    }
    if (!out) throw Error(Errc::Io, "failed writing " + path.string());
  }
  std::ofstream side(sidecar(path), std::ios::trunc);
  if (!side) throw Error(Errc::Io, "cannot write " + sidecar(path).string());
  side << std::hex << std::setw(16) << std::setfill('0') << source_checksum << '\n';
}

std::optional<DistanceMatrix> read_distance_cache(const std::filesystem::path& path, std::uint64_t source_checksum) {
  std::ifstream side(sidecar(path));
  std::ifstream in(path, std::ios::binary);
  if (!side || !in) return std::nullopt;
  std::uint64_t stored = 0;
  side >> std::hex >> stored;
  if (!side || stored != source_checksum) return std::nullopt;

  std::uint64_t n = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  if (!in) throw Error(Errc::Io, "truncated distance cache " + path.string());
  n = to_little(n);
  std::vector<double> data(n * n);
  in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size() * sizeof(double)));
  if (!in) throw Error(Errc::Io, "truncated distance cache " + path.string());
  for (double& v : data) v = to_little(v);
  return DistanceMatrix(n, std::move(data));
}

}  // namespace l1prom
