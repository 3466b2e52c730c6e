#include "l1prom/locality.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <string>

#include "l1prom/analytics.hpp"
#include "l1prom/error.hpp"
#include "l1prom/parallel.hpp"

namespace l1prom {

void ClampStats::merge(const ClampStats& other) {
  events += other.events;
  lowest_raw = std::min(lowest_raw, other.lowest_raw);
}

std::vector<double> modified_multiplicities(std::span<const double> eta, double symmetry, VertexId k) {
  if (k >= eta.size()) throw Error(Errc::InvalidArgument, "anchor index out of range");
  if (!(symmetry > 0.0) || symmetry > 1.0) throw Error(Errc::InvalidArgument, "symmetry constant must lie in (0, 1]");
  const double total = std::accumulate(eta.begin(), eta.end(), 0.0);
  std::vector<double> out(eta.begin(), eta.end());
  out[k] += total / symmetry;
  return out;
}

std::size_t neighborhood_target_size(double alpha, std::size_t n) {
  if (!(alpha > 0.0) || alpha > 1.0) throw Error(Errc::InvalidArgument, "alpha must lie in (0, 1]");
  const double scaled = std::ceil(alpha * static_cast<double>(n) - 1e-9);
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::max(scaled, 0.0)), 0, n);
}

namespace {

void require_target(std::size_t target, double alpha) {
  if (target < 2) {
    throw Error(Errc::NeighborhoodTooSmall,
                "alpha " + std::to_string(alpha) + " selects fewer than two vertices");
  }
}

AnchorRanking rank_oriented(const DistanceMatrix& od, std::span<const double> eta, double symmetry, VertexId k) {
  AnchorRanking r;
  r.anchor = k;
  r.modified = detail::oriented_prominence(od, modified_multiplicities(eta, symmetry, k), symmetry);
  r.order.resize(od.size());
  std::iota(r.order.begin(), r.order.end(), VertexId{0});
  std::stable_sort(r.order.begin(), r.order.end(), [&](VertexId a, VertexId b) {
    if (a == k || b == k) return a == k && b != k;
    return r.modified[a] > r.modified[b];
  });
  return r;
}

std::vector<VertexId> select_members(const AnchorRanking& r, std::size_t target, double tie_tolerance) {
  const std::size_t n = r.order.size();
  std::vector<char> in(n, 0);
  for (std::size_t p = 0; p < target; ++p) in[r.order[p]] = 1;
  const double cutoff = r.modified[r.order[target - 1]];
  for (std::size_t p = target; p < n; ++p)
    if (r.modified[r.order[p]] >= cutoff - tie_tolerance) in[r.order[p]] = 1;
  std::vector<VertexId> members;
  for (VertexId v = 0; v < n; ++v)
    if (in[v]) members.push_back(v);
  return members;
}

double local_value(const DistanceMatrix& od, std::span<const double> eta, std::span<const VertexId> members,
                   VertexId k, double symmetry, ClampStats& clamps, std::vector<double>& scratch) {
  const auto anchor_pos = static_cast<std::size_t>(std::lower_bound(members.begin(), members.end(), k) - members.begin());
  double mass = 0.0;
  for (VertexId i : members) mass += eta[i];
  // Zero neighborhood mass makes every weighted sum zero, so every member
  // ties as median.
  if (!(mass > 0.0)) return 1.0;
  scratch.resize(members.size());
  detail::member_sums(od, eta, members, scratch);
  const double raw = detail::restricted_value(od, members, scratch, anchor_pos, mass, symmetry);
  if (raw < 0.0) {
    ++clamps.events;
    clamps.lowest_raw = std::min(clamps.lowest_raw, raw);
    return 0.0;
  }
  return raw;
}

}  // namespace

AnchorRanking rank_for_anchor(const DistanceMatrix& d, std::span<const double> eta, double symmetry, VertexId k,
                              Kind kind) {
  detail::check_multiplicities(d.size(), eta);
  const OrientedDistances od(d, kind);
  return rank_oriented(od.get(), eta, symmetry, k);
}

NeighborhoodSet neighborhood(const DistanceMatrix& d, std::span<const double> eta, double symmetry, VertexId k,
                             double alpha, Kind kind, double tie_tolerance) {
  const std::size_t n = d.size();
  detail::check_multiplicities(n, eta);
  if (k >= n) throw Error(Errc::InvalidArgument, "anchor index out of range");
  const std::size_t target = neighborhood_target_size(alpha, n);
  require_target(target, alpha);
  AnchorRanking r = rank_for_anchor(d, eta, symmetry, k, kind);
  NeighborhoodSet out;
  out.anchor = k;
  out.kind = kind;
  out.alpha = alpha;
  out.members = select_members(r, target, tie_tolerance);
  out.modified = std::move(r.modified);
  return out;
}

LocalResult local_l1_prominence(const DistanceMatrix& d, std::span<const double> eta, double symmetry, double alpha,
                                Kind kind, unsigned threads) {
  const double grid[] = {alpha};
  MultiscaleProfile p = multiscale_profile(d, eta, symmetry, kind, grid, false, threads);
  LocalResult out;
  out.measure.kind = kind;
  out.measure.alpha = alpha;
  out.measure.values.reserve(d.size());
  for (const auto& row : p.values) out.measure.values.push_back(row.front());
  out.clamps = p.clamps;
  return out;
}

MultiscaleProfile multiscale_profile(const DistanceMatrix& d, std::span<const double> eta, double symmetry, Kind kind,
                                     std::span<const double> alpha_grid, bool with_margins, unsigned threads) {
  const std::size_t n = d.size();
  detail::check_multiplicities(n, eta);
  if (alpha_grid.empty()) throw Error(Errc::InvalidArgument, "alpha grid is empty");
  std::vector<std::size_t> targets;
  for (std::size_t g = 0; g < alpha_grid.size(); ++g) {
    if (g > 0 && !(alpha_grid[g] > alpha_grid[g - 1])) {
      throw Error(Errc::InvalidArgument, "alpha grid must be strictly increasing");
    }
    targets.push_back(neighborhood_target_size(alpha_grid[g], n));
    require_target(targets.back(), alpha_grid[g]);
  }

  MultiscaleProfile profile;
  profile.kind = kind;
  profile.alpha_grid.assign(alpha_grid.begin(), alpha_grid.end());
  profile.values.assign(n, std::vector<double>(alpha_grid.size(), 0.0));

  const OrientedDistances od(d, kind);
  std::vector<ClampStats> per_anchor(n);
  parallel_for(n, threads, [&](std::size_t k) {
    const AnchorRanking r = rank_oriented(od.get(), eta, symmetry, k);
    std::vector<double> scratch;
    for (std::size_t g = 0; g < targets.size(); ++g) {
      const auto members = select_members(r, targets[g], kDefaultTieTolerance);
      profile.values[k][g] = local_value(od.get(), eta, members, k, symmetry, per_anchor[k], scratch);
    }
  });
  for (const auto& c : per_anchor) profile.clamps.merge(c);

  if (with_margins) {
    std::vector<std::vector<double>> margins(n, std::vector<double>(alpha_grid.size()));
    std::vector<double> column(n);
    for (std::size_t g = 0; g < alpha_grid.size(); ++g) {
      for (std::size_t v = 0; v < n; ++v) column[v] = profile.values[v][g];
      const RankedVector ranked = uniform_margin(column);
      for (std::size_t v = 0; v < n; ++v) margins[v][g] = ranked.margins[v];
    }
    profile.uniform_margin = std::move(margins);
  }
  return profile;
}

std::vector<double> default_alpha_grid(std::size_t n) {
  std::vector<double> grid;
  const double dn = static_cast<double>(n);
  if (n >= 19) {
    for (std::size_t m = 15; m + 4 <= n; m += 5) grid.push_back(static_cast<double>(m) / dn);
  } else {
    for (std::size_t m = 2; m <= n; ++m) grid.push_back(static_cast<double>(m) / dn);
  }
  return grid;
}

}  // namespace l1prom

namespace l1prom {

namespace {

struct Rational {
  long long num = 0;
  long long den = 1;
};

[[noreturn]] void bad_grid(std::string_view text, const std::string& why) {
  throw Error(Errc::InvalidArgument, "invalid alpha grid '" + std::string(text) + "': " + why);
}

long long parse_integer(std::string_view s, std::string_view text) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) bad_grid(text, "'" + std::string(s) + "' is not an integer");
  return v;
}

Rational parse_rational(std::string_view s, std::string_view text) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational r{parse_integer(s.substr(0, slash), text), parse_integer(s.substr(slash + 1), text)};
    if (r.den <= 0) bad_grid(text, "denominator must be positive");
    return r;
  }
  const auto dot = s.find('.');
  if (dot == std::string_view::npos) return {parse_integer(s, text), 1};
  const std::string_view frac = s.substr(dot + 1);
  if (frac.size() > 12) bad_grid(text, "too many decimal places");
  std::string digits = std::string(s.substr(0, dot)) + std::string(frac);
  if (digits.empty() || digits == "-") bad_grid(text, "empty number");
  long long den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  return {parse_integer(digits, text), den};
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::vector<double> parse_alpha_grid(std::string_view text) {
  std::vector<double> grid;
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) bad_grid(text, "range needs start:stop:step");
    const Rational start = parse_rational(parts[0], text);
    const Rational stop = parse_rational(parts[1], text);
    const Rational step = parse_rational(parts[2], text);
    const long long common = std::lcm(std::lcm(start.den, stop.den), step.den);
    const long long a = start.num * (common / start.den);
    const long long b = stop.num * (common / stop.den);
    const long long c = step.num * (common / step.den);
    if (c <= 0) bad_grid(text, "step must be positive");
    if ((b - a) / c > 1000000) bad_grid(text, "too many grid points");
    for (long long m = a; m <= b; m += c) grid.push_back(static_cast<double>(m) / static_cast<double>(common));
  } else {
    for (auto part : split(text, ',')) {
      const Rational r = parse_rational(part, text);
      grid.push_back(static_cast<double>(r.num) / static_cast<double>(r.den));
    }
  }
  if (grid.empty()) bad_grid(text, "no grid points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || grid[i] > 1.0) bad_grid(text, "values must lie in (0, 1]");
    if (i > 0 && !(grid[i] > grid[i - 1])) bad_grid(text, "values must be strictly increasing");
  }
  return grid;
}

}  // namespace l1prom
