#include "l1prom/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "l1prom/error.hpp"
#include "l1prom/locality.hpp"

namespace l1prom {

RankedVector uniform_margin(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) throw Error(Errc::EmptyInput, "uniform margin of an empty vector");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  RankedVector out{std::vector<double>(values.begin(), values.end()), std::vector<double>(n)};
  const double dn = static_cast<double>(n);
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start + 1;
    while (end < n && values[order[end]] == values[order[start]]) ++end;
    // ranks start+1 .. end share their mean
    const double mid = 0.5 * static_cast<double>(start + 1 + end);
    for (std::size_t p = start; p < end; ++p) out.margins[order[p]] = mid / dn;
    start = end;
  }
  return out;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(Errc::LengthMismatch, "correlation inputs differ in length");
  const std::size_t n = x.size();
  if (n == 0) throw Error(Errc::EmptyInput, "correlation of empty inputs");
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw Error(Errc::ConstantInput, "correlation of a constant input");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double dm = m;
    const double m2 = 2.0 * dm;
    double aa = dm * (b - dm) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + dm) * (qab + dm) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw Error(Errc::NoConvergence, "incomplete beta continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error(Errc::InvalidArgument, "incomplete beta needs a, b > 0");
  if (!(x >= 0.0) || x > 1.0) throw Error(Errc::InvalidArgument, "incomplete beta needs x in [0, 1]");
  if (x == 0.0 || x == 1.0) return x;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  // The fraction converges fast for x < (a+1)/(a+b+2); use symmetry otherwise.
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double dof) {
  if (!(dof > 0.0)) throw Error(Errc::InvalidArgument, "t distribution needs positive degrees of freedom");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double x = dof / (dof + t * t);
  const double tail = 0.5 * regularized_incomplete_beta(0.5 * dof, 0.5, x);  // P(T > |t|)
  return t >= 0.0 ? 1.0 - tail : tail;
}

CorrelationResult correlation_test(std::span<const double> x, std::span<const double> y, Direction direction) {
  if (x.size() != y.size()) throw Error(Errc::LengthMismatch, "correlation inputs differ in length");
  if (x.size() < 3) throw Error(Errc::TooFewValues, "correlation test needs at least three pairs");
  CorrelationResult res;
  res.n = x.size();
  res.direction = direction;
  res.r = pearson(x, y);
  const double dof = static_cast<double>(res.n - 2);
  const double denom = 1.0 - res.r * res.r;
  if (denom <= 0.0) {
    res.t_stat = std::copysign(std::numeric_limits<double>::infinity(), res.r);
  } else {
    res.t_stat = res.r * std::sqrt(dof / denom);
  }
  const double upper = direction == Direction::Positive ? -res.t_stat : res.t_stat;
  // P(T >= t) for positive, P(T <= t) for negative; the t law is symmetric.
  res.p_one_sided = student_t_cdf(upper, dof);
  return res;
}

double quantile_sorted(std::span<const double> sorted, double p, QuantileMethod method) {
  const std::size_t n = sorted.size();
  if (n == 0) throw Error(Errc::EmptyInput, "quantile of an empty sample");
  if (!(p >= 0.0) || p > 1.0) throw Error(Errc::InvalidArgument, "quantile probability must lie in [0, 1]");
  const double dn = static_cast<double>(n);
  double h = 0.0;  // 0-based fractional position
  switch (method) {
    case QuantileMethod::Linear: h = (dn - 1.0) * p; break;
    case QuantileMethod::Weibull: h = (dn + 1.0) * p - 1.0; break;
    case QuantileMethod::Hazen: h = dn * p - 0.5; break;
  }
  h = std::clamp(h, 0.0, dn - 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, n - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

OutlierReport tukey_outliers(std::span<const double> values, QuantileMethod method, double k) {
  if (values.size() < 4) throw Error(Errc::TooFewValues, "Tukey fences need at least four values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  OutlierReport r;
  r.q1 = quantile_sorted(sorted, 0.25, method);
  r.q3 = quantile_sorted(sorted, 0.75, method);
  r.iqr = r.q3 - r.q1;
  r.lower_fence = r.q1 - k * r.iqr;
  r.upper_fence = r.q3 + k * r.iqr;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > r.upper_fence) r.high_outliers.push_back(i);
    if (values[i] < r.lower_fence) r.low_outliers.push_back(i);
  }
  return r;
}

std::vector<std::size_t> curve_variation_screen(const std::vector<std::vector<double>>& margins, double threshold) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < margins.size(); ++v) {
    const auto& row = margins[v];
    if (row.empty()) continue;
    const auto [lo, hi] = std::minmax_element(row.begin(), row.end());
    if (*hi - *lo > threshold) out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> curve_variation_screen(const MultiscaleProfile& profile, double threshold) {
  if (!profile.uniform_margin) throw Error(Errc::MissingMargins, "profile has no uniform-margin columns");
  return curve_variation_screen(*profile.uniform_margin, threshold);
}

FlowTotals flow_totals(const FlowTable& flows) {
  FlowTotals t;
  t.regions = flows.regions;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < t.regions.size(); ++i) index.emplace(t.regions[i], i);
  auto slot = [&](const std::string& name) {
    auto [it, inserted] = index.emplace(name, t.regions.size());
    if (inserted) t.regions.push_back(name);
    return it->second;
  };
  for (const auto& r : flows.records) {
    slot(r.origin);
    slot(r.destination);
  }
  t.incoming.assign(t.regions.size(), 0.0);
  t.outgoing.assign(t.regions.size(), 0.0);
  for (const auto& r : flows.records) {
    if (r.origin == r.destination) continue;
    t.outgoing[index.at(r.origin)] += r.count;
    t.incoming[index.at(r.destination)] += r.count;
  }
  return t;
}

HubReport detect_hubs(const FlowTotals& totals, QuantileMethod method) {
  HubReport h;
  h.incoming = tukey_outliers(totals.incoming, method);
  h.outgoing = tukey_outliers(totals.outgoing, method);
  std::set_intersection(h.incoming.high_outliers.begin(), h.incoming.high_outliers.end(),
                        h.outgoing.high_outliers.begin(), h.outgoing.high_outliers.end(),
                        std::back_inserter(h.hubs));
  return h;
}

}  // namespace l1prom
