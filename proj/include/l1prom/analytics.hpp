#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "l1prom/ingest.hpp"

namespace l1prom {

struct MultiscaleProfile;

/// Rank transform: the i-th lowest value maps to i/n, ties share the mean
/// of the margins they cover (midranks).
struct RankedVector {
  std::vector<double> values;
  std::vector<double> margins;
};

RankedVector uniform_margin(std::span<const double> values);

enum class Direction { Positive, Negative };

struct CorrelationResult {
  double r = 0.0;
  std::size_t n = 0;
  double t_stat = 0.0;
  double p_one_sided = 1.0;
  Direction direction = Direction::Positive;
};

double pearson(std::span<const double> x, std::span<const double> y);

/// Pearson r with a one-sided t test on n - 2 degrees of freedom.
CorrelationResult correlation_test(std::span<const double> x, std::span<const double> y, Direction direction);

/// I_x(a, b) by Lentz's continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

/// P(T <= t) for Student's t with `dof` degrees of freedom.
double student_t_cdf(double t, double dof);

/// Sample quantile conventions, named after the position rule on the
/// sorted sample (1-based).
enum class QuantileMethod {
  Linear,   // 1 + (n-1)p
  Weibull,  // (n+1)p
  Hazen,    // np + 1/2
};

double quantile_sorted(std::span<const double> sorted, double p, QuantileMethod method = QuantileMethod::Linear);

struct OutlierReport {
  double q1 = 0.0, q3 = 0.0, iqr = 0.0;
  double lower_fence = 0.0, upper_fence = 0.0;
  std::vector<std::size_t> high_outliers;  // indices, ascending
  std::vector<std::size_t> low_outliers;
};

/// Tukey fences q1 - k*iqr and q3 + k*iqr; needs at least four values.
OutlierReport tukey_outliers(std::span<const double> values, QuantileMethod method = QuantileMethod::Linear,
                             double k = 1.5);

/// Indices whose (max - min) over the row exceeds threshold. Rows are
/// vertices, columns grid points.
std::vector<std::size_t> curve_variation_screen(const std::vector<std::vector<double>>& margins, double threshold);

/// Same on a profile; throws MissingMargins if it has none.
std::vector<std::size_t> curve_variation_screen(const MultiscaleProfile& profile, double threshold);

struct FlowTotals {
  std::vector<std::string> regions;
  std::vector<double> incoming;
  std::vector<double> outgoing;
};

/// Per-region incoming/outgoing sums; self-flows count toward neither.
FlowTotals flow_totals(const FlowTable& flows);

struct HubReport {
  OutlierReport incoming;
  OutlierReport outgoing;
  std::vector<std::size_t> hubs;  // high outliers on both sides
};

HubReport detect_hubs(const FlowTotals& totals, QuantileMethod method = QuantileMethod::Linear);

}  // namespace l1prom
