#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "l1prom/analytics.hpp"
#include "l1prom/error.hpp"
#include "l1prom/ingest.hpp"
#include "l1prom/locality.hpp"

using namespace l1prom;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an l1prom::Error");
  return Errc::InvalidArgument;
}

/// x, y centered with sample correlation exactly r (up to round-off).
std::pair<std::vector<double>, std::vector<double>> correlated_pair(std::size_t n, double r, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  std::vector<double> a(n), b(n);
  for (auto& v : a) v = z(rng);
  for (auto& v : b) v = z(rng);
  auto center = [](std::vector<double>& v) {
    const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    for (double& x : v) x -= m;
  };
  auto norm = [](const std::vector<double>& v) { return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0)); };
  center(a);
  center(b);
  const double na = norm(a);
  for (double& x : a) x /= na;
  const double proj = std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
  for (std::size_t i = 0; i < n; ++i) b[i] -= proj * a[i];
  const double nb = norm(b);
  for (double& x : b) x /= nb;
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = r * a[i] + std::sqrt(1 - r * r) * b[i];
  return {a, y};
}

FlowTable table(std::vector<FlowRecord> records) { return aggregate_flows(records); }

}  // namespace

TEST_CASE("uniform margin") {
  SUBCASE("distinct values map to i/n") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-5, 5);
    for (std::size_t n : {1u, 2u, 7u, 424u}) {
      std::vector<double> v(n);
      for (double& x : v) x = u(rng);
      auto m = uniform_margin(v).margins;
      std::sort(m.begin(), m.end());
      for (std::size_t i = 0; i < n; ++i) CHECK(m[i] == static_cast<double>(i + 1) / static_cast<double>(n));
    }
  }
  SUBCASE("ties share midranks") {
    const std::vector<double> v{3.0, 1.0, 1.0, 2.0};
    CHECK(uniform_margin(v).margins == std::vector<double>{1.0, 0.375, 0.375, 0.75});
  }
  SUBCASE("strictly increasing transforms leave margins unchanged") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.01, 3);
    std::vector<double> v(50);
    for (double& x : v) x = u(rng);
    v[3] = v[7];  // include a tie
    std::vector<double> e(v.size()), c(v.size());
    std::transform(v.begin(), v.end(), e.begin(), [](double x) { return std::exp(x); });
    std::transform(v.begin(), v.end(), c.begin(), [](double x) { return x * x * x - 4.0; });
    const auto base = uniform_margin(v).margins;
    CHECK(uniform_margin(e).margins == base);
    CHECK(uniform_margin(c).margins == base);
  }
  SUBCASE("empty input") { CHECK(code_of([] { uniform_margin({}); }) == Errc::EmptyInput); }
}

TEST_CASE("incomplete beta and t distribution match Boost.Math") {
  for (double a : {0.5, 1.0, 2.5, 10.0, 211.0})
    for (double b : {0.5, 1.0, 3.0, 50.0})
      for (double x : {0.0, 0.01, 0.2, 0.5, 0.77, 0.999, 1.0})
        CHECK(regularized_incomplete_beta(a, b, x) == doctest::Approx(boost::math::ibeta(a, b, x)).epsilon(1e-10));
  for (double dof : {1.0, 2.0, 5.0, 30.0, 422.0}) {
    const boost::math::students_t dist(dof);
    for (double t : {-20.0, -3.0, -1.0, -0.1, 0.0, 0.5, 2.0, 8.0}) {
      const double expected = boost::math::cdf(dist, t);
      CHECK(std::abs(student_t_cdf(t, dof) - expected) <= 1e-10 * std::max(1.0, expected));
    }
  }
}

TEST_CASE("correlation test") {
  SUBCASE("r = -0.70 with 424 pairs is significant below 0.001") {
    const auto [x, y] = correlated_pair(424, -0.70, 9);
    const auto res = correlation_test(x, y, Direction::Negative);
    CHECK(res.r == doctest::Approx(-0.70).epsilon(1e-12));
    CHECK(res.n == 424);
    CHECK(res.t_stat == doctest::Approx(-0.70 * std::sqrt(422 / (1 - 0.49))).epsilon(1e-10));
    CHECK(res.p_one_sided < 0.001);
    const double expected = boost::math::cdf(boost::math::students_t(422), res.t_stat);
    CHECK(res.p_one_sided == doctest::Approx(expected).epsilon(1e-8));
    CHECK(correlation_test(x, y, Direction::Positive).p_one_sided == doctest::Approx(1.0 - expected).epsilon(1e-12));
  }
  SUBCASE("symmetric in its arguments") {
    const auto [x, y] = correlated_pair(40, 0.3, 10);
    const auto a = correlation_test(x, y, Direction::Positive);
    const auto b = correlation_test(y, x, Direction::Positive);
    CHECK(a.r == doctest::Approx(b.r).epsilon(1e-14));
    CHECK(a.p_one_sided == doctest::Approx(b.p_one_sided).epsilon(1e-12));
  }
  SUBCASE("identical columns give r = 1") {
    const std::vector<double> v{0.25, 0.5, 0.75, 1.0};
    const auto res = correlation_test(v, v, Direction::Positive);
    CHECK(res.r == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(res.p_one_sided == doctest::Approx(0.0));
  }
  SUBCASE("input errors") {
    const std::vector<double> a{1, 2, 3}, b{1, 2}, c{4, 4, 4};
    CHECK(code_of([&] { correlation_test(a, b, Direction::Positive); }) == Errc::LengthMismatch);
    CHECK(code_of([&] { correlation_test(b, b, Direction::Positive); }) == Errc::TooFewValues);
    CHECK(code_of([&] { correlation_test(a, c, Direction::Positive); }) == Errc::ConstantInput);
  }
}

TEST_CASE("quantile conventions") {
  const std::vector<double> s{1, 2, 3, 4, 5};
  CHECK(quantile_sorted(s, 0.25) == 2.0);
  CHECK(quantile_sorted(s, 0.75) == 4.0);
  CHECK(quantile_sorted(s, 0.25, QuantileMethod::Weibull) == 1.5);
  CHECK(quantile_sorted(s, 0.75, QuantileMethod::Weibull) == 4.5);
  CHECK(quantile_sorted(s, 0.25, QuantileMethod::Hazen) == 1.75);
  CHECK(quantile_sorted(s, 0.75, QuantileMethod::Hazen) == 4.25);
  CHECK(quantile_sorted(s, 0.0) == 1.0);
  CHECK(quantile_sorted(s, 1.0) == 5.0);
  const std::vector<double> six{1, 2, 3, 4, 5, 6};
  CHECK(quantile_sorted(six, 0.25) == 2.25);
  CHECK(quantile_sorted(six, 0.75) == 4.75);
  CHECK(code_of([] { quantile_sorted({}, 0.5); }) == Errc::EmptyInput);
}

TEST_CASE("Tukey fences") {
  SUBCASE("hand-computed fixture") {
    const std::vector<double> v{1, 2, 3, 4, 100};
    const auto r = tukey_outliers(v);
    CHECK(r.q1 == 2.0);
    CHECK(r.q3 == 4.0);
    CHECK(r.iqr == 2.0);
    CHECK(r.lower_fence == -1.0);
    CHECK(r.upper_fence == 7.0);
    CHECK(r.high_outliers == std::vector<std::size_t>{4});
    CHECK(r.low_outliers.empty());
  }
  SUBCASE("second fixture with a low outlier") {
    const std::vector<double> v{-50, 10, 11, 12, 13, 14, 15, 16};
    const auto r = tukey_outliers(v);
    CHECK(r.q1 == doctest::Approx(10.75));
    CHECK(r.q3 == doctest::Approx(14.25));
    CHECK(r.lower_fence == doctest::Approx(5.5));
    CHECK(r.upper_fence == doctest::Approx(19.5));
    CHECK(r.low_outliers == std::vector<std::size_t>{0});
    CHECK(r.high_outliers.empty());
  }
  SUBCASE("fence ordering holds on random samples for every method") {
    std::mt19937_64 rng(3);
    std::lognormal_distribution<double> dist(0, 2);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> v(4 + trial % 30);
      for (double& x : v) x = dist(rng);
      for (auto m : {QuantileMethod::Linear, QuantileMethod::Weibull, QuantileMethod::Hazen}) {
        const auto r = tukey_outliers(v, m);
        CHECK(r.lower_fence <= r.q1);
        CHECK(r.q1 <= r.q3);
        CHECK(r.q3 <= r.upper_fence);
        CHECK(r.upper_fence == doctest::Approx(r.q3 + 1.5 * r.iqr));
      }
    }
  }
  SUBCASE("too few values") {
    CHECK(code_of([] { tukey_outliers(std::vector<double>{1, 2, 3}); }) == Errc::TooFewValues);
  }
}

TEST_CASE("flow totals") {
  SUBCASE("single record") {
    const auto t = flow_totals(table({{"a", "b", 5}}));
    CHECK(t.regions == std::vector<std::string>{"a", "b"});
    CHECK(t.outgoing == std::vector<double>{5, 0});
    CHECK(t.incoming == std::vector<double>{0, 5});
  }
  SUBCASE("self-flow counts toward neither side") {
    const auto t = flow_totals(table({{"a", "a", 7}, {"a", "b", 1}}));
    CHECK(t.outgoing == std::vector<double>{1, 0});
    CHECK(t.incoming == std::vector<double>{0, 1});
  }
  SUBCASE("additivity") {
    const auto t = flow_totals(table({{"a", "b", 3}, {"c", "b", 4}}));
    CHECK(t.incoming[1] == 7.0);
  }
}

TEST_CASE("hubs are high outliers on both sides") {
  std::vector<FlowRecord> records;
  const std::vector<std::string> regions{"r1", "r2", "r3", "r4", "r5", "r6", "r7", "r8"};
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const auto& next = regions[(i + 1) % regions.size()];
    records.push_back({regions[i], next, 10.0 + static_cast<double>(i)});
  }
  for (const auto& r : regions) {
    if (r == "r3") continue;
    records.push_back({r, "r3", 60});
    records.push_back({"r3", r, 60});
  }
  const auto totals = flow_totals(table(records));
  const auto hubs = detect_hubs(totals);
  CHECK(hubs.hubs == std::vector<std::size_t>{2});
  CHECK(hubs.incoming.high_outliers == std::vector<std::size_t>{2});
  CHECK(hubs.outgoing.high_outliers == std::vector<std::size_t>{2});
}

TEST_CASE("curve screening needs margins") {
  MultiscaleProfile p;
  p.values = {{0.5}};
  CHECK(code_of([&] { curve_variation_screen(p, 0.6); }) == Errc::MissingMargins);
}
