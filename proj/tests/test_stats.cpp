#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "switchgraph/error.hpp"
#include "switchgraph/stats.hpp"

using namespace switchgraph;

namespace {

constexpr double kTight = 1e-12;

using Points = std::vector<std::pair<double, double>>;

// Closed-form 2x2 normal equations by Cramer's rule.
std::pair<double, double> normal_equations(const Points& pts) {
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x0, y0] : pts) {
    const double x = std::log(x0), y = std::log(y0);
    n += 1;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double det = n * sxx - sx * sx;
  return {(n * sxy - sx * sy) / det, (sxx * sy - sx * sxy) / det};
}

}  // namespace

TEST_CASE("histogram bookkeeping") {
  TriangleHistogram h{{1, 2}, {3, 2}};
  CHECK(h.total() == 4);
  CHECK(h.count(1) == 2);
  CHECK(h.count(2) == 0);
  CHECK(h.frequency(3) == 0.5);
  CHECK(h.mean() == 2.0);
  CHECK(h.variance() == 1.0);
  h.add(5, 0);
  CHECK(h.counts().size() == 2);
  CHECK_THROWS_AS(TriangleHistogram{}.mean(), ContractError);
}

TEST_CASE("histogram merge is commutative and associative") {
  TriangleHistogram a{{0, 3}, {2, 1}}, b{{2, 5}, {7, 1}}, c{{-1, 2}};
  TriangleHistogram ab = a, ba = b;
  ab.merge(b);
  ba.merge(a);
  CHECK(ab == ba);
  TriangleHistogram ab_c = ab, a_bc = a, bc = b;
  ab_c.merge(c);
  bc.merge(c);
  a_bc.merge(bc);
  CHECK(ab_c == a_bc);
  CHECK(ab_c.total() == a.total() + b.total() + c.total());
}

TEST_CASE("tv distance examples") {
  const TriangleHistogram p{{3, 4}, {5, 6}};
  CHECK(tv_distance(p, p) == 0.0);
  CHECK(tv_distance(TriangleHistogram{{0, 1}}, TriangleHistogram{{1, 1}}) == 1.0);
  CHECK(std::abs(tv_distance(TriangleHistogram{{0, 1}, {1, 1}}, TriangleHistogram{{0, 1}}) - 0.5) <= kTight);
  CHECK_THROWS_AS((tv_distance(TriangleHistogram{}, p)), ContractError);
  CHECK_THROWS_AS((tv_distance(p, TriangleHistogram{})), ContractError);
}

TEST_CASE("tv distance properties") {
  const TriangleHistogram p{{0, 5}, {1, 3}, {4, 2}};
  const TriangleHistogram q{{0, 1}, {2, 7}, {4, 2}};
  const TriangleHistogram r{{1, 9}, {3, 1}};
  CHECK(tv_distance(p, q) == doctest::Approx(tv_distance(q, p)).epsilon(kTight));
  CHECK(tv_distance(p, r) <= tv_distance(p, q) + tv_distance(q, r) + kTight);
  // equal normalized frequencies at different sample sizes
  CHECK(tv_distance(TriangleHistogram{{1, 1}, {2, 3}}, TriangleHistogram{{1, 10}, {2, 30}}) <= kTight);
  const double d = tv_distance(p, q);
  CHECK(d >= 0.0);
  CHECK(d <= 1.0);
}

TEST_CASE("empirical mixing time") {
  const TriangleHistogram ref{{0, 50}, {1, 50}};
  // TV of {0:a,1:100-a} to ref is |a-50|/100
  auto at = [](int a) { return TriangleHistogram{{0, static_cast<std::uint64_t>(a)}, {1, static_cast<std::uint64_t>(100 - a)}}; };
  const std::size_t n = 100;
  const std::vector<std::pair<std::uint64_t, TriangleHistogram>> series{
      {n, at(100)}, {2 * n, at(80)}, {3 * n, at(59)}, {4 * n, at(54)}};  // 0.5, 0.3, 0.09, 0.04
  CHECK(empirical_mixing_time(series, ref, 0.1) == 3 * n);
  CHECK(empirical_mixing_time(series, ref, 0.6) == n);
  CHECK_FALSE(empirical_mixing_time(series, ref, 0.01).has_value());
  // monotone in threshold
  std::optional<std::uint64_t> prev;
  for (double th : {0.02, 0.05, 0.08, 0.1, 0.2, 0.35, 0.55}) {
    const auto t = empirical_mixing_time(series, ref, th);
    if (prev) {
      REQUIRE(t.has_value());
      CHECK(*t <= *prev);
    }
    if (t) prev = t;
  }
  const std::vector<std::pair<std::uint64_t, TriangleHistogram>> empty;
  CHECK_THROWS_AS(empirical_mixing_time(empty, ref), ContractError);
  CHECK_THROWS_AS(empirical_mixing_time(series, ref, 0.0), ParameterError);
  CHECK_THROWS_AS(empirical_mixing_time(series, ref, 1.0), ParameterError);
  const std::vector<std::pair<std::uint64_t, TriangleHistogram>> unsorted{{2, ref}, {1, ref}};
  CHECK_THROWS_AS(empirical_mixing_time(unsorted, ref), ContractError);
}

TEST_CASE("loglog fit exact power law") {
  const Points pts{{10, 100}, {100, 10000}};
  const auto fit = loglog_fit(pts);
  CHECK(std::abs(fit.a - 2.0) <= kTight);
  CHECK(std::abs(fit.b) <= kTight);
  CHECK(fit.stderr_a == 0.0);

  Points p75;
  for (double n : {500.0, 1000.0, 2000.0, 4000.0}) p75.emplace_back(n, 3.0 * std::pow(n, 0.75));
  const auto f75 = loglog_fit(p75);
  CHECK(std::abs(f75.a - 0.75) <= kTight);
  CHECK(std::abs(f75.b - std::log(3.0)) <= kTight);
  CHECK(f75.rss <= kTight);
}

TEST_CASE("loglog fit scaling by a constant shifts only the intercept") {
  const Points pts{{10, 3.1}, {20, 7.9}, {40, 14.2}, {80, 35.0}};
  Points scaled;
  const double c = 7.5;
  for (auto [n, m] : pts) scaled.emplace_back(n, c * m);
  const auto f = loglog_fit(pts), g = loglog_fit(scaled);
  CHECK(std::abs(f.a - g.a) <= kTight);
  CHECK(std::abs(g.b - f.b - std::log(c)) <= kTight);
}

TEST_CASE("loglog fit matches normal equations on noisy data") {
  const Points pts{{100, 12.3}, {200, 19.1}, {400, 35.6}, {800, 55.0}, {1600, 101.7}};
  const auto fit = loglog_fit(pts);
  const auto [a, b] = normal_equations(pts);
  CHECK(std::abs(fit.a - a) <= kTight);
  CHECK(std::abs(fit.b - b) <= kTight);
  CHECK(fit.rss >= 0.0);
  // OLS slope standard error
  double mx = 0, sxx = 0, rss = 0;
  for (auto [n, m] : pts) mx += std::log(n) / 5.0;
  for (auto [n, m] : pts) {
    sxx += (std::log(n) - mx) * (std::log(n) - mx);
    const double r = std::log(m) - a * std::log(n) - b;
    rss += r * r;
  }
  CHECK(std::abs(fit.rss - rss) <= kTight);
  CHECK(std::abs(fit.stderr_a - std::sqrt(rss / 3.0 / sxx)) <= kTight);
}

TEST_CASE("loglog fit errors") {
  CHECK_THROWS_AS(loglog_fit(Points{{10, 1}}), DegenerateFitError);
  CHECK_THROWS_AS(loglog_fit(Points{{10, 1}, {10, 2}}), DegenerateFitError);
  CHECK_THROWS_AS(loglog_fit(Points{{10, 1}, {20, 0}}), DomainError);
  CHECK_THROWS_AS(loglog_fit(Points{{10, 1}, {20, -3}}), DomainError);
}

TEST_CASE("predicted exponent") {
  CHECK(std::abs(predicted_exponent(3.0)) <= kTight);
  CHECK(std::abs(predicted_exponent(2.5) - 0.75) <= kTight);
  CHECK(std::abs(predicted_exponent(2.2) - 1.2) <= kTight);
}

TEST_CASE("edge probabilities") {
  CHECK(std::abs(edge_prob_ecm(1, 1, 1e9) - 1e-9) <= 1e-17);
  CHECK(std::abs(edge_prob_ecm(1, std::log(2.0), 1.0) - 0.5) <= kTight);
  double prev = 0.0;
  for (int w = 1; w <= 200; ++w) {
    const double p = edge_prob_ecm(w, 1, 50);
    CHECK(p > prev);
    CHECK(p < 1.0);
    prev = p;
  }
  CHECK(std::abs(edge_prob_urg(1, 1, 100) - 1.0 / 101.0) <= kTight);
  CHECK(std::abs(edge_prob_urg(10, 10, 100) - 0.5) <= kTight);
  for (double w : {1e-6, 0.1, 1.0, 10.0, 1e6}) CHECK(edge_prob_urg(w, 1, 1.0) <= 1.0);
  // 1 - e^-x >= x / (1 + x)
  for (double x = 1e-4; x < 50; x *= 1.3) CHECK(edge_prob_ecm(x, 1, 1) >= edge_prob_urg(x, 1, 1));
  CHECK_THROWS_AS(edge_prob_ecm(1, 1, 0), ParameterError);
  CHECK_THROWS_AS(edge_prob_urg(1, 1, -1), ParameterError);
}

TEST_CASE("pearson correlation") {
  const std::vector<double> x{1, 2, 3, 4}, y{2, 4, 6, 8}, z{8, 6, 4, 2}, c{1, 1, 1, 1};
  CHECK(pearson_correlation(x, y) == doctest::Approx(1.0));
  CHECK(pearson_correlation(x, z) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(pearson_correlation(x, c), ParameterError);
  CHECK_THROWS_AS(pearson_correlation(std::vector<double>{1}, std::vector<double>{1}), ParameterError);
}

TEST_CASE("chi-square uniformity") {
  const std::vector<std::uint64_t> flat{100, 100, 100, 100};
  const auto r = chi_square_uniform(flat);
  CHECK(r.statistic == 0.0);
  CHECK(r.dof == 3);
  CHECK(r.p_value == doctest::Approx(1.0));
  // statistic 4 on 1 dof: p = P(|Z| > 2)
  const std::vector<std::uint64_t> skew{60, 40};
  const auto s = chi_square_uniform(skew);
  CHECK(s.statistic == doctest::Approx(4.0));
  CHECK(s.p_value == doctest::Approx(std::erfc(std::sqrt(2.0))).epsilon(1e-10));
  CHECK_THROWS_AS(chi_square_uniform(std::vector<std::uint64_t>{5}), ParameterError);
  CHECK_THROWS_AS(chi_square_uniform(std::vector<std::uint64_t>{0, 0}), ParameterError);
}
