#include "switchgraph/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numeric>
#include <set>

#include "switchgraph/error.hpp"

namespace switchgraph {

TriangleHistogram::TriangleHistogram(std::initializer_list<std::pair<const std::int64_t, std::uint64_t>> counts) {
  for (auto [value, count] : counts) add(value, count);
}

void TriangleHistogram::add(std::int64_t value, std::uint64_t count) {
  if (count == 0) return;
  counts_[value] += count;
  total_ += count;
}

void TriangleHistogram::merge(const TriangleHistogram& other) {
  for (auto [value, count] : other.counts_) add(value, count);
}

std::uint64_t TriangleHistogram::count(std::int64_t value) const {
  auto it = counts_.find(value);
  return it == counts_.end() ? 0 : it->second;
}

double TriangleHistogram::frequency(std::int64_t value) const {
  return total_ == 0 ? 0.0 : static_cast<double>(count(value)) / static_cast<double>(total_);
}

double TriangleHistogram::mean() const {
  if (total_ == 0) throw ContractError("mean of an empty histogram");
  double sum = 0.0;
  for (auto [value, count] : counts_) sum += static_cast<double>(value) * static_cast<double>(count);
  return sum / static_cast<double>(total_);
}

double TriangleHistogram::variance() const {
  const double mu = mean();
  double sum = 0.0;
  for (auto [value, count] : counts_) {
    const double d = static_cast<double>(value) - mu;
    sum += d * d * static_cast<double>(count);
  }
  return sum / static_cast<double>(total_);
}

double tv_distance(const TriangleHistogram& p, const TriangleHistogram& q) {
  if (p.empty() || q.empty()) throw ContractError("tv_distance needs non-empty histograms");
  const double np = static_cast<double>(p.total());
  const double nq = static_cast<double>(q.total());
  // Merge-walk over the two sorted supports.
  double sum = 0.0;
  auto a = p.counts().begin();
  auto b = q.counts().begin();
  while (a != p.counts().end() || b != q.counts().end()) {
    if (b == q.counts().end() || (a != p.counts().end() && a->first < b->first)) {
      sum += static_cast<double>(a->second) / np;
      ++a;
    } else if (a == p.counts().end() || b->first < a->first) {
      sum += static_cast<double>(b->second) / nq;
      ++b;
    } else {
      sum += std::abs(static_cast<double>(a->second) / np - static_cast<double>(b->second) / nq);
      ++a;
      ++b;
    }
  }
  return std::min(1.0, 0.5 * sum);
}

std::optional<std::uint64_t> empirical_mixing_time(
    std::span<const std::pair<std::uint64_t, TriangleHistogram>> series, const TriangleHistogram& reference,
    double threshold) {
  if (series.empty()) throw ContractError("empirical_mixing_time needs a non-empty series");
  if (!(threshold > 0.0 && threshold < 1.0)) throw ParameterError("threshold must lie in (0,1)");
  for (std::size_t i = 1; i < series.size(); ++i) {
    if (series[i].first < series[i - 1].first) throw ContractError("checkpoints must be sorted ascending");
  }
  for (const auto& [checkpoint, hist] : series) {
    if (tv_distance(hist, reference) < threshold) return checkpoint;
  }
  return std::nullopt;
}

FitResult loglog_fit(std::span<const std::pair<double, double>> points) {
  std::set<double> abscissae;
  for (auto [n, mean] : points) {
    if (!(n > 0.0)) throw DomainError("loglog_fit needs positive n");
    if (!(mean > 0.0)) throw DomainError("loglog_fit needs positive triangle means");
    abscissae.insert(n);
  }
  if (abscissae.size() < 2) throw DegenerateFitError("loglog_fit needs at least two distinct n values");

  const double count = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (auto [n, mean] : points) {
    mx += std::log(n);
    my += std::log(mean);
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0;
  for (auto [n, mean] : points) {
    const double dx = std::log(n) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(mean) - my);
  }
  FitResult fit;
  fit.a = sxy / sxx;
  fit.b = my - fit.a * mx;
  for (auto [n, mean] : points) {
    const double r = std::log(mean) - (fit.a * std::log(n) + fit.b);
    fit.rss += r * r;
  }
  if (points.size() > 2) fit.stderr_a = std::sqrt(fit.rss / (count - 2.0) / sxx);
  return fit;
}

double predicted_exponent(double tau) { return 1.5 * (3.0 - tau); }

double edge_prob_ecm(double di, double dj, double total_degree) {
  if (!(total_degree > 0.0)) throw ParameterError("total degree must be positive");
  return -std::expm1(-di * dj / total_degree);
}

double edge_prob_urg(double di, double dj, double total_degree) {
  if (!(total_degree > 0.0)) throw ParameterError("total degree must be positive");
  const double w = di * dj;
  return w / (total_degree + w);
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ParameterError("correlation needs two equal-length samples");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw ParameterError("correlation undefined for a constant sample");
  return sxy / std::sqrt(sxx * syy);
}

ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> observed) {
  if (observed.size() < 2) throw ParameterError("chi-square test needs at least two cells");
  const double total = static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
  if (total == 0.0) throw ParameterError("chi-square test needs observations");
  const double expected = total / static_cast<double>(observed.size());
  ChiSquareResult r;
  for (std::uint64_t o : observed) {
    const double d = static_cast<double>(o) - expected;
    r.statistic += d * d / expected;
  }
  r.dof = observed.size() - 1;
  boost::math::chi_squared dist(static_cast<double>(r.dof));
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

}  // namespace switchgraph
