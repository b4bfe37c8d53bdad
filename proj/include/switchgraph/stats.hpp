#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace switchgraph {

/// Empirical distribution over integer triangle counts.
class TriangleHistogram {
 public:
  TriangleHistogram() = default;
  TriangleHistogram(std::initializer_list<std::pair<const std::int64_t, std::uint64_t>> counts);

  void add(std::int64_t value, std::uint64_t count = 1);
  /// Commutative, associative accumulation.
  void merge(const TriangleHistogram& other);

  std::uint64_t total() const { return total_; }
  bool empty() const { return total_ == 0; }
  const std::map<std::int64_t, std::uint64_t>& counts() const { return counts_; }
  std::uint64_t count(std::int64_t value) const;
  double frequency(std::int64_t value) const;
  double mean() const;
  double variance() const;

  friend bool operator==(const TriangleHistogram&, const TriangleHistogram&) = default;

 private:
  std::map<std::int64_t, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// Half the L1 distance between the normalized histograms. Throws
/// ContractError if either histogram is empty.
double tv_distance(const TriangleHistogram& p, const TriangleHistogram& q);

/// First checkpoint whose histogram is strictly closer than `threshold` to the
/// reference; nullopt if none is.
std::optional<std::uint64_t> empirical_mixing_time(
    std::span<const std::pair<std::uint64_t, TriangleHistogram>> series, const TriangleHistogram& reference,
    double threshold = 0.1);

struct FitResult {
  double a = 0.0;  // slope
  double b = 0.0;  // intercept
  double rss = 0.0;
  double stderr_a = 0.0;  // 0 when there are no residual degrees of freedom
};

/// Ordinary least squares of log(mean) on log(n), natural logarithms.
FitResult loglog_fit(std::span<const std::pair<double, double>> points);

/// Triangle-count exponent of the erased configuration model: 1.5 * (3 - tau).
double predicted_exponent(double tau);

/// 1 - exp(-di*dj/Ln).
double edge_prob_ecm(double di, double dj, double total_degree);

/// di*dj / (Ln + di*dj).
double edge_prob_urg(double di, double dj, double total_degree);

/// Sample Pearson correlation; throws ParameterError on fewer than 2 points or
/// zero variance.
double pearson_correlation(std::span<const double> x, std::span<const double> y);

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 0.0;
};

/// Pearson chi-square goodness of fit of `observed` against equal cell
/// probabilities.
ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> observed);

}  // namespace switchgraph
