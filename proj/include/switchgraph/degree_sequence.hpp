#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "switchgraph/random.hpp"

namespace switchgraph {

/// Ordered list of prescribed vertex degrees. Every degree is at least 1.
class DegreeSequence {
 public:
  DegreeSequence() = default;
  explicit DegreeSequence(std::vector<int> degrees);
  DegreeSequence(std::initializer_list<int> degrees)
      : DegreeSequence(std::vector<int>(degrees)) {}

  std::size_t size() const { return degrees_.size(); }
  bool empty() const { return degrees_.empty(); }
  int operator[](std::size_t i) const { return degrees_[i]; }
  std::span<const int> degrees() const { return degrees_; }
  auto begin() const { return degrees_.begin(); }
  auto end() const { return degrees_.end(); }

  /// Sum of all degrees (twice the edge count of any realization).
  std::int64_t total() const { return total_; }
  bool even_total() const { return total_ % 2 == 0; }
  int max_degree() const;
  bool is_non_increasing() const;

  /// Copy rearranged in non-increasing order.
  DegreeSequence sorted_non_increasing() const;

  /// Set when a canonical sequence had one degree bumped to fix parity.
  bool parity_adjusted() const { return parity_adjusted_; }
  void set_parity_adjusted(bool v) { parity_adjusted_ = v; }

  friend bool operator==(const DegreeSequence& a, const DegreeSequence& b) {
    return a.degrees_ == b.degrees_;
  }

 private:
  std::vector<int> degrees_;
  std::int64_t total_ = 0;
  bool parity_adjusted_ = false;
};

std::ostream& operator<<(std::ostream& os, const DegreeSequence& seq);
std::string to_string(const DegreeSequence& seq);

struct PowerLawParams {
  double tau = 2.5;
  std::size_t n = 1000;

  /// Throws ParameterError unless tau > 2 and n >= 2.
  void validate() const;
  /// The studied regime is 2 < tau < 3.
  bool in_studied_regime() const { return tau > 2.0 && tau < 3.0; }
};

/// Rounded inverse-CDF draw from the continuous power law with density
/// proportional to x^-tau on x >= 1: round((1-u)^(-1/(tau-1))).
int inverse_cdf_sample(double u, double tau);

/// Erdos-Gallai test. Accepts any ordering; rearranges internally.
bool is_graphical(std::span<const int> degrees);
inline bool is_graphical(const DegreeSequence& seq) { return is_graphical(seq.degrees()); }

inline constexpr std::size_t kDefaultSequenceAttempts = 10'000;

/// Draws n i.i.d. degrees and resamples the whole sequence until graphical.
DegreeSequence sample_iid_sequence(const PowerLawParams& params, Rng& rng,
                                   std::size_t max_attempts = kDefaultSequenceAttempts);

/// Same rejection loop over an arbitrary draw source (one degree per call).
DegreeSequence sample_iid_sequence(std::size_t n, const std::function<int()>& draw,
                                   std::size_t max_attempts = kDefaultSequenceAttempts);

/// d_i = round((i/n)^(-1/(tau-1))), non-increasing. An odd total is repaired by
/// incrementing the last (lowest) degree, then the sequence is re-sorted.
DegreeSequence canonical_sequence(const PowerLawParams& params);

/// Continuous maximum-likelihood tail exponent with x_min = 1:
/// 1 + N / sum(log x_i).
double mle_tail_exponent(std::span<const int> samples);

}  // namespace switchgraph
