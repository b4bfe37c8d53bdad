#include "switchgraph/degree_sequence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

#include "switchgraph/error.hpp"

namespace switchgraph {

DegreeSequence::DegreeSequence(std::vector<int> degrees) : degrees_(std::move(degrees)) {
  for (int d : degrees_) {
    if (d < 1) throw ParameterError("degree sequence entries must be >= 1, got " + std::to_string(d));
  }
  total_ = std::accumulate(degrees_.begin(), degrees_.end(), std::int64_t{0});
}

int DegreeSequence::max_degree() const {
  return degrees_.empty() ? 0 : *std::max_element(degrees_.begin(), degrees_.end());
}

bool DegreeSequence::is_non_increasing() const {
  return std::is_sorted(degrees_.begin(), degrees_.end(), std::greater<>{});
}

DegreeSequence DegreeSequence::sorted_non_increasing() const {
  DegreeSequence copy = *this;
  std::sort(copy.degrees_.begin(), copy.degrees_.end(), std::greater<>{});
  return copy;
}

std::ostream& operator<<(std::ostream& os, const DegreeSequence& seq) {
  os << '{';
  for (std::size_t i = 0; i < seq.size(); ++i) os << (i ? "," : "") << seq[i];
  return os << '}';
}

std::string to_string(const DegreeSequence& seq) {
  std::ostringstream os;
  os << seq;
  return os.str();
}

void PowerLawParams::validate() const {
  if (!(tau > 2.0)) throw ParameterError("power-law exponent tau must exceed 2");
  if (n < 2) throw ParameterError("degree sequence needs n >= 2");
}

int inverse_cdf_sample(double u, double tau) {
  if (!(tau > 2.0)) throw ParameterError("power-law exponent tau must exceed 2");
  if (!(u >= 0.0 && u < 1.0)) throw ParameterError("inverse_cdf_sample needs u in [0,1)");
  const double x = std::pow(1.0 - u, -1.0 / (tau - 1.0));
  // Clamp far-tail draws so the cast stays defined; such degrees are never graphical anyway.
  const double r = std::round(x);
  return r >= 1e9 ? 1'000'000'000 : std::max(1, static_cast<int>(r));
}

bool is_graphical(std::span<const int> degrees) {
  std::vector<std::int64_t> d(degrees.begin(), degrees.end());
  const std::int64_t n = static_cast<std::int64_t>(d.size());
  std::int64_t total = 0;
  for (auto x : d) {
    if (x < 0) return false;
    total += x;
  }
  if (total % 2 != 0) return false;
  std::sort(d.begin(), d.end(), std::greater<>{});
  if (n == 0) return true;
  if (d[0] > n - 1) return false;

  // suffix[i] = d[i] + ... + d[n-1]
  std::vector<std::int64_t> suffix(n + 1, 0);
  for (std::int64_t i = n - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + d[i];

  // For each k, entries d[k..n-1] contribute min(d_i, k). Since d is sorted,
  // those >= k form a prefix of the tail; `p` tracks its end.
  std::int64_t lhs = 0;
  std::int64_t p = n;  // first index with d[p] < k
  for (std::int64_t k = 1; k <= n; ++k) {
    lhs += d[k - 1];
    while (p > 0 && d[p - 1] < k) --p;
    const std::int64_t start = std::max(p, k);
    const std::int64_t big = std::max<std::int64_t>(0, p - k);  // indices in [k, p) have d >= k
    const std::int64_t rhs = k * (k - 1) + k * big + suffix[start];
    if (lhs > rhs) return false;
  }
  return true;
}

DegreeSequence sample_iid_sequence(std::size_t n, const std::function<int()>& draw,
                                   std::size_t max_attempts) {
  if (n < 2) throw ParameterError("degree sequence needs n >= 2");
  std::vector<int> degrees(n);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    for (auto& d : degrees) d = draw();
    if (is_graphical(degrees)) return DegreeSequence(degrees);
  }
  throw SamplingError("no graphical sequence within " + std::to_string(max_attempts) + " attempts");
}

DegreeSequence sample_iid_sequence(const PowerLawParams& params, Rng& rng, std::size_t max_attempts) {
  params.validate();
  return sample_iid_sequence(
      params.n, [&] { return inverse_cdf_sample(uniform01(rng), params.tau); }, max_attempts);
}

DegreeSequence canonical_sequence(const PowerLawParams& params) {
  params.validate();
  const double n = static_cast<double>(params.n);
  const double exponent = -1.0 / (params.tau - 1.0);
  std::vector<int> degrees(params.n);
  for (std::size_t i = 1; i <= params.n; ++i) {
    degrees[i - 1] = static_cast<int>(std::round(std::pow(static_cast<double>(i) / n, exponent)));
  }
  const std::int64_t total = std::accumulate(degrees.begin(), degrees.end(), std::int64_t{0});
  const bool adjust = total % 2 != 0;
  if (adjust) {
    ++degrees.back();
    std::sort(degrees.begin(), degrees.end(), std::greater<>{});
  }
  DegreeSequence seq(std::move(degrees));
  seq.set_parity_adjusted(adjust);
  if (!is_graphical(seq)) {
    throw GraphicalityError("canonical sequence is not graphical: " + to_string(seq));
  }
  return seq;
}

double mle_tail_exponent(std::span<const int> samples) {
  if (samples.empty()) throw ParameterError("tail exponent needs at least one sample");
  double log_sum = 0.0;
  for (int x : samples) log_sum += std::log(static_cast<double>(x));
  if (log_sum <= 0.0) throw DomainError("all samples equal 1; tail exponent undefined");
  return 1.0 + static_cast<double>(samples.size()) / log_sum;
}

}  // namespace switchgraph
