#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "switchgraph/chain.hpp"
#include "switchgraph/construct.hpp"
#include "switchgraph/degree_sequence.hpp"
#include "switchgraph/stats.hpp"

namespace switchgraph::experiments {

enum class ExperimentId {
  kTimeEvolution,
  kMixingDistribution,
  kEcmVsUrg,
  kScalingFit,
  kDeltaHistogram,
  kCcmSuccess,
  kTiming,
  kSuccessCorrelation,
};

std::string_view to_string(ExperimentId id);
ExperimentId parse_experiment_id(std::string_view s);

enum class SequenceMode { kCanonical, kIid, kFile };

/// How uniform reference samples are produced.
enum class UniformSampler {
  kReplicas,  // independent chains, each Havel-Hakimi + burn-in
  kThinned,   // one chain: burn-in, then one sample every thinning * n steps
};

struct ExperimentConfig {
  ExperimentId id = ExperimentId::kTimeEvolution;
  std::vector<std::size_t> n_values{1000};
  std::vector<double> tau_values{2.5};
  SequenceMode mode = SequenceMode::kCanonical;
  std::string degrees_file;        // SequenceMode::kFile
  std::size_t sequences = 1;       // i.i.d. sequences per (n, tau)
  std::size_t replicas = 100;
  std::string checkpoints = "0.1n:0.1n:20n";
  std::uint64_t base_seed = 1;
  std::filesystem::path out_dir = "out";
  double burn_in_multiplier = kDefaultBurnInMultiplier;
  double thinning_multiplier = 50.0;
  double window_multiplier = 100.0;  // measurement window, in units of n steps
  UniformSampler sampler = UniformSampler::kReplicas;
  std::size_t attempts = 200;        // construction attempts per sequence
  double threshold = 0.1;            // TV threshold for the mixing time
  TieBreak tie_break = TieBreak::kStableById;
  std::size_t threads = 0;           // 0 = hardware concurrency

  /// Throws ParameterError on invalid values.
  void validate() const;
};

nlohmann::json to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Parses "start:step:end" (each term a number, optionally suffixed with n) or a
/// comma-separated list of such terms, resolved for vertex count n and rounded
/// to integer steps. Duplicates after rounding are dropped; zero is kept.
std::vector<std::uint64_t> parse_checkpoints(std::string_view spec, std::size_t n);

/// Per-stream seed: pure function of (base seed, experiment, cell, sequence, replica).
std::uint64_t stream_seed(const ExperimentConfig& cfg, std::size_t cell, std::size_t sequence,
                          std::size_t replica);

/// Degree sequence for a cell; i.i.d. mode draws from a stream keyed by the
/// sequence index.
DegreeSequence make_sequence(const ExperimentConfig& cfg, std::size_t cell, std::size_t n, double tau,
                             std::size_t sequence);

/// Triangle counts of `count` approximately uniform samples.
std::vector<std::int64_t> uniform_triangle_samples(const DegreeSequence& seq, std::size_t count,
                                                   const ExperimentConfig& cfg, std::size_t cell,
                                                   std::size_t sequence);

struct Cell {
  std::size_t index = 0;
  std::size_t n = 0;
  double tau = 0.0;
};
std::vector<Cell> cells(const ExperimentConfig& cfg);

// ---------------------------------------------------------------- results

struct TimeEvolutionRow {
  std::size_t n;
  double tau;
  std::size_t sequence;
  std::size_t replica;
  std::uint64_t t;
  std::int64_t triangles;
};

struct MixingCell {
  std::size_t n = 0;
  double tau = 0.0;
  std::size_t sequence = 0;
  std::vector<std::pair<std::uint64_t, TriangleHistogram>> series;
  TriangleHistogram reference;
  std::vector<double> tv;  // per checkpoint
  std::optional<std::uint64_t> mixing_time;
};

struct EcmUrgCell {
  std::size_t n = 0;
  double tau = 0.0;
  TriangleHistogram ecm;
  TriangleHistogram urg;
};

struct ScalingPoint {
  std::size_t n = 0;
  double tau = 0.0;
  double urg_mean = 0.0;
  double ecm_mean = 0.0;
};

struct ScalingFit {
  double tau = 0.0;
  std::optional<FitResult> urg;
  std::optional<FitResult> ecm;
  double predicted = 0.0;
  std::vector<std::string> warnings;
};

struct DeltaCell {
  std::size_t n = 0;
  double tau = 0.0;
  std::map<std::int64_t, std::uint64_t> histogram;
  std::int64_t window_start_triangles = 0;
  std::int64_t window_end_triangles = 0;
  MoveStats stats;

  /// Probability that an accepted move changes the count by at least k in magnitude.
  double tail_probability(std::int64_t k) const;
};

struct CcmSuccessRow {
  std::size_t n;
  double tau;
  std::size_t sequence;
  std::size_t attempts;
  std::size_t ccmd_successes;
  std::size_t ccmdu_successes;
};

struct TimingRow {
  std::size_t n;
  double tau;
  std::string method;
  bool constructed;
  double construct_seconds;
  std::int64_t initial_triangles;
  double reference_mean;
  std::optional<std::uint64_t> steps_to_equilibrium;
  double chain_seconds;
};

struct SuccessCorrelationRow {
  std::size_t n;
  double tau;
  std::size_t sequence;
  double mean_triangles;
  double success_rate;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<std::string> errors;  // per-sequence failures; run continues
  std::vector<TimeEvolutionRow> time_evolution;
  std::vector<MixingCell> mixing;
  std::vector<EcmUrgCell> ecm_vs_urg;
  std::vector<ScalingPoint> scaling_points;
  std::vector<ScalingFit> scaling_fits;
  std::vector<DeltaCell> deltas;
  std::vector<CcmSuccessRow> ccm_success;
  std::vector<TimingRow> timing;
  std::vector<SuccessCorrelationRow> success_correlation;
};

ExperimentResult run_time_evolution(const ExperimentConfig& cfg);
ExperimentResult run_mixing_distribution(const ExperimentConfig& cfg);
ExperimentResult run_ecm_vs_urg(const ExperimentConfig& cfg);
ExperimentResult run_scaling_fit(const ExperimentConfig& cfg);
ExperimentResult run_delta_histogram(const ExperimentConfig& cfg);
ExperimentResult run_ccm_success(const ExperimentConfig& cfg);
ExperimentResult run_timing(const ExperimentConfig& cfg);
ExperimentResult run_success_correlation(const ExperimentConfig& cfg);

/// Dispatches on cfg.id.
ExperimentResult run(const ExperimentConfig& cfg);

/// Writes CSV outputs and a JSON sidecar next to each into cfg.out_dir.
/// Returns the paths written.
std::vector<std::filesystem::path> write_outputs(const ExperimentResult& result);

/// Fits per tau from per-(n, tau) means; zero means are excluded with a warning.
std::vector<ScalingFit> fit_scaling(const std::vector<ScalingPoint>& points);

}  // namespace switchgraph::experiments
