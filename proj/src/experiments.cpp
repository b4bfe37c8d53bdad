#include "switchgraph/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <numeric>
#include <thread>

#include "switchgraph/error.hpp"
#include "switchgraph/io.hpp"

#ifndef SWITCHGRAPH_VERSION
#define SWITCHGRAPH_VERSION "unknown"
#endif

namespace switchgraph::experiments {

namespace {

using Clock = std::chrono::steady_clock;

// Stream namespaces inside one (cell, sequence): keeps reference samples, ECM
// draws and construction attempts off the checkpoint replicas' streams.
constexpr std::size_t kReferenceStreams = std::size_t{1} << 32;
constexpr std::size_t kEcmStreams = std::size_t{2} << 32;
constexpr std::size_t kConstructionStreams = std::size_t{3} << 32;
constexpr std::size_t kSequenceStream = std::size_t{4} << 32;

std::size_t worker_count(const ExperimentConfig& cfg) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  return cfg.threads == 0 ? hw : cfg.threads;
}

// Calls fn(i) for i in [0, count). Results must be written to per-index slots.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
}

std::uint64_t steps_for(double multiplier, std::size_t n) {
  return static_cast<std::uint64_t>(std::llround(multiplier * static_cast<double>(n)));
}

// Chains on graphs with fewer than two edges cannot move; they stay put.
void advance_safely(ChainState& state, std::uint64_t steps, Rng& rng) {
  if (state.graph.num_edges() < 2) {
    state.t += steps;
    return;
  }
  advance(state, steps, rng);
}

std::vector<Recording> run_safely(ChainState& state, std::uint64_t steps, const ObserverSchedule& schedule,
                                  Rng& rng) {
  if (state.graph.num_edges() >= 2) return run(state, steps, schedule, rng);
  std::vector<Recording> out;
  if (steps == 0) return out;
  for (std::uint64_t c : schedule.checkpoints) {
    if (c >= state.t && c <= state.t + steps) out.push_back({c, state.triangles, std::nullopt});
  }
  state.t += steps;
  return out;
}

double parse_term(std::string_view term, std::size_t n) {
  bool scaled = false;
  if (!term.empty() && term.back() == 'n') {
    scaled = true;
    term.remove_suffix(1);
  }
  if (term.empty() && scaled) return static_cast<double>(n);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(term.data(), term.data() + term.size(), value);
  if (ec != std::errc{} || ptr != term.data() + term.size() || value < 0.0) {
    throw ParameterError("bad checkpoint term '" + std::string(term) + "'");
  }
  return scaled ? value * static_cast<double>(n) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::ofstream open_csv(const std::filesystem::path& path) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out.precision(17);
  return out;
}

void write_sidecar(const std::filesystem::path& data_path, const ExperimentResult& result, nlohmann::json summary) {
  nlohmann::json j;
  j["config"] = to_json(result.config);
  j["version"] = SWITCHGRAPH_VERSION;
  j["errors"] = result.errors;
  j["summary"] = std::move(summary);
  std::ofstream out(data_path.string() + ".json");
  if (!out) throw FormatError("cannot write sidecar for " + data_path.string());
  out << j.dump(2) << '\n';
}

ChainState start_state(const DegreeSequence& seq, TieBreak tie_break) {
  return ChainState(havel_hakimi(seq, tie_break));
}

}  // namespace

std::string_view to_string(ExperimentId id) {
  switch (id) {
    case ExperimentId::kTimeEvolution: return "time-evolution";
    case ExperimentId::kMixingDistribution: return "mixing-distribution";
    case ExperimentId::kEcmVsUrg: return "ecm-vs-urg";
    case ExperimentId::kScalingFit: return "scaling-fit";
    case ExperimentId::kDeltaHistogram: return "delta-histogram";
    case ExperimentId::kCcmSuccess: return "ccm-success";
    case ExperimentId::kTiming: return "timing";
    case ExperimentId::kSuccessCorrelation: return "success-correlation";
  }
  return "unknown";
}

ExperimentId parse_experiment_id(std::string_view s) {
  for (auto id : {ExperimentId::kTimeEvolution, ExperimentId::kMixingDistribution, ExperimentId::kEcmVsUrg,
                  ExperimentId::kScalingFit, ExperimentId::kDeltaHistogram, ExperimentId::kCcmSuccess,
                  ExperimentId::kTiming, ExperimentId::kSuccessCorrelation}) {
    if (to_string(id) == s) return id;
  }
  throw ParameterError("unknown experiment id: " + std::string(s));
}

void ExperimentConfig::validate() const {
  if (replicas < 1) throw ParameterError("replicas must be >= 1");
  if (mode != SequenceMode::kFile) {
    if (n_values.empty() || tau_values.empty()) throw ParameterError("n and tau value lists must be non-empty");
    for (auto n : n_values) {
      if (n < 2) throw ParameterError("all n must be >= 2");
    }
    for (auto tau : tau_values) {
      if (!(tau > 2.0)) throw ParameterError("all tau must exceed 2");
    }
  } else if (degrees_file.empty()) {
    throw ParameterError("file mode needs degrees_file");
  }
  if (sequences < 1) throw ParameterError("sequences must be >= 1");
  if (!(burn_in_multiplier >= 0.0) || !(thinning_multiplier > 0.0) || !(window_multiplier > 0.0)) {
    throw ParameterError("step multipliers must be positive");
  }
  if (!(threshold > 0.0 && threshold < 1.0)) throw ParameterError("threshold must lie in (0,1)");
  if (attempts < 1) throw ParameterError("attempts must be >= 1");
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["experiment"] = to_string(cfg.id);
  j["n"] = cfg.n_values;
  j["tau"] = cfg.tau_values;
  j["mode"] = cfg.mode == SequenceMode::kCanonical ? "canonical" : cfg.mode == SequenceMode::kIid ? "iid" : "file";
  j["degrees_file"] = cfg.degrees_file;
  j["sequences"] = cfg.sequences;
  j["replicas"] = cfg.replicas;
  j["checkpoints"] = cfg.checkpoints;
  j["seed"] = cfg.base_seed;
  j["out_dir"] = cfg.out_dir.string();
  j["burn_in_multiplier"] = cfg.burn_in_multiplier;
  j["thinning_multiplier"] = cfg.thinning_multiplier;
  j["window_multiplier"] = cfg.window_multiplier;
  j["sampler"] = cfg.sampler == UniformSampler::kReplicas ? "replicas" : "thinned";
  j["attempts"] = cfg.attempts;
  j["threshold"] = cfg.threshold;
  j["tie_break"] = switchgraph::to_string(cfg.tie_break);
  j["threads"] = cfg.threads;
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  try {
    cfg.id = parse_experiment_id(j.at("experiment").get<std::string>());
    if (j.contains("n")) cfg.n_values = j["n"].get<std::vector<std::size_t>>();
    if (j.contains("tau")) cfg.tau_values = j["tau"].get<std::vector<double>>();
    if (j.contains("mode")) {
      const auto mode = j["mode"].get<std::string>();
      if (mode == "canonical") {
        cfg.mode = SequenceMode::kCanonical;
      } else if (mode == "iid") {
        cfg.mode = SequenceMode::kIid;
      } else if (mode == "file") {
        cfg.mode = SequenceMode::kFile;
      } else {
        throw ParameterError("unknown sequence mode: " + mode);
      }
    }
    cfg.degrees_file = j.value("degrees_file", cfg.degrees_file);
    cfg.sequences = j.value("sequences", cfg.sequences);
    cfg.replicas = j.value("replicas", cfg.replicas);
    cfg.checkpoints = j.value("checkpoints", cfg.checkpoints);
    cfg.base_seed = j.value("seed", cfg.base_seed);
    cfg.out_dir = j.value("out_dir", cfg.out_dir.string());
    cfg.burn_in_multiplier = j.value("burn_in_multiplier", cfg.burn_in_multiplier);
    cfg.thinning_multiplier = j.value("thinning_multiplier", cfg.thinning_multiplier);
    cfg.window_multiplier = j.value("window_multiplier", cfg.window_multiplier);
    if (j.contains("sampler")) {
      const auto s = j["sampler"].get<std::string>();
      if (s == "replicas") {
        cfg.sampler = UniformSampler::kReplicas;
      } else if (s == "thinned") {
        cfg.sampler = UniformSampler::kThinned;
      } else {
        throw ParameterError("unknown sampler: " + s);
      }
    }
    cfg.attempts = j.value("attempts", cfg.attempts);
    cfg.threshold = j.value("threshold", cfg.threshold);
    if (j.contains("tie_break")) cfg.tie_break = parse_tie_break(j["tie_break"].get<std::string>());
    cfg.threads = j.value("threads", cfg.threads);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("experiment config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

std::vector<std::uint64_t> parse_checkpoints(std::string_view spec, std::size_t n) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t comma = std::min(spec.find(',', start), spec.size());
    const std::string_view item = trim(spec.substr(start, comma - start));
    start = comma + 1;
    if (item.empty()) continue;
    std::vector<std::string_view> parts;
    std::size_t p = 0;
    while (p <= item.size()) {
      const std::size_t colon = std::min(item.find(':', p), item.size());
      parts.push_back(trim(item.substr(p, colon - p)));
      p = colon + 1;
    }
    if (parts.size() == 1) {
      values.push_back(parse_term(parts[0], n));
    } else if (parts.size() == 3) {
      const double first = parse_term(parts[0], n);
      const double step = parse_term(parts[1], n);
      const double last = parse_term(parts[2], n);
      if (!(step > 0.0)) throw ParameterError("checkpoint step must be positive");
      // Index-based to avoid accumulating rounding error across the grid.
      const auto count = static_cast<std::size_t>(std::floor((last - first) / step + 1e-9)) + 1;
      for (std::size_t k = 0; k < count; ++k) values.push_back(first + static_cast<double>(k) * step);
    } else {
      throw ParameterError("checkpoint spec must be start:step:end or a single value");
    }
  }
  std::vector<std::uint64_t> out;
  for (double v : values) out.push_back(static_cast<std::uint64_t>(std::llround(v)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint64_t stream_seed(const ExperimentConfig& cfg, std::size_t cell, std::size_t sequence, std::size_t replica) {
  return derive_seed(cfg.base_seed, {static_cast<std::uint64_t>(cfg.id), cell, sequence, replica});
}

std::vector<Cell> cells(const ExperimentConfig& cfg) {
  std::vector<Cell> out;
  if (cfg.mode == SequenceMode::kFile) {
    out.push_back(Cell{0, 0, 0.0});
    return out;
  }
  for (std::size_t i = 0; i < cfg.tau_values.size(); ++i) {
    for (std::size_t k = 0; k < cfg.n_values.size(); ++k) {
      out.push_back(Cell{out.size(), cfg.n_values[k], cfg.tau_values[i]});
    }
  }
  return out;
}

DegreeSequence make_sequence(const ExperimentConfig& cfg, std::size_t cell, std::size_t n, double tau,
                             std::size_t sequence) {
  switch (cfg.mode) {
    case SequenceMode::kCanonical:
      return canonical_sequence(PowerLawParams{tau, n});
    case SequenceMode::kIid: {
      Rng rng(stream_seed(cfg, cell, sequence, kSequenceStream));
      return sample_iid_sequence(PowerLawParams{tau, n}, rng);
    }
    case SequenceMode::kFile:
      return io::read_degree_sequence(std::filesystem::path(cfg.degrees_file));
  }
  throw ParameterError("unknown sequence mode");
}

std::vector<std::int64_t> uniform_triangle_samples(const DegreeSequence& seq, std::size_t count,
                                                   const ExperimentConfig& cfg, std::size_t cell,
                                                   std::size_t sequence) {
  const std::size_t n = seq.size();
  const ChainState start = start_state(seq, cfg.tie_break);
  const std::uint64_t burn_in = steps_for(cfg.burn_in_multiplier, n);
  std::vector<std::int64_t> out(count, 0);
  if (cfg.sampler == UniformSampler::kReplicas) {
    parallel_for(count, worker_count(cfg), [&](std::size_t i) {
      ChainState state = start;
      Rng rng(stream_seed(cfg, cell, sequence, kReferenceStreams + i));
      advance_safely(state, burn_in, rng);
      out[i] = state.triangles;
    });
    return out;
  }
  ChainState state = start;
  Rng rng(stream_seed(cfg, cell, sequence, kReferenceStreams));
  advance_safely(state, burn_in, rng);
  const std::uint64_t thin = std::max<std::uint64_t>(1, steps_for(cfg.thinning_multiplier, n));
  for (std::size_t i = 0; i < count; ++i) {
    if (i > 0) advance_safely(state, thin, rng);
    out[i] = state.triangles;
  }
  return out;
}

double DeltaCell::tail_probability(std::int64_t k) const {
  std::uint64_t total = 0, tail = 0;
  for (auto [delta, count] : histogram) {
    total += count;
    if (std::llabs(delta) >= k) tail += count;
  }
  return total == 0 ? 0.0 : static_cast<double>(tail) / static_cast<double>(total);
}

// ------------------------------------------------------------ experiments

ExperimentResult run_time_evolution(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult result;
  result.config = cfg;
  for (const Cell& cell : cells(cfg)) {
    for (std::size_t s = 0; s < cfg.sequences; ++s) {
      DegreeSequence seq;
      try {
        seq = make_sequence(cfg, cell.index, cell.n, cell.tau, s);
        const ChainState start = start_state(seq, cfg.tie_break);
        ObserverSchedule schedule{parse_checkpoints(cfg.checkpoints, seq.size())};
        if (schedule.checkpoints.empty() || schedule.checkpoints.front() != 0) {
          schedule.checkpoints.insert(schedule.checkpoints.begin(), 0);
        }
        const std::uint64_t steps = schedule.checkpoints.back();
        std::vector<std::vector<Recording>> recordings(cfg.replicas);
        parallel_for(cfg.replicas, worker_count(cfg), [&](std::size_t r) {
          ChainState state = start;
          Rng rng(stream_seed(cfg, cell.index, s, r));
          recordings[r] = run_safely(state, std::max<std::uint64_t>(steps, 1), schedule, rng);
        });
        for (std::size_t r = 0; r < cfg.replicas; ++r) {
          for (const Recording& rec : recordings[r]) {
            result.time_evolution.push_back({seq.size(), cell.tau, s, r, rec.t, rec.triangles});
          }
        }
      } catch (const std::exception& e) {
        result.errors.push_back("cell " + std::to_string(cell.index) + " sequence " + std::to_string(s) + ": " +
                                e.what());
      }
    }
  }
  return result;
}

ExperimentResult run_mixing_distribution(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult result;
  result.config = cfg;
  for (const Cell& cell : cells(cfg)) {
    for (std::size_t s = 0; s < cfg.sequences; ++s) {
      try {
        const DegreeSequence seq = make_sequence(cfg, cell.index, cell.n, cell.tau, s);
        const std::size_t n = seq.size();
        const ChainState start = start_state(seq, cfg.tie_break);
        const ObserverSchedule schedule{parse_checkpoints(cfg.checkpoints, n)};
        if (schedule.checkpoints.empty()) throw ParameterError("mixing experiment needs checkpoints");
        const std::uint64_t last = schedule.checkpoints.back();
        const std::uint64_t reference_t = steps_for(cfg.burn_in_multiplier, n);
        const bool reference_from_replicas =
            cfg.sampler == UniformSampler::kReplicas && reference_t >= last;

        std::vector<std::vector<Recording>> recordings(cfg.replicas);
        std::vector<std::int64_t> reference_values(cfg.replicas, 0);
        parallel_for(cfg.replicas, worker_count(cfg), [&](std::size_t r) {
          ChainState state = start;
          Rng rng(stream_seed(cfg, cell.index, s, r));
          recordings[r] = run_safely(state, last, schedule, rng);
          if (reference_from_replicas) {
            advance_safely(state, reference_t - state.t, rng);
            reference_values[r] = state.triangles;
          }
        });
        if (!reference_from_replicas) {
          reference_values = uniform_triangle_samples(seq, cfg.replicas, cfg, cell.index, s);
        }

        MixingCell mc;
        mc.n = n;
        mc.tau = cell.tau;
        mc.sequence = s;
        for (std::size_t k = 0; k < schedule.checkpoints.size(); ++k) {
          TriangleHistogram h;
          for (std::size_t r = 0; r < cfg.replicas; ++r) {
            if (k < recordings[r].size()) h.add(recordings[r][k].triangles);
          }
          mc.series.emplace_back(schedule.checkpoints[k], std::move(h));
        }
        for (auto v : reference_values) mc.reference.add(v);
        for (const auto& [checkpoint, h] : mc.series) mc.tv.push_back(tv_distance(h, mc.reference));
        mc.mixing_time = empirical_mixing_time(mc.series, mc.reference, cfg.threshold);
        result.mixing.push_back(std::move(mc));
      } catch (const std::exception& e) {
        result.errors.push_back("cell " + std::to_string(cell.index) + " sequence " + std::to_string(s) + ": " +
                                e.what());
      }
    }
  }
  return result;
}

ExperimentResult run_ecm_vs_urg(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult result;
  result.config = cfg;
  for (const Cell& cell : cells(cfg)) {
    try {
      const DegreeSequence seq = make_sequence(cfg, cell.index, cell.n, cell.tau, 0);
      EcmUrgCell ec;
      ec.n = seq.size();
      ec.tau = cell.tau;
      std::vector<std::int64_t> ecm(cfg.replicas, 0);
      parallel_for(cfg.replicas, worker_count(cfg), [&](std::size_t r) {
        Rng rng(stream_seed(cfg, cell.index, 0, kEcmStreams + r));
        ecm[r] = static_cast<std::int64_t>(count_triangles(erased_configuration_model(seq, rng)));
      });
      for (auto v : ecm) ec.ecm.add(v);
      for (auto v : uniform_triangle_samples(seq, cfg.replicas, cfg, cell.index, 0)) ec.urg.add(v);
      result.ecm_vs_urg.push_back(std::move(ec));
    } catch (const std::exception& e) {
      result.errors.push_back("cell " + std::to_string(cell.index) + ": " + e.what());
    }
  }
  return result;
}

std::vector<ScalingFit> fit_scaling(const std::vector<ScalingPoint>& points) {
  std::vector<double> taus;
  for (const auto& p : points) {
    if (std::find(taus.begin(), taus.end(), p.tau) == taus.end()) taus.push_back(p.tau);
  }
  std::vector<ScalingFit> fits;
  for (double tau : taus) {
    ScalingFit fit;
    fit.tau = tau;
    fit.predicted = predicted_exponent(tau);
    std::vector<std::pair<double, double>> urg, ecm;
    for (const auto& p : points) {
      if (p.tau != tau) continue;
      auto keep = [&](double mean, const char* model, std::vector<std::pair<double, double>>& into) {
        if (mean > 0.0) {
          into.emplace_back(static_cast<double>(p.n), mean);
        } else {
          fit.warnings.push_back(std::string(model) + " mean is zero at n=" + std::to_string(p.n) +
                                 "; excluded from fit");
        }
      };
      keep(p.urg_mean, "URG", urg);
      keep(p.ecm_mean, "ECM", ecm);
    }
    auto try_fit = [&](const std::vector<std::pair<double, double>>& pts, const char* model) -> std::optional<FitResult> {
      try {
        return loglog_fit(pts);
      } catch (const std::exception& e) {
        fit.warnings.push_back(std::string(model) + " fit skipped: " + e.what());
        return std::nullopt;
      }
    };
    fit.urg = try_fit(urg, "URG");
    fit.ecm = try_fit(ecm, "ECM");
    fits.push_back(std::move(fit));
  }
  return fits;
}

ExperimentResult run_scaling_fit(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult result;
  result.config = cfg;
  for (const Cell& cell : cells(cfg)) {
    double urg_sum = 0.0, ecm_sum = 0.0;
    std::size_t urg_count = 0, ecm_count = 0;
    std::size_t n = cell.n;
    for (std::size_t s = 0; s < cfg.sequences; ++s) {
      try {
        const DegreeSequence seq = make_sequence(cfg, cell.index, cell.n, cell.tau, s);
        n = seq.size();
        for (auto v : uniform_triangle_samples(seq, cfg.replicas, cfg, cell.index, s)) {
          urg_sum += static_cast<double>(v);
          ++urg_count;
        }
        std::vector<std::int64_t> ecm(cfg.replicas, 0);
        parallel_for(cfg.replicas, worker_count(cfg), [&](std::size_t r) {
          Rng rng(stream_seed(cfg, cell.index, s, kEcmStreams + r));
          ecm[r] = static_cast<std::int64_t>(count_triangles(erased_configuration_model(seq, rng)));
        });
        for (auto v : ecm) {
          ecm_sum += static_cast<double>(v);
          ++ecm_count;
        }
      } catch (const std::exception& e) {
        result.errors.push_back("cell " + std::to_string(cell.index) + " sequence " + std::to_string(s) + ": " +
                                e.what());
      }
    }
    if (urg_count > 0 && ecm_count > 0) {
      result.scaling_points.push_back(ScalingPoint{n, cell.tau, urg_sum / static_cast<double>(urg_count),
                                                   ecm_sum / static_cast<double>(ecm_count)});
    }
  }
  result.scaling_fits = fit_scaling(result.scaling_points);
  return result;
}

ExperimentResult run_delta_histogram(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult result;
  result.config = cfg;
  for (const Cell& cell : cells(cfg)) {
    try {
      const DegreeSequence seq = make_sequence(cfg, cell.index, cell.n, cell.tau, 0);
      const std::size_t n = seq.size();
      ChainState state = start_state(seq, cfg.tie_break);
      Rng rng(stream_seed(cfg, cell.index, 0, 0));
      advance_safely(state, steps_for(cfg.burn_in_multiplier, n), rng);
      state.reset_counters();
      DeltaCell dc;
      dc.n = n;
      dc.tau = cell.tau;
      dc.window_start_triangles = state.triangles;
      advance_safely(state, steps_for(cfg.window_multiplier, n), rng);
      dc.window_end_triangles = state.triangles;
      dc.histogram = state.stats.delta_histogram;
      dc.stats = state.stats;
      result.deltas.push_back(std::move(dc));
    } catch (const std::exception& e) {
      result.errors.push_back("cell " + std::to_string(cell.index) + ": " + e.what());
    }
  }
  return result;
}

ExperimentResult run_ccm_success(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult result;
  result.config = cfg;
  for (const Cell& cell : cells(cfg)) {
    std::vector<std::optional<CcmSuccessRow>> rows(cfg.sequences);
    std::vector<std::string> errors(cfg.sequences);
    parallel_for(cfg.sequences, worker_count(cfg), [&](std::size_t s) {
      try {
        const DegreeSequence seq = make_sequence(cfg, cell.index, cell.n, cell.tau, s);
        CcmSuccessRow row{seq.size(), cell.tau, s, cfg.attempts, 0, 0};
        for (std::size_t a = 0; a < cfg.attempts; ++a) {
          Rng rng_d(stream_seed(cfg, cell.index, s, kConstructionStreams + 2 * a));
          Rng rng_du(stream_seed(cfg, cell.index, s, kConstructionStreams + 2 * a + 1));
          row.ccmd_successes += ccmd(seq, rng_d).success();
          row.ccmdu_successes += ccmdu(seq, rng_du).success();
        }
        rows[s] = row;
      } catch (const std::exception& e) {
        errors[s] = "cell " + std::to_string(cell.index) + " sequence " + std::to_string(s) + ": " + e.what();
      }
    });
    for (std::size_t s = 0; s < cfg.sequences; ++s) {
      if (rows[s]) result.ccm_success.push_back(*rows[s]);
      if (!errors[s].empty()) result.errors.push_back(errors[s]);
    }
  }
  return result;
}

ExperimentResult run_timing(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult result;
  result.config = cfg;
  for (const Cell& cell : cells(cfg)) {
    try {
      const DegreeSequence seq = make_sequence(cfg, cell.index, cell.n, cell.tau, 0);
      const std::size_t n = seq.size();
      const auto reference = uniform_triangle_samples(seq, cfg.replicas, cfg, cell.index, 0);
      TriangleHistogram ref;
      for (auto v : reference) ref.add(v);
      const double mean = ref.mean();
      const double tolerance = std::max(std::sqrt(ref.variance()), 0.5);
      const auto checkpoints = parse_checkpoints(cfg.checkpoints, n);
      const std::uint64_t max_steps = checkpoints.empty() ? steps_for(20.0, n) : checkpoints.back();
      const std::uint64_t chunk = std::max<std::uint64_t>(1, n / 10);

      struct Method {
        const char* name;
        ConstructionMethod method;
        TieBreak tie;
      };
      const Method methods[] = {{"hh-stable", ConstructionMethod::kHavelHakimi, TieBreak::kStableById},
                                {"hh-reverse", ConstructionMethod::kHavelHakimi, TieBreak::kReverseById},
                                {"ccmd", ConstructionMethod::kCcmd, TieBreak::kStableById},
                                {"ccmdu", ConstructionMethod::kCcmdu, TieBreak::kStableById}};
      for (std::size_t m = 0; m < std::size(methods); ++m) {
        Rng rng(stream_seed(cfg, cell.index, 0, kConstructionStreams + m));
        const ConstructionResult built =
            construct_with_retries(methods[m].method, seq, rng, cfg.attempts, methods[m].tie);
        TimingRow row{n, cell.tau, methods[m].name, built.success(), built.elapsed.count(), 0, mean,
                      std::nullopt, 0.0};
        if (built.success()) {
          ChainState state(*built.graph);
          row.initial_triangles = state.triangles;
          const auto start = Clock::now();
          while (state.t < max_steps) {
            if (std::abs(static_cast<double>(state.triangles) - mean) <= tolerance) {
              row.steps_to_equilibrium = state.t;
              break;
            }
            advance_safely(state, std::min(chunk, max_steps - state.t), rng);
          }
          if (!row.steps_to_equilibrium && std::abs(static_cast<double>(state.triangles) - mean) <= tolerance) {
            row.steps_to_equilibrium = state.t;
          }
          row.chain_seconds = std::chrono::duration<double>(Clock::now() - start).count();
        }
        result.timing.push_back(row);
      }
    } catch (const std::exception& e) {
      result.errors.push_back("cell " + std::to_string(cell.index) + ": " + e.what());
    }
  }
  return result;
}

ExperimentResult run_success_correlation(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult result;
  result.config = cfg;
  for (const Cell& cell : cells(cfg)) {
    std::vector<std::optional<SuccessCorrelationRow>> rows(cfg.sequences);
    std::vector<std::string> errors(cfg.sequences);
    parallel_for(cfg.sequences, worker_count(cfg), [&](std::size_t s) {
      try {
        const DegreeSequence seq = make_sequence(cfg, cell.index, cell.n, cell.tau, s);
        const std::size_t n = seq.size();
        ChainState state = start_state(seq, cfg.tie_break);
        if (state.graph.num_edges() < 2) throw ContractError("sequence has fewer than two edges");
        Rng rng(stream_seed(cfg, cell.index, s, 0));
        advance(state, steps_for(cfg.burn_in_multiplier, n), rng);
        state.reset_counters();
        const std::uint64_t window = std::max<std::uint64_t>(1, steps_for(cfg.window_multiplier, n));
        double triangle_sum = 0.0;
        for (std::uint64_t i = 0; i < window; ++i) {
          triangle_sum += static_cast<double>(state.triangles);
          propose_and_step(state, rng);
        }
        rows[s] = SuccessCorrelationRow{n, cell.tau, s, triangle_sum / static_cast<double>(window),
                                        state.stats.success_rate()};
      } catch (const std::exception& e) {
        errors[s] = "cell " + std::to_string(cell.index) + " sequence " + std::to_string(s) + ": " + e.what();
      }
    });
    for (std::size_t s = 0; s < cfg.sequences; ++s) {
      if (rows[s]) result.success_correlation.push_back(*rows[s]);
      if (!errors[s].empty()) result.errors.push_back(errors[s]);
    }
  }
  return result;
}

ExperimentResult run(const ExperimentConfig& cfg) {
  switch (cfg.id) {
    case ExperimentId::kTimeEvolution: return run_time_evolution(cfg);
    case ExperimentId::kMixingDistribution: return run_mixing_distribution(cfg);
    case ExperimentId::kEcmVsUrg: return run_ecm_vs_urg(cfg);
    case ExperimentId::kScalingFit: return run_scaling_fit(cfg);
    case ExperimentId::kDeltaHistogram: return run_delta_histogram(cfg);
    case ExperimentId::kCcmSuccess: return run_ccm_success(cfg);
    case ExperimentId::kTiming: return run_timing(cfg);
    case ExperimentId::kSuccessCorrelation: return run_success_correlation(cfg);
  }
  throw ParameterError("unknown experiment");
}

// ---------------------------------------------------------------- output

std::vector<std::filesystem::path> write_outputs(const ExperimentResult& result) {
  const auto& dir = result.config.out_dir;
  std::vector<std::filesystem::path> written;
  auto finish = [&](const std::filesystem::path& p, nlohmann::json summary) {
    write_sidecar(p, result, std::move(summary));
    written.push_back(p);
  };

  switch (result.config.id) {
    case ExperimentId::kTimeEvolution: {
      const auto p = dir / "time_evolution.csv";
      auto out = open_csv(p);
      out << "n,tau,sequence,replica,t,triangles\n";
      for (const auto& r : result.time_evolution) {
        out << r.n << ',' << r.tau << ',' << r.sequence << ',' << r.replica << ',' << r.t << ',' << r.triangles << '\n';
      }
      out.close();
      finish(p, {{"rows", result.time_evolution.size()}});
      break;
    }
    case ExperimentId::kMixingDistribution: {
      const auto hp = dir / "mixing_histograms.csv";
      const auto tp = dir / "mixing_tv.csv";
      auto hist = open_csv(hp);
      auto tv = open_csv(tp);
      hist << "n,tau,sequence,checkpoint,value,count\n";
      tv << "n,tau,sequence,checkpoint,tv\n";
      nlohmann::json summary = nlohmann::json::array();
      for (const auto& mc : result.mixing) {
        for (std::size_t k = 0; k < mc.series.size(); ++k) {
          const auto& [checkpoint, h] = mc.series[k];
          for (auto [value, count] : h.counts()) {
            hist << mc.n << ',' << mc.tau << ',' << mc.sequence << ',' << checkpoint << ',' << value << ',' << count
                 << '\n';
          }
          tv << mc.n << ',' << mc.tau << ',' << mc.sequence << ',' << checkpoint << ',' << mc.tv[k] << '\n';
        }
        for (auto [value, count] : mc.reference.counts()) {
          hist << mc.n << ',' << mc.tau << ',' << mc.sequence << ",reference," << value << ',' << count << '\n';
        }
        nlohmann::json cell = {{"n", mc.n}, {"tau", mc.tau}, {"sequence", mc.sequence}};
        cell["mixing_time"] = mc.mixing_time ? nlohmann::json(*mc.mixing_time) : nlohmann::json(nullptr);
        summary.push_back(cell);
      }
      hist.close();
      tv.close();
      finish(hp, summary);
      finish(tp, summary);
      break;
    }
    case ExperimentId::kEcmVsUrg: {
      const auto p = dir / "ecm_vs_urg.csv";
      auto out = open_csv(p);
      out << "n,tau,model,value,count\n";
      nlohmann::json summary = nlohmann::json::array();
      for (const auto& c : result.ecm_vs_urg) {
        for (auto [value, count] : c.ecm.counts()) out << c.n << ',' << c.tau << ",ecm," << value << ',' << count << '\n';
        for (auto [value, count] : c.urg.counts()) out << c.n << ',' << c.tau << ",urg," << value << ',' << count << '\n';
        summary.push_back({{"n", c.n}, {"tau", c.tau}, {"ecm_mean", c.ecm.mean()}, {"urg_mean", c.urg.mean()}});
      }
      out.close();
      finish(p, summary);
      break;
    }
    case ExperimentId::kScalingFit: {
      const auto p = dir / "scaling_means.csv";
      auto out = open_csv(p);
      out << "n,tau,urg_mean,ecm_mean\n";
      for (const auto& s : result.scaling_points) out << s.n << ',' << s.tau << ',' << s.urg_mean << ',' << s.ecm_mean << '\n';
      out.close();
      nlohmann::json fits = nlohmann::json::array();
      for (const auto& f : result.scaling_fits) {
        fits.push_back({{"tau", f.tau},
                        {"predicted", f.predicted},
                        {"urg", f.urg ? io::to_json(*f.urg) : nlohmann::json(nullptr)},
                        {"ecm", f.ecm ? io::to_json(*f.ecm) : nlohmann::json(nullptr)},
                        {"warnings", f.warnings}});
      }
      finish(p, {{"fits", fits}});
      break;
    }
    case ExperimentId::kDeltaHistogram: {
      const auto p = dir / "delta_histogram.csv";
      auto out = open_csv(p);
      out << "n,tau,delta,count\n";
      nlohmann::json summary = nlohmann::json::array();
      for (const auto& d : result.deltas) {
        for (auto [delta, count] : d.histogram) out << d.n << ',' << d.tau << ',' << delta << ',' << count << '\n';
        summary.push_back({{"n", d.n},
                           {"tau", d.tau},
                           {"window_start_triangles", d.window_start_triangles},
                           {"window_end_triangles", d.window_end_triangles},
                           {"accepted", d.stats.accepted},
                           {"rejected_shared_vertex", d.stats.rejected_shared_vertex},
                           {"rejected_existing_edge", d.stats.rejected_existing_edge}});
      }
      out.close();
      finish(p, summary);
      break;
    }
    case ExperimentId::kCcmSuccess: {
      const auto p = dir / "ccm_success.csv";
      auto out = open_csv(p);
      out << "n,tau,sequence,attempts,ccmd_successes,ccmdu_successes,ccmd_rate,ccmdu_rate\n";
      for (const auto& r : result.ccm_success) {
        const double a = static_cast<double>(r.attempts);
        out << r.n << ',' << r.tau << ',' << r.sequence << ',' << r.attempts << ',' << r.ccmd_successes << ','
            << r.ccmdu_successes << ',' << static_cast<double>(r.ccmd_successes) / a << ','
            << static_cast<double>(r.ccmdu_successes) / a << '\n';
      }
      out.close();
      finish(p, {{"rows", result.ccm_success.size()}});
      break;
    }
    case ExperimentId::kTiming: {
      const auto p = dir / "timing.csv";
      auto out = open_csv(p);
      out << "n,tau,method,constructed,construct_seconds,initial_triangles,reference_mean,steps_to_equilibrium,"
             "chain_seconds\n";
      for (const auto& r : result.timing) {
        out << r.n << ',' << r.tau << ',' << r.method << ',' << r.constructed << ',' << r.construct_seconds << ','
            << r.initial_triangles << ',' << r.reference_mean << ',';
        if (r.steps_to_equilibrium) out << *r.steps_to_equilibrium;
        out << ',' << r.chain_seconds << '\n';
      }
      out.close();
      finish(p, {{"rows", result.timing.size()}});
      break;
    }
    case ExperimentId::kSuccessCorrelation: {
      const auto p = dir / "success_correlation.csv";
      auto out = open_csv(p);
      out << "n,tau,sequence,mean_triangles,success_rate\n";
      std::vector<double> x, y;
      for (const auto& r : result.success_correlation) {
        out << r.n << ',' << r.tau << ',' << r.sequence << ',' << r.mean_triangles << ',' << r.success_rate << '\n';
        if (r.mean_triangles > 0.0) {
          x.push_back(std::log(r.mean_triangles));
          y.push_back(r.success_rate);
        }
      }
      out.close();
      nlohmann::json summary = {{"rows", result.success_correlation.size()}};
      try {
        summary["correlation_log_triangles_vs_success"] = pearson_correlation(x, y);
      } catch (const std::exception&) {
        summary["correlation_log_triangles_vs_success"] = nullptr;
      }
      finish(p, summary);
      break;
    }
  }
  return written;
}

}  // namespace switchgraph::experiments
