#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "switchgraph/construct.hpp"
#include "switchgraph/degree_sequence.hpp"
#include "switchgraph/graph.hpp"
#include "switchgraph/random.hpp"

namespace switchgraph {

enum class RejectReason { kNone, kSharedVertex, kExistingEdge };

struct SuccessSample {
  std::uint64_t triangles_before = 0;
  bool accepted = false;
};

/// Per-move tallies of a switch chain.
struct MoveStats {
  std::uint64_t accepted = 0;
  std::uint64_t rejected_shared_vertex = 0;
  std::uint64_t rejected_existing_edge = 0;
  /// Net triangle change of accepted moves -> number of such moves.
  std::map<std::int64_t, std::uint64_t> delta_histogram;
  /// Only filled when recording is enabled on the state.
  std::vector<SuccessSample> success_samples;

  std::uint64_t proposals() const { return accepted + rejected_shared_vertex + rejected_existing_edge; }
  double success_rate() const;
  /// Sum of delta * count over the histogram.
  std::int64_t net_delta() const;
};

/// Switch-chain state. `t` counts every proposal, rejected ones included.
struct ChainState {
  SimpleGraph graph;
  std::uint64_t t = 0;
  std::int64_t triangles = 0;
  MoveStats stats;
  bool record_success_samples = false;

  ChainState() = default;
  explicit ChainState(SimpleGraph g);

  /// Clears t and the tallies, keeping the graph (e.g. after burn-in).
  void reset_counters();
};

/// Result of one proposal.
struct StepOutcome {
  bool accepted = false;
  RejectReason reason = RejectReason::kNone;
  std::int64_t delta = 0;
};

/// A proposal fully determined by two distinct edge slots and an orientation
/// bit per edge: edge slot a read as (u1,v1), slot b as (u2,v2); the switch
/// replaces them by (u1,v2),(u2,v1).
struct Proposal {
  std::size_t slot_a = 0;
  std::size_t slot_b = 0;
  Vertex u1 = 0, v1 = 0, u2 = 0, v2 = 0;
  RejectReason verdict = RejectReason::kNone;

  bool legal() const { return verdict == RejectReason::kNone; }
  Switch as_switch() const { return Switch{{Edge{u1, v1}, Edge{u2, v2}}, {Edge{u1, v2}, Edge{u2, v1}}}; }
};

/// Deterministic proposal construction; classifies without mutating.
Proposal make_proposal(const SimpleGraph& g, std::size_t slot_a, std::size_t slot_b, bool flip_a, bool flip_b);

/// One chain step: an ordered pair of distinct edge slots and two orientation
/// bits drawn uniformly. Illegal proposals leave the graph unchanged; t always
/// advances. Throws ContractError when the graph has fewer than two edges.
StepOutcome propose_and_step(ChainState& state, Rng& rng);

/// Checkpoints are absolute values of ChainState::t.
struct ObserverSchedule {
  std::vector<std::uint64_t> checkpoints;
  bool record_fingerprint = false;

  /// Throws ParameterError unless strictly increasing.
  void validate() const;
};

struct Recording {
  std::uint64_t t = 0;
  std::int64_t triangles = 0;
  std::optional<std::uint64_t> fingerprint;
};

/// Advances exactly `steps` proposals, recording at every checkpoint reached
/// (including the current t if it is a checkpoint and no step has been taken).
std::vector<Recording> run(ChainState& state, std::uint64_t steps, const ObserverSchedule& schedule, Rng& rng);

/// Advances `steps` proposals without observation.
void advance(ChainState& state, std::uint64_t steps, Rng& rng);

inline constexpr double kDefaultBurnInMultiplier = 2000.0;

/// Havel-Hakimi start followed by burn_in_multiplier * n proposals.
SimpleGraph sample_uniform(const DegreeSequence& seq, Rng& rng,
                           double burn_in_multiplier = kDefaultBurnInMultiplier,
                           TieBreak tie_break = TieBreak::kStableById);

/// Identifies an edge set. Exact (a bit per vertex pair) when n(n-1)/2 <= 64,
/// otherwise an order-independent 64-bit hash.
std::uint64_t edge_set_fingerprint(const SimpleGraph& g);

}  // namespace switchgraph
