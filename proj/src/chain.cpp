#include "switchgraph/chain.hpp"

#include <cmath>

#include "switchgraph/error.hpp"

namespace switchgraph {

double MoveStats::success_rate() const {
  const std::uint64_t total = proposals();
  return total == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(total);
}

std::int64_t MoveStats::net_delta() const {
  std::int64_t sum = 0;
  for (auto [delta, count] : delta_histogram) sum += delta * static_cast<std::int64_t>(count);
  return sum;
}

ChainState::ChainState(SimpleGraph g)
    : graph(std::move(g)), triangles(static_cast<std::int64_t>(count_triangles(graph))) {}

void ChainState::reset_counters() {
  t = 0;
  stats = MoveStats{};
}

Proposal make_proposal(const SimpleGraph& g, std::size_t slot_a, std::size_t slot_b, bool flip_a, bool flip_b) {
  Proposal p;
  p.slot_a = slot_a;
  p.slot_b = slot_b;
  const Edge a = flip_a ? g.edge_at(slot_a).reversed() : g.edge_at(slot_a);
  const Edge b = flip_b ? g.edge_at(slot_b).reversed() : g.edge_at(slot_b);
  p.u1 = a.u;
  p.v1 = a.v;
  p.u2 = b.u;
  p.v2 = b.v;
  if (slot_a == slot_b || a.touches(b.u) || a.touches(b.v)) {
    p.verdict = RejectReason::kSharedVertex;
  } else if (g.has_edge(p.u1, p.v2) || g.has_edge(p.u2, p.v1)) {
    p.verdict = RejectReason::kExistingEdge;
  }
  return p;
}

StepOutcome propose_and_step(ChainState& state, Rng& rng) {
  SimpleGraph& g = state.graph;
  const std::size_t m = g.num_edges();
  if (m < 2) throw ContractError("switch chain needs at least two edges");
  const std::size_t slot_a = static_cast<std::size_t>(uniform_below(rng, m));
  std::size_t slot_b = static_cast<std::size_t>(uniform_below(rng, m - 1));
  if (slot_b >= slot_a) ++slot_b;
  const std::uint64_t bits = rng();
  const Proposal p = make_proposal(g, slot_a, slot_b, (bits & 1) != 0, (bits & 2) != 0);

  StepOutcome out;
  if (state.record_success_samples) {
    state.stats.success_samples.push_back({static_cast<std::uint64_t>(state.triangles), p.legal()});
  }
  ++state.t;
  switch (p.verdict) {
    case RejectReason::kSharedVertex:
      ++state.stats.rejected_shared_vertex;
      out.reason = p.verdict;
      return out;
    case RejectReason::kExistingEdge:
      ++state.stats.rejected_existing_edge;
      out.reason = p.verdict;
      return out;
    case RejectReason::kNone:
      break;
  }
  out.accepted = true;
  out.delta = g.triangle_delta_unchecked(p.u1, p.v1, p.u2, p.v2);
  g.apply_switch_unchecked(p.slot_a, p.slot_b, p.u1, p.v1, p.u2, p.v2);
  state.triangles += out.delta;
  ++state.stats.accepted;
  ++state.stats.delta_histogram[out.delta];
  return out;
}

void ObserverSchedule::validate() const {
  for (std::size_t i = 1; i < checkpoints.size(); ++i) {
    if (checkpoints[i] <= checkpoints[i - 1]) throw ParameterError("checkpoints must be strictly increasing");
  }
}

std::vector<Recording> run(ChainState& state, std::uint64_t steps, const ObserverSchedule& schedule, Rng& rng) {
  schedule.validate();
  std::vector<Recording> out;
  const std::uint64_t end = state.t + steps;
  auto next = schedule.checkpoints.begin();
  while (next != schedule.checkpoints.end() && *next < state.t) ++next;

  auto record = [&] {
    Recording r{state.t, state.triangles, std::nullopt};
    if (schedule.record_fingerprint) r.fingerprint = edge_set_fingerprint(state.graph);
    out.push_back(r);
  };
  if (steps == 0) return out;
  if (next != schedule.checkpoints.end() && *next == state.t) {
    record();
    ++next;
  }
  while (state.t < end) {
    const std::uint64_t target = (next != schedule.checkpoints.end() && *next <= end) ? *next : end;
    while (state.t < target) propose_and_step(state, rng);
    if (next != schedule.checkpoints.end() && state.t == *next) {
      record();
      ++next;
    }
  }
  return out;
}

void advance(ChainState& state, std::uint64_t steps, Rng& rng) {
  for (std::uint64_t i = 0; i < steps; ++i) propose_and_step(state, rng);
}

SimpleGraph sample_uniform(const DegreeSequence& seq, Rng& rng, double burn_in_multiplier, TieBreak tie_break) {
  if (!(burn_in_multiplier >= 0.0)) throw ParameterError("burn-in multiplier must be non-negative");
  ChainState state(havel_hakimi(seq, tie_break));
  if (state.graph.num_edges() < 2) return std::move(state.graph);
  const auto steps = static_cast<std::uint64_t>(std::llround(burn_in_multiplier * static_cast<double>(seq.size())));
  advance(state, steps, rng);
  return std::move(state.graph);
}

std::uint64_t edge_set_fingerprint(const SimpleGraph& g) {
  const std::uint64_t n = g.num_vertices();
  std::uint64_t fp = 0;
  if (n * (n - 1) / 2 <= 64) {
    for (const Edge& e : g.edges()) {
      const Edge s = e.normalized();
      // Row-major index of pair (u, v), u < v.
      const std::uint64_t index = s.u * n - s.u * (s.u + 1) / 2 + (s.v - s.u - 1);
      fp |= std::uint64_t{1} << index;
    }
    return fp;
  }
  for (const Edge& e : g.edges()) fp += mix64(edge_key(e.u, e.v));
  return fp;
}

}  // namespace switchgraph
