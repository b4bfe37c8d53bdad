#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "switchgraph/degree_sequence.hpp"
#include "switchgraph/graph.hpp"
#include "switchgraph/random.hpp"

namespace switchgraph {

/// Order among vertices whose residual degrees tie during Havel-Hakimi.
enum class TieBreak {
  kStableById,   // lower id first
  kReverseById,  // higher id first
};

std::string_view to_string(TieBreak t);
TieBreak parse_tie_break(std::string_view s);

/// Havel-Hakimi realization. Vertex v has degree seq[v]; ties between equal
/// residual degrees are resolved by `tie_break`. Throws GraphicalityError.
SimpleGraph havel_hakimi(const DegreeSequence& seq, TieBreak tie_break = TieBreak::kStableById);

/// Havel-Hakimi with an explicit tie order: among equal residual degrees the
/// vertex with the smaller priority[v] comes first. `priority` must be a
/// permutation of 0..n-1.
SimpleGraph havel_hakimi(const DegreeSequence& seq, std::span<const std::size_t> priority);

struct ConstructionResult {
  std::optional<SimpleGraph> graph;  // empty on fail
  std::size_t attempts_used = 0;
  std::chrono::duration<double> elapsed{};

  bool success() const { return graph.has_value(); }
};

/// Constrained configuration model: the vertex with most remaining half-edges
/// pairs all of them, one by one, to uniform half-edges outside its forbidden
/// set, which grows with every partner. Single attempt.
ConstructionResult ccmd(const DegreeSequence& seq, Rng& rng);

/// Updated constrained configuration model: one pairing per selection of the
/// max-remaining vertex; forbidden sets are kept symmetric. Single attempt.
ConstructionResult ccmdu(const DegreeSequence& seq, Rng& rng);

enum class ConstructionMethod { kHavelHakimi, kCcmd, kCcmdu };

/// Repeats a fail-prone constructor up to `max_attempts` times. The result's
/// elapsed time covers all attempts.
ConstructionResult construct_with_retries(ConstructionMethod method, const DegreeSequence& seq, Rng& rng,
                                          std::size_t max_attempts,
                                          TieBreak tie_break = TieBreak::kStableById);

/// Uniform random pairing of half-edges. Throws ParityError on odd total.
MultiGraph configuration_model(const DegreeSequence& seq, Rng& rng);

/// configuration_model followed by erase(); degrees may fall short of seq.
SimpleGraph erased_configuration_model(const DegreeSequence& seq, Rng& rng);

/// Degrees of g equal seq exactly (positionally).
bool realizes(const SimpleGraph& g, const DegreeSequence& seq);

}  // namespace switchgraph
