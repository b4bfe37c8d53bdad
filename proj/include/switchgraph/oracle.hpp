#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "switchgraph/degree_sequence.hpp"
#include "switchgraph/graph.hpp"
#include "switchgraph/stats.hpp"

namespace switchgraph {

inline constexpr std::size_t kDefaultEnumerationCap = 10;

/// Bit index of the vertex pair (u, v), u < v, in row-major order. Matches
/// edge_set_fingerprint for n(n-1)/2 <= 64.
constexpr unsigned pair_index(std::size_t n, std::size_t u, std::size_t v) {
  return static_cast<unsigned>(u * n - u * (u + 1) / 2 + (v - u - 1));
}

std::uint64_t edge_mask(const SimpleGraph& g);
SimpleGraph graph_from_mask(std::size_t n, std::uint64_t mask);

/// Every labeled simple graph on seq.size() vertices where vertex v has degree
/// seq[v], as edge masks in deterministic enumeration order.
struct EnumerationResult {
  std::size_t n = 0;
  std::vector<std::uint64_t> graphs;
  TriangleHistogram triangle_distribution;
  std::int64_t max_triangles = 0;  // 0 when no graph exists
};

/// Visits each realization as (edge mask, per-vertex adjacency bitmasks).
/// Throws CapExceededError when seq.size() > cap.
void for_each_realization(const DegreeSequence& seq,
                          const std::function<void(std::uint64_t, std::span<const std::uint32_t>)>& visit,
                          std::size_t cap = kDefaultEnumerationCap);

EnumerationResult enumerate_graphs(const DegreeSequence& seq, std::size_t cap = kDefaultEnumerationCap);

/// Largest triangle count over all realizations. Throws GraphicalityError when
/// there is none.
std::int64_t max_triangles(const DegreeSequence& seq, std::size_t cap = kDefaultEnumerationCap);

enum class SequenceConvention {
  kPositiveLengthN,   // positive degrees, exactly n entries
  kUpToN,             // positive degrees, 0..n entries; same as length n with zeros allowed
};

/// Non-increasing graphical sequences in lexicographic order (of the
/// zero-padded length-n form for kUpToN). Throws CapExceededError for n > 10.
std::vector<DegreeSequence> all_graphical_sequences(std::size_t n,
                                                    SequenceConvention convention = SequenceConvention::kPositiveLengthN);

}  // namespace switchgraph
