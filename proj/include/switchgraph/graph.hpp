#pragma once

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "switchgraph/random.hpp"

namespace switchgraph {

using Vertex = std::uint32_t;

/// Undirected edge. Equality ignores orientation.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  constexpr Edge normalized() const { return u <= v ? *this : Edge{v, u}; }
  constexpr Edge reversed() const { return Edge{v, u}; }
  constexpr bool is_loop() const { return u == v; }
  constexpr bool touches(Vertex w) const { return u == w || v == w; }

  friend constexpr bool operator==(Edge a, Edge b) {
    return (a.u == b.u && a.v == b.v) || (a.u == b.v && a.v == b.u);
  }
};

/// Orientation-insensitive 64-bit key for an edge.
constexpr std::uint64_t edge_key(Vertex a, Vertex b) {
  return a < b ? (std::uint64_t{a} << 32) | b : (std::uint64_t{b} << 32) | a;
}

/// The two edges removed and the two added by a degree-preserving switch.
struct Switch {
  std::pair<Edge, Edge> removed;
  std::pair<Edge, Edge> added;

  Switch inverse() const { return Switch{added, removed}; }
};

/// Simple undirected graph on vertices 0..n-1.
///
/// Edges live in an indexable list (uniform sampling in O(1)). Each vertex keeps
/// an unordered neighbour list; every edge remembers its position in both
/// endpoint lists, so removal is a swap with the last entry. Membership uses a
/// dense bit matrix up to kDenseVertexLimit vertices and an edge-key map above.
class SimpleGraph {
 public:
  static constexpr std::size_t kDenseVertexLimit = 8192;

  SimpleGraph() = default;
  explicit SimpleGraph(std::size_t n);

  /// Throws ContractError on self-loops, duplicates or out-of-range ids.
  static SimpleGraph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t num_vertices() const { return nbrs_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  int degree(Vertex v) const { return static_cast<int>(nbrs_[v].size()); }
  std::vector<int> degrees() const;
  bool has_edge(Vertex a, Vertex b) const {
    if (a == b) return false;
    if (dense_) return (bits_[a * words_ + (b >> 6)] >> (b & 63)) & 1;
    return slot_.contains(edge_key(a, b));
  }
  std::span<const Vertex> neighbors(Vertex v) const { return nbrs_[v]; }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge_at(std::size_t slot) const { return edges_[slot]; }
  /// Slot index of an existing edge; throws ContractError if absent.
  std::size_t slot_of(Edge e) const;

  void add_edge(Vertex a, Vertex b);
  void remove_edge(Vertex a, Vertex b);

  /// Uniformly random edge slot / edge. Throws ContractError on an empty graph.
  std::size_t sample_edge_slot(Rng& rng) const;
  Edge sample_edge(Rng& rng) const;

  std::size_t common_neighbor_count(Vertex a, Vertex b) const;

  /// Net change in triangle count caused by `sw`, computed from local common
  /// neighbourhoods. Throws ContractError when `sw` is not a legal switch.
  std::int64_t triangle_delta(const Switch& sw) const;
  /// Replaces removed.first by added.first and removed.second by
  /// added.second in place (slots are reused). Throws ContractError when `sw`
  /// is not a legal switch.
  void apply_switch(const Switch& sw);

  /// Hot-path variants without validation. The switch removes (u1,v1) and
  /// (u2,v2) and adds (u1,v2) and (u2,v1); the caller guarantees legality.
  std::int64_t triangle_delta_unchecked(Vertex u1, Vertex v1, Vertex u2, Vertex v2) const;
  void apply_switch_unchecked(std::size_t slot1, std::size_t slot2, Vertex u1, Vertex v1, Vertex u2, Vertex v2);

  /// Edges normalized (u < v) and sorted lexicographically.
  std::vector<Edge> sorted_edges() const;

  /// Full consistency check of list, positions, membership and neighbour
  /// lists; returns false on any mismatch.
  bool audit() const;

  friend bool operator==(const SimpleGraph& a, const SimpleGraph& b);

 private:
  void check_vertex(Vertex v) const;
  void check_legal_switch(const Switch& sw) const;
  void set_member(Vertex a, Vertex b, std::size_t slot);
  void clear_member(Vertex a, Vertex b);
  void link(std::size_t slot);
  void unlink(std::size_t slot);
  void replace_in_slot(std::size_t slot, Edge new_edge);

  std::vector<std::vector<Vertex>> nbrs_;
  std::vector<std::vector<std::uint32_t>> nbr_slot_;  // edge slot of each neighbour entry
  std::vector<Edge> edges_;
  std::vector<std::array<std::uint32_t, 2>> edge_pos_;  // index in nbrs_[u], nbrs_[v]
  bool dense_ = true;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
  absl::flat_hash_map<std::uint64_t, std::uint32_t> slot_;  // sparse mode only
};

/// Number of triangles, by degree-ordered neighbour intersection.
std::uint64_t count_triangles(const SimpleGraph& g);

/// Configuration-model output: self-loops and parallel edges allowed.
class MultiGraph {
 public:
  MultiGraph() = default;
  explicit MultiGraph(std::size_t n) : n_(n) {}

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  void add_edge(Vertex a, Vertex b);

  /// Degrees with a self-loop counted twice.
  std::vector<int> degrees() const;
  std::size_t num_self_loops() const;
  std::size_t num_multi_edge_excess() const;
  bool is_simple() const { return num_self_loops() == 0 && num_multi_edge_excess() == 0; }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

/// Drops self-loops and collapses parallel edges.
SimpleGraph erase(const MultiGraph& mg);

}  // namespace switchgraph
