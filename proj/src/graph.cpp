#include "switchgraph/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "switchgraph/error.hpp"

namespace switchgraph {

SimpleGraph::SimpleGraph(std::size_t n) : nbrs_(n), nbr_slot_(n), dense_(n <= kDenseVertexLimit) {
  if (dense_) {
    words_ = (n + 63) / 64;
    bits_.assign(n * words_, 0);
  }
}

SimpleGraph SimpleGraph::from_edges(std::size_t n, std::span<const Edge> edges) {
  SimpleGraph g(n);
  g.edges_.reserve(edges.size());
  g.edge_pos_.reserve(edges.size());
  if (!g.dense_) g.slot_.reserve(edges.size());
  for (const Edge& e : edges) g.add_edge(e.u, e.v);
  return g;
}

std::vector<int> SimpleGraph::degrees() const {
  std::vector<int> out(num_vertices());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = static_cast<int>(nbrs_[v].size());
  return out;
}

void SimpleGraph::check_vertex(Vertex v) const {
  if (v >= nbrs_.size()) {
    throw ContractError("vertex " + std::to_string(v) + " out of range for n=" + std::to_string(nbrs_.size()));
  }
}

std::size_t SimpleGraph::slot_of(Edge e) const {
  if (e.u < nbrs_.size() && e.v < nbrs_.size() && has_edge(e.u, e.v)) {
    if (!dense_) return slot_.find(edge_key(e.u, e.v))->second;
    const Vertex a = degree(e.u) <= degree(e.v) ? e.u : e.v;
    const Vertex b = a == e.u ? e.v : e.u;
    const auto& list = nbrs_[a];
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i] == b) return nbr_slot_[a][i];
    }
  }
  throw ContractError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") not present");
}

void SimpleGraph::set_member(Vertex a, Vertex b, std::size_t slot) {
  if (dense_) {
    bits_[a * words_ + (b >> 6)] |= std::uint64_t{1} << (b & 63);
    bits_[b * words_ + (a >> 6)] |= std::uint64_t{1} << (a & 63);
  } else {
    slot_[edge_key(a, b)] = static_cast<std::uint32_t>(slot);
  }
}

void SimpleGraph::clear_member(Vertex a, Vertex b) {
  if (dense_) {
    bits_[a * words_ + (b >> 6)] &= ~(std::uint64_t{1} << (b & 63));
    bits_[b * words_ + (a >> 6)] &= ~(std::uint64_t{1} << (a & 63));
  } else {
    slot_.erase(edge_key(a, b));
  }
}

void SimpleGraph::link(std::size_t slot) {
  const Edge e = edges_[slot];
  edge_pos_[slot] = {static_cast<std::uint32_t>(nbrs_[e.u].size()), static_cast<std::uint32_t>(nbrs_[e.v].size())};
  nbrs_[e.u].push_back(e.v);
  nbr_slot_[e.u].push_back(static_cast<std::uint32_t>(slot));
  nbrs_[e.v].push_back(e.u);
  nbr_slot_[e.v].push_back(static_cast<std::uint32_t>(slot));
  set_member(e.u, e.v, slot);
}

void SimpleGraph::unlink(std::size_t slot) {
  const Edge e = edges_[slot];
  for (int side = 0; side < 2; ++side) {
    const Vertex x = side == 0 ? e.u : e.v;
    const std::uint32_t pos = edge_pos_[slot][side];
    auto& list = nbrs_[x];
    auto& slots = nbr_slot_[x];
    const std::uint32_t last = static_cast<std::uint32_t>(list.size() - 1);
    if (pos != last) {
      list[pos] = list[last];
      slots[pos] = slots[last];
      const std::uint32_t moved = slots[pos];
      edge_pos_[moved][edges_[moved].u == x ? 0 : 1] = pos;
    }
    list.pop_back();
    slots.pop_back();
  }
  clear_member(e.u, e.v);
}

void SimpleGraph::add_edge(Vertex a, Vertex b) {
  check_vertex(a);
  check_vertex(b);
  if (a == b) throw ContractError("self-loop (" + std::to_string(a) + "," + std::to_string(a) + ")");
  if (has_edge(a, b)) throw ContractError("duplicate edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
  edges_.push_back(Edge{a, b});
  edge_pos_.push_back({0, 0});
  link(edges_.size() - 1);
}

void SimpleGraph::remove_edge(Vertex a, Vertex b) {
  const std::size_t slot = slot_of(Edge{a, b});
  unlink(slot);
  const std::size_t last = edges_.size() - 1;
  if (slot != last) {
    const Edge moved = edges_[last];
    edges_[slot] = moved;
    edge_pos_[slot] = edge_pos_[last];
    nbr_slot_[moved.u][edge_pos_[slot][0]] = static_cast<std::uint32_t>(slot);
    nbr_slot_[moved.v][edge_pos_[slot][1]] = static_cast<std::uint32_t>(slot);
    if (!dense_) slot_[edge_key(moved.u, moved.v)] = static_cast<std::uint32_t>(slot);
  }
  edges_.pop_back();
  edge_pos_.pop_back();
}

std::size_t SimpleGraph::sample_edge_slot(Rng& rng) const {
  if (edges_.empty()) throw ContractError("cannot sample an edge from an empty graph");
  return static_cast<std::size_t>(uniform_below(rng, edges_.size()));
}

Edge SimpleGraph::sample_edge(Rng& rng) const { return edges_[sample_edge_slot(rng)]; }

std::size_t SimpleGraph::common_neighbor_count(Vertex a, Vertex b) const {
  if (nbrs_[a].size() > nbrs_[b].size()) std::swap(a, b);
  std::size_t count = 0;
  if (dense_) {
    const std::uint64_t* row = &bits_[b * words_];
    for (Vertex w : nbrs_[a]) count += (row[w >> 6] >> (w & 63)) & 1;
  } else {
    for (Vertex w : nbrs_[a]) count += slot_.contains(edge_key(b, w));
  }
  return count;
}

namespace {

// Orientation of a switch: removed (u1,v1),(u2,v2) -> added (u1,v2),(u2,v1).
struct Oriented {
  Vertex u1, v1, u2, v2;
};

bool orient(const Switch& sw, Oriented& out) {
  const Edge r1 = sw.removed.first;
  const Edge r2 = sw.removed.second;
  const Edge a1 = sw.added.first;
  for (int flip1 = 0; flip1 < 2; ++flip1) {
    for (int flip2 = 0; flip2 < 2; ++flip2) {
      const Edge e1 = flip1 ? r1.reversed() : r1;
      const Edge e2 = flip2 ? r2.reversed() : r2;
      if (a1 == Edge{e1.u, e2.v} && sw.added.second == Edge{e2.u, e1.v}) {
        out = Oriented{e1.u, e1.v, e2.u, e2.v};
        return true;
      }
    }
  }
  return false;
}

}  // namespace

void SimpleGraph::check_legal_switch(const Switch& sw) const {
  const Edge r1 = sw.removed.first;
  const Edge r2 = sw.removed.second;
  for (Vertex x : {r1.u, r1.v, r2.u, r2.v}) check_vertex(x);
  if (r1.touches(r2.u) || r1.touches(r2.v) || r1.is_loop() || r2.is_loop()) {
    throw ContractError("switch edges must be vertex-disjoint");
  }
  if (!has_edge(r1.u, r1.v) || !has_edge(r2.u, r2.v)) {
    throw ContractError("switch removes an edge that is not present");
  }
  Oriented o{};
  if (!orient(sw, o)) throw ContractError("added edges do not form a switch of the removed edges");
  if (has_edge(sw.added.first.u, sw.added.first.v) || has_edge(sw.added.second.u, sw.added.second.v)) {
    throw ContractError("switch would create a multi-edge");
  }
}

std::int64_t SimpleGraph::triangle_delta(const Switch& sw) const {
  check_legal_switch(sw);
  Oriented o{};
  orient(sw, o);
  return triangle_delta_unchecked(o.u1, o.v1, o.u2, o.v2);
}

std::int64_t SimpleGraph::triangle_delta_unchecked(Vertex u1, Vertex v1, Vertex u2, Vertex v2) const {
  auto cn = [this](Vertex a, Vertex b) { return static_cast<std::int64_t>(common_neighbor_count(a, b)); };
  // Triangles through the removed edges are lost; those through the added edges
  // are gained, except closures that relied on a removed edge.
  return cn(u1, v2) + cn(u2, v1) - cn(u1, v1) - cn(u2, v2) - 2 * static_cast<std::int64_t>(has_edge(v1, v2)) -
         2 * static_cast<std::int64_t>(has_edge(u1, u2));
}

void SimpleGraph::apply_switch_unchecked(std::size_t slot1, std::size_t slot2, Vertex u1, Vertex v1, Vertex u2,
                                         Vertex v2) {
  replace_in_slot(slot1, Edge{u1, v2});
  replace_in_slot(slot2, Edge{u2, v1});
}

void SimpleGraph::replace_in_slot(std::size_t slot, Edge new_edge) {
  unlink(slot);
  edges_[slot] = new_edge;
  link(slot);
}

void SimpleGraph::apply_switch(const Switch& sw) {
  check_legal_switch(sw);
  const std::size_t s1 = slot_of(sw.removed.first);
  const std::size_t s2 = slot_of(sw.removed.second);
  replace_in_slot(s1, sw.added.first);
  replace_in_slot(s2, sw.added.second);
}

std::vector<Edge> SimpleGraph::sorted_edges() const {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (const Edge& e : edges_) out.push_back(e.normalized());
  std::sort(out.begin(), out.end(), [](Edge a, Edge b) { return edge_key(a.u, a.v) < edge_key(b.u, b.v); });
  return out;
}

bool SimpleGraph::audit() const {
  const std::size_t n = nbrs_.size();
  if (edge_pos_.size() != edges_.size()) return false;
  if (!dense_ && slot_.size() != edges_.size()) return false;
  std::size_t list_total = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (nbr_slot_[v].size() != nbrs_[v].size()) return false;
    for (std::size_t i = 0; i < nbrs_[v].size(); ++i) {
      const Vertex w = nbrs_[v][i];
      const std::uint32_t slot = nbr_slot_[v][i];
      if (w >= n || w == v || slot >= edges_.size()) return false;
      if (!(edges_[slot] == Edge{static_cast<Vertex>(v), w})) return false;
      if (edge_pos_[slot][edges_[slot].u == v ? 0 : 1] != i) return false;
      if (!has_edge(static_cast<Vertex>(v), w)) return false;
    }
    list_total += nbrs_[v].size();
  }
  if (list_total != 2 * edges_.size()) return false;
  std::size_t members = 0;
  if (dense_) {
    for (std::uint64_t word : bits_) members += static_cast<std::size_t>(__builtin_popcountll(word));
    if (members != 2 * edges_.size()) return false;
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge e = edges_[i];
    if (e.is_loop() || e.u >= n || e.v >= n) return false;
    if (nbrs_[e.u][edge_pos_[i][0]] != e.v || nbrs_[e.v][edge_pos_[i][1]] != e.u) return false;
    if (!dense_) {
      auto it = slot_.find(edge_key(e.u, e.v));
      if (it == slot_.end() || it->second != i) return false;
    }
  }
  return true;
}

bool operator==(const SimpleGraph& a, const SimpleGraph& b) {
  return a.num_vertices() == b.num_vertices() && a.sorted_edges() == b.sorted_edges();
}

std::uint64_t count_triangles(const SimpleGraph& g) {
  const std::size_t n = g.num_vertices();
  // rank[v] orders vertices by (degree, id); each edge points to the higher rank.
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return g.degree(a) != g.degree(b) ? g.degree(a) < g.degree(b) : a < b;
  });
  std::vector<std::uint32_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[order[i]] = static_cast<std::uint32_t>(i);

  std::vector<std::vector<Vertex>> forward(n);
  for (const Edge& e : g.edges()) {
    if (rank[e.u] < rank[e.v]) {
      forward[e.u].push_back(e.v);
    } else {
      forward[e.v].push_back(e.u);
    }
  }
  std::vector<char> mark(n, 0);
  std::uint64_t triangles = 0;
  for (std::size_t u = 0; u < n; ++u) {
    for (Vertex v : forward[u]) mark[v] = 1;
    for (Vertex v : forward[u]) {
      for (Vertex w : forward[v]) triangles += static_cast<std::uint64_t>(mark[w]);
    }
    for (Vertex v : forward[u]) mark[v] = 0;
  }
  return triangles;
}

void MultiGraph::add_edge(Vertex a, Vertex b) {
  if (a >= n_ || b >= n_) throw ContractError("multigraph vertex out of range");
  edges_.push_back(Edge{a, b});
}

std::vector<int> MultiGraph::degrees() const {
  std::vector<int> out(n_, 0);
  for (const Edge& e : edges_) {
    ++out[e.u];
    ++out[e.v];
  }
  return out;
}

std::size_t MultiGraph::num_self_loops() const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); }));
}

std::size_t MultiGraph::num_multi_edge_excess() const {
  absl::flat_hash_set<std::uint64_t> seen;
  std::size_t excess = 0;
  for (const Edge& e : edges_) {
    if (e.is_loop()) continue;
    if (!seen.insert(edge_key(e.u, e.v)).second) ++excess;
  }
  return excess;
}

SimpleGraph erase(const MultiGraph& mg) {
  SimpleGraph g(mg.num_vertices());
  for (const Edge& e : mg.edges()) {
    if (!e.is_loop() && !g.has_edge(e.u, e.v)) g.add_edge(e.u, e.v);
  }
  return g;
}

}  // namespace switchgraph
