#include "switchgraph/oracle.hpp"

#include <bit>
#include <string>

#include "switchgraph/error.hpp"

namespace switchgraph {

namespace {

void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw CapExceededError("exhaustive enumeration is capped at n=" + std::to_string(cap) + ", got n=" +
                           std::to_string(n));
  }
  if (n * (n - 1) / 2 > 64) throw CapExceededError("edge masks hold at most 64 vertex pairs (n <= 11)");
}

std::int64_t mask_triangles(std::span<const std::uint32_t> adj) {
  std::int64_t t = 0;
  for (std::size_t u = 0; u < adj.size(); ++u) {
    for (std::uint32_t rest = adj[u] >> (u + 1); rest != 0; rest &= rest - 1) {
      const std::size_t v = u + 1 + static_cast<std::size_t>(std::countr_zero(rest));
      t += std::popcount(adj[u] & adj[v] & ~((std::uint32_t{2} << v) - 1));
    }
  }
  return t;
}

class Enumerator {
 public:
  Enumerator(const DegreeSequence& seq,
             const std::function<void(std::uint64_t, std::span<const std::uint32_t>)>& visit)
      : n_(seq.size()), residual_(seq.begin(), seq.end()), adj_(seq.size(), 0), visit_(visit) {}

  void run() {
    if (is_graphical(residual_)) row(0);
  }

 private:
  // Decide all edges (u, j), j > u, then recurse on the next row.
  void row(std::size_t u) {
    if (u == n_) {
      visit_(mask_, adj_);
      return;
    }
    if (residual_[u] == 0) {
      row(u + 1);
      return;
    }
    choose(u, u + 1, residual_[u]);
  }

  void choose(std::size_t u, std::size_t from, int needed) {
    if (needed == 0) {
      // Rows after u only connect among themselves: they must stay graphical.
      if (is_graphical(std::span<const int>(residual_).subspan(u + 1))) row(u + 1);
      return;
    }
    for (std::size_t j = from; j + static_cast<std::size_t>(needed) <= n_; ++j) {
      if (residual_[j] == 0) continue;
      link(u, j, +1);
      choose(u, j + 1, needed - 1);
      link(u, j, -1);
    }
  }

  void link(std::size_t u, std::size_t j, int dir) {
    const std::uint64_t bit = std::uint64_t{1} << pair_index(n_, u, j);
    residual_[u] -= dir;
    residual_[j] -= dir;
    mask_ ^= bit;
    adj_[u] ^= std::uint32_t{1} << j;
    adj_[j] ^= std::uint32_t{1} << u;
  }

  std::size_t n_;
  std::vector<int> residual_;
  std::vector<std::uint32_t> adj_;
  std::uint64_t mask_ = 0;
  const std::function<void(std::uint64_t, std::span<const std::uint32_t>)>& visit_;
};

void sequences_rec(std::size_t n, std::vector<int>& prefix, int max_value, int min_value,
                   std::vector<std::vector<int>>& out) {
  if (prefix.size() == n) {
    if (is_graphical(prefix)) out.push_back(prefix);
    return;
  }
  for (int d = min_value; d <= max_value; ++d) {
    prefix.push_back(d);
    sequences_rec(n, prefix, d, min_value, out);
    prefix.pop_back();
  }
}

}  // namespace

std::uint64_t edge_mask(const SimpleGraph& g) {
  const std::size_t n = g.num_vertices();
  check_cap(n, 11);
  std::uint64_t mask = 0;
  for (const Edge& e : g.edges()) {
    const Edge s = e.normalized();
    mask |= std::uint64_t{1} << pair_index(n, s.u, s.v);
  }
  return mask;
}

SimpleGraph graph_from_mask(std::size_t n, std::uint64_t mask) {
  check_cap(n, 11);
  SimpleGraph g(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (mask >> pair_index(n, u, v) & 1) g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
  }
  return g;
}

void for_each_realization(const DegreeSequence& seq,
                          const std::function<void(std::uint64_t, std::span<const std::uint32_t>)>& visit,
                          std::size_t cap) {
  check_cap(seq.size(), cap);
  Enumerator(seq, visit).run();
}

EnumerationResult enumerate_graphs(const DegreeSequence& seq, std::size_t cap) {
  EnumerationResult result;
  result.n = seq.size();
  for_each_realization(
      seq,
      [&](std::uint64_t mask, std::span<const std::uint32_t> adj) {
        const std::int64_t t = mask_triangles(adj);
        result.graphs.push_back(mask);
        result.triangle_distribution.add(t);
        if (result.graphs.size() == 1 || t > result.max_triangles) result.max_triangles = t;
      },
      cap);
  return result;
}

std::int64_t max_triangles(const DegreeSequence& seq, std::size_t cap) {
  std::int64_t best = -1;
  for_each_realization(
      seq, [&](std::uint64_t, std::span<const std::uint32_t> adj) { best = std::max(best, mask_triangles(adj)); },
      cap);
  if (best < 0) throw GraphicalityError("no simple graph realizes " + to_string(seq));
  return best;
}

std::vector<DegreeSequence> all_graphical_sequences(std::size_t n, SequenceConvention convention) {
  check_cap(n, kDefaultEnumerationCap);
  std::vector<std::vector<int>> raw;
  std::vector<int> prefix;
  const int max_degree = n == 0 ? 0 : static_cast<int>(n) - 1;
  const int min_degree = convention == SequenceConvention::kPositiveLengthN ? 1 : 0;
  if (n > 0) sequences_rec(n, prefix, max_degree, min_degree, raw);

  std::vector<DegreeSequence> out;
  out.reserve(raw.size());
  for (auto& r : raw) {
    std::erase(r, 0);
    out.emplace_back(std::move(r));
  }
  return out;
}

}  // namespace switchgraph
