#include "switchgraph/construct.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "switchgraph/error.hpp"

namespace switchgraph {

namespace {

using Clock = std::chrono::steady_clock;

// Multiset of unpaired half-edges, grouped by vertex. A Fenwick tree over the
// per-vertex counts gives O(log n) uniform half-edge sampling and updates.
class HalfEdgePool {
 public:
  explicit HalfEdgePool(std::span<const int> degrees)
      : remaining_(degrees.begin(), degrees.end()), tree_(degrees.size() + 1, 0) {
    for (std::size_t i = 0; i < remaining_.size(); ++i) {
      total_ += remaining_[i];
      for (std::size_t j = i + 1; j < tree_.size(); j += j & (~j + 1)) tree_[j] += remaining_[i];
    }
    top_bit_ = 1;
    while (top_bit_ * 2 <= remaining_.size()) top_bit_ *= 2;
  }

  std::size_t size() const { return remaining_.size(); }
  int remaining(Vertex v) const { return remaining_[v]; }
  std::int64_t total() const { return total_; }

  void take(Vertex v) {
    --remaining_[v];
    --total_;
    for (std::size_t j = v + 1; j < tree_.size(); j += j & (~j + 1)) --tree_[j];
  }

  // Vertex owning a uniformly chosen half-edge.
  Vertex sample(Rng& rng) const {
    std::int64_t r = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(total_)));
    std::size_t pos = 0;
    for (std::size_t step = top_bit_; step > 0; step >>= 1) {
      const std::size_t next = pos + step;
      if (next < tree_.size() && tree_[next] <= r) {
        pos = next;
        r -= tree_[next];
      }
    }
    return static_cast<Vertex>(pos);
  }

  // Uniform half-edge among vertices accepted by `allowed`, whose half-edges
  // sum to `allowed_total` (> 0). Linear scan.
  template <typename Allowed>
  Vertex sample_by_scan(Rng& rng, std::int64_t allowed_total, Allowed&& allowed) const {
    std::int64_t r = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(allowed_total)));
    Vertex last = 0;
    for (std::size_t w = 0; w < remaining_.size(); ++w) {
      if (remaining_[w] == 0 || !allowed(static_cast<Vertex>(w))) continue;
      last = static_cast<Vertex>(w);
      if (r < remaining_[w]) return last;
      r -= remaining_[w];
    }
    return last;
  }

 private:
  std::vector<int> remaining_;
  std::vector<std::int64_t> tree_;
  std::int64_t total_ = 0;
  std::size_t top_bit_ = 1;
};

// Vertices ordered by remaining half-edges (descending), lowest id first on ties.
class MaxRemainingQueue {
 public:
  explicit MaxRemainingQueue(const HalfEdgePool& pool) {
    for (std::size_t v = 0; v < pool.size(); ++v) {
      if (pool.remaining(static_cast<Vertex>(v)) > 0) set_.insert({-pool.remaining(static_cast<Vertex>(v)), static_cast<Vertex>(v)});
    }
  }
  Vertex top() const { return set_.begin()->second; }
  // Call before decrementing v's count in the pool.
  void decrement(Vertex v, int old_remaining) {
    set_.erase({-old_remaining, v});
    if (old_remaining > 1) set_.insert({-(old_remaining - 1), v});
  }

 private:
  std::set<std::pair<int, Vertex>> set_;
};

constexpr int kMaxConsecutiveRejections = 64;

void require_graphical(const DegreeSequence& seq) {
  if (!is_graphical(seq)) throw GraphicalityError("degree sequence is not graphical: " + to_string(seq));
}

}  // namespace

std::string_view to_string(TieBreak t) {
  return t == TieBreak::kStableById ? "stable" : "reverse";
}

TieBreak parse_tie_break(std::string_view s) {
  if (s == "stable" || s == "stable-by-id") return TieBreak::kStableById;
  if (s == "reverse" || s == "reverse-by-id") return TieBreak::kReverseById;
  throw ParameterError("unknown tie-break policy: " + std::string(s));
}

SimpleGraph havel_hakimi(const DegreeSequence& seq, std::span<const std::size_t> priority) {
  const std::size_t n = seq.size();
  if (priority.size() != n) throw ParameterError("priority must have one entry per vertex");
  std::vector<Vertex> by_priority(n, 0);
  std::vector<char> seen(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (priority[v] >= n || seen[priority[v]]) throw ParameterError("priority must be a permutation of 0..n-1");
    seen[priority[v]] = 1;
    by_priority[priority[v]] = static_cast<Vertex>(v);
  }
  require_graphical(seq);

  // (-residual, priority): begin() is the next vertex to process.
  std::set<std::pair<int, std::size_t>> queue;
  std::vector<int> residual(seq.begin(), seq.end());
  for (std::size_t v = 0; v < n; ++v) queue.insert({-residual[v], priority[v]});

  SimpleGraph g(n);
  std::vector<std::pair<int, std::size_t>> partners;
  while (!queue.empty()) {
    const auto [neg_d, pv] = *queue.begin();
    queue.erase(queue.begin());
    const int d = -neg_d;
    if (d == 0) break;
    if (static_cast<std::size_t>(d) > queue.size()) {
      throw GraphicalityError("Havel-Hakimi ran out of partners: " + to_string(seq));
    }
    const Vertex v = by_priority[pv];
    partners.clear();
    auto it = queue.begin();
    for (int k = 0; k < d; ++k, ++it) partners.push_back(*it);
    queue.erase(queue.begin(), it);
    for (auto [neg_r, pw] : partners) {
      const Vertex w = by_priority[pw];
      if (neg_r == 0) throw GraphicalityError("Havel-Hakimi ran out of partners: " + to_string(seq));
      g.add_edge(v, w);
      --residual[w];
      queue.insert({-residual[w], pw});
    }
  }
  return g;
}

SimpleGraph havel_hakimi(const DegreeSequence& seq, TieBreak tie_break) {
  const std::size_t n = seq.size();
  std::vector<std::size_t> priority(n);
  for (std::size_t v = 0; v < n; ++v) priority[v] = tie_break == TieBreak::kStableById ? v : n - 1 - v;
  return havel_hakimi(seq, priority);
}

ConstructionResult ccmd(const DegreeSequence& seq, Rng& rng) {
  const auto start = Clock::now();
  require_graphical(seq);
  const std::size_t n = seq.size();
  HalfEdgePool pool(seq.degrees());
  MaxRemainingQueue queue(pool);
  std::vector<char> forbidden(n, 0);
  std::vector<Vertex> forbidden_list;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(seq.total() / 2));

  ConstructionResult result;
  result.attempts_used = 1;
  bool failed = false;
  while (pool.total() > 0 && !failed) {
    for (Vertex x : forbidden_list) forbidden[x] = 0;
    forbidden_list.clear();
    const Vertex v = queue.top();
    forbidden[v] = 1;
    forbidden_list.push_back(v);
    std::int64_t forbidden_weight = pool.remaining(v);

    while (pool.remaining(v) > 0 && pool.total() - forbidden_weight > 0) {
      const std::int64_t allowed_total = pool.total() - forbidden_weight;
      Vertex w = 0;
      bool found = false;
      if (forbidden_list.size() < n / 2) {
        for (int tries = 0; tries < kMaxConsecutiveRejections; ++tries) {
          w = pool.sample(rng);
          if (!forbidden[w]) {
            found = true;
            break;
          }
        }
      }
      if (!found) w = pool.sample_by_scan(rng, allowed_total, [&](Vertex x) { return !forbidden[x]; });

      edges.push_back(Edge{v, w});
      queue.decrement(v, pool.remaining(v));
      pool.take(v);
      queue.decrement(w, pool.remaining(w));
      pool.take(w);
      forbidden[w] = 1;
      forbidden_list.push_back(w);
      forbidden_weight += pool.remaining(w) - 1;
    }
    if (pool.remaining(v) > 0) failed = true;
  }
  if (!failed) result.graph = SimpleGraph::from_edges(n, edges);
  result.elapsed = Clock::now() - start;
  return result;
}

ConstructionResult ccmdu(const DegreeSequence& seq, Rng& rng) {
  const auto start = Clock::now();
  require_graphical(seq);
  const std::size_t n = seq.size();
  HalfEdgePool pool(seq.degrees());
  MaxRemainingQueue queue(pool);
  // The forbidden set of v is {v} plus its current neighbours; inserting both
  // directions keeps the sets symmetric.
  std::vector<absl::flat_hash_set<Vertex>> neighbors(n);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(seq.total() / 2));

  ConstructionResult result;
  result.attempts_used = 1;
  bool failed = false;
  while (pool.total() > 0) {
    const Vertex v = queue.top();
    const auto& nv = neighbors[v];
    auto allowed = [&](Vertex x) { return x != v && !nv.contains(x); };

    Vertex w = 0;
    bool found = false;
    if (nv.size() + 1 < n / 2) {
      for (int tries = 0; tries < kMaxConsecutiveRejections; ++tries) {
        w = pool.sample(rng);
        if (allowed(w)) {
          found = true;
          break;
        }
      }
    }
    if (!found) {
      std::int64_t allowed_total = pool.total() - pool.remaining(v);
      for (Vertex x : nv) allowed_total -= pool.remaining(x);
      if (allowed_total <= 0) {
        failed = true;
        break;
      }
      w = pool.sample_by_scan(rng, allowed_total, allowed);
    }

    edges.push_back(Edge{v, w});
    neighbors[v].insert(w);
    neighbors[w].insert(v);
    queue.decrement(v, pool.remaining(v));
    pool.take(v);
    queue.decrement(w, pool.remaining(w));
    pool.take(w);
  }
  if (!failed) result.graph = SimpleGraph::from_edges(n, edges);
  result.elapsed = Clock::now() - start;
  return result;
}

ConstructionResult construct_with_retries(ConstructionMethod method, const DegreeSequence& seq, Rng& rng,
                                          std::size_t max_attempts, TieBreak tie_break) {
  const auto start = Clock::now();
  ConstructionResult result;
  if (method == ConstructionMethod::kHavelHakimi) {
    result.graph = havel_hakimi(seq, tie_break);
    result.attempts_used = 1;
  } else {
    for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
      ConstructionResult r = method == ConstructionMethod::kCcmd ? ccmd(seq, rng) : ccmdu(seq, rng);
      result.attempts_used = attempt;
      if (r.success()) {
        result.graph = std::move(r.graph);
        break;
      }
    }
  }
  result.elapsed = Clock::now() - start;
  return result;
}

MultiGraph configuration_model(const DegreeSequence& seq, Rng& rng) {
  if (!seq.even_total()) throw ParityError("configuration model needs an even degree sum: " + to_string(seq));
  std::vector<Vertex> stubs;
  stubs.reserve(static_cast<std::size_t>(seq.total()));
  for (std::size_t v = 0; v < seq.size(); ++v) stubs.insert(stubs.end(), seq[v], static_cast<Vertex>(v));
  std::shuffle(stubs.begin(), stubs.end(), rng);
  MultiGraph mg(seq.size());
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) mg.add_edge(stubs[i], stubs[i + 1]);
  return mg;
}

SimpleGraph erased_configuration_model(const DegreeSequence& seq, Rng& rng) {
  return erase(configuration_model(seq, rng));
}

bool realizes(const SimpleGraph& g, const DegreeSequence& seq) {
  if (g.num_vertices() != seq.size()) return false;
  for (std::size_t v = 0; v < seq.size(); ++v) {
    if (g.degree(static_cast<Vertex>(v)) != seq[v]) return false;
  }
  return true;
}

}  // namespace switchgraph
