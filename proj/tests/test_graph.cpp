#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "switchgraph/construct.hpp"
#include "switchgraph/error.hpp"
#include "switchgraph/graph.hpp"

using namespace switchgraph;

namespace {

SimpleGraph complete(std::size_t n) {
  SimpleGraph g(n);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) g.add_edge(a, b);
  return g;
}

SimpleGraph cycle(std::size_t n) {
  SimpleGraph g(n);
  for (Vertex a = 0; a < n; ++a) g.add_edge(a, static_cast<Vertex>((a + 1) % n));
  return g;
}

SimpleGraph random_graph(std::size_t n, double p, Rng& rng) {
  SimpleGraph g(n);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (uniform01(rng) < p) g.add_edge(a, b);
  return g;
}

std::uint64_t naive_triangles(const SimpleGraph& g) {
  std::uint64_t t = 0;
  const auto n = static_cast<Vertex>(g.num_vertices());
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      for (Vertex c = b + 1; c < n; ++c)
        if (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) ++t;
  return t;
}

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Picks a random legal switch by rejection; returns false if none found.
bool random_legal_switch(const SimpleGraph& g, Rng& rng, Switch& out) {
  for (int tries = 0; tries < 1000; ++tries) {
    Edge e1 = g.sample_edge(rng), e2 = g.sample_edge(rng);
    if (coin_flip(rng)) e1 = e1.reversed();
    if (coin_flip(rng)) e2 = e2.reversed();
    const Vertex u1 = e1.u, v1 = e1.v, u2 = e2.u, v2 = e2.v;
    if (u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2) continue;
    if (g.has_edge(u1, v2) || g.has_edge(u2, v1)) continue;
    out = Switch{{e1, e2}, {Edge{u1, v2}, Edge{u2, v1}}};
    return true;
  }
  return false;
}

}  // namespace

TEST_CASE("edge semantics") {
  CHECK(Edge{1, 2} == Edge{2, 1});
  CHECK_FALSE(Edge{1, 2} == Edge{1, 3});
  CHECK(Edge{5, 2}.normalized().u == 2);
  CHECK(Edge{3, 3}.is_loop());
  CHECK(edge_key(7, 3) == edge_key(3, 7));
  CHECK(edge_key(1, 2) != edge_key(1, 3));
}

TEST_CASE("count_triangles examples") {
  CHECK(count_triangles(complete(4)) == 4);
  CHECK(count_triangles(cycle(6)) == 0);
  CHECK(count_triangles(complete(5)) == 10);
  CHECK(count_triangles(SimpleGraph(0)) == 0);
  CHECK(count_triangles(SimpleGraph(3)) == 0);
}

TEST_CASE("count_triangles matches naive reference") {
  Rng rng(11);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t n = 5 + uniform_below(rng, 56);
    const double p = 0.05 + 0.5 * uniform01(rng);
    const auto g = random_graph(n, p, rng);
    REQUIRE(count_triangles(g) == naive_triangles(g));
  }
}

TEST_CASE("add and remove edges keep structures consistent") {
  SimpleGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  CHECK(g.num_edges() == 3);
  CHECK(g.degree(1) == 2);
  CHECK(g.has_edge(1, 0));
  CHECK_FALSE(g.has_edge(0, 0));
  CHECK_THROWS_AS(g.add_edge(0, 0), ContractError);
  CHECK_THROWS_AS(g.add_edge(1, 0), ContractError);
  CHECK_THROWS_AS(g.add_edge(0, 9), ContractError);
  g.remove_edge(1, 0);
  CHECK(g.num_edges() == 2);
  CHECK_FALSE(g.has_edge(0, 1));
  CHECK_THROWS_AS(g.remove_edge(0, 1), ContractError);
  CHECK(g.audit());
  CHECK(g.slot_of(Edge{3, 2}) < 2);
  CHECK_THROWS_AS((g.slot_of(Edge{0, 3})), ContractError);
}

TEST_CASE("from_edges validates") {
  const std::vector<Edge> ok{{0, 1}, {1, 2}};
  CHECK(SimpleGraph::from_edges(3, ok).num_edges() == 2);
  const std::vector<Edge> loop{{1, 1}};
  CHECK_THROWS_AS(SimpleGraph::from_edges(3, loop), ContractError);
  const std::vector<Edge> dup{{0, 1}, {1, 0}};
  CHECK_THROWS_AS(SimpleGraph::from_edges(3, dup), ContractError);
  const std::vector<Edge> range{{0, 3}};
  CHECK_THROWS_AS(SimpleGraph::from_edges(3, range), ContractError);
}

TEST_CASE("sample_edge") {
  Rng rng(3);
  SimpleGraph empty(3);
  CHECK_THROWS_AS(empty.sample_edge(rng), ContractError);

  SimpleGraph one(2);
  one.add_edge(0, 1);
  for (int i = 0; i < 100; ++i) CHECK(one.sample_edge(rng) == Edge{0, 1});

  SimpleGraph path(4);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  path.add_edge(2, 3);
  const int draws = 300000;
  std::vector<int> hits(3, 0);
  for (int i = 0; i < draws; ++i) {
    const Edge e = path.sample_edge(rng);
    ++hits[std::min(e.u, e.v)];
  }
  const double p = 1.0 / 3.0;
  const double sigma = std::sqrt(draws * p * (1 - p));
  for (int h : hits) CHECK(std::abs(h - draws * p) <= 3 * sigma);

  path.remove_edge(1, 2);
  for (int i = 0; i < 10000; ++i) REQUIRE_FALSE(path.sample_edge(rng) == Edge{1, 2});
}

TEST_CASE("apply_switch on a path") {
  // a-b-c-d as 0-1-2-3; remove ab, cd; add ac, bd
  SimpleGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  const auto before = g.degrees();
  const Switch sw{{Edge{0, 1}, Edge{3, 2}}, {Edge{0, 2}, Edge{3, 1}}};
  CHECK(g.triangle_delta(sw) == 0);
  g.apply_switch(sw);
  CHECK(g.degrees() == before);
  const std::vector<Edge> expected{{0, 2}, {1, 2}, {1, 3}};
  CHECK(g.sorted_edges() == expected);
  CHECK(g.audit());
}

TEST_CASE("apply_switch rejects illegal switches") {
  SimpleGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  // added edge 2-1 already exists
  const Switch dup{{Edge{0, 1}, Edge{2, 3}}, {Edge{0, 3}, Edge{2, 1}}};
  CHECK_THROWS_AS(g.apply_switch(dup), ContractError);
  CHECK_THROWS_AS(g.triangle_delta(dup), ContractError);
  // removed edge absent
  const Switch missing{{Edge{0, 2}, Edge{1, 3}}, {Edge{0, 3}, Edge{1, 2}}};
  CHECK_THROWS_AS(g.apply_switch(missing), ContractError);
  // shared vertex
  const Switch shared{{Edge{0, 1}, Edge{1, 2}}, {Edge{0, 2}, Edge{1, 1}}};
  CHECK_THROWS_AS(g.apply_switch(shared), ContractError);
  // not degree preserving
  const Switch skew{{Edge{0, 1}, Edge{2, 3}}, {Edge{0, 2}, Edge{0, 3}}};
  CHECK_THROWS_AS(g.apply_switch(skew), ContractError);
  CHECK(g.audit());
  CHECK(g.num_edges() == 3);
}

TEST_CASE("switch then inverse restores the graph and negates delta") {
  Rng rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    auto g = random_graph(12 + uniform_below(rng, 20), 0.3, rng);
    Switch sw;
    if (g.num_edges() < 2 || !random_legal_switch(g, rng, sw)) continue;
    const auto original = g.sorted_edges();
    const auto degrees = g.degrees();
    const auto d = g.triangle_delta(sw);
    g.apply_switch(sw);
    REQUIRE(g.degrees() == degrees);
    REQUIRE(g.audit());
    REQUIRE(g.triangle_delta(sw.inverse()) == -d);
    g.apply_switch(sw.inverse());
    REQUIRE(g.sorted_edges() == original);
  }
}

TEST_CASE("triangle_delta matches full recount") {
  Rng rng(99);
  int checked = 0;
  while (checked < 20000) {
    auto g = random_graph(6 + uniform_below(rng, 60), 0.05 + 0.4 * uniform01(rng), rng);
    if (g.num_edges() < 2) continue;
    auto tri = static_cast<std::int64_t>(count_triangles(g));
    for (int k = 0; k < 50; ++k) {
      Switch sw;
      if (!random_legal_switch(g, rng, sw)) break;
      const auto d = g.triangle_delta(sw);
      g.apply_switch(sw);
      const auto after = static_cast<std::int64_t>(count_triangles(g));
      REQUIRE(after - tri == d);
      tri = after;
      ++checked;
    }
  }
}

TEST_CASE("large graphs use the sparse membership path") {
  Rng rng(21);
  const std::size_t n = SimpleGraph::kDenseVertexLimit + 100;
  SimpleGraph g(n);
  // a few dense clusters so switches can create and destroy triangles
  for (Vertex base = 0; base < 400; base += 20)
    for (Vertex a = base; a < base + 20; ++a)
      for (Vertex b = a + 1; b < base + 20; ++b)
        if (uniform01(rng) < 0.4) g.add_edge(a, b);
  for (int i = 0; i < 2000; ++i) {
    const auto a = static_cast<Vertex>(uniform_below(rng, n));
    const auto b = static_cast<Vertex>(uniform_below(rng, n));
    if (a != b && !g.has_edge(a, b)) g.add_edge(a, b);
  }
  REQUIRE(g.audit());
  auto tri = static_cast<std::int64_t>(count_triangles(g));
  for (int k = 0; k < 300; ++k) {
    Switch sw;
    REQUIRE(random_legal_switch(g, rng, sw));
    const auto d = g.triangle_delta(sw);
    g.apply_switch(sw);
    const auto after = static_cast<std::int64_t>(count_triangles(g));
    REQUIRE(after - tri == d);
    tri = after;
  }
  CHECK(g.audit());
  const Edge e = g.edge_at(0);
  g.remove_edge(e.u, e.v);
  CHECK_FALSE(g.has_edge(e.u, e.v));
  CHECK(g.audit());
}

TEST_CASE("triangle-free graph with no closing switches has zero delta") {
  // 8-cycle: switching two opposite edges yields two 4-cycles, no triangles
  auto g = cycle(8);
  const Switch sw{{Edge{0, 1}, Edge{4, 5}}, {Edge{0, 5}, Edge{4, 1}}};
  CHECK(g.triangle_delta(sw) == 0);
}

namespace {

std::int64_t min_legal_delta(const SimpleGraph& g) {
  std::int64_t best = 0;
  bool any = false;
  for (std::size_t a = 0; a < g.num_edges(); ++a) {
    for (std::size_t b = 0; b < g.num_edges(); ++b) {
      if (a == b) continue;
      for (int flip = 0; flip < 2; ++flip) {
        Edge e1 = g.edge_at(a), e2 = g.edge_at(b);
        if (flip) e2 = e2.reversed();
        const Vertex u1 = e1.u, v1 = e1.v, u2 = e2.u, v2 = e2.v;
        if (u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2) continue;
        if (g.has_edge(u1, v2) || g.has_edge(u2, v1)) continue;
        const auto d = g.triangle_delta(Switch{{e1, e2}, {Edge{u1, v2}, Edge{u2, v1}}});
        best = any ? std::min(best, d) : d;
        any = true;
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("legal switches on the seven-vertex Havel-Hakimi graphs") {
  const DegreeSequence seq{4, 4, 3, 3, 3, 2, 1};
  // higher-id-first ties give a 4-triangle graph that some switch thins out
  CHECK(min_legal_delta(havel_hakimi(seq, TieBreak::kReverseById)) <= -1);
  // the 3-triangle graph from lower-id-first ties admits no destroying switch
  CHECK(min_legal_delta(havel_hakimi(seq, TieBreak::kStableById)) == 0);
}

TEST_CASE("common neighbours") {
  const auto k4 = complete(4);
  CHECK(k4.common_neighbor_count(0, 1) == 2);
  CHECK(cycle(6).common_neighbor_count(0, 2) == 1);
  CHECK(cycle(6).common_neighbor_count(0, 3) == 0);
}

TEST_CASE("multigraph and erase") {
  MultiGraph loop(1);
  loop.add_edge(0, 0);
  CHECK(loop.degrees() == std::vector<int>{2});
  CHECK(loop.num_self_loops() == 1);
  CHECK_FALSE(loop.is_simple());
  const auto erased_loop = erase(loop);
  CHECK(erased_loop.num_vertices() == 1);
  CHECK(erased_loop.num_edges() == 0);

  MultiGraph dbl(2);
  dbl.add_edge(0, 1);
  dbl.add_edge(1, 0);
  CHECK(dbl.num_multi_edge_excess() == 1);
  const auto single = erase(dbl);
  CHECK(single.num_edges() == 1);
  CHECK(single.has_edge(0, 1));

  MultiGraph simple(4);
  simple.add_edge(0, 1);
  simple.add_edge(2, 3);
  simple.add_edge(1, 2);
  CHECK(simple.is_simple());
  const auto same = erase(simple);
  CHECK(same.degrees() == simple.degrees());
  CHECK(same.num_edges() == 3);

  CHECK_THROWS_AS(dbl.add_edge(0, 2), ContractError);
}

TEST_CASE("erase never increases degrees") {
  Rng rng(8);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + uniform_below(rng, 10);
    MultiGraph mg(n);
    const auto m = uniform_below(rng, 20);
    for (std::uint64_t i = 0; i < m; ++i) {
      mg.add_edge(static_cast<Vertex>(uniform_below(rng, n)), static_cast<Vertex>(uniform_below(rng, n)));
    }
    const auto g = erase(mg);
    const auto before = mg.degrees();
    const auto after = g.degrees();
    bool all_equal = true;
    for (std::size_t v = 0; v < n; ++v) {
      REQUIRE(after[v] <= before[v]);
      all_equal = all_equal && after[v] == before[v];
    }
    REQUIRE(all_equal == mg.is_simple());
  }
}

TEST_CASE("equality ignores edge order") {
  SimpleGraph a(3), b(3);
  a.add_edge(0, 1);
  a.add_edge(1, 2);
  b.add_edge(2, 1);
  b.add_edge(1, 0);
  CHECK(a == b);
  CHECK(sorted(a.degrees()) == sorted(b.degrees()));
}
