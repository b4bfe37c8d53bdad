#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "switchgraph/construct.hpp"
#include "switchgraph/error.hpp"
#include "switchgraph/oracle.hpp"

using namespace switchgraph;

namespace {

std::vector<std::vector<int>> as_vectors(const std::vector<DegreeSequence>& seqs) {
  std::vector<std::vector<int>> out;
  for (const auto& s : seqs) out.emplace_back(s.begin(), s.end());
  return out;
}

}  // namespace

TEST_CASE("pair index and masks") {
  CHECK(pair_index(4, 0, 1) == 0);
  CHECK(pair_index(4, 0, 3) == 2);
  CHECK(pair_index(4, 1, 2) == 3);
  CHECK(pair_index(4, 2, 3) == 5);
  const auto g = havel_hakimi(DegreeSequence{3, 2, 2, 2, 1});
  CHECK(graph_from_mask(5, edge_mask(g)) == g);
}

TEST_CASE("enumerate examples") {
  const auto tri = enumerate_graphs(DegreeSequence{2, 2, 2});
  CHECK(tri.graphs.size() == 1);
  CHECK(tri.triangle_distribution == TriangleHistogram{{1, 1}});
  CHECK(tri.max_triangles == 1);

  const auto two_regular = enumerate_graphs(DegreeSequence{2, 2, 2, 2, 2, 2});
  CHECK(two_regular.graphs.size() == 70);
  CHECK(two_regular.triangle_distribution == TriangleHistogram{{0, 60}, {2, 10}});
  CHECK(two_regular.max_triangles == 2);

  CHECK(enumerate_graphs(DegreeSequence{4, 4, 3, 3, 3, 2, 1}).max_triangles == 5);
  CHECK(enumerate_graphs(DegreeSequence{3, 3, 1, 1}).graphs.empty());
  CHECK(enumerate_graphs(DegreeSequence{3, 3, 1, 1}).max_triangles == 0);
}

TEST_CASE("max triangles examples") {
  CHECK(max_triangles(DegreeSequence{2, 2, 2}) == 1);
  CHECK(max_triangles(DegreeSequence{3, 3, 3, 3}) == 4);
  CHECK(max_triangles(DegreeSequence{4, 4, 3, 3, 3, 2, 1}) == 5);
  CHECK_THROWS_AS((max_triangles(DegreeSequence{1, 1, 1})), GraphicalityError);
}

TEST_CASE("enumeration cap") {
  const DegreeSequence eleven(std::vector<int>(11, 2));
  CHECK_THROWS_AS(enumerate_graphs(eleven), CapExceededError);
  CHECK_THROWS_AS((enumerate_graphs(DegreeSequence{2, 2, 2}, 2)), CapExceededError);
  CHECK_NOTHROW(enumerate_graphs(DegreeSequence(std::vector<int>(9, 2))));
  CHECK_THROWS_AS(all_graphical_sequences(11), CapExceededError);
}

TEST_CASE("enumerated graphs are distinct exact realizations") {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& seq : all_graphical_sequences(n)) {
      const auto r = enumerate_graphs(seq);
      REQUIRE_FALSE(r.graphs.empty());
      std::set<std::uint64_t> unique(r.graphs.begin(), r.graphs.end());
      REQUIRE(unique.size() == r.graphs.size());
      REQUIRE(r.triangle_distribution.total() == r.graphs.size());
      std::int64_t best = 0;
      for (auto mask : r.graphs) {
        const auto g = graph_from_mask(n, mask);
        REQUIRE(realizes(g, seq));
        best = std::max(best, static_cast<std::int64_t>(count_triangles(g)));
      }
      REQUIRE(best == r.max_triangles);
    }
  }
}

TEST_CASE("enumeration counts match the full 2^C(n,2) scan") {
  for (const DegreeSequence& seq : {DegreeSequence{2, 2, 2, 1, 1}, DegreeSequence{3, 2, 2, 2, 1},
                                    DegreeSequence{1, 1, 1, 1, 1, 1}, DegreeSequence{3, 3, 2, 2, 1, 1}}) {
    const std::size_t n = seq.size();
    const unsigned pairs = static_cast<unsigned>(n * (n - 1) / 2);
    std::size_t brute = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      std::vector<int> deg(n, 0);
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
          if ((mask >> pair_index(n, u, v)) & 1) {
            ++deg[u];
            ++deg[v];
          }
      brute += std::equal(deg.begin(), deg.end(), seq.begin());
    }
    CHECK(enumerate_graphs(seq).graphs.size() == brute);
  }
}

TEST_CASE("enumeration is deterministic and accepts unsorted sequences") {
  const DegreeSequence seq{1, 3, 2, 2, 2};
  const auto a = enumerate_graphs(seq), b = enumerate_graphs(seq);
  CHECK(a.graphs == b.graphs);
  for (auto mask : a.graphs) CHECK(realizes(graph_from_mask(5, mask), seq));
}

TEST_CASE("visitor sees masks with matching adjacency") {
  std::size_t visits = 0;
  for_each_realization(DegreeSequence{2, 2, 2, 2}, [&](std::uint64_t mask, std::span<const std::uint32_t> adj) {
    ++visits;
    REQUIRE(adj.size() == 4);
    const auto g = graph_from_mask(4, mask);
    for (Vertex u = 0; u < 4; ++u)
      for (Vertex v = 0; v < 4; ++v) REQUIRE(g.has_edge(u, v) == (((adj[u] >> v) & 1) != 0));
  });
  CHECK(visits == 3);
}

TEST_CASE("graphical sequence listing") {
  CHECK(as_vectors(all_graphical_sequences(2)) == std::vector<std::vector<int>>{{1, 1}});
  CHECK(as_vectors(all_graphical_sequences(3)) == std::vector<std::vector<int>>{{2, 1, 1}, {2, 2, 2}});
  CHECK(all_graphical_sequences(1).empty());
  const auto up_to_3 = as_vectors(all_graphical_sequences(3, SequenceConvention::kUpToN));
  CHECK(up_to_3 == std::vector<std::vector<int>>{{}, {1, 1}, {2, 1, 1}, {2, 2, 2}});
}

TEST_CASE("graphical sequence counts") {
  // length n with zeros allowed: 1, 2, 4, 11, 31, 102, 342, 1213
  const std::vector<std::size_t> with_zeros{1, 2, 4, 11, 31, 102, 342, 1213};
  for (std::size_t n = 1; n <= 8; ++n) {
    CHECK(all_graphical_sequences(n, SequenceConvention::kUpToN).size() == with_zeros[n - 1]);
    // positive length-n sequences are the difference of consecutive terms
    const std::size_t positive = with_zeros[n - 1] - (n >= 2 ? with_zeros[n - 2] : 1);
    CHECK(all_graphical_sequences(n).size() == positive);
  }
  CHECK(all_graphical_sequences(8).size() == 871);
}

TEST_CASE("graphical sequences are sorted, unique and truly graphical") {
  for (auto conv : {SequenceConvention::kPositiveLengthN, SequenceConvention::kUpToN}) {
    const auto seqs = all_graphical_sequences(7, conv);
    auto padded = [](const DegreeSequence& s) {
      std::vector<int> v(s.begin(), s.end());
      v.resize(7, 0);
      return v;
    };
    for (std::size_t i = 0; i < seqs.size(); ++i) {
      REQUIRE(seqs[i].is_non_increasing());
      REQUIRE(is_graphical(seqs[i]));
      if (i > 0) REQUIRE(padded(seqs[i - 1]) < padded(seqs[i]));
    }
  }
}

TEST_CASE("Havel-Hakimi never exceeds the maximum") {
  for (std::size_t n = 2; n <= 7; ++n) {
    std::size_t matching = 0, total = 0;
    for (const auto& seq : all_graphical_sequences(n)) {
      const auto best = max_triangles(seq);
      for (auto tb : {TieBreak::kStableById, TieBreak::kReverseById}) {
        const auto hh = static_cast<std::int64_t>(count_triangles(havel_hakimi(seq, tb)));
        REQUIRE(hh <= best);
        if (tb == TieBreak::kStableById) matching += hh == best;
      }
      ++total;
    }
    INFO("n=" << n << " matching " << matching << "/" << total);
    CHECK(2 * matching > total);
  }
}
