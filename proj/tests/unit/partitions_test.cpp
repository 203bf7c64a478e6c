#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "ier/errors.hpp"
#include "ier/partitions.hpp"

using namespace ier;

namespace {

// Bell numbers from the Bell triangle.
std::vector<long long> bell_numbers(int n) {
  std::vector<long long> bell{1};
  std::vector<long long> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<long long> next{row.back()};
    for (long long x : row) next.push_back(next.back() + x);
    bell.push_back(next.front());
    row = next;
  }
  return bell;
}

long long catalan(int n) {
  long long c = 1;
  for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

// Product x -> gamma(pi(x)) with each block read as an ascending cycle,
// returned as sorted cycles of 1-based points.
std::set<std::set<int>> gamma_pi_cycles(int k, const std::vector<std::vector<int>>& blocks) {
  std::vector<int> pi(k + 1);
  for (const auto& b : blocks)
    for (std::size_t i = 0; i < b.size(); ++i) pi[b[i]] = b[(i + 1) % b.size()];
  std::vector<bool> seen(k + 1, false);
  std::set<std::set<int>> cycles;
  for (int s = 1; s <= k; ++s) {
    if (seen[s]) continue;
    std::set<int> c;
    for (int x = s; !seen[x]; x = pi[x] % k + 1) {
      seen[x] = true;
      c.insert(x);
    }
    cycles.insert(c);
  }
  return cycles;
}

std::set<std::set<int>> as_sets(const Partition& p) {
  std::set<std::set<int>> out;
  for (const auto& b : p.blocks()) out.insert(std::set<int>(b.begin(), b.end()));
  return out;
}

// Walk 1 -> 2 -> ... -> k -> 1 on the vertices given by `vertex_of`, checked
// for being a tree directly: no loops, connected, distinct edges = vertices - 1.
bool walk_is_tree(const std::vector<int>& vertex_of) {
  const int k = static_cast<int>(vertex_of.size());
  std::set<std::pair<int, int>> edges;
  for (int t = 0; t < k; ++t) {
    const int a = vertex_of[t], b = vertex_of[(t + 1) % k];
    if (a == b) return false;
    edges.insert({std::min(a, b), std::max(a, b)});
  }
  const std::set<int> vertices(vertex_of.begin(), vertex_of.end());
  return edges.size() + 1 == vertices.size();
}

std::vector<int> gamma_pi_vertex_labels(const Partition& p) {
  const int k = p.ground_size();
  std::vector<int> label(k);
  int id = 0;
  for (const auto& c : gamma_pi_cycles(k, p.blocks())) {
    for (int x : c) label[x - 1] = id;
    ++id;
  }
  return label;
}

}  // namespace

TEST(Partitions, CountsMatchBellTriangle) {
  const auto bell = bell_numbers(10);
  for (int k = 1; k <= 10; ++k) EXPECT_EQ(enumerate_set_partitions(k).size(), static_cast<std::size_t>(bell[k])) << k;
}

TEST(Partitions, EnumerationIsDistinctAndCanonical) {
  const auto all = enumerate_set_partitions(7);
  std::set<std::vector<int>> seen;
  for (const auto& p : all) {
    const auto& l = p.labels();
    EXPECT_EQ(l.front(), 0);
    int top = 0;
    for (int x : l) {
      EXPECT_LE(x, top + 1);
      top = std::max(top, x);
    }
    EXPECT_TRUE(seen.insert(l).second);
  }
}

TEST(Partitions, ParseAndPrintRoundTrip) {
  const auto p = Partition::parse("{2,3,6,7|1,4,5,8}");
  EXPECT_EQ(p.to_string(), "{1,4,5,8|2,3,6,7}");
  EXPECT_EQ(Partition::parse(p.to_string()), p);
  EXPECT_EQ(p.block_sizes(), (std::vector<int>{4, 4}));
}

TEST(Partitions, RejectsMalformedInput) {
  EXPECT_THROW(Partition::parse("{1,2|2,3}"), DomainError);
  EXPECT_THROW(Partition::parse("{1,3}"), DomainError);
  EXPECT_THROW(Partition::parse("1,2"), DomainError);
  EXPECT_THROW(enumerate_set_partitions(13), Error);
  EXPECT_THROW(enumerate_set_partitions(0), Error);
}

TEST(Partitions, ComposeGammaMatchesPermutationProduct) {
  for (int k = 1; k <= 8; ++k)
    for (const auto& p : enumerate_set_partitions(k))
      ASSERT_EQ(as_sets(compose_gamma(p)), gamma_pi_cycles(k, p.blocks())) << p.to_string();
}

TEST(Partitions, ComposeGammaSmallExample) {
  EXPECT_EQ(compose_gamma(Partition::parse("{1,2|3,4}")).to_string(), "{1,3|2|4}");
}

TEST(Partitions, SpecialSymmetricIsExactlyTheTreeWalks) {
  for (int k = 1; k <= 10; ++k) {
    for_each_set_partition(k, [&](const Partition& p) {
      const bool tree_walk = walk_is_tree(gamma_pi_vertex_labels(p)) &&
                             compose_gamma(p).block_count() == p.block_count() + 1;
      ASSERT_EQ(is_special_symmetric(p), tree_walk) << p.to_string();
    });
  }
}

TEST(Partitions, SpecialSymmetricCounts) {
  const std::map<int, std::size_t> expected{{2, 1}, {4, 3}, {6, 12}, {8, 57}, {10, 303}};
  for (const auto& [k, n] : expected) EXPECT_EQ(enumerate_ss(k).size(), n) << k;
  for (int k = 1; k <= 11; k += 2) EXPECT_TRUE(enumerate_ss(k).empty()) << k;
}

TEST(Partitions, PairPartitionsInSsAreCatalan) {
  for (int h = 1; h <= 5; ++h) {
    const auto ss = enumerate_ss(2 * h);
    const auto pairs = std::count_if(ss.begin(), ss.end(), [&](const Partition& p) {
      return p.block_count() == static_cast<std::size_t>(h);
    });
    EXPECT_EQ(pairs, catalan(h)) << h;
    EXPECT_EQ(enumerate_nc2(2 * h).size(), static_cast<std::size_t>(catalan(h)));
  }
}

TEST(Partitions, NoncrossingPairsAreSpecialSymmetric) {
  for (int k = 2; k <= 10; k += 2)
    for (const auto& p : enumerate_nc2(k)) {
      EXPECT_TRUE(p.is_pair_partition() && p.is_noncrossing());
      EXPECT_TRUE(is_special_symmetric(p)) << p.to_string();
    }
}

TEST(Partitions, GraphOfSsPartitionIsRootedTreeWithWalkLength) {
  for (int k = 2; k <= 8; k += 2)
    for (const auto& p : enumerate_ss(k)) {
      const auto g = build_partition_graph(p);
      EXPECT_TRUE(is_tree(g)) << p.to_string();
      EXPECT_EQ(g.walk_length(), k);
      EXPECT_EQ(g.vertex_count(), compose_gamma(p).block_count());
      EXPECT_EQ(g.root, 0);
      EXPECT_NE(std::find(g.vertices[0].begin(), g.vertices[0].end(), 1), g.vertices[0].end());
      // every tree edge is walked an even number of times
      for (const auto& e : g.edges) EXPECT_EQ(e.multiplicity % 2, 0);
    }
}

TEST(Partitions, GraphEdgeMultiplicitiesSumToWalkLength) {
  std::mt19937 gen(7);
  const auto all = enumerate_set_partitions(9);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = build_partition_graph(all[pick(gen)]);
    EXPECT_EQ(g.walk_length(), 9);
  }
}

TEST(Partitions, IsTreeOnHandBuiltGraphs) {
  EXPECT_TRUE(is_tree(graph_from_edges(3, {{0, 1}, {1, 2}})));
  EXPECT_FALSE(is_tree(graph_from_edges(3, {{0, 1}, {1, 2}, {0, 2}})));
  EXPECT_FALSE(is_tree(graph_from_edges(2, {{0, 1}, {1, 1}})));
  EXPECT_FALSE(is_tree(graph_from_edges(4, {{0, 1}, {2, 3}})));
  EXPECT_TRUE(is_tree(graph_from_edges(1, {})));
}

TEST(Partitions, KrewerasEqualsGammaPiOnNoncrossingPairs) {
  for (int k = 2; k <= 12; k += 2)
    for (const auto& p : enumerate_nc2(k)) ASSERT_EQ(kreweras_complement(p), compose_gamma(p)) << p.to_string();
}

TEST(Partitions, KrewerasBlockCountIsHalfPlusOne) {
  for (int k = 2; k <= 10; k += 2)
    for (const auto& p : enumerate_nc2(k)) {
      const auto kp = kreweras_complement(p);
      EXPECT_EQ(kp.block_count(), static_cast<std::size_t>(k / 2 + 1));
      EXPECT_TRUE(kp.is_noncrossing());
    }
}

TEST(Partitions, KrewerasRejectsOtherInput) {
  EXPECT_THROW(kreweras_complement(Partition::parse("{1,3|2,4}")), DomainError);
  EXPECT_THROW(kreweras_complement(Partition::parse("{1,2,3,4}")), DomainError);
}
