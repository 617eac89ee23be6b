#include <gtest/gtest.h>

#include "divlat/bruteforce.hpp"
#include "support/corpus.hpp"

using namespace divlat;
using namespace divlat::bruteforce;
namespace dt = divlat::testing;

TEST(EnumerateMinCuts, Examples) {
  EXPECT_EQ(enumerate_min_cuts(mincut::analyze(dt::diamond())).solutions.size(), 4u);
  EXPECT_EQ(enumerate_min_cuts(mincut::analyze(dt::network(2, {{1, 2}}, 1, 2))).solutions.size(), 1u);
  EXPECT_EQ(enumerate_min_cuts(mincut::analyze(dt::path3())).solutions.size(), 3u);
  auto arcs = enumerate_min_cut_arcs(dt::diamond());
  EXPECT_EQ(arcs, (std::vector<std::vector<mincut::ArcId>>{{0, 1}, {0, 3}, {1, 2}, {2, 3}}));
}

TEST(EnumerateMinCuts, Guard) {
  mincut::FlowNetwork big;
  big.vertex_count = kMaxCutVertices + 1;
  big.sink = 1;
  big.arcs.emplace_back(0, 1);
  EXPECT_THROW(enumerate_min_cut_arcs(big), ResourceError);
}

TEST(EnumerateStableMatchings, Examples) {
  EXPECT_EQ(enumerate_stable_matchings(dt::profile({{1}}, {{1}})).solutions.size(), 1u);
  EXPECT_EQ(enumerate_stable_matchings(dt::two_matchings()).solutions.size(), 2u);
  std::mt19937_64 rng(47);
  auto p = dt::random_profile(rng, 4);
  EXPECT_EQ(enumerate_stable_matchings(p).solutions.size(),
            enumerate_ideals(matching::build_rotation_poset(p).precedence).size());
  EXPECT_THROW(enumerate_stable_matchings(dt::random_profile(rng, 7)), ResourceError);
}

TEST(BestDiverseMultiset, Examples) {
  auto inst = mincut::analyze(dt::diamond());
  auto all = enumerate_min_cuts(inst).solutions;
  EXPECT_EQ(best_diverse_multiset(inst.chains, all, 1, Measure::sum()).value, 0);
  EXPECT_EQ(best_diverse_multiset(inst.chains, all, 2, Measure::sum()).value, 4);
  EXPECT_EQ(best_diverse_multiset(inst.chains, all, 2, Measure::cov()).value, 4);
  EXPECT_EQ(best_diverse_multiset(inst.chains, all, 3, Measure::sum()).value, 8);
  EXPECT_EQ(multiset_count(4, 3, 1000), 20u);
  std::vector<SolutionVector> many(200, all[0]);
  EXPECT_THROW(best_diverse_multiset(inst.chains, many, 4, Measure::sum()), ResourceError);
}

TEST(MaxDisjointBruteforce, Examples) {
  auto one = enumerate_min_cuts(mincut::analyze(dt::network(2, {{1, 2}}, 1, 2))).solutions;
  EXPECT_EQ(max_disjoint_bruteforce(one), 1u);
  EXPECT_EQ(max_disjoint_bruteforce(enumerate_min_cuts(mincut::analyze(dt::path3())).solutions), 3u);
  EXPECT_EQ(max_disjoint_bruteforce(enumerate_min_cuts(mincut::analyze(dt::diamond())).solutions), 2u);
  EXPECT_THROW(max_disjoint_bruteforce(std::vector<SolutionVector>(21, one[0])), ResourceError);
}
