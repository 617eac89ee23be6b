#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "divlat/bruteforce.hpp"
#include "divlat/matching.hpp"
#include "support/corpus.hpp"

using namespace divlat;
using namespace divlat::matching;
namespace dt = divlat::testing;

namespace {

PreferenceProfile parse(const std::string& text) {
  std::istringstream in(text);
  return parse_profile(in);
}

// 1-indexed partner of every a.
std::vector<std::size_t> pairs(const PreferenceProfile& p, const SolutionVector& x) {
  auto out = partners(p, x);
  for (auto& b : out) ++b;
  return out;
}

ElementSet all_of(std::size_t m) {
  ElementSet s(m);
  std::iota(s.begin(), s.end(), 0);
  return s;
}

}  // namespace

TEST(Profile, Parse) {
  PreferenceProfile p = parse("# two\n2\n1 2\n2 1 # row\n2 1\n1 2\n");
  EXPECT_EQ(p.size(), 2u);
  EXPECT_EQ(p.a_prefs(1), (std::vector<Agent>{1, 0}));
  EXPECT_EQ(p.b_rank(0, 1), 0u);
  EXPECT_THROW(parse("2\n1 2\n2 1\n2 1\n"), InputError);
  EXPECT_THROW(parse("2\n1 1\n2 1\n2 1\n1 2\n"), InputError);
  EXPECT_THROW(parse("2\n1 3\n2 1\n2 1\n1 2\n"), InputError);
  EXPECT_THROW(parse("2\n1 x\n2 1\n2 1\n1 2\n"), InputError);
  EXPECT_THROW(parse(""), InputError);
  EXPECT_THROW(parse("0\n"), InputError);
}

TEST(GaleShapley, Examples) {
  PreferenceProfile one = dt::profile({{1}}, {{1}});
  EXPECT_EQ(pairs(one, gale_shapley(one, Side::kA)), (std::vector<std::size_t>{1}));
  PreferenceProfile p = dt::two_matchings();
  EXPECT_EQ(pairs(p, gale_shapley(p, Side::kA)), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(pairs(p, gale_shapley(p, Side::kB)), (std::vector<std::size_t>{2, 1}));
  EXPECT_TRUE(is_stable(p, gale_shapley(p, Side::kA)));
  EXPECT_TRUE(is_stable(p, gale_shapley(p, Side::kB)));
}

TEST(Stability, Predicate) {
  PreferenceProfile p = dt::unique_matching();
  EXPECT_TRUE(is_stable(p, SolutionVector({0, 0, 0})));
  EXPECT_FALSE(is_stable(p, SolutionVector({1, 1, 1})));
  EXPECT_FALSE(is_stable(p, SolutionVector({0, 2, 0})));  // not perfect
}

TEST(MatchingChains, Layout) {
  PreferenceProfile p = dt::two_matchings();
  ChainDecomposition d = chain_decomposition(p);
  // Chain 1: (1,1) then (1,2); chain 2: (2,2) then (2,1). Element a*n + j.
  EXPECT_EQ(d.chains(), (std::vector<std::vector<ElementId>>{{0, 1}, {2, 3}}));
  EXPECT_EQ(p.a_prefs(1)[d.slot(2).rank], 1u);
  EXPECT_EQ(chain_decomposition(dt::profile({{1}}, {{1}})).ground_size(), 1u);
  EXPECT_EQ(chain_decomposition(dt::latin4()).ground_size(), 16u);
}

TEST(JoinMeet, Examples) {
  PreferenceProfile p = dt::two_matchings();
  auto lo = gale_shapley(p, Side::kA), hi = gale_shapley(p, Side::kB);
  EXPECT_EQ(join_meet_matchings(p, lo, hi), std::make_pair(hi, lo));
  EXPECT_EQ(join_meet_matchings(p, lo, lo), std::make_pair(lo, lo));

  PreferenceProfile q = dt::latin4();
  auto all = bruteforce::enumerate_stable_matchings(q).solutions;
  std::size_t incomparable = 0;
  for (const auto& x : all) {
    for (const auto& y : all) {
      if (precedes(x, y) || precedes(y, x)) continue;
      ++incomparable;
      auto [j, m] = join_meet_matchings(q, x, y);
      EXPECT_TRUE(is_stable(q, j));
      EXPECT_TRUE(is_stable(q, m));
    }
  }
  EXPECT_GT(incomparable, 0u);
}

TEST(RotationPoset, TwoMatchings) {
  PreferenceProfile p = dt::two_matchings();
  RotationPoset rp = build_rotation_poset(p);
  EXPECT_EQ(rp.rotations.size(), 1u);
  EXPECT_EQ(enumerate_ideals(rp.precedence).size(), 2u);
}

TEST(RotationPoset, UniqueMatching) {
  PreferenceProfile p = dt::unique_matching();
  RotationPoset rp = build_rotation_poset(p);
  EXPECT_EQ(rp.rotations.size(), 0u);
  EXPECT_EQ(enumerate_ideals(rp.precedence).size(), 1u);
}

TEST(RotationPoset, LatinSquares) {
  for (const PreferenceProfile& p : {dt::latin4(), dt::latin4_cyclic()}) {
    RotationPoset rp = build_rotation_poset(p);
    EXPECT_EQ(enumerate_ideals(rp.precedence).size(), bruteforce::enumerate_stable_matchings(p).solutions.size());
  }
  EXPECT_EQ(bruteforce::enumerate_stable_matchings(dt::latin4()).solutions.size(), 10u);
  EXPECT_EQ(bruteforce::enumerate_stable_matchings(dt::latin4_cyclic()).solutions.size(), 4u);
}

TEST(DecodeMatching, Ends) {
  for (const PreferenceProfile& p : {dt::two_matchings(), dt::latin4(), dt::unique_matching()}) {
    RotationPoset rp = build_rotation_poset(p);
    EXPECT_EQ(decode_matching(p, rp, Ideal()), gale_shapley(p, Side::kA));
    EXPECT_EQ(decode_matching(p, rp, Ideal(all_of(rp.rotations.size()))), gale_shapley(p, Side::kB));
  }
}

TEST(DecodeMatching, OrderIndependent) {
  PreferenceProfile p = dt::latin4();
  RotationPoset rp = build_rotation_poset(p);
  for (const Ideal& i : enumerate_ideals(rp.precedence)) {
    // Apply the rotations in a second linear extension: largest ready id first.
    std::vector<Agent> partner = partners(p, rp.base_matching);
    ElementSet left = i.members;
    while (!left.empty()) {
      for (auto it = left.rbegin(); it != left.rend(); ++it) {
        bool ready = true;
        for (ElementId q : left) ready = ready && !(q != *it && rp.precedence.leq(q, *it));
        if (!ready) continue;
        matching::detail::eliminate(partner, rp.rotations[*it]);
        left.erase(std::next(it).base());
        break;
      }
    }
    EXPECT_EQ(from_partners(p, partner), decode_matching(p, rp, i));
  }
}

TEST(DecodeMatching, RandomProfilesMatchBruteForce) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 150; ++trial) {
    PreferenceProfile p = dt::random_profile(rng, dt::uniform(rng, 1, 6));
    RotationPoset rp = build_rotation_poset(p);
    std::vector<SolutionVector> decoded;
    for (const Ideal& i : enumerate_ideals(rp.precedence)) {
      decoded.push_back(decode_matching(p, rp, i));
      EXPECT_EQ(decoded.back(), decode_ideal(rp.lattice, i));
    }
    auto bf = bruteforce::enumerate_stable_matchings(p).solutions;
    EXPECT_EQ(dt::sorted(decoded), bf);
    for (const auto& x : bf) {
      for (const auto& y : bf) {
        EXPECT_TRUE(std::binary_search(bf.begin(), bf.end(), join(x, y)));
        EXPECT_TRUE(std::binary_search(bf.begin(), bf.end(), meet(x, y)));
      }
    }
  }
}

TEST(DiverseMatchings, Examples) {
  EXPECT_EQ(diverse_stable_matchings(dt::two_matchings(), 2, Measure::sum(), SolverChoice::kAuto).diversity, 4);
  EXPECT_EQ(diverse_stable_matchings(dt::latin4(), 1, Measure::sum(), SolverChoice::kAuto).diversity, 0);
  for (std::size_t k = 1; k <= 3; ++k) {
    EXPECT_EQ(diverse_stable_matchings(dt::unique_matching(), k, Measure::sum(), SolverChoice::kAuto).diversity, 0);
  }
}

TEST(MatchingOracles, UniqueMatching) {
  PreferenceProfile p = dt::unique_matching();
  auto o = matching_oracles(p);
  EXPECT_FALSE(o.o_next_disjoint(o.o_min()).has_value());
}

TEST(MatchingOracles, TwoMatchings) {
  PreferenceProfile p = dt::two_matchings();
  auto o = matching_oracles(p);
  EXPECT_EQ(pairs(p, o.o_min()), (std::vector<std::size_t>{1, 2}));
  auto next = o.o_next_disjoint(o.o_min());
  ASSERT_TRUE(next.has_value());
  EXPECT_EQ(pairs(p, *next), (std::vector<std::size_t>{2, 1}));
  EXPECT_FALSE(o.o_next_disjoint(*next).has_value());
}

TEST(MatchingOracles, AgreeWithReferenceOracle) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    PreferenceProfile p = trial == 0 ? dt::latin4() : dt::random_profile(rng, dt::uniform(rng, 2, 6));
    auto o = matching_oracles(p);
    auto all = bruteforce::enumerate_stable_matchings(p).solutions;
    auto d = chain_decomposition(p);
    for (const auto& x : all) EXPECT_EQ(o.o_next_disjoint(x), reference_next_disjoint(d, all, x));
  }
}

TEST(MatchingOracles, DisjointSuccessorsFormASublattice) {
  PreferenceProfile p = dt::latin4();
  auto all = bruteforce::enumerate_stable_matchings(p).solutions;
  for (const auto& x : all) {
    std::vector<SolutionVector> gamma;
    for (const auto& y : all) {
      if (precedes(x, y) && disjoint(x, y)) gamma.push_back(y);
    }
    std::sort(gamma.begin(), gamma.end());
    for (const auto& y : gamma) {
      for (const auto& z : gamma) {
        EXPECT_TRUE(std::binary_search(gamma.begin(), gamma.end(), join(y, z)));
        EXPECT_TRUE(std::binary_search(gamma.begin(), gamma.end(), meet(y, z)));
      }
    }
  }
}
