#include <gtest/gtest.h>

#include <random>

#include "divlat/poset.hpp"
#include "support/corpus.hpp"

using namespace divlat;

namespace {

// x2 = 0, x3 = 1, x5 = 2; x3 below x5.
Poset grid() { return Poset(3, {{1, 2}}); }

}  // namespace

TEST(Poset, ClosureAndHasse) {
  Poset p(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  EXPECT_TRUE(p.leq(0, 3));
  EXPECT_FALSE(p.leq(3, 0));
  EXPECT_TRUE(p.leq(2, 2));
  EXPECT_FALSE(p.less(2, 2));
  // (0, 2) is implied and dropped from the reduction.
  std::vector<Poset::Edge> want{{0, 1}, {1, 2}, {2, 3}};
  EXPECT_EQ(p.hasse_edges(), want);
}

TEST(Poset, RejectsCyclesAndBadIds) {
  EXPECT_THROW(Poset(2, {{0, 1}, {1, 0}}), InputError);
  EXPECT_THROW(Poset(2, {{0, 2}}), InputError);
  EXPECT_THROW(is_ideal(grid(), ElementSet{7}), InputError);
  EXPECT_THROW(down_closure(grid(), ElementSet{3}), InputError);
}

TEST(Poset, IsIdealGrid) {
  Poset p = grid();
  EXPECT_TRUE(is_ideal(p, ElementSet{1, 2}));
  EXPECT_TRUE(is_ideal(p, ElementSet{}));
  EXPECT_FALSE(is_ideal(p, ElementSet{2}));
}

TEST(Poset, DownClosureGrid) {
  Poset p = grid();
  EXPECT_EQ(down_closure(p, {2}).members, (ElementSet{1, 2}));
  EXPECT_EQ(down_closure(p, {0, 2}).members, (ElementSet{0, 1, 2}));
  for (const Ideal& i : enumerate_ideals(p)) EXPECT_EQ(down_closure(p, i.members), i);
}

TEST(Poset, EnumerateIdealsGrid) {
  auto ideals = enumerate_ideals(grid());
  std::sort(ideals.begin(), ideals.end());
  std::vector<Ideal> want{Ideal(),     Ideal({0}),       Ideal({0, 1}),
                          Ideal({0, 1, 2}), Ideal({1}), Ideal({1, 2})};
  EXPECT_EQ(ideals, want);
}

TEST(Poset, EnumerateIdealsCounts) {
  EXPECT_EQ(enumerate_ideals(Poset::antichain(5)).size(), 32u);
  EXPECT_EQ(enumerate_ideals(Poset::chain(4)).size(), 5u);
  // Disjoint chains of lengths 2, 3, 1: 3 * 4 * 2.
  Poset chains(6, {{0, 1}, {2, 3}, {3, 4}});
  EXPECT_EQ(enumerate_ideals(chains).size(), 24u);
}

TEST(Poset, IdealCapIsAHardError) {
  EXPECT_THROW(enumerate_ideals(Poset::antichain(10), 100), ResourceError);
  EXPECT_EQ(count_ideals(Poset::antichain(10), 100), 101u);
  EXPECT_EQ(count_ideals(Poset::antichain(3), 100), 8u);
}

TEST(Poset, InducedSubposet) {
  Poset c = Poset::chain(3);
  EXPECT_EQ(induced_subposet(c, {0, 2}), Poset::chain(2));
  EXPECT_EQ(induced_subposet(grid(), {0, 2}), Poset::antichain(2));
  EXPECT_EQ(induced_subposet(grid(), {0, 1, 2}), grid());
}

TEST(Poset, LinearExtensionRespectsOrder) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Poset p = divlat::testing::random_poset(rng, 9, 0.3);
    auto order = p.linear_extension();
    ASSERT_EQ(order.size(), p.size());
    std::vector<std::size_t> pos(p.size());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    for (auto [a, b] : p.hasse_edges()) EXPECT_LT(pos[a], pos[b]);
  }
}

TEST(Poset, DownClosureLatticeProperties) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    Poset p = divlat::testing::random_poset(rng, 8, 0.25);
    auto s = detail::random_subset(p.size(), rng);
    auto t = detail::random_subset(p.size(), rng);
    Ideal ds = down_closure(p, s), dt = down_closure(p, t);
    EXPECT_TRUE(is_ideal(p, ds));
    EXPECT_EQ(down_closure(p, detail::set_union(s, t)).members, detail::set_union(ds.members, dt.members));
    auto meet = down_closure(p, detail::set_intersection(s, t)).members;
    auto both = detail::set_intersection(ds.members, dt.members);
    EXPECT_TRUE(std::includes(both.begin(), both.end(), meet.begin(), meet.end()));
  }
}
