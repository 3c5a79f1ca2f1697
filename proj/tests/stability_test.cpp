#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace srm;
using srm::test::by_names;

TEST(Blocks, Sri4Examples) {
  auto s4 = srm::test::sri4();
  auto id = [&](char const *n) { return s4.id(n); };
  auto ac_bd = by_names(s4, {{"a", "c"}, {"b", "d"}});
  EXPECT_TRUE(blocks(s4, ac_bd, id("a"), id("b")));

  auto ab_cd = by_names(s4, {{"a", "b"}, {"c", "d"}});
  EXPECT_TRUE(blocks(s4, ab_cd, id("b"), id("c")));
  EXPECT_FALSE(blocks(s4, ab_cd, id("a"), id("d")));
  EXPECT_FALSE(blocks(s4, ab_cd, id("a"), id("b")));
  EXPECT_FALSE(blocks(s4, ab_cd, id("a"), id("a")));
}

TEST(Blocks, NeedsMutualAcceptability) {
  auto inst = parse_instance("a: b\nb:\n");
  Matching singles(2);
  EXPECT_FALSE(blocks(inst, singles, 0, 1));
  EXPECT_TRUE(is_stable(inst, singles));
}

TEST(Blocks, TiesDoNotBlock) {
  // a is indifferent between b and c; matched to c, a does not prefer b
  auto inst = parse_instance("a: (b c)\nb: a\nc: a\n");
  auto m = by_names(inst, {{"a", "c"}});
  EXPECT_FALSE(blocks(inst, m, inst.id("a"), inst.id("b")));
  EXPECT_TRUE(is_stable(inst, m));
  // the same instance with a strict list is unstable for this matching
  auto strict = parse_instance("a: b c\nb: a\nc: a\n");
  EXPECT_FALSE(is_stable(strict, by_names(strict, {{"a", "c"}})));
}

TEST(BlockingPairs, Sri4) {
  auto s4 = srm::test::sri4();
  auto bps = blocking_pairs(s4, by_names(s4, {{"a", "b"}, {"c", "d"}}));
  ASSERT_EQ(bps.size(), 1u);
  EXPECT_EQ(bps[0], (BlockingPair{s4.id("b"), s4.id("c")}));
  EXPECT_EQ(blocking_pairs(s4, Matching(s4.size())).size(), 6u);
  EXPECT_EQ(count_blocking_pairs(s4, Matching(s4.size())), 6u);
}

TEST(IsStable, FigureMatchings) {
  auto s7 = srm::test::sri7();
  EXPECT_TRUE(blocking_pairs(s7, srm::test::sri7_stable(s7)).empty());
  auto s8 = srm::test::sri8();
  EXPECT_TRUE(is_stable(s8, srm::test::sri8_m1(s8)));
  EXPECT_TRUE(is_stable(s8, srm::test::sri8_m2(s8)));
  auto s4 = srm::test::sri4();
  for (auto pairs : std::vector<std::vector<std::pair<std::string, std::string>>>{
           {{"a", "b"}, {"c", "d"}}, {{"a", "c"}, {"b", "d"}}, {{"a", "d"}, {"b", "c"}}})
    EXPECT_FALSE(is_stable(s4, by_names(s4, pairs)));
}

TEST(BlockingPair, Canonical) {
  EXPECT_EQ(BlockingPair::canonical(5, 2), (BlockingPair{2, 5}));
  EXPECT_EQ(BlockingPair::canonical(2, 5), (BlockingPair{2, 5}));
}

namespace {

/// Random valid matching: shuffle agents, greedily pair mutually acceptable
/// ones, each pairing kept with probability 3/4.
Matching random_matching(Instance const &inst, std::mt19937_64 &g) {
  std::vector<AgentId> order(inst.size());
  for (AgentId x = 0; x < inst.size(); ++x)
    order[x] = x;
  rng::shuffle(order, g);
  Matching m(inst.size());
  for (AgentId x : order) {
    if (!m.single(x))
      continue;
    for (AgentId y : inst.mutual_partners(x))
      if (m.single(y) && rng::below(g, 4) != 0) {
        m.set(x, y);
        m.set(y, x);
        break;
      }
  }
  return m;
}

} // namespace

class StabilityProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(StabilityProperties, SymmetricAndRuleDecompositionAgree) {
  std::mt19937_64 g(GetParam());
  for (int trial = 0; trial < 20; ++trial) {
    auto inst = srm::test::random_instance(8, 0.6, trial % 2 ? 50 : 0, GetParam() * 100 + trial);
    auto m = random_matching(inst, g);
    ASSERT_TRUE(validate_matching(inst, m));
    for (AgentId x = 0; x < inst.size(); ++x)
      for (AgentId y = 0; y < inst.size(); ++y)
        EXPECT_EQ(blocks(inst, m, x, y), blocks(inst, m, y, x));
    EXPECT_EQ(blocking_pairs(inst, m), blocking_pairs_by_rules(inst, m));
  }
}

TEST_P(StabilityProperties, FirstChoiceHolderNeverBlocks) {
  std::mt19937_64 g(GetParam() + 1000);
  auto inst = srm::test::random_instance(9, 0.7, 0, GetParam());
  for (int trial = 0; trial < 20; ++trial) {
    auto m = random_matching(inst, g);
    for (AgentId x = 0; x < inst.size(); ++x) {
      if (m.single(x) || inst.ranks().raw(x, m[x]) != 1)
        continue;
      for (AgentId y = 0; y < inst.size(); ++y)
        EXPECT_FALSE(blocks(inst, m, x, y));
    }
  }
}

// Tying two entries can only remove strict preferences, so it never creates
// a blocking pair; pairs that do not involve the changed preference keep
// their outcome.
TEST_P(StabilityProperties, AddingTiesOnlyRemovesBlockingPairs) {
  std::mt19937_64 g(GetParam() + 2000);
  auto inst = srm::test::random_instance(9, 0.6, 0, GetParam());
  auto prefs = inst.all_prefs();
  for (auto &list : prefs)
    if (list.groups.size() >= 2) {
      auto last = list.groups.back();
      list.groups.pop_back();
      list.groups.back().insert(list.groups.back().end(), last.begin(), last.end());
    }
  Instance tied(inst.names(), prefs);
  for (int trial = 0; trial < 20; ++trial) {
    auto m = random_matching(inst, g);
    auto before = blocking_pairs(inst, m);
    auto after = blocking_pairs(tied, m);
    EXPECT_TRUE(std::includes(before.begin(), before.end(), after.begin(), after.end()));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, StabilityProperties, ::testing::Range<std::uint64_t>(1, 11));
