#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <array>

using namespace srm;

namespace {

std::size_t total_length(Instance const &inst) {
  std::size_t len = 0;
  for (AgentId x = 0; x < inst.size(); ++x)
    len += inst.prefs(x).length();
  return len;
}

bool symmetric(Instance const &inst) {
  for (AgentId x = 0; x < inst.size(); ++x)
    for (AgentId y = 0; y < inst.size(); ++y)
      if (inst.accepts(x, y) != inst.accepts(y, x))
        return false;
  return true;
}

} // namespace

TEST(GenerateSri, CompleteGraph) {
  auto inst = generate_sri({4, 1.0, 17});
  for (AgentId x = 0; x < 4; ++x) {
    EXPECT_EQ(inst.prefs(x).length(), 3u);
    EXPECT_TRUE(inst.prefs(x).strict());
  }
}

TEST(GenerateSri, EmptyGraph) {
  auto inst = generate_sri({10, 0.0, 17});
  ASSERT_EQ(inst.size(), 10u);
  EXPECT_EQ(total_length(inst), 0u);
}

TEST(GenerateSri, MeanListLength) {
  double sum = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto inst = generate_sri({100, 0.25, seed});
    EXPECT_TRUE(symmetric(inst));
    sum += static_cast<double>(total_length(inst)) / 100.0;
  }
  EXPECT_NEAR(sum / 50.0, 24.75, 3.0);
}

TEST(GenerateSri, DeterministicAndSeedSensitive) {
  auto a = generate_sri({30, 0.4, 99});
  auto b = generate_sri({30, 0.4, 99});
  auto c = generate_sri({30, 0.4, 100});
  EXPECT_EQ(serialize_instance(a), serialize_instance(b));
  EXPECT_NE(serialize_instance(a), serialize_instance(c));
}

TEST(GenerateSri, Metadata) {
  auto inst = generate_sri({5, 0.25, 8});
  EXPECT_EQ(*inst.metadata().seed, 8u);
  EXPECT_DOUBLE_EQ(*inst.metadata().p, 0.25);
  EXPECT_DOUBLE_EQ(*inst.metadata().completeness, 25.0);
  EXPECT_EQ(parse_instance(serialize_instance(inst)).metadata(), inst.metadata());
}

TEST(GenerateSri, PermutationsLookUniform) {
  // first choice of agent 0 on K_4 over many seeds: each of 3 agents ~1/3
  std::array<int, 4> first{};
  for (std::uint64_t seed = 0; seed < 3000; ++seed)
    ++first[generate_sri({4, 1.0, seed}).prefs(0).groups.front().front()];
  EXPECT_EQ(first[0], 0);
  for (int k = 1; k < 4; ++k)
    EXPECT_NEAR(first[k], 1000, 120);
}

TEST(GenConfig, Validation) {
  EXPECT_THROW(generate_sri({0, 0.5, 1}), std::invalid_argument);
  EXPECT_THROW(generate_sri({5, 1.5, 1}), std::invalid_argument);
  EXPECT_THROW(generate_sri({5, -0.1, 1}), std::invalid_argument);
  EXPECT_THROW((GenConfig{5, 0.5, 1, -1}.validate()), std::invalid_argument);
  EXPECT_EQ((GenConfig{20, 0.25, 1, 25}.tie_count()), 5u);
  EXPECT_EQ((GenConfig{10, 0.25, 1, 25}.tie_count()), 3u); // 2.5 rounds away from zero
  EXPECT_EQ((GenConfig{7, 0.25, 1, 0}.tie_count()), 0u);
}

TEST(AddTies, CompleteInstanceWarns) {
  auto inst = generate_sri({6, 1.0, 3});
  auto r = add_ties(inst, 4, 11);
  EXPECT_TRUE(r.warning);
  EXPECT_EQ(r.applied, 0u);
  EXPECT_EQ(r.instance, inst);
}

TEST(AddTies, ZeroIsIdentity) {
  auto inst = srm::test::sri8();
  auto r = add_ties(inst, 0, 11);
  EXPECT_FALSE(r.warning);
  EXPECT_EQ(r.instance, inst);
}

TEST(AddTies, SingleOperationOnSri8) {
  auto inst = srm::test::sri8();
  auto r = add_ties(inst, 1, 5);
  ASSERT_EQ(r.applied, 1u);
  int grown = 0;
  for (AgentId x = 0; x < inst.size(); ++x) {
    auto before = inst.prefs(x).length();
    auto after = r.instance.prefs(x).length();
    if (after == before)
      continue;
    ++grown;
    EXPECT_EQ(after, before + 1);
    EXPECT_EQ(r.instance.prefs(x).groups.size(), inst.prefs(x).groups.size());
    // the newcomer shares a group with an existing, mutually acceptable entry
    bool tied_with_old = false;
    for (auto const &g : r.instance.prefs(x).groups)
      if (g.size() == 2)
        tied_with_old = inst.mutually_acceptable(x, g[0]) && !inst.accepts(x, g[1]) && !inst.accepts(g[1], x);
    EXPECT_TRUE(tied_with_old);
  }
  EXPECT_EQ(grown, 1);
}

TEST(AddTies, SymmetricOptionMakesPairMutual) {
  auto inst = srm::test::sri8();
  auto r = add_ties(inst, 1, 5, true);
  ASSERT_EQ(r.applied, 1u);
  EXPECT_EQ(total_length(r.instance), total_length(inst) + 2);
  std::size_t mutual_before = 0, mutual_after = 0;
  for (AgentId x = 0; x < inst.size(); ++x) {
    mutual_before += inst.mutual_partners(x).size();
    mutual_after += r.instance.mutual_partners(x).size();
  }
  EXPECT_EQ(mutual_after, mutual_before + 2);
}

class TieProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(TieProperties, OnlyGrowsLists) {
  auto inst = generate_sri({15, 0.3, GetParam()});
  auto r = add_ties(inst, 10, GetParam() * 31 + 7);
  EXPECT_EQ(r.applied + r.skipped, 10u);
  EXPECT_EQ(total_length(r.instance), total_length(inst) + r.applied);
  for (AgentId x = 0; x < inst.size(); ++x)
    for (auto const &g : inst.prefs(x).groups)
      for (AgentId y : g) {
        ASSERT_TRUE(r.instance.accepts(x, y));
        // relative order of original entries is preserved
        for (auto const &g2 : inst.prefs(x).groups)
          for (AgentId z : g2) {
            if (y != z)
              EXPECT_EQ(inst.prefers(x, y, z), r.instance.prefers(x, y, z));
          }
      }
  // reproducible
  EXPECT_EQ(add_ties(inst, 10, GetParam() * 31 + 7).instance, r.instance);
  EXPECT_EQ(*r.instance.metadata().ties, r.applied);
}

INSTANTIATE_TEST_SUITE_P(Seeds, TieProperties, ::testing::Range<std::uint64_t>(1, 16));
