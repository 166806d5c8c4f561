#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "gar/errors.hpp"
#include "gar/rules.hpp"
#include "synthetic.hpp"

namespace gar {
namespace {

using testing::oracle_rules;
using testing::random_case;
using testing::random_threshold;

Thresholds random_thresholds(std::mt19937_64& rng) {
  return {random_threshold(rng), random_threshold(rng), random_threshold(rng), random_threshold(rng)};
}

// Two users, three movies; user u1 rates everything, u2 rates only m3.
Mmer tiny() {
  auto users = InformationSystemBuilder()
                   .nominal("Gender")
                   .row("u1", {"M"})
                   .row("u2", {"F"})
                   .build();
  auto movies = InformationSystemBuilder()
                    .scaled("Action")
                    .row("m1", {"1"})
                    .row("m2", {"1"})
                    .row("m3", {"0"})
                    .build();
  return Mmer(users, movies, BinaryRelation(2, 3, {{0, 0}, {0, 1}, {0, 2}, {1, 2}}));
}

TEST(SourceConfidence, SingleObjectRelatedToAll) {
  auto es = tiny();
  Bitset lh = Bitset::full(2);
  Bitset rh(3);
  rh.set(2);
  for (auto tc : {Ratio(1, 10), Ratio(1, 2), Ratio(1, 1)})
    EXPECT_EQ(source_confidence(es, lh, rh, tc), Ratio(1, 1));
}

TEST(SourceConfidence, CountsObjectsAtThreshold) {
  auto es = tiny();
  Bitset lh = Bitset::full(2);
  Bitset rh(3);
  rh.set(0);
  rh.set(1);
  // u1 hits 2/2, u2 hits 0/2
  EXPECT_EQ(source_confidence(es, lh, rh, Ratio(1, 2)), Ratio(1, 2));
  EXPECT_THROW(source_confidence(es, Bitset(2), rh, Ratio(1, 2)), UndefinedMeasureError);
  EXPECT_THROW(source_confidence(es, lh, Bitset(3), Ratio(1, 2)), UndefinedMeasureError);
}

TEST(EvaluateRule, FullRelationGivesOne) {
  auto users = InformationSystemBuilder().nominal("k").row("a", {"x"}).row("b", {"x"}).build();
  auto items = InformationSystemBuilder().nominal("k").row("p", {"y"}).row("q", {"y"}).build();
  Mmer es(users, items, BinaryRelation(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  auto m = evaluate_rule(es, GranuleDescriptor::parse(users, "k=x"),
                         GranuleDescriptor::parse(items, "k=y"), Ratio(1, 1));
  EXPECT_EQ(m.scov, Ratio(1, 1));
  EXPECT_EQ(m.tcov, Ratio(1, 1));
  EXPECT_EQ(m.sconf, Ratio(1, 1));
  EXPECT_EQ(m.tc_used, Ratio(1, 1));
}

TEST(EvaluateRule, EmptyExtensionIsUndefined) {
  auto es = tiny();
  auto ghost = InformationSystemBuilder().nominal("Gender", {"F", "M", "X"}).row("u1", {"M"}).row("u2", {"F"}).build();
  Mmer es2(ghost, es.target(), es.relation());
  EXPECT_THROW(evaluate_rule(es2, GranuleDescriptor::parse(ghost, "Gender=X"),
                             GranuleDescriptor::parse(es.target(), "Action=1"), Ratio(1, 2)),
               UndefinedMeasureError);
}

TEST(EvaluateRule, MatchesPerObjectScan) {
  std::mt19937_64 rng(41);
  for (int iter = 0; iter < 100; ++iter) {
    auto c = random_case(rng);
    auto es = c.to_mmer();
    auto sd = testing::all_descriptors(c.source);
    auto td = testing::all_descriptors(c.target);
    auto s = sd[std::uniform_int_distribution<std::size_t>(0, sd.size() - 1)(rng)];
    auto t = td[std::uniform_int_distribution<std::size_t>(0, td.size() - 1)(rng)];
    auto lh = testing::scan_block(c.source, s);
    auto rh = testing::scan_block(c.target, t);
    Ratio tc = random_threshold(rng);
    if (lh.empty() || rh.empty()) {
      EXPECT_THROW(evaluate_rule(es, testing::from_raw(s), testing::from_raw(t), tc),
                   UndefinedMeasureError);
      continue;
    }
    auto m = evaluate_rule(es, testing::from_raw(s), testing::from_raw(t), tc);
    EXPECT_EQ(m.scov, Ratio(lh.size(), c.source.size()));
    EXPECT_EQ(m.tcov, Ratio(rh.size(), c.target.size()));
    EXPECT_EQ(m.sconf, Ratio(testing::oracle_hits(c, lh, rh, tc), lh.size()));
  }
}

TEST(Mine, ImpossibleSourceCoverageGivesNothing) {
  std::mt19937_64 rng(43);
  auto c = random_case(rng);
  // Make sure no single-term block is universal on the source side.
  c.source.scaled = {true};
  c.source.domain_size = {2};
  c.source.rows.clear();
  for (int x = 0; x < 4; ++x) c.source.rows.push_back({static_cast<std::uint32_t>(x % 2)});
  c.related.assign(4, std::vector<bool>(c.target.size(), true));
  Thresholds t{Ratio(1, 1), Ratio(1, 10), Ratio(1, 10), Ratio(1, 10)};
  EXPECT_TRUE(mine(c.to_mmer(), t, MiningMode::all_granules).empty());
}

TEST(Mine, RejectsInvalidThresholds) {
  Thresholds t{Ratio(0, 1), Ratio(1, 10), Ratio(1, 10), Ratio(1, 10)};
  EXPECT_THROW(mine(tiny(), t, MiningMode::all_granules), ThresholdError);
}

TEST(Mine, EightByEightOracle) {
  std::mt19937_64 rng(47);
  int checked = 0;
  while (checked < 20) {
    auto c = random_case(rng, 8, 3);
    if (c.source.size() != 8 || c.target.size() != 8) continue;
    ++checked;
    auto t = random_thresholds(rng);
    for (auto mode : {MiningMode::positive_only, MiningMode::all_granules})
      ASSERT_EQ(testing::as_raw(mine(c.to_mmer(), t, mode)), oracle_rules(c, t, mode));
  }
}

TEST(Mine, SoundAndSorted) {
  std::mt19937_64 rng(53);
  for (int iter = 0; iter < 100; ++iter) {
    auto c = random_case(rng);
    auto es = c.to_mmer();
    auto t = random_thresholds(rng);
    auto rules = mine(es, t, MiningMode::all_granules);
    for (std::size_t i = 0; i < rules.size(); ++i) {
      const auto& r = rules[i];
      auto m = evaluate_rule(es, r.source, r.target, t.tc);
      ASSERT_EQ(m, r.measures);
      ASSERT_GE(m.scov, t.ms);
      ASSERT_GE(m.tcov, t.mt);
      ASSERT_GE(m.sconf, t.sc);
      ASSERT_EQ(r.lh_size, block_of(es.source(), r.source).count());
      ASSERT_EQ(r.rh_size, block_of(es.target(), r.target).count());
      if (i > 0) {
        const auto& p = rules[i - 1];
        ASSERT_TRUE(p.source < r.source || (p.source == r.source && p.target < r.target));
      }
    }
  }
}

TEST(Mine, PruningTransparencyAndThreads) {
  std::mt19937_64 rng(59);
  for (int iter = 0; iter < 100; ++iter) {
    auto c = random_case(rng);
    auto es = c.to_mmer();
    auto t = random_thresholds(rng);
    auto base = mine(es, t, MiningMode::all_granules);
    MineOptions inline_ratio;
    inline_ratio.precompute_lower_approximation = false;
    ASSERT_EQ(mine(es, t, MiningMode::all_granules, inline_ratio), base);
    MineOptions threaded;
    threaded.threads = 4;
    ASSERT_EQ(mine(es, t, MiningMode::all_granules, threaded), base);
  }
}

TEST(Mine, TiesAreIncluded) {
  auto es = tiny();
  // target {Action=1} = {m1, m2}; u1 hits 2/2, u2 hits 0/2, so sconf is exactly 1/2
  auto users = InformationSystemBuilder().nominal("all").row("u1", {"y"}).row("u2", {"y"}).build();
  Mmer es2(users, es.target(), es.relation());
  Thresholds t{Ratio(1, 1), Ratio(2, 3), Ratio(1, 2), Ratio(1, 1)};
  auto rules = mine(es2, t, MiningMode::positive_only);
  ASSERT_EQ(rules.size(), 1u);
  EXPECT_EQ(rules[0].measures.sconf, Ratio(1, 2));
}

}  // namespace
}  // namespace gar
