// Copyright 2026 The Semantica Emulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "semantica/expansion.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "semantica/rng.h"

namespace semantica {
namespace {

Workload Synth(std::size_t n, std::uint64_t seed) {
  SynthParams sp;
  sp.n_users = n;
  sp.n_clusters = 5;
  sp.docs_per_user = 15;
  sp.test_size = 5;
  sp.dim = 16;
  sp.seed = seed;
  return SynthesizeWorkload(sp).workload;
}

TEST(MakeViewTest, RanksByCosineWithTieBreak) {
  const Workload w =
      testing::PointWorkload({{1, 0}, {0, 1}, {2, 0}, {1, 0.5}, {4, 0}});
  const CosineIndex cosine = BuildUserCosineIndex(w);
  const PeerView v = MakeView(0, {3, 1, 4, 2}, cosine, 3);
  EXPECT_EQ(v.known_users, (std::vector<UserIndex>{1, 2, 3, 4}));
  EXPECT_EQ(v.closest_users, (std::vector<UserIndex>{2, 4, 3}));
  ASSERT_EQ(v.closest_similarity.size(), 3u);
  EXPECT_NEAR(v.closest_similarity[2], 2 / std::sqrt(5.0), 1e-12);
}

// a knows b; b knows a and c; c knows b. With one closest slot, a and c
// each learn the other through b and b learns nothing.
TEST(ExpansionRoundTest, ThreeUserHandTrace) {
  const Workload w = testing::PointWorkload({{1, 0}, {0, 1}, {1, 0.1}});
  const CosineIndex cosine = BuildUserCosineIndex(w);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    PeerViews views = {MakeView(0, {1}, cosine, 1),
                       MakeView(1, {0, 2}, cosine, 1),
                       MakeView(2, {1}, cosine, 1)};
    EXPECT_EQ(views[1].closest_users, std::vector<UserIndex>{2});
    const RoundResult r = ExpansionRound(views, cosine, 1, seed, 1);
    EXPECT_EQ(r.messages, 3u);
    EXPECT_EQ(r.accepted, 2u);
    EXPECT_EQ(views[0].known_users, (std::vector<UserIndex>{1, 2}));
    EXPECT_EQ(views[0].closest_users, std::vector<UserIndex>{2});
    EXPECT_EQ(views[2].known_users, (std::vector<UserIndex>{0, 1}));
    EXPECT_EQ(views[2].closest_users, std::vector<UserIndex>{0});
    EXPECT_EQ(views[1].known_users, (std::vector<UserIndex>{0, 2}));
    const RoundResult again = ExpansionRound(views, cosine, 1, seed, 2);
    EXPECT_EQ(again.accepted, 0u);
  }
}

TEST(ExpansionRoundTest, WorseIntroductionIsRejectedWhenFull) {
  // a's only closest peer b offers c, which is farther from a than b.
  const Workload w = testing::PointWorkload({{1, 0}, {1, 0.1}, {0, 1}});
  const CosineIndex cosine = BuildUserCosineIndex(w);
  PeerViews views = {MakeView(0, {1}, cosine, 1), MakeView(1, {2}, cosine, 1),
                     MakeView(2, {1}, cosine, 1)};
  ExpansionRound(views, cosine, 1, 0, 1);
  EXPECT_EQ(views[0].known_users, std::vector<UserIndex>{1});
}

TEST(ExpansionTest, KnownSetsOnlyGrowAndListsOnlyImprove) {
  const Workload w = Synth(300, 4);
  const Tree tree = BuildTree(w, {20, 0.01, 4});
  ExpansionParams params{10, 10, 1, 4};
  PeerViews views = InitViews(tree, w, params);
  const CosineIndex cosine = BuildUserCosineIndex(w);
  for (int round = 1; round <= 10; ++round) {
    const PeerViews before = views;
    ExpansionRound(views, cosine, params.n_cu, params.seed, round);
    for (std::size_t u = 0; u < views.size(); ++u) {
      ASSERT_TRUE(std::includes(views[u].known_users.begin(),
                                views[u].known_users.end(),
                                before[u].known_users.begin(),
                                before[u].known_users.end()));
      ASSERT_LE(views[u].known_users.size(), before[u].known_users.size() + 1);
      ASSERT_TRUE(std::is_sorted(views[u].closest_similarity.rbegin(),
                                 views[u].closest_similarity.rend()));
      if (before[u].closest_users.size() == params.n_cu) {
        ASSERT_GE(views[u].closest_similarity.back(),
                  before[u].closest_similarity.back());
      }
    }
  }
}

TEST(ExpansionTest, InitViewsAtZeroDelta) {
  const Workload w = Synth(200, 5);
  const Tree tree = BuildTree(w, {20, 0.0, 5});
  const PeerViews views = InitViews(tree, w, {30, 10, 0, 5});
  ASSERT_EQ(views.size(), w.size());
  for (UserIndex u = 0; u < views.size(); ++u) {
    EXPECT_EQ(views[u].known_users.size(), 30u);
    EXPECT_FALSE(std::binary_search(views[u].known_users.begin(),
                                    views[u].known_users.end(), u));
    EXPECT_EQ(views[u].closest_users.size(), 10u);
  }
}

TEST(ExpansionTest, SingleLeafStagnatesAtTheOptimum) {
  const Workload w = Synth(40, 6);
  const Tree tree = BuildTree(w, {50, 0.0, 6});
  ExpansionParams params{50, 50, 5, 6};
  PeerViews views = InitViews(tree, w, params);
  const GroundTruth truth = ComputeGroundTruth(w);
  const auto trace = RunExpansion(views, w, params, &truth);
  ASSERT_EQ(trace.size(), 6u);
  for (const auto& row : trace) {
    EXPECT_DOUBLE_EQ(row.mean_recall, 39.0);
    EXPECT_EQ(row.accepted_introductions, 0u);
  }
}

TEST(ExpansionTest, RecallNeverExceedsTheTruthSize) {
  const Workload w = Synth(150, 7);
  const Tree tree = BuildTree(w, {15, 0.02, 7});
  ExpansionParams params{20, 50, 8, 7};
  PeerViews views = InitViews(tree, w, params);
  const GroundTruth truth = ComputeGroundTruth(w);
  for (const auto& row : RunExpansion(views, w, params, &truth)) {
    EXPECT_GE(row.mean_recall, 0.0);
    EXPECT_LE(row.mean_recall, 50.0);
    EXPECT_LE(row.messages, w.size());
  }
}

TEST(ExpansionTest, RunIsDeterministicAndTraceHasRowZero) {
  const Workload w = Synth(120, 8);
  const Tree tree = BuildTree(w, {15, 0.01, 8});
  ExpansionParams params{15, 20, 4, 8};
  PeerViews a = InitViews(tree, w, params);
  PeerViews b = a;
  const auto ta = RunExpansion(a, w, params);
  const auto tb = RunExpansion(b, w, params);
  EXPECT_EQ(a, b);
  ASSERT_EQ(ta.size(), 5u);
  EXPECT_EQ(ta[0].round, 0);
  EXPECT_EQ(ta[0].accepted_introductions, 0u);
  EXPECT_TRUE(std::isnan(ta[0].mean_recall));
  std::ostringstream out;
  WriteRoundMetricsCsv(out, ta);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
            "round,mean_recall,mean_known_users,accepted_introductions");
}

TEST(RandomViewsTest, SizesAndDeterminism) {
  const Workload w = Synth(80, 9);
  std::vector<std::size_t> sizes(w.size());
  for (std::size_t u = 0; u < sizes.size(); ++u) sizes[u] = 1 + u % 30;
  const PeerViews a = RandomViews(w, sizes, 10, 3);
  EXPECT_EQ(a, RandomViews(w, sizes, 10, 3));
  for (UserIndex u = 0; u < a.size(); ++u) {
    EXPECT_EQ(a[u].known_users.size(), sizes[u]);
    EXPECT_FALSE(std::binary_search(a[u].known_users.begin(),
                                    a[u].known_users.end(), u));
    EXPECT_EQ(a[u].closest_users.size(), std::min<std::size_t>(10, sizes[u]));
  }
}

TEST(ViewsFileTest, SaveLoadRoundTrip) {
  const Workload w = Synth(60, 10);
  const Tree tree = BuildTree(w, {10, 0.01, 10});
  const PeerViews views = InitViews(tree, w, {10, 5, 0, 10});
  const auto path = testing::ScratchDir("views") / "views.json";
  SaveViews(views, w, path);
  EXPECT_EQ(LoadViews(w, path), views);
}

}  // namespace
}  // namespace semantica
