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

#include "semantica/query.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "semantica/errors.h"
#include "semantica/rng.h"

namespace semantica {
namespace {

Workload Synth(std::size_t n, std::uint64_t seed) {
  SynthParams sp;
  sp.n_users = n;
  sp.n_clusters = 4;
  sp.docs_per_user = 12;
  sp.test_size = 4;
  sp.dim = 8;
  sp.seed = seed;
  return SynthesizeWorkload(sp).workload;
}

OverlayGraph RandomDigraph(std::size_t n, std::size_t out, Rng& rng) {
  OverlayGraph g;
  g.out_edges.resize(n);
  for (UserIndex u = 0; u < n; ++u) {
    std::set<UserIndex> targets;
    const std::size_t k = rng.UniformIndex(out + 1);
    while (targets.size() < k) {
      const auto v = static_cast<UserIndex>(rng.UniformIndex(n));
      if (v != u) targets.insert(v);
    }
    g.out_edges[u].assign(targets.begin(), targets.end());
  }
  return g;
}

void ExpectSound(const QueryOutcome& o, const QueryTask& task,
                 const Workload& w, const OverlayGraph* graph) {
  ASSERT_FALSE(o.path.empty());
  ASSERT_EQ(o.path.front(), task.origin);
  ASSERT_EQ(o.path.size(), o.messages_sent + 1);
  ASSERT_EQ(o.hops_used, o.messages_sent);
  ASSERT_LE(o.messages_sent, task.max_hops);
  ASSERT_EQ(o.found, w.Holds(o.terminal(), task.target_doc));
  // Only the terminal user may hold the document.
  for (std::size_t i = 0; i + 1 < o.path.size(); ++i) {
    ASSERT_FALSE(w.Holds(o.path[i], task.target_doc));
  }
  if (graph != nullptr) {
    for (std::size_t i = 0; i + 1 < o.path.size(); ++i) {
      const auto& e = graph->out_edges[o.path[i]];
      ASSERT_TRUE(std::binary_search(e.begin(), e.end(), o.path[i + 1]));
    }
  }
}

TEST(ChainHopTest, HandTraceOnALine) {
  // Query points along +x. u000 -> {u001, u002}: u002 scores higher. u002 ->
  // {u000, u003}: u000 is visited, so u003, which holds the target.
  const Workload w = testing::MakeWorkload(
      {{{0, 1}, {1, 3}, {1, 1}, {1, 2}}, {{1, 0}}, {{}, {}, {}, {0}}, {}});
  OverlayGraph g;
  g.out_edges = {{1, 2}, {0}, {0, 3}, {}};
  const QueryTask task{0, Embedding({1, 0}), 4, 10};
  const QueryOutcome o = ChainHop(task, g, w);
  EXPECT_TRUE(o.found);
  EXPECT_EQ(o.path, (std::vector<UserIndex>{0, 2, 3}));
  EXPECT_EQ(o.messages_sent, 2u);

  QueryTask tight = task;
  tight.max_hops = 1;
  const QueryOutcome cut = ChainHop(tight, g, w);
  EXPECT_FALSE(cut.found);
  EXPECT_EQ(cut.path, (std::vector<UserIndex>{0, 2}));
}

TEST(ChainHopTest, StopsWhenEveryNeighborIsVisited) {
  const Workload w = testing::MakeWorkload(
      {{{1, 0}, {0, 1}, {1, 1}}, {{1, 2}}, {}, {{0}}});
  OverlayGraph g;
  g.out_edges = {{1}, {0}, {}};
  const QueryOutcome o = ChainHop({0, Embedding({1, 0}), 3, 10}, g, w);
  EXPECT_FALSE(o.found);
  EXPECT_EQ(o.path, (std::vector<UserIndex>{0, 1}));
}

TEST(ChainHopTest, TiesGoToTheSmallerIndexAndOriginHits) {
  const Workload w = testing::MakeWorkload(
      {{{1, 0}, {0, 1}, {0, 2}}, {{1, 1}}, {{0}}, {}});
  OverlayGraph g;
  g.out_edges = {{1, 2}, {}, {}};
  const QueryOutcome hit = ChainHop({0, Embedding({1, 1}), 3, 5}, g, w);
  EXPECT_TRUE(hit.found);
  EXPECT_EQ(hit.messages_sent, 0u);
  // u001 and u002 score equally against the query; u002 holds the target.
  const QueryOutcome miss = ChainHop({0, Embedding({0, 1}), 2, 1}, g, w);
  EXPECT_FALSE(miss.found);
  EXPECT_EQ(miss.path, (std::vector<UserIndex>{0, 1}));
  EXPECT_THROW(ChainHop({7, Embedding({0, 1}), 0, 1}, g, w), DomainError);
}

TEST(QuerySoundnessTest, FuzzedTasksAcrossEngines) {
  const Workload w = Synth(120, 41);
  const CosineIndex cosine = BuildUserCosineIndex(w);
  Rng rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const OverlayGraph g = RandomDigraph(w.size(), 8, rng);
    const QueryTask task{
        static_cast<UserIndex>(rng.UniformIndex(w.size())),
        w.corpus().embedding(
            static_cast<DocIndex>(rng.UniformIndex(w.corpus().size()))),
        static_cast<DocIndex>(rng.UniformIndex(w.corpus().size())),
        rng.UniformIndex(12)};
    ExpectSound(ChainHop(task, g, w, cosine), task, w, &g);
    ExpectSound(RandomWalkQuery(task, g, w, trial), task, w, &g);
    ExpectSound(RandomPeerQuery(task, w, trial), task, w, nullptr);
  }
}

TEST(RandomPeerQueryTest, MatchesTheHypergeometricHitRate) {
  // 40 users, 6 of whom (not the origin) hold the target document.
  constexpr std::size_t kUsers = 40, kHolders = 6;
  std::vector<std::vector<double>> pts;
  std::vector<std::vector<std::size_t>> extra(kUsers);
  for (std::size_t i = 0; i < kUsers; ++i) pts.push_back({1.0, i + 1.0});
  for (std::size_t i = 1; i <= kHolders; ++i) extra[i * 5] = {0};
  const Workload w = testing::MakeWorkload({pts, {{3, 3}}, extra, {}});
  const DocIndex doc = kUsers;
  for (std::size_t budget : {1, 3, 5, 10}) {
    // 1 - C(n-1-h, b) / C(n-1, b).
    double miss = 1.0;
    for (std::size_t i = 0; i < budget; ++i) {
      miss *= static_cast<double>(kUsers - 1 - kHolders - i) /
              static_cast<double>(kUsers - 1 - i);
    }
    const int kTrials = 20000;
    int hits = 0;
    for (int s = 0; s < kTrials; ++s) {
      hits += RandomPeerQuery({0, Embedding({1, 0}), doc, budget}, w, s).found;
    }
    EXPECT_NEAR(static_cast<double>(hits) / kTrials, 1.0 - miss, 0.02)
        << "budget " << budget;
  }
}

TEST(RandomPeerQueryTest, ExhaustsSmallNetworksWithoutRevisits) {
  const Workload w = testing::PointWorkload({{1, 0}, {0, 1}, {1, 1}});
  const QueryOutcome o = RandomPeerQuery({0, Embedding({1, 0}), 1, 10}, w, 3);
  // u001 holds d(u001) = doc 1.
  EXPECT_TRUE(o.found);
  const QueryOutcome local = RandomPeerQuery({0, Embedding({1, 0}), 0, 10}, w, 3);
  EXPECT_TRUE(local.found);  // the origin holds doc 0
  EXPECT_EQ(local.messages_sent, 0u);
  std::set<UserIndex> distinct(o.path.begin(), o.path.end());
  EXPECT_EQ(distinct.size(), o.path.size());
}

TEST(DiffusionTest, TwoNodeClosedForm) {
  const Workload w = testing::PointWorkload({{1, 0}, {0, 1}});
  OverlayGraph g;
  g.out_edges = {{1}, {0}};
  for (double alpha : {0.1, 0.5, 0.9}) {
    const DiffusionState s = DiffuseEmbeddings(g, w, alpha, 2000, 1e-15);
    const double denom = 1.0 - (1.0 - alpha) * (1.0 - alpha);
    EXPECT_NEAR(s.diffused[0][0], alpha / denom, 1e-10) << alpha;
    EXPECT_NEAR(s.diffused[0][1], (1.0 - alpha) * alpha / denom, 1e-10);
    EXPECT_NEAR(s.diffused[1][0], (1.0 - alpha) * alpha / denom, 1e-10);
    EXPECT_NEAR(s.diffused[1][1], alpha / denom, 1e-10);
  }
}

TEST(DiffusionTest, StarLeafMovesTowardTheHub) {
  const Workload w =
      testing::PointWorkload({{1, 0}, {0, 1}, {0.2, 1}, {-0.2, 1}});
  OverlayGraph g;
  g.out_edges = {{1, 2, 3}, {0}, {0}, {0}};
  const DiffusionState s = DiffuseEmbeddings(g, w, 0.5);
  const double before = CosineSimilarity(w.user_embedding(1), w.user_embedding(0));
  const double after = CosineSimilarity(s.diffused[1], w.user_embedding(0));
  EXPECT_GT(after, before);
  EXPECT_GT(s.iterations, 0);
}

TEST(DiffusionTest, AlphaOneIsTheIdentity) {
  const Workload w = Synth(60, 43);
  const OverlayGraph g = BarabasiAlbert(w.size(), 3, 43);
  const DiffusionState s = DiffuseEmbeddings(g, w, 1.0);
  EXPECT_EQ(s.iterations, 0);
  for (UserIndex u = 0; u < w.size(); ++u) {
    EXPECT_EQ(s.diffused[u], w.user_embedding(u));
  }
  for (const QueryTask& task : TestSetQueries(w, 6)) {
    EXPECT_EQ(DiffusionQuery(task, g, s, w), ChainHop(task, g, w));
  }
}

TEST(DiffusionTest, DanglingNodeKeepsItsEmbedding) {
  const Workload w = testing::PointWorkload({{1, 0}, {0, 1}});
  OverlayGraph g;
  g.out_edges = {{1}, {}};
  const DiffusionState s = DiffuseEmbeddings(g, w, 0.3, 500, 1e-15);
  EXPECT_NEAR(s.diffused[1][0], 0.0, 1e-12);
  EXPECT_NEAR(s.diffused[1][1], 1.0, 1e-12);
  EXPECT_NEAR(s.diffused[0][1], 0.7, 1e-12);
}

TEST(DiffusionTest, RejectsBadInput) {
  const Workload w = testing::PointWorkload({{1, 0}, {0, 1}});
  OverlayGraph g;
  g.out_edges = {{1}, {0}};
  EXPECT_THROW(DiffuseEmbeddings(g, w, 0.0), DomainError);
  EXPECT_THROW(DiffuseEmbeddings(g, w, 1.5), DomainError);
  OverlayGraph small;
  small.out_edges = {{}};
  EXPECT_THROW(DiffuseEmbeddings(small, w, 0.5), DomainError);
}

TEST(TestSetQueriesTest, OneTaskPerTestDocument) {
  const Workload w = Synth(30, 44);
  const auto tasks = TestSetQueries(w, 7);
  ASSERT_EQ(tasks.size(), 30u * 4u);
  for (const auto& t : tasks) {
    EXPECT_EQ(t.max_hops, 7u);
    const auto& docs = w.user(t.origin).test_docs;
    EXPECT_TRUE(std::binary_search(docs.begin(), docs.end(), t.target_doc));
  }
}

TEST(QueryCsvTest, HeaderAndIds) {
  const Workload w = testing::PointWorkload({{1, 0}, {0, 1}});
  QueryRecord r{"semantica", 0, 1, {true, 1, {0, 1}, 1}};
  std::ostringstream out;
  WriteQueryCsv(out, std::span(&r, 1), w);
  EXPECT_EQ(out.str(),
            "engine,origin,target_doc,found,hops_used,messages\n"
            "semantica,u000,du001,1,1,1\n");
}

}  // namespace
}  // namespace semantica
