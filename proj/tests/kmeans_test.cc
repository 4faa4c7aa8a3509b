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

#include "semantica/kmeans.h"

#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "semantica/errors.h"
#include "semantica/rng.h"

namespace semantica {
namespace {

// Minimum two-cluster SSE over all 2^(n-1) - 1 non-trivial bipartitions.
double BruteForceSse(const std::vector<Embedding>& points) {
  const std::size_t n = points.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t mask = 1; mask < (std::size_t{1} << (n - 1)); ++mask) {
    std::vector<Embedding> a, b;
    std::vector<Cluster> assign(n);
    for (std::size_t i = 0; i < n; ++i) {
      const bool in_b = (mask >> i) & 1;
      assign[i] = in_b ? Cluster::kB : Cluster::kA;
      (in_b ? b : a).push_back(points[i]);
    }
    best = std::min(best, WithinClusterSse(points, assign, MeanEmbedding(a),
                                           MeanEmbedding(b)));
  }
  return best;
}

std::vector<Embedding> Blobs(Rng& rng, std::size_t n, double separation) {
  std::vector<Embedding> points;
  for (std::size_t i = 0; i < n; ++i) {
    const double cx = (i % 2 == 0) ? 0.0 : separation;
    points.push_back({cx + rng.Normal() * 0.1, rng.Normal() * 0.1});
  }
  return points;
}

TEST(TwoMeansTest, SeparatedBlobsReachTheGlobalOptimum) {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const auto points = Blobs(rng, 3 + trial % 8, 10.0);
    const auto r = TwoMeans(points, trial);
    const double sse =
        WithinClusterSse(points, r.assignment, r.centroid_a, r.centroid_b);
    EXPECT_NEAR(sse, BruteForceSse(points), 1e-9);
    for (std::size_t i = 0; i < points.size(); ++i) {
      EXPECT_TRUE(r.assignment[i] == r.assignment[i % 2]);
    }
  }
}

TEST(TwoMeansTest, ResultIsALloydFixedPoint) {
  Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 9;
    std::vector<Embedding> points;
    for (std::size_t i = 0; i < n; ++i) {
      points.push_back({rng.Normal(), rng.Normal(), rng.Normal()});
    }
    const auto r = TwoMeans(points, trial);
    ASSERT_FALSE(r.degenerate);
    std::vector<Embedding> a, b;
    for (std::size_t i = 0; i < n; ++i) {
      const double da = EuclideanDistance(points[i], r.centroid_a);
      const double db = EuclideanDistance(points[i], r.centroid_b);
      if (r.assignment[i] == Cluster::kA) {
        EXPECT_LE(da, db + 1e-9);
        a.push_back(points[i]);
      } else {
        EXPECT_LE(db, da + 1e-9);
        b.push_back(points[i]);
      }
    }
    ASSERT_FALSE(a.empty());
    ASSERT_FALSE(b.empty());
    const double sse =
        WithinClusterSse(points, r.assignment, r.centroid_a, r.centroid_b);
    EXPECT_GE(sse, BruteForceSse(points) - 1e-9);
  }
}

TEST(TwoMeansTest, SseTraceNeverIncreases) {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Embedding> points;
    for (int i = 0; i < 200; ++i) {
      points.push_back({rng.Normal(), rng.Normal(), rng.Normal(), rng.Normal()});
    }
    const auto r = TwoMeans(points, trial);
    ASSERT_EQ(r.sse_trace.size(), static_cast<std::size_t>(r.iterations_used));
    for (std::size_t i = 1; i < r.sse_trace.size(); ++i) {
      EXPECT_LE(r.sse_trace[i], r.sse_trace[i - 1] * (1 + 1e-12));
    }
  }
}

TEST(TwoMeansTest, IdenticalPointsAreDegenerate) {
  const std::vector<Embedding> points(5, Embedding({2.0, -1.0}));
  const auto r = TwoMeans(points, 3);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.centroid_a, points[0]);
  EXPECT_EQ(r.centroid_b, points[0]);
  const std::vector<Cluster> expected = {Cluster::kA, Cluster::kA, Cluster::kA,
                                         Cluster::kB, Cluster::kB};
  EXPECT_EQ(r.assignment, expected);
}

TEST(TwoMeansTest, TwoPointsSplitApart) {
  const std::vector<Embedding> points = {{0, 0}, {1, 0}};
  const auto r = TwoMeans(points, 0);
  EXPECT_NE(r.assignment[0], r.assignment[1]);
  EXPECT_EQ(WithinClusterSse(points, r.assignment, r.centroid_a, r.centroid_b),
            0.0);
}

TEST(TwoMeansTest, ErrorsAndDeterminism) {
  const std::vector<Embedding> one = {{1, 2}};
  EXPECT_THROW(TwoMeans(one, 0), DomainError);
  const std::vector<Embedding> mixed = {{1, 2}, {1, 2, 3}};
  EXPECT_THROW(TwoMeans(mixed, 0), StructuralError);
  Rng rng(24);
  std::vector<Embedding> points;
  for (int i = 0; i < 100; ++i) points.push_back({rng.Normal(), rng.Normal()});
  const auto a = TwoMeans(points, 99);
  const auto b = TwoMeans(points, 99);
  EXPECT_EQ(a.assignment, b.assignment);
  EXPECT_EQ(a.centroid_a, b.centroid_a);
  EXPECT_EQ(a.sse_trace, b.sse_trace);
}

}  // namespace
}  // namespace semantica
