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

#include "semantica/embedding.h"

#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "semantica/errors.h"
#include "semantica/rng.h"

namespace semantica {
namespace {

Embedding RandomVector(Rng& rng, std::size_t dim) {
  std::vector<double> v(dim);
  for (double& x : v) x = rng.Normal();
  return Embedding(std::move(v));
}

TEST(EmbeddingTest, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(Embedding(std::vector<double>{}), DomainError);
  EXPECT_THROW(Embedding({1.0, std::numeric_limits<double>::quiet_NaN()}),
               DomainError);
  EXPECT_THROW(Embedding({std::numeric_limits<double>::infinity()}),
               DomainError);
}

TEST(CosineTest, IdenticalUnitVectors) {
  EXPECT_DOUBLE_EQ(CosineSimilarity({1, 0}, {1, 0}), 1.0);
}

TEST(CosineTest, OrthogonalVectors) {
  EXPECT_DOUBLE_EQ(CosineSimilarity({1, 0}, {0, 1}), 0.0);
}

TEST(CosineTest, HandComputedValue) {
  // 32 / (sqrt(14) * sqrt(77)).
  EXPECT_NEAR(CosineSimilarity({1, 2, 3}, {4, 5, 6}), 0.97463184619707621,
              1e-12);
}

TEST(CosineTest, Errors) {
  EXPECT_THROW(CosineSimilarity({1, 0}, {1, 0, 0}), StructuralError);
  EXPECT_THROW(CosineSimilarity({0, 0}, {1, 0}), DomainError);
}

TEST(CosineTest, SelfSimilarityAndSymmetryProperty) {
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const Embedding a = RandomVector(rng, 1 + trial % 17);
    const Embedding b = RandomVector(rng, a.dim());
    EXPECT_NEAR(CosineSimilarity(a, a), 1.0, 1e-9);
    EXPECT_EQ(CosineSimilarity(a, b), CosineSimilarity(b, a));
    EXPECT_LE(std::abs(CosineSimilarity(a, b)), 1.0);
  }
}

TEST(EuclideanTest, Examples) {
  EXPECT_DOUBLE_EQ(EuclideanDistance({0, 0}, {0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(EuclideanDistance({0, 0}, {3, 4}), 5.0);
  EXPECT_NEAR(EuclideanDistance({1, 1, 1}, {2, 3, 4}), 3.7416573867739413,
              1e-12);
  EXPECT_THROW(EuclideanDistance({1}, {1, 2}), StructuralError);
}

TEST(EuclideanTest, TriangleInequalityProperty) {
  Rng rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t dim = 1 + trial % 9;
    const Embedding a = RandomVector(rng, dim);
    const Embedding b = RandomVector(rng, dim);
    const Embedding c = RandomVector(rng, dim);
    EXPECT_LE(EuclideanDistance(a, c),
              EuclideanDistance(a, b) + EuclideanDistance(b, c) + 1e-9);
  }
}

TEST(MeanTest, Examples) {
  const std::vector<Embedding> one = {{1, 0}};
  EXPECT_EQ(MeanEmbedding(one), Embedding({1, 0}));
  const std::vector<Embedding> two = {{2, 0}, {0, 2}};
  EXPECT_EQ(MeanEmbedding(two), Embedding({1, 1}));
  const std::vector<Embedding> three = {{1, 2}, {3, 4}, {5, 6}};
  EXPECT_EQ(MeanEmbedding(three), Embedding({3, 4}));
  EXPECT_THROW(MeanEmbedding(std::span<const Embedding>()), DomainError);
}

TEST(MeanTest, CopiesOfOneVectorProperty) {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Embedding v = RandomVector(rng, 8);
    const std::vector<Embedding> copies(1 + trial, v);
    const Embedding m = MeanEmbedding(copies);
    for (std::size_t i = 0; i < v.dim(); ++i) {
      EXPECT_NEAR(m[i], v[i], 1e-12 * std::max(1.0, std::abs(v[i])));
    }
  }
}

TEST(MeanTest, IndexedSubset) {
  const std::vector<Embedding> pool = {{1, 0}, {9, 9}, {3, 2}};
  const std::vector<std::size_t> idx = {0, 2};
  EXPECT_EQ(MeanEmbedding(pool, idx), Embedding({2, 1}));
}

TEST(CosineIndexTest, MatchesDirectComputation) {
  Rng rng(14);
  std::vector<Embedding> rows;
  for (int i = 0; i < 20; ++i) rows.push_back(RandomVector(rng, 6));
  const CosineIndex index(rows);
  ASSERT_EQ(index.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      EXPECT_NEAR(index(i, j), CosineSimilarity(rows[i], rows[j]), 1e-12);
    }
    EXPECT_NEAR(index(rows[i], i), 1.0, 1e-12);
  }
  EXPECT_THROW(CosineIndex(std::vector<Embedding>{{0, 0}}), DomainError);
}

}  // namespace
}  // namespace semantica
