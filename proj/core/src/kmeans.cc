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

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "semantica/errors.h"
#include "semantica/rng.h"

namespace semantica {
namespace {

Embedding MeanOf(std::span<const Embedding> points,
                 std::span<const Cluster> assignment, Cluster which) {
  const std::size_t dim = points.front().dim();
  std::vector<double> sum(dim, 0.0);
  std::size_t count = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (assignment[i] != which) continue;
    for (std::size_t k = 0; k < dim; ++k) sum[k] += points[i][k];
    ++count;
  }
  for (double& s : sum) s /= static_cast<double>(count);
  return Embedding(std::move(sum));
}

std::size_t FarthestFrom(std::span<const Embedding> points,
                         const Embedding& from,
                         std::span<const Cluster> assignment, Cluster within) {
  std::size_t best = points.size();
  double best_dist = -1.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!assignment.empty() && assignment[i] != within) continue;
    const double d = EuclideanDistance(points[i], from);
    if (d > best_dist) {
      best_dist = d;
      best = i;
    }
  }
  return best;
}

}  // namespace

double WithinClusterSse(std::span<const Embedding> points,
                        std::span<const Cluster> assignment,
                        const Embedding& centroid_a,
                        const Embedding& centroid_b) {
  double sse = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d = EuclideanDistance(
        points[i], assignment[i] == Cluster::kA ? centroid_a : centroid_b);
    sse += d * d;
  }
  return sse;
}

ClusterResult TwoMeans(std::span<const Embedding> points, std::uint64_t seed,
                       int max_iters, double tol) {
  if (points.size() < 2) {
    throw DomainError("two-means needs at least two points");
  }
  const std::size_t n = points.size();
  ClusterResult result;
  result.assignment.assign(n, Cluster::kA);

  Rng rng(seed);
  const std::size_t first = rng.UniformIndex(n);
  const std::size_t second = FarthestFrom(points, points[first], {}, Cluster::kA);
  if (EuclideanDistance(points[first], points[second]) == 0.0) {
    result.degenerate = true;
    result.centroid_a = points[first];
    result.centroid_b = points[first];
    for (std::size_t i = (n + 1) / 2; i < n; ++i) {
      result.assignment[i] = Cluster::kB;
    }
    return result;
  }

  Embedding ca = points[first];
  Embedding cb = points[second];
  for (int iter = 1; iter <= max_iters; ++iter) {
    std::size_t count_a = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double da = EuclideanDistance(points[i], ca);
      const double db = EuclideanDistance(points[i], cb);
      result.assignment[i] = da <= db ? Cluster::kA : Cluster::kB;
      if (result.assignment[i] == Cluster::kA) ++count_a;
    }
    if (count_a == 0 || count_a == n) {
      const Cluster survivor = count_a == 0 ? Cluster::kB : Cluster::kA;
      const Embedding& kept = survivor == Cluster::kA ? ca : cb;
      const std::size_t moved =
          FarthestFrom(points, kept, result.assignment, survivor);
      result.assignment[moved] =
          survivor == Cluster::kA ? Cluster::kB : Cluster::kA;
    }
    Embedding next_a = MeanOf(points, result.assignment, Cluster::kA);
    Embedding next_b = MeanOf(points, result.assignment, Cluster::kB);
    const double moved = std::max(EuclideanDistance(ca, next_a),
                                  EuclideanDistance(cb, next_b));
    ca = std::move(next_a);
    cb = std::move(next_b);
    result.iterations_used = iter;
    result.sse_trace.push_back(
        WithinClusterSse(points, result.assignment, ca, cb));
    if (moved < tol) break;
  }
  result.centroid_a = std::move(ca);
  result.centroid_b = std::move(cb);
  return result;
}

}  // namespace semantica
