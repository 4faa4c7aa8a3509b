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

#ifndef SEMANTICA_KMEANS_H_
#define SEMANTICA_KMEANS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "semantica/embedding.h"

namespace semantica {

enum class Cluster : std::uint8_t { kA = 0, kB = 1 };

struct ClusterResult {
  Embedding centroid_a;
  Embedding centroid_b;
  std::vector<Cluster> assignment;  // parallel to the input points
  int iterations_used = 0;
  // Within-cluster SSE after each Lloyd iteration.
  std::vector<double> sse_trace;
  // True when every input point was identical and the split is arbitrary.
  bool degenerate = false;
};

// Lloyd's algorithm with k = 2 over Euclidean distance.
//
// Seeding: the first centroid is a uniformly random point, the second the
// point farthest from it (lowest index on ties). An iteration that empties a
// cluster moves the point farthest from the surviving centroid into it.
// Equidistant points go to A. Stops once neither centroid moves by `tol` or
// after `max_iters` iterations.
//
// All-identical input yields both centroids equal to that point with the
// first ceil(n/2) points in A. Throws DomainError on fewer than two points.
ClusterResult TwoMeans(std::span<const Embedding> points, std::uint64_t seed,
                       int max_iters = 100, double tol = 1e-9);

// Sum of squared distances from each point to its assigned centroid.
double WithinClusterSse(std::span<const Embedding> points,
                        std::span<const Cluster> assignment,
                        const Embedding& centroid_a,
                        const Embedding& centroid_b);

}  // namespace semantica

#endif  // SEMANTICA_KMEANS_H_
