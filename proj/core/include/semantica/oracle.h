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

// Exhaustive reference answers every experiment is scored against.

#ifndef SEMANTICA_ORACLE_H_
#define SEMANTICA_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "semantica/workload.h"

namespace semantica {

struct GroundTruth {
  std::size_t k = 0;
  std::uint64_t workload_hash = 0;
  // Per user: min(k, N - 1) other users by descending cosine similarity,
  // ties to the smaller user index.
  std::vector<std::vector<UserIndex>> top_k;

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

// Full O(N^2) pairwise scan using CosineSimilarity directly.
// Throws DomainError when the workload has fewer than two users.
GroundTruth ComputeGroundTruth(const Workload& workload, std::size_t k = 50);

// Number of users present in both lists, each treated as a set.
std::size_t RecallOf50(std::span<const UserIndex> closest,
                       std::span<const UserIndex> truth);

// Text cache: `semantica-truth <hash-hex> <k> <n>` then one line per user with
// space-separated indices.
void SaveGroundTruth(const GroundTruth& truth,
                     const std::filesystem::path& path);
GroundTruth LoadGroundTruth(const std::filesystem::path& path);

// Loads `<cache_dir>/truth-<hash>-k<k>.txt` when it exists and matches,
// otherwise computes and stores it. An empty cache_dir disables caching.
GroundTruth CachedGroundTruth(const Workload& workload, std::size_t k,
                              const std::filesystem::path& cache_dir);

// Fraction of test-set documents held (as training documents) by at least
// one user other than the requester: the best any retrieval engine can do.
double CooccurrenceCeiling(const Workload& workload);

}  // namespace semantica

#endif  // SEMANTICA_ORACLE_H_
