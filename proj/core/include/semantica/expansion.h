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

// Peer views: every user's known-users set and the closest-users list derived
// from it, seeded from tree placements and refined by expansion rounds in
// which each user asks one close peer for an introduction.

#ifndef SEMANTICA_EXPANSION_H_
#define SEMANTICA_EXPANSION_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "semantica/oracle.h"
#include "semantica/tree.h"
#include "semantica/workload.h"

namespace semantica {

struct PeerView {
  std::vector<UserIndex> known_users;  // ascending
  // Top n_cu of known_users by descending cosine to the owner, ties to the
  // smaller index. closest_similarity is parallel.
  std::vector<UserIndex> closest_users;
  std::vector<Similarity> closest_similarity;

  friend bool operator==(const PeerView&, const PeerView&) = default;
};

// Indexed by UserIndex.
using PeerViews = std::vector<PeerView>;

struct ExpansionParams {
  std::size_t n_cc = 50;  // contacts gathered per clone
  std::size_t n_cu = 50;  // closest-users list size
  int r_max = 10;
  std::uint64_t seed = 0;
};

// Builds one view from an arbitrary known set. `known` may be unsorted and
// must not contain `owner`.
PeerView MakeView(UserIndex owner, std::vector<UserIndex> known,
                  const CosineIndex& cosine, std::size_t n_cu);

// Every clone of a user gathers n_cc contacts via LeafBfsCollect; the union
// is the known set. The tree must come from BuildTree on `workload`.
PeerViews InitViews(const Tree& tree, const Workload& workload,
                    const ExpansionParams& params);

// Baseline: each user knows `known_sizes[u]` users drawn uniformly at random.
PeerViews RandomViews(const Workload& workload,
                      std::span<const std::size_t> known_sizes,
                      std::size_t n_cu, std::uint64_t seed);

struct RoundResult {
  std::size_t accepted = 0;  // introductions that entered a closest list
  std::size_t messages = 0;  // queries sent; one per non-isolated user
};

// One expansion round. Users act one at a time in a shuffled order (seeded by
// seed and round_index), each seeing updates made earlier in the round. A
// user asks a uniformly random member of its closest list, which answers with
// the member of its own known set most similar to the asker that the asker
// does not know yet. The answer is kept only if the asker's closest list is
// not full or the answer beats its last entry.
RoundResult ExpansionRound(PeerViews& views, const CosineIndex& cosine,
                           std::size_t n_cu, std::uint64_t seed,
                           int round_index);

struct RoundMetrics {
  int round = 0;
  double mean_recall = 0.0;  // NaN without ground truth
  double mean_known_users = 0.0;
  std::size_t accepted_introductions = 0;
  std::size_t messages = 0;
};

double MeanKnownUsers(const PeerViews& views);
double MeanRecall(const PeerViews& views, const GroundTruth& truth);

// Runs params.r_max rounds. The returned trace has r_max + 1 rows; row 0
// describes the views as passed in.
std::vector<RoundMetrics> RunExpansion(PeerViews& views,
                                       const Workload& workload,
                                       const ExpansionParams& params,
                                       const GroundTruth* truth = nullptr);

// `round,mean_recall,mean_known_users,accepted_introductions`
void WriteRoundMetricsCsv(std::ostream& out,
                          std::span<const RoundMetrics> trace);

// JSON: {"users": [...ids], "views": [{"known": [...], "closest": [...]}]}.
void SaveViews(const PeerViews& views, const Workload& workload,
               const std::filesystem::path& path);
PeerViews LoadViews(const Workload& workload, const std::filesystem::path& path);

}  // namespace semantica

#endif  // SEMANTICA_EXPANSION_H_
