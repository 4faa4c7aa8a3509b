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

// Hop-limited query engines. All engines share one loop: check the current
// user's holdings, then forward to an unvisited neighbor until the document
// is found, the hop budget is spent or no unvisited neighbor remains. One
// forward is one message, so messages_sent <= max_hops always.

#ifndef SEMANTICA_QUERY_H_
#define SEMANTICA_QUERY_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "semantica/embedding.h"
#include "semantica/graphs.h"
#include "semantica/workload.h"

namespace semantica {

struct QueryTask {
  UserIndex origin = 0;
  Embedding query_embedding;
  DocIndex target_doc = 0;
  std::size_t max_hops = 0;
};

struct QueryOutcome {
  bool found = false;
  std::size_t hops_used = 0;
  std::vector<UserIndex> path;  // starts at the origin; last entry terminal
  std::size_t messages_sent = 0;

  UserIndex terminal() const { return path.back(); }
  friend bool operator==(const QueryOutcome&, const QueryOutcome&) = default;
};

// Perfect local search over training documents.
bool LocalLookup(const Workload& workload, UserIndex user, DocIndex doc);

// Greedy forwarding to the unvisited neighbor v maximizing
// cosine(query, scores row v), ties to the smaller index. `scores` holds one
// row per user.
QueryOutcome ChainHop(const QueryTask& task, const OverlayGraph& graph,
                      const Workload& workload, const CosineIndex& scores);

// Scores against the native user embeddings.
QueryOutcome ChainHop(const QueryTask& task, const OverlayGraph& graph,
                      const Workload& workload);

// Uniform over unvisited neighbors, falling back to any neighbor once all
// have been visited.
QueryOutcome RandomWalkQuery(const QueryTask& task, const OverlayGraph& graph,
                             const Workload& workload, std::uint64_t seed);

// Random walk on the complete graph: each hop goes to a uniformly chosen user
// not yet visited.
QueryOutcome RandomPeerQuery(const QueryTask& task, const Workload& workload,
                             std::uint64_t seed);

struct DiffusionState {
  double alpha = 1.0;
  int iterations = 0;
  std::vector<Embedding> diffused;  // indexed by UserIndex
  CosineIndex index;                // over `diffused`
};

// Personalized-PageRank smoothing E <- alpha E0 + (1 - alpha) W E, starting
// from E0, where W is the row-normalized adjacency and a node without
// out-edges keeps a self loop. Stops once the largest coordinate change is
// below `tol` or after `max_iterations`. alpha = 1 returns E0 exactly.
// Throws DomainError unless 0 < alpha <= 1 and the graph matches the
// workload.
DiffusionState DiffuseEmbeddings(const OverlayGraph& graph,
                                 const Workload& workload, double alpha,
                                 int max_iterations = 50, double tol = 1e-8);

// ChainHop scored against the diffused embeddings.
QueryOutcome DiffusionQuery(const QueryTask& task, const OverlayGraph& graph,
                            const DiffusionState& state,
                            const Workload& workload);

// One task per (user, test document), in user then test-slot order.
std::vector<QueryTask> TestSetQueries(const Workload& workload,
                                      std::size_t max_hops);

struct QueryRecord {
  std::string engine;
  UserIndex origin = 0;
  DocIndex target_doc = 0;
  QueryOutcome outcome;
};

// `engine,origin,target_doc,found,hops_used,messages` with user and document
// ids.
void WriteQueryCsv(std::ostream& out, std::span<const QueryRecord> records,
                   const Workload& workload);

}  // namespace semantica

#endif  // SEMANTICA_QUERY_H_
