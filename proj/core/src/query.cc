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
#include <optional>
#include <ostream>

#include "semantica/errors.h"
#include "semantica/rng.h"

namespace semantica {
namespace {

void CheckTask(const QueryTask& task, std::size_t node_count,
               const Workload& workload) {
  if (task.origin >= node_count || task.origin >= workload.size()) {
    throw DomainError("unknown origin user " + std::to_string(task.origin));
  }
  if (task.target_doc >= workload.corpus().size()) {
    throw DomainError("unknown target document " +
                      std::to_string(task.target_doc));
  }
}

// `next(current, visited)` returns the forward target or nullopt to stop.
template <typename NextFn>
QueryOutcome Forward(const QueryTask& task, const Workload& workload,
                     std::size_t node_count, NextFn next) {
  QueryOutcome out;
  std::vector<bool> visited(node_count, false);
  UserIndex current = task.origin;
  visited[current] = true;
  out.path.push_back(current);
  while (true) {
    if (LocalLookup(workload, current, task.target_doc)) {
      out.found = true;
      break;
    }
    if (out.messages_sent == task.max_hops) break;
    const std::optional<UserIndex> to = next(current, visited);
    if (!to) break;
    current = *to;
    visited[current] = true;
    out.path.push_back(current);
    ++out.messages_sent;
  }
  out.hops_used = out.messages_sent;
  return out;
}

}  // namespace

bool LocalLookup(const Workload& workload, UserIndex user, DocIndex doc) {
  return workload.Holds(user, doc);
}

QueryOutcome ChainHop(const QueryTask& task, const OverlayGraph& graph,
                      const Workload& workload, const CosineIndex& scores) {
  CheckTask(task, graph.node_count(), workload);
  if (scores.size() != graph.node_count()) {
    throw DomainError("score index does not cover the graph");
  }
  return Forward(task, workload, graph.node_count(),
                 [&](UserIndex u, const std::vector<bool>& visited)
                     -> std::optional<UserIndex> {
                   std::optional<UserIndex> best;
                   Similarity best_sim = 0.0;
                   // Ascending neighbor order, so strict > keeps the
                   // smaller index on ties.
                   for (UserIndex v : graph.out_edges[u]) {
                     if (visited[v]) continue;
                     const Similarity s = scores(task.query_embedding, v);
                     if (!best || s > best_sim) {
                       best = v;
                       best_sim = s;
                     }
                   }
                   return best;
                 });
}

QueryOutcome ChainHop(const QueryTask& task, const OverlayGraph& graph,
                      const Workload& workload) {
  return ChainHop(task, graph, workload, BuildUserCosineIndex(workload));
}

QueryOutcome RandomWalkQuery(const QueryTask& task, const OverlayGraph& graph,
                             const Workload& workload, std::uint64_t seed) {
  CheckTask(task, graph.node_count(), workload);
  Rng rng(seed);
  std::vector<UserIndex> fresh;
  return Forward(task, workload, graph.node_count(),
                 [&](UserIndex u, const std::vector<bool>& visited)
                     -> std::optional<UserIndex> {
                   const auto& edges = graph.out_edges[u];
                   if (edges.empty()) return std::nullopt;
                   fresh.clear();
                   for (UserIndex v : edges) {
                     if (!visited[v]) fresh.push_back(v);
                   }
                   const auto& pool = fresh.empty() ? edges : fresh;
                   return pool[rng.UniformIndex(pool.size())];
                 });
}

QueryOutcome RandomPeerQuery(const QueryTask& task, const Workload& workload,
                             std::uint64_t seed) {
  const std::size_t n = workload.size();
  CheckTask(task, n, workload);
  Rng rng(seed);
  std::size_t seen = 1;
  return Forward(task, workload, n,
                 [&](UserIndex, const std::vector<bool>& visited)
                     -> std::optional<UserIndex> {
                   if (seen == n) return std::nullopt;
                   UserIndex v;
                   do {
                     v = static_cast<UserIndex>(rng.UniformIndex(n));
                   } while (visited[v]);
                   ++seen;
                   return v;
                 });
}

DiffusionState DiffuseEmbeddings(const OverlayGraph& graph,
                                 const Workload& workload, double alpha,
                                 int max_iterations, double tol) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("alpha must lie in (0, 1]");
  }
  const std::size_t n = graph.node_count();
  if (n == 0 || n != workload.size()) {
    throw DomainError("diffusion graph must have one node per user");
  }
  const std::size_t dim = workload.dim();
  DiffusionState state;
  state.alpha = alpha;
  if (alpha == 1.0) {
    for (UserIndex u = 0; u < n; ++u) {
      state.diffused.push_back(workload.user_embedding(u));
    }
    state.index = CosineIndex(state.diffused);
    return state;
  }

  std::vector<double> base(n * dim);
  for (UserIndex u = 0; u < n; ++u) {
    const auto values = workload.user_embedding(u).values();
    std::copy(values.begin(), values.end(), base.begin() + u * dim);
  }
  std::vector<double> current = base;
  std::vector<double> next(n * dim);
  for (int it = 0; it < max_iterations; ++it) {
    double max_change = 0.0;
    for (UserIndex u = 0; u < n; ++u) {
      const auto& edges = graph.out_edges[u];
      double* row = next.data() + u * dim;
      if (edges.empty()) {
        std::copy_n(current.data() + u * dim, dim, row);
      } else {
        std::fill_n(row, dim, 0.0);
        for (UserIndex v : edges) {
          const double* src = current.data() + v * dim;
          for (std::size_t k = 0; k < dim; ++k) row[k] += src[k];
        }
        const double w = 1.0 / static_cast<double>(edges.size());
        for (std::size_t k = 0; k < dim; ++k) row[k] *= w;
      }
      for (std::size_t k = 0; k < dim; ++k) {
        row[k] = alpha * base[u * dim + k] + (1.0 - alpha) * row[k];
        max_change =
            std::max(max_change, std::abs(row[k] - current[u * dim + k]));
      }
    }
    current.swap(next);
    state.iterations = it + 1;
    if (max_change < tol) break;
  }
  for (UserIndex u = 0; u < n; ++u) {
    state.diffused.emplace_back(std::vector<double>(
        current.begin() + u * dim, current.begin() + (u + 1) * dim));
  }
  state.index = CosineIndex(state.diffused);
  return state;
}

QueryOutcome DiffusionQuery(const QueryTask& task, const OverlayGraph& graph,
                            const DiffusionState& state,
                            const Workload& workload) {
  return ChainHop(task, graph, workload, state.index);
}

std::vector<QueryTask> TestSetQueries(const Workload& workload,
                                      std::size_t max_hops) {
  std::vector<QueryTask> tasks;
  for (UserIndex u = 0; u < workload.size(); ++u) {
    const auto& test = workload.user(u).test_docs;
    for (std::size_t slot = 0; slot < test.size(); ++slot) {
      tasks.push_back(
          {u, workload.QueryEmbedding(u, slot), test[slot], max_hops});
    }
  }
  return tasks;
}

void WriteQueryCsv(std::ostream& out, std::span<const QueryRecord> records,
                   const Workload& workload) {
  out << "engine,origin,target_doc,found,hops_used,messages\n";
  for (const QueryRecord& r : records) {
    out << r.engine << ',' << workload.user(r.origin).user_id << ','
        << workload.corpus().id(r.target_doc) << ','
        << (r.outcome.found ? 1 : 0) << ',' << r.outcome.hops_used << ','
        << r.outcome.messages_sent << '\n';
  }
}

}  // namespace semantica
