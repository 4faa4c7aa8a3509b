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

#include "semantica/graphs.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <ostream>

#include "semantica/errors.h"
#include "semantica/rng.h"

namespace semantica {

std::size_t OverlayGraph::arc_count() const {
  std::size_t total = 0;
  for (const auto& edges : out_edges) total += edges.size();
  return total;
}

double OverlayGraph::MeanOutDegree() const {
  if (out_edges.empty()) return 0.0;
  return static_cast<double>(arc_count()) /
         static_cast<double>(out_edges.size());
}

OverlayGraph GraphFromViews(const PeerViews& views, EdgeSource source) {
  OverlayGraph graph;
  graph.out_edges.resize(views.size());
  for (std::size_t u = 0; u < views.size(); ++u) {
    const auto& list = source == EdgeSource::kKnownUsers
                           ? views[u].known_users
                           : views[u].closest_users;
    auto& edges = graph.out_edges[u];
    for (UserIndex v : list) {
      if (v != u) edges.push_back(v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
  return graph;
}

OverlayGraph BarabasiAlbert(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m < 1 || m >= n) {
    throw DomainError("Barabasi-Albert needs 1 <= m < n (m=" +
                      std::to_string(m) + ", n=" + std::to_string(n) + ")");
  }
  OverlayGraph graph;
  graph.directed = false;
  graph.out_edges.resize(n);
  // A node of degree d appears d times, so a uniform draw from `endpoints`
  // is a degree-proportional draw over nodes.
  std::vector<UserIndex> endpoints;
  endpoints.reserve(2 * (m * (m - 1) / 2 + m * (n - m)));
  auto connect = [&](UserIndex a, UserIndex b) {
    graph.out_edges[a].push_back(b);
    graph.out_edges[b].push_back(a);
    endpoints.push_back(a);
    endpoints.push_back(b);
  };
  for (UserIndex a = 0; a < m; ++a) {
    for (UserIndex b = a + 1; b < m; ++b) connect(a, b);
  }
  Rng rng(seed);
  std::vector<UserIndex> targets;
  std::vector<bool> chosen(n, false);
  for (auto node = static_cast<UserIndex>(m); node < n; ++node) {
    targets.clear();
    while (targets.size() < m) {
      const UserIndex t =
          endpoints.empty()
              ? static_cast<UserIndex>(rng.UniformIndex(node))
              : endpoints[rng.UniformIndex(endpoints.size())];
      if (chosen[t]) continue;
      chosen[t] = true;
      targets.push_back(t);
    }
    for (UserIndex t : targets) {
      chosen[t] = false;
      connect(node, t);
    }
  }
  for (auto& edges : graph.out_edges) std::sort(edges.begin(), edges.end());
  return graph;
}

std::size_t DegreeMatchedM(double mean_degree, std::size_t n) {
  if (n < 2) throw DomainError("degree matching needs at least two nodes");
  const auto m = static_cast<long long>(std::llround(mean_degree / 2.0));
  return static_cast<std::size_t>(
      std::clamp<long long>(m, 1, static_cast<long long>(n) - 1));
}

std::vector<std::optional<std::size_t>> BfsDistances(const OverlayGraph& graph,
                                                     UserIndex source) {
  std::vector<std::optional<std::size_t>> dist(graph.node_count());
  std::deque<UserIndex> queue = {source};
  dist[source] = 0;
  while (!queue.empty()) {
    const UserIndex u = queue.front();
    queue.pop_front();
    for (UserIndex v : graph.out_edges[u]) {
      if (dist[v]) continue;
      dist[v] = *dist[u] + 1;
      queue.push_back(v);
    }
  }
  return dist;
}

std::optional<std::size_t> MinHopToDocument(const OverlayGraph& graph,
                                            const Workload& workload,
                                            UserIndex source, DocIndex doc) {
  if (source >= graph.node_count() || source >= workload.size()) {
    throw DomainError("unknown source user " + std::to_string(source));
  }
  if (doc >= workload.corpus().size()) {
    throw DomainError("unknown document " + std::to_string(doc));
  }
  if (workload.Holds(source, doc)) return 0;
  std::vector<bool> is_holder(graph.node_count(), false);
  bool any = false;
  for (UserIndex h : workload.Holders(doc)) {
    if (h < is_holder.size()) {
      is_holder[h] = true;
      any = true;
    }
  }
  if (!any) return std::nullopt;
  std::vector<std::size_t> dist(graph.node_count(), 0);
  std::vector<bool> seen(graph.node_count(), false);
  std::deque<UserIndex> queue = {source};
  seen[source] = true;
  while (!queue.empty()) {
    const UserIndex u = queue.front();
    queue.pop_front();
    for (UserIndex v : graph.out_edges[u]) {
      if (seen[v]) continue;
      seen[v] = true;
      dist[v] = dist[u] + 1;
      if (is_holder[v]) return dist[v];
      queue.push_back(v);
    }
  }
  return std::nullopt;
}

double HopHistogram::Fraction(std::size_t distance) const {
  if (total == 0) return 0.0;
  const auto it = by_distance.find(distance);
  return it == by_distance.end()
             ? 0.0
             : static_cast<double>(it->second) / static_cast<double>(total);
}

double HopHistogram::UnreachableFraction() const {
  return total == 0 ? 0.0
                    : static_cast<double>(unreachable) / static_cast<double>(total);
}

HopHistogram BuildHopHistogram(const OverlayGraph& graph,
                               const Workload& workload,
                               std::span<const HopSample> samples) {
  HopHistogram h;
  for (const HopSample& s : samples) {
    ++h.total;
    const auto d = MinHopToDocument(graph, workload, s.user, s.doc);
    if (d) {
      ++h.by_distance[*d];
    } else {
      ++h.unreachable;
    }
  }
  return h;
}

std::vector<HopSample> HeldTestSamples(const Workload& workload) {
  std::vector<HopSample> out;
  for (UserIndex u = 0; u < workload.size(); ++u) {
    for (DocIndex d : workload.user(u).test_docs) {
      const auto holders = workload.Holders(d);
      if (std::any_of(holders.begin(), holders.end(),
                      [u](UserIndex h) { return h != u; })) {
        out.push_back({u, d});
      }
    }
  }
  return out;
}

void WriteEdgeList(std::ostream& out, const OverlayGraph& graph,
                   const Workload& workload) {
  for (UserIndex u = 0; u < graph.node_count(); ++u) {
    for (UserIndex v : graph.out_edges[u]) {
      out << workload.user(u).user_id << '\t' << workload.user(v).user_id
          << '\n';
    }
  }
}

}  // namespace semantica
