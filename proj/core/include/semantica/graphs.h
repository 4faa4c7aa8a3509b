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

#ifndef SEMANTICA_GRAPHS_H_
#define SEMANTICA_GRAPHS_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "semantica/expansion.h"
#include "semantica/workload.h"

namespace semantica {

// Nodes are user indices 0..N-1. Out-edge lists are ascending and never hold
// the node itself. Undirected graphs are stored with both directions.
struct OverlayGraph {
  std::vector<std::vector<UserIndex>> out_edges;
  bool directed = true;

  std::size_t node_count() const { return out_edges.size(); }
  // Directed edge count (each undirected edge counts twice).
  std::size_t arc_count() const;
  double MeanOutDegree() const;
};

enum class EdgeSource { kKnownUsers, kClosestUsers };

// Edge u -> v iff v is in u's selected list.
OverlayGraph GraphFromViews(const PeerViews& views, EdgeSource source);

// Preferential attachment. Nodes 0..m-1 start as a clique (C(m,2) edges);
// every later node attaches to m distinct earlier nodes drawn proportionally
// to their current degree (uniformly while all degrees are zero). The result
// has exactly C(m,2) + m (n - m) undirected edges. Throws DomainError unless
// 1 <= m < n.
OverlayGraph BarabasiAlbert(std::size_t n, std::size_t m, std::uint64_t seed);

// BA attachment count whose mean degree 2m best matches `mean_degree`:
// round(mean_degree / 2), clamped to [1, n - 1].
std::size_t DegreeMatchedM(double mean_degree, std::size_t n);

// BFS hop counts from `source`; nullopt marks unreachable nodes.
std::vector<std::optional<std::size_t>> BfsDistances(const OverlayGraph& graph,
                                                     UserIndex source);

// Fewest hops from `source` to any user holding `doc` as a training document;
// 0 when the source holds it, nullopt when no holder is reachable. Throws
// DomainError on an unknown user or document.
std::optional<std::size_t> MinHopToDocument(const OverlayGraph& graph,
                                            const Workload& workload,
                                            UserIndex source, DocIndex doc);

struct HopSample {
  UserIndex user = 0;
  DocIndex doc = 0;
};

struct HopHistogram {
  std::map<std::size_t, std::size_t> by_distance;
  std::size_t unreachable = 0;
  std::size_t total = 0;

  double Fraction(std::size_t distance) const;
  double UnreachableFraction() const;
};

HopHistogram BuildHopHistogram(const OverlayGraph& graph,
                               const Workload& workload,
                               std::span<const HopSample> samples);

// Every (user, test document) pair whose document some other user holds.
// Pairs without any holder are unreachable on every graph and are left out.
std::vector<HopSample> HeldTestSamples(const Workload& workload);

// `u\tv` per arc, using user ids.
void WriteEdgeList(std::ostream& out, const OverlayGraph& graph,
                   const Workload& workload);

}  // namespace semantica

#endif  // SEMANTICA_GRAPHS_H_
