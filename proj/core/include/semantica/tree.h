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

// The semantic tree: a binary hierarchy of 2-means splits over user
// embeddings, built incrementally. Leaves hold at most `leaf_capacity`
// placements; a leaf that overflows is split on the spot. A user whose
// distances to the two child centroids of a split differ by less than
// `delta` is cloned into both subtrees, so one user can own placements in
// several leaves. Splits of identical points (equal centroids) never clone.
//
// delta must stay well below the spread of the embeddings: once most
// arrivals clone at every split, each leaf refills and splits again, and the
// leaf count grows exponentially in N / M.

#ifndef SEMANTICA_TREE_H_
#define SEMANTICA_TREE_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semantica/embedding.h"
#include "semantica/workload.h"

namespace semantica {

using NodeId = std::uint32_t;

// One of a user's leaf placements. clone_index is dense per user from 0.
struct PlacementRef {
  UserIndex user = 0;
  std::uint32_t clone_index = 0;

  friend auto operator<=>(const PlacementRef&, const PlacementRef&) = default;
};

struct TreeParams {
  std::size_t leaf_capacity = 50;  // M
  double delta = 0.0;              // cloning threshold on |d1 - d2|
  std::uint64_t seed = 0;
  int kmeans_max_iters = 100;
  double kmeans_tol = 1e-9;

  friend bool operator==(const TreeParams&, const TreeParams&) = default;
};

struct TreeNode {
  std::optional<NodeId> parent;
  std::uint32_t depth = 0;
  bool is_leaf = true;
  // Leaf only. Sorted by (user, clone_index); one entry per user.
  std::vector<PlacementRef> users;
  // Split only.
  Embedding centroid_a;
  Embedding centroid_b;
  NodeId child_a = 0;
  NodeId child_b = 0;

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

class Tree {
 public:
  // Throws DomainError when leaf_capacity < 2, delta is negative or not
  // finite, or dim is 0.
  Tree(std::size_t dim, TreeParams params);

  // Registers a user without placing it. Slots are assigned densely from 0.
  // Throws DomainError on a duplicate id and StructuralError on a dimension
  // mismatch.
  UserIndex AddUser(std::string user_id, Embedding embedding);

  // Places a registered user: descends from the root, cloning down both
  // branches where |d1 - d2| < delta and otherwise following the nearer
  // centroid (ties to child A). Overflowing leaves split immediately; their
  // residents follow the 2-means assignment and clone into the other child
  // under the same rule while it has room.
  // Returns the leaves holding the user's placements afterwards, ascending.
  // Throws DomainError when the user is already placed.
  std::vector<NodeId> Insert(UserIndex user);

  std::vector<NodeId> InsertUser(std::string user_id, Embedding embedding) {
    return Insert(AddUser(std::move(user_id), std::move(embedding)));
  }

  const TreeParams& params() const { return params_; }
  std::size_t dim() const { return dim_; }
  NodeId root() const { return 0; }
  const TreeNode& node(NodeId id) const { return nodes_[id]; }
  std::size_t node_count() const { return nodes_.size(); }
  std::vector<NodeId> Leaves() const;

  std::size_t user_count() const { return users_.size(); }
  const std::string& user_id(UserIndex u) const { return users_[u].id; }
  const Embedding& user_embedding(UserIndex u) const {
    return users_[u].embedding;
  }
  std::optional<UserIndex> FindUser(std::string_view user_id) const;
  // Leaf of each clone, indexed by clone_index. Empty until placed.
  std::span<const NodeId> placements(UserIndex u) const {
    return users_[u].leaves;
  }
  std::size_t clone_count(UserIndex u) const { return users_[u].leaves.size(); }

  // Centroid distance evaluations made while descending during Insert.
  std::uint64_t insertion_comparisons() const { return comparisons_; }
  std::uint64_t splits() const { return splits_; }
  std::uint64_t kmeans_iterations() const { return kmeans_iterations_; }

  // Deterministic single-path descent (delta ignored, ties to child A).
  NodeId RouteToLeaf(const Embedding& embedding) const;

  // Lossless JSON round trip.
  std::string Serialize() const;
  static Tree Deserialize(std::string_view json);
  void Save(const std::filesystem::path& path) const;
  static Tree Load(const std::filesystem::path& path);

  friend bool operator==(const Tree&, const Tree&) = default;

 private:
  struct UserSlot {
    std::string id;
    Embedding embedding;
    std::vector<NodeId> leaves;

    friend bool operator==(const UserSlot&, const UserSlot&) = default;
  };

  void PlaceInLeaf(NodeId leaf, UserIndex user);
  void AddToRoster(NodeId leaf, PlacementRef ref);
  bool LeafHasUser(NodeId leaf, UserIndex user) const;
  void SplitLeaf(NodeId leaf);

  std::size_t dim_ = 0;
  TreeParams params_;
  std::vector<TreeNode> nodes_;
  std::vector<UserSlot> users_;
  std::map<std::string, UserIndex, std::less<>> index_;
  std::uint64_t comparisons_ = 0;
  std::uint64_t splits_ = 0;
  std::uint64_t kmeans_iterations_ = 0;
};

// Registers every workload user in workload order (tree slot == UserIndex),
// shuffles the insertion order with params.seed and inserts sequentially.
Tree BuildTree(const Workload& workload, const TreeParams& params);

// Collects users around `start_leaf`: nodes are visited breadth-first over
// parent/child links (child A, child B, then parent), and each leaf reached
// contributes its roster in a pseudo-random order fixed per (seed, leaf).
// Users already collected and `exclude` are skipped. Stops as soon as
// `needed` users are collected; may return fewer on a small tree.
std::vector<PlacementRef> LeafBfsCollect(const Tree& tree, NodeId start_leaf,
                                         std::size_t needed,
                                         std::optional<UserIndex> exclude,
                                         std::uint64_t seed);

struct DistributionSummary {
  double median = 0.0;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation (n - 1)
};

DistributionSummary Summarize(std::span<const double> values);

struct TreeStats {
  std::uint32_t height = 0;  // depth of the deepest leaf; root alone is 0
  std::size_t leaf_count = 0;
  std::vector<std::size_t> users_per_leaf;              // in leaf id order
  std::map<std::size_t, std::size_t> leaf_size_histogram;  // size -> leaves
  std::vector<std::size_t> clones_per_user;             // placed users only
  DistributionSummary clones;
};

TreeStats ComputeTreeStats(const Tree& tree);

}  // namespace semantica

#endif  // SEMANTICA_TREE_H_
