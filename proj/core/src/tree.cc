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

#include "semantica/tree.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "semantica/errors.h"
#include "semantica/kmeans.h"
#include "semantica/rng.h"

namespace semantica {
namespace {

constexpr std::uint64_t kShuffleStream = 0x7e1;
constexpr std::uint64_t kSplitStream = 0x7e2;
constexpr std::uint64_t kLeafOrderStream = 0x7e3;

constexpr std::string_view kFormat = "semantica-tree";
constexpr int kFormatVersion = 1;

}  // namespace

Tree::Tree(std::size_t dim, TreeParams params) : dim_(dim), params_(params) {
  if (dim == 0) throw DomainError("tree dimension must be positive");
  if (params_.leaf_capacity < 2) {
    throw DomainError("leaf capacity must be at least 2");
  }
  if (!std::isfinite(params_.delta) || params_.delta < 0.0) {
    throw DomainError("delta must be finite and non-negative");
  }
  nodes_.push_back(TreeNode{});
}

UserIndex Tree::AddUser(std::string user_id, Embedding embedding) {
  if (embedding.dim() != dim_) {
    throw StructuralError("user '" + user_id + "' has dim " +
                          std::to_string(embedding.dim()) + ", tree dim " +
                          std::to_string(dim_));
  }
  const auto slot = static_cast<UserIndex>(users_.size());
  if (!index_.emplace(user_id, slot).second) {
    throw DomainError("user '" + user_id + "' is already in the tree");
  }
  users_.push_back(UserSlot{std::move(user_id), std::move(embedding), {}});
  return slot;
}

std::optional<UserIndex> Tree::FindUser(std::string_view user_id) const {
  const auto it = index_.find(user_id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<NodeId> Tree::Insert(UserIndex user) {
  if (user >= users_.size()) throw DomainError("unknown tree user slot");
  if (!users_[user].leaves.empty()) {
    throw DomainError("user '" + users_[user].id + "' is already placed");
  }
  const Embedding& u = users_[user].embedding;
  std::vector<NodeId> stack = {root()};
  while (!stack.empty()) {
    const NodeId n = stack.back();
    stack.pop_back();
    const TreeNode& node = nodes_[n];
    if (node.is_leaf) {
      PlaceInLeaf(n, user);
      continue;
    }
    const double d1 = EuclideanDistance(u, node.centroid_a);
    const double d2 = EuclideanDistance(u, node.centroid_b);
    comparisons_ += 2;
    // A degenerate split separates nothing, so it never clones.
    const bool degenerate = node.centroid_a == node.centroid_b;
    if (!degenerate && std::abs(d1 - d2) < params_.delta) {
      // B below A on the stack, so A's subtree is placed first.
      stack.push_back(node.child_b);
      stack.push_back(node.child_a);
    } else {
      stack.push_back(d1 <= d2 ? node.child_a : node.child_b);
    }
  }
  std::vector<NodeId> leaves = users_[user].leaves;
  std::sort(leaves.begin(), leaves.end());
  return leaves;
}

bool Tree::LeafHasUser(NodeId leaf, UserIndex user) const {
  const auto& roster = nodes_[leaf].users;
  const auto it = std::lower_bound(roster.begin(), roster.end(),
                                   PlacementRef{user, 0});
  return it != roster.end() && it->user == user;
}

void Tree::AddToRoster(NodeId leaf, PlacementRef ref) {
  auto& roster = nodes_[leaf].users;
  roster.insert(std::upper_bound(roster.begin(), roster.end(), ref), ref);
}

void Tree::PlaceInLeaf(NodeId leaf, UserIndex user) {
  // Two clones of one user reaching the same leaf collapse into one.
  if (LeafHasUser(leaf, user)) return;
  auto& leaves = users_[user].leaves;
  const auto clone = static_cast<std::uint32_t>(leaves.size());
  leaves.push_back(leaf);
  AddToRoster(leaf, PlacementRef{user, clone});
  if (nodes_[leaf].users.size() > params_.leaf_capacity) SplitLeaf(leaf);
}

void Tree::SplitLeaf(NodeId leaf) {
  const std::vector<PlacementRef> roster = std::move(nodes_[leaf].users);
  nodes_[leaf].users.clear();
  std::vector<Embedding> points;
  points.reserve(roster.size());
  for (const PlacementRef& p : roster) points.push_back(users_[p.user].embedding);

  ClusterResult clusters =
      TwoMeans(points, DeriveSeed(params_.seed, kSplitStream, leaf),
               params_.kmeans_max_iters, params_.kmeans_tol);
  ++splits_;
  kmeans_iterations_ += static_cast<std::uint64_t>(clusters.iterations_used);

  const auto child_a = static_cast<NodeId>(nodes_.size());
  const auto child_b = static_cast<NodeId>(nodes_.size() + 1);
  TreeNode a;
  a.parent = leaf;
  a.depth = nodes_[leaf].depth + 1;
  TreeNode b = a;
  nodes_.push_back(std::move(a));
  nodes_.push_back(std::move(b));

  TreeNode& split = nodes_[leaf];
  split.is_leaf = false;
  split.child_a = child_a;
  split.child_b = child_b;
  split.centroid_a = std::move(clusters.centroid_a);
  split.centroid_b = std::move(clusters.centroid_b);

  // Residents follow their cluster, which keeps both children non-empty
  // (and therefore each at most M) even for degenerate input.
  for (std::size_t i = 0; i < roster.size(); ++i) {
    const PlacementRef& p = roster[i];
    const NodeId target =
        clusters.assignment[i] == Cluster::kA ? child_a : child_b;
    users_[p.user].leaves[p.clone_index] = target;
    AddToRoster(target, p);
  }
  // Residents near the new boundary also clone into the other child, as long
  // as that child stays within capacity.
  if (params_.delta > 0.0 && !clusters.degenerate) {
    const TreeNode& s = nodes_[leaf];
    for (std::size_t i = 0; i < roster.size(); ++i) {
      const UserIndex user = roster[i].user;
      const double d1 = EuclideanDistance(points[i], s.centroid_a);
      const double d2 = EuclideanDistance(points[i], s.centroid_b);
      if (!(std::abs(d1 - d2) < params_.delta)) continue;
      const NodeId other =
          clusters.assignment[i] == Cluster::kA ? child_b : child_a;
      if (nodes_[other].users.size() >= params_.leaf_capacity) continue;
      auto& leaves = users_[user].leaves;
      const auto clone = static_cast<std::uint32_t>(leaves.size());
      leaves.push_back(other);
      AddToRoster(other, PlacementRef{user, clone});
    }
  }
}

std::vector<NodeId> Tree::Leaves() const {
  std::vector<NodeId> out;
  for (NodeId n = 0; n < nodes_.size(); ++n) {
    if (nodes_[n].is_leaf) out.push_back(n);
  }
  return out;
}

NodeId Tree::RouteToLeaf(const Embedding& embedding) const {
  NodeId n = root();
  while (!nodes_[n].is_leaf) {
    const TreeNode& node = nodes_[n];
    const double d1 = EuclideanDistance(embedding, node.centroid_a);
    const double d2 = EuclideanDistance(embedding, node.centroid_b);
    n = d1 <= d2 ? node.child_a : node.child_b;
  }
  return n;
}

// ---------------------------------------------------------------------------
// Serialization

std::string Tree::Serialize() const {
  using nlohmann::json;
  json doc;
  doc["format"] = kFormat;
  doc["version"] = kFormatVersion;
  doc["dim"] = dim_;
  doc["params"] = {{"leaf_capacity", params_.leaf_capacity},
                   {"delta", params_.delta},
                   {"seed", params_.seed},
                   {"kmeans_max_iters", params_.kmeans_max_iters},
                   {"kmeans_tol", params_.kmeans_tol}};
  doc["counters"] = {{"insertion_comparisons", comparisons_},
                     {"splits", splits_},
                     {"kmeans_iterations", kmeans_iterations_}};
  json users = json::array();
  for (const UserSlot& u : users_) {
    users.push_back({{"id", u.id},
                     {"embedding", std::vector<double>(u.embedding.values().begin(),
                                                       u.embedding.values().end())},
                     {"placements", u.leaves}});
  }
  doc["users"] = std::move(users);
  json nodes = json::array();
  for (const TreeNode& n : nodes_) {
    json jn;
    jn["parent"] = n.parent ? json(*n.parent) : json(nullptr);
    jn["depth"] = n.depth;
    if (n.is_leaf) {
      jn["kind"] = "leaf";
      json roster = json::array();
      for (const PlacementRef& p : n.users) {
        roster.push_back({p.user, p.clone_index});
      }
      jn["users"] = std::move(roster);
    } else {
      jn["kind"] = "split";
      jn["centroid_a"] = std::vector<double>(n.centroid_a.values().begin(),
                                             n.centroid_a.values().end());
      jn["centroid_b"] = std::vector<double>(n.centroid_b.values().begin(),
                                             n.centroid_b.values().end());
      jn["child_a"] = n.child_a;
      jn["child_b"] = n.child_b;
    }
    nodes.push_back(std::move(jn));
  }
  doc["nodes"] = std::move(nodes);
  return doc.dump(1);
}

Tree Tree::Deserialize(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IngestionError("tree", 0, e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != kFormat ||
        doc.at("version").get<int>() != kFormatVersion) {
      throw IngestionError("tree", 0, "not a semantica tree (version 1)");
    }
    const auto& jp = doc.at("params");
    TreeParams params;
    params.leaf_capacity = jp.at("leaf_capacity").get<std::size_t>();
    params.delta = jp.at("delta").get<double>();
    params.seed = jp.at("seed").get<std::uint64_t>();
    params.kmeans_max_iters = jp.at("kmeans_max_iters").get<int>();
    params.kmeans_tol = jp.at("kmeans_tol").get<double>();
    Tree tree(doc.at("dim").get<std::size_t>(), params);
    const auto& counters = doc.at("counters");
    tree.comparisons_ = counters.at("insertion_comparisons").get<std::uint64_t>();
    tree.splits_ = counters.at("splits").get<std::uint64_t>();
    tree.kmeans_iterations_ = counters.at("kmeans_iterations").get<std::uint64_t>();
    for (const auto& ju : doc.at("users")) {
      const UserIndex u = tree.AddUser(
          ju.at("id").get<std::string>(),
          Embedding(ju.at("embedding").get<std::vector<double>>()));
      tree.users_[u].leaves = ju.at("placements").get<std::vector<NodeId>>();
    }
    tree.nodes_.clear();
    for (const auto& jn : doc.at("nodes")) {
      TreeNode n;
      if (!jn.at("parent").is_null()) n.parent = jn.at("parent").get<NodeId>();
      n.depth = jn.at("depth").get<std::uint32_t>();
      const std::string kind = jn.at("kind").get<std::string>();
      if (kind == "leaf") {
        for (const auto& p : jn.at("users")) {
          n.users.push_back(PlacementRef{p.at(0).get<UserIndex>(),
                                         p.at(1).get<std::uint32_t>()});
        }
      } else if (kind == "split") {
        n.is_leaf = false;
        n.centroid_a = Embedding(jn.at("centroid_a").get<std::vector<double>>());
        n.centroid_b = Embedding(jn.at("centroid_b").get<std::vector<double>>());
        n.child_a = jn.at("child_a").get<NodeId>();
        n.child_b = jn.at("child_b").get<NodeId>();
      } else {
        throw IngestionError("tree", 0, "unknown node kind '" + kind + "'");
      }
      tree.nodes_.push_back(std::move(n));
    }
    if (tree.nodes_.empty()) throw IngestionError("tree", 0, "no nodes");
    return tree;
  } catch (const json::exception& e) {
    throw IngestionError("tree", 0, e.what());
  }
}

void Tree::Save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw IngestionError(path.string(), 0, "cannot write file");
  out << Serialize() << '\n';
}

Tree Tree::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError(path.string(), 0, "cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Deserialize(buffer.str());
}

// ---------------------------------------------------------------------------

Tree BuildTree(const Workload& workload, const TreeParams& params) {
  if (workload.size() == 0) throw DomainError("cannot build a tree of no users");
  Tree tree(workload.dim(), params);
  for (const UserProfile& p : workload.users()) {
    tree.AddUser(p.user_id, p.embedding);
  }
  std::vector<UserIndex> order(workload.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(DeriveSeed(params.seed, kShuffleStream));
  rng.Shuffle(std::span<UserIndex>(order));
  for (UserIndex u : order) tree.Insert(u);
  return tree;
}

std::vector<PlacementRef> LeafBfsCollect(const Tree& tree, NodeId start_leaf,
                                         std::size_t needed,
                                         std::optional<UserIndex> exclude,
                                         std::uint64_t seed) {
  std::vector<PlacementRef> out;
  if (needed == 0) return out;
  std::vector<bool> visited(tree.node_count(), false);
  std::vector<bool> taken(tree.user_count(), false);
  if (exclude) taken[*exclude] = true;
  std::deque<NodeId> queue = {start_leaf};
  visited[start_leaf] = true;
  while (!queue.empty()) {
    const NodeId n = queue.front();
    queue.pop_front();
    const TreeNode& node = tree.node(n);
    if (node.is_leaf) {
      std::vector<PlacementRef> order = node.users;
      Rng rng(DeriveSeed(seed, kLeafOrderStream, n));
      rng.Shuffle(std::span<PlacementRef>(order));
      for (const PlacementRef& p : order) {
        if (taken[p.user]) continue;
        taken[p.user] = true;
        out.push_back(p);
        if (out.size() == needed) return out;
      }
    } else {
      for (NodeId child : {node.child_a, node.child_b}) {
        if (!visited[child]) {
          visited[child] = true;
          queue.push_back(child);
        }
      }
    }
    if (node.parent && !visited[*node.parent]) {
      visited[*node.parent] = true;
      queue.push_back(*node.parent);
    }
  }
  return out;
}

DistributionSummary Summarize(std::span<const double> values) {
  DistributionSummary s;
  if (values.empty()) return s;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  s.median = n % 2 == 1 ? sorted[n / 2]
                        : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) /
           static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double v : sorted) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return s;
}

TreeStats ComputeTreeStats(const Tree& tree) {
  TreeStats stats;
  for (NodeId n = 0; n < tree.node_count(); ++n) {
    const TreeNode& node = tree.node(n);
    if (!node.is_leaf) continue;
    ++stats.leaf_count;
    stats.height = std::max(stats.height, node.depth);
    stats.users_per_leaf.push_back(node.users.size());
    ++stats.leaf_size_histogram[node.users.size()];
  }
  std::vector<double> clones;
  for (UserIndex u = 0; u < tree.user_count(); ++u) {
    if (tree.clone_count(u) == 0) continue;
    stats.clones_per_user.push_back(tree.clone_count(u));
    clones.push_back(static_cast<double>(tree.clone_count(u)));
  }
  stats.clones = Summarize(clones);
  return stats;
}

}  // namespace semantica
