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

#include "semantica/expansion.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "semantica/errors.h"
#include "semantica/rng.h"

namespace semantica {
namespace {

constexpr std::uint64_t kBfsStream = 0xe1;
constexpr std::uint64_t kRoundStream = 0xe2;
constexpr std::uint64_t kRandomViewStream = 0xe3;

// True when (sim_a, a) ranks ahead of (sim_b, b).
bool RanksAhead(Similarity sim_a, UserIndex a, Similarity sim_b, UserIndex b) {
  if (sim_a != sim_b) return sim_a > sim_b;
  return a < b;
}

void InsertClosest(PeerView& view, UserIndex user, Similarity sim,
                   std::size_t n_cu) {
  std::size_t pos = view.closest_users.size();
  while (pos > 0 && RanksAhead(sim, user, view.closest_similarity[pos - 1],
                               view.closest_users[pos - 1])) {
    --pos;
  }
  if (pos >= n_cu) return;
  view.closest_users.insert(view.closest_users.begin() + pos, user);
  view.closest_similarity.insert(view.closest_similarity.begin() + pos, sim);
  if (view.closest_users.size() > n_cu) {
    view.closest_users.pop_back();
    view.closest_similarity.pop_back();
  }
}

}  // namespace

PeerView MakeView(UserIndex owner, std::vector<UserIndex> known,
                  const CosineIndex& cosine, std::size_t n_cu) {
  std::sort(known.begin(), known.end());
  known.erase(std::unique(known.begin(), known.end()), known.end());
  PeerView view;
  std::vector<std::pair<Similarity, UserIndex>> ranked;
  ranked.reserve(known.size());
  for (UserIndex v : known) {
    if (v == owner) throw DomainError("a user cannot know itself");
    ranked.emplace_back(cosine(owner, v), v);
  }
  const std::size_t keep = std::min(n_cu, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + keep, ranked.end(),
                    [](const auto& a, const auto& b) {
                      return RanksAhead(a.first, a.second, b.first, b.second);
                    });
  for (std::size_t i = 0; i < keep; ++i) {
    view.closest_users.push_back(ranked[i].second);
    view.closest_similarity.push_back(ranked[i].first);
  }
  view.known_users = std::move(known);
  return view;
}

PeerViews InitViews(const Tree& tree, const Workload& workload,
                    const ExpansionParams& params) {
  if (params.n_cu == 0 || params.n_cc == 0) {
    throw DomainError("n_cu and n_cc must be at least 1");
  }
  if (tree.user_count() != workload.size()) {
    throw DomainError("tree and workload disagree on the user count");
  }
  const CosineIndex cosine = BuildUserCosineIndex(workload);
  const std::uint64_t bfs_seed = DeriveSeed(params.seed, kBfsStream);
  PeerViews views(workload.size());
  for (UserIndex u = 0; u < workload.size(); ++u) {
    if (tree.user_id(u) != workload.user(u).user_id) {
      throw DomainError("tree slot " + std::to_string(u) +
                        " does not match workload user '" +
                        workload.user(u).user_id + "'");
    }
    std::vector<UserIndex> known;
    for (NodeId leaf : tree.placements(u)) {
      for (const PlacementRef& p :
           LeafBfsCollect(tree, leaf, params.n_cc, u, bfs_seed)) {
        known.push_back(p.user);
      }
    }
    views[u] = MakeView(u, std::move(known), cosine, params.n_cu);
  }
  return views;
}

PeerViews RandomViews(const Workload& workload,
                      std::span<const std::size_t> known_sizes,
                      std::size_t n_cu, std::uint64_t seed) {
  const std::size_t n = workload.size();
  if (known_sizes.size() != n) {
    throw DomainError("one known-set size per user is required");
  }
  const CosineIndex cosine = BuildUserCosineIndex(workload);
  PeerViews views(n);
  std::vector<UserIndex> others;
  for (UserIndex u = 0; u < n; ++u) {
    others.clear();
    for (UserIndex v = 0; v < n; ++v) {
      if (v != u) others.push_back(v);
    }
    const std::size_t take = std::min(known_sizes[u], others.size());
    Rng rng(DeriveSeed(seed, kRandomViewStream, u));
    for (std::size_t i = 0; i < take; ++i) {
      const std::size_t j = i + rng.UniformIndex(others.size() - i);
      std::swap(others[i], others[j]);
    }
    views[u] = MakeView(
        u, std::vector<UserIndex>(others.begin(), others.begin() + take),
        cosine, n_cu);
  }
  return views;
}

RoundResult ExpansionRound(PeerViews& views, const CosineIndex& cosine,
                           std::size_t n_cu, std::uint64_t seed,
                           int round_index) {
  RoundResult result;
  std::vector<UserIndex> order(views.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(DeriveSeed(seed, kRoundStream, static_cast<std::uint64_t>(round_index)));
  rng.Shuffle(std::span<UserIndex>(order));

  for (UserIndex asker : order) {
    PeerView& mine = views[asker];
    if (mine.closest_users.empty()) continue;
    const UserIndex peer =
        mine.closest_users[rng.UniformIndex(mine.closest_users.size())];
    ++result.messages;

    // The peer answers with its best-matching contact the asker lacks.
    const PeerView& theirs = views[peer];
    bool found = false;
    UserIndex best = 0;
    Similarity best_sim = -std::numeric_limits<double>::infinity();
    for (UserIndex candidate : theirs.known_users) {
      if (candidate == asker) continue;
      if (std::binary_search(mine.known_users.begin(), mine.known_users.end(),
                             candidate)) {
        continue;
      }
      const Similarity sim = cosine(asker, candidate);
      if (!found || RanksAhead(sim, candidate, best_sim, best)) {
        found = true;
        best = candidate;
        best_sim = sim;
      }
    }
    if (!found) continue;
    const bool room = mine.closest_users.size() < n_cu;
    if (!room && !(best_sim > mine.closest_similarity.back())) continue;
    mine.known_users.insert(
        std::lower_bound(mine.known_users.begin(), mine.known_users.end(), best),
        best);
    InsertClosest(mine, best, best_sim, n_cu);
    ++result.accepted;
  }
  return result;
}

double MeanKnownUsers(const PeerViews& views) {
  if (views.empty()) return 0.0;
  double total = 0.0;
  for (const PeerView& v : views) total += static_cast<double>(v.known_users.size());
  return total / static_cast<double>(views.size());
}

double MeanRecall(const PeerViews& views, const GroundTruth& truth) {
  if (views.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t u = 0; u < views.size(); ++u) {
    total += static_cast<double>(
        RecallOf50(views[u].closest_users, truth.top_k[u]));
  }
  return total / static_cast<double>(views.size());
}

std::vector<RoundMetrics> RunExpansion(PeerViews& views,
                                       const Workload& workload,
                                       const ExpansionParams& params,
                                       const GroundTruth* truth) {
  const CosineIndex cosine = BuildUserCosineIndex(workload);
  auto measure = [&](int round, const RoundResult& r) {
    RoundMetrics m;
    m.round = round;
    m.mean_recall = truth != nullptr ? MeanRecall(views, *truth)
                                     : std::numeric_limits<double>::quiet_NaN();
    m.mean_known_users = MeanKnownUsers(views);
    m.accepted_introductions = r.accepted;
    m.messages = r.messages;
    return m;
  };
  std::vector<RoundMetrics> trace;
  trace.push_back(measure(0, RoundResult{}));
  for (int r = 1; r <= params.r_max; ++r) {
    const RoundResult result =
        ExpansionRound(views, cosine, params.n_cu, params.seed, r);
    trace.push_back(measure(r, result));
  }
  return trace;
}

void WriteRoundMetricsCsv(std::ostream& out,
                          std::span<const RoundMetrics> trace) {
  out << "round,mean_recall,mean_known_users,accepted_introductions\n";
  char buf[128];
  for (const RoundMetrics& m : trace) {
    std::snprintf(buf, sizeof buf, "%d,%.6f,%.6f,%zu\n", m.round,
                  m.mean_recall, m.mean_known_users, m.accepted_introductions);
    out << buf;
  }
}

void SaveViews(const PeerViews& views, const Workload& workload,
               const std::filesystem::path& path) {
  using nlohmann::json;
  json doc;
  json users = json::array();
  for (const UserProfile& p : workload.users()) users.push_back(p.user_id);
  doc["users"] = std::move(users);
  json list = json::array();
  for (const PeerView& v : views) {
    list.push_back({{"known", v.known_users}, {"closest", v.closest_users}});
  }
  doc["views"] = std::move(list);
  std::ofstream out(path);
  if (!out) throw IngestionError(path.string(), 0, "cannot write file");
  out << doc.dump() << '\n';
}

PeerViews LoadViews(const Workload& workload,
                    const std::filesystem::path& path) {
  using nlohmann::json;
  std::ifstream in(path);
  if (!in) throw IngestionError(path.string(), 0, "cannot open file");
  try {
    const json doc = json::parse(in);
    const auto ids = doc.at("users").get<std::vector<std::string>>();
    if (ids.size() != workload.size()) {
      throw IngestionError(path.string(), 0, "view file is for another workload");
    }
    for (std::size_t u = 0; u < ids.size(); ++u) {
      if (ids[u] != workload.user(static_cast<UserIndex>(u)).user_id) {
        throw IngestionError(path.string(), 0,
                             "view file user order does not match workload");
      }
    }
    const CosineIndex cosine = BuildUserCosineIndex(workload);
    PeerViews views;
    const auto& list = doc.at("views");
    for (std::size_t u = 0; u < list.size(); ++u) {
      PeerView v;
      v.known_users = list[u].at("known").get<std::vector<UserIndex>>();
      v.closest_users = list[u].at("closest").get<std::vector<UserIndex>>();
      for (UserIndex c : v.closest_users) {
        if (c >= workload.size()) {
          throw IngestionError(path.string(), 0, "user index out of range");
        }
        v.closest_similarity.push_back(cosine(static_cast<UserIndex>(u), c));
      }
      views.push_back(std::move(v));
    }
    return views;
  } catch (const json::exception& e) {
    throw IngestionError(path.string(), 0, e.what());
  }
}

}  // namespace semantica
