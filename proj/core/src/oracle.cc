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

#include "semantica/oracle.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include "semantica/errors.h"

namespace semantica {

GroundTruth ComputeGroundTruth(const Workload& workload, std::size_t k) {
  const std::size_t n = workload.size();
  if (n < 2) throw DomainError("ground truth needs at least two users");
  GroundTruth truth;
  truth.k = k;
  truth.workload_hash = workload.ContentHash();
  truth.top_k.resize(n);
  const std::size_t keep = std::min(k, n - 1);
  std::vector<std::pair<double, UserIndex>> scored;
  scored.reserve(n - 1);
  for (UserIndex u = 0; u < n; ++u) {
    scored.clear();
    for (UserIndex v = 0; v < n; ++v) {
      if (v == u) continue;
      // Negated so an ascending sort is "most similar, then smallest index".
      scored.emplace_back(-CosineSimilarity(workload.user_embedding(u),
                                            workload.user_embedding(v)),
                          v);
    }
    std::partial_sort(scored.begin(), scored.begin() + keep, scored.end());
    auto& list = truth.top_k[u];
    list.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) list.push_back(scored[i].second);
  }
  return truth;
}

std::size_t RecallOf50(std::span<const UserIndex> closest,
                       std::span<const UserIndex> truth) {
  std::vector<UserIndex> a(closest.begin(), closest.end());
  std::vector<UserIndex> b(truth.begin(), truth.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  std::size_t count = 0;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end() && ib != b.end();) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

void SaveGroundTruth(const GroundTruth& truth,
                     const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IngestionError(path.string(), 0, "cannot write file");
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(truth.workload_hash));
  out << "semantica-truth " << hash << ' ' << truth.k << ' '
      << truth.top_k.size() << '\n';
  for (const auto& list : truth.top_k) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (i > 0) out << ' ';
      out << list[i];
    }
    out << '\n';
  }
}

GroundTruth LoadGroundTruth(const std::filesystem::path& path) {
  const std::string source = path.string();
  std::ifstream in(path);
  if (!in) throw IngestionError(source, 0, "cannot open file");
  std::string magic, hash;
  GroundTruth truth;
  std::size_t n = 0;
  if (!(in >> magic >> hash >> truth.k >> n) || magic != "semantica-truth") {
    throw IngestionError(source, 1, "bad ground-truth header");
  }
  truth.workload_hash = std::stoull(hash, nullptr, 16);
  std::string line;
  std::getline(in, line);
  truth.top_k.resize(n);
  for (std::size_t u = 0; u < n; ++u) {
    if (!std::getline(in, line)) {
      throw IngestionError(source, u + 2, "truncated ground-truth file");
    }
    std::istringstream row(line);
    UserIndex v;
    while (row >> v) {
      if (v >= n) throw IngestionError(source, u + 2, "user index out of range");
      truth.top_k[u].push_back(v);
    }
  }
  return truth;
}

GroundTruth CachedGroundTruth(const Workload& workload, std::size_t k,
                              const std::filesystem::path& cache_dir) {
  if (cache_dir.empty()) return ComputeGroundTruth(workload, k);
  const std::uint64_t hash = workload.ContentHash();
  char name[64];
  std::snprintf(name, sizeof name, "truth-%016llx-k%zu.txt",
                static_cast<unsigned long long>(hash), k);
  const auto path = cache_dir / name;
  if (std::filesystem::exists(path)) {
    GroundTruth cached = LoadGroundTruth(path);
    if (cached.workload_hash == hash && cached.k == k &&
        cached.top_k.size() == workload.size()) {
      return cached;
    }
  }
  GroundTruth truth = ComputeGroundTruth(workload, k);
  std::filesystem::create_directories(cache_dir);
  SaveGroundTruth(truth, path);
  return truth;
}

double CooccurrenceCeiling(const Workload& workload) {
  std::size_t total = 0;
  std::size_t reachable = 0;
  for (UserIndex u = 0; u < workload.size(); ++u) {
    for (DocIndex d : workload.user(u).test_docs) {
      ++total;
      for (UserIndex h : workload.Holders(d)) {
        if (h != u) {
          ++reachable;
          break;
        }
      }
    }
  }
  return total == 0 ? 0.0
                    : static_cast<double>(reachable) / static_cast<double>(total);
}

}  // namespace semantica
