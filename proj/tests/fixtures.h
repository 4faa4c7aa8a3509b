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

// Small hand-built workloads shared by the unit tests.

#ifndef SEMANTICA_TESTS_FIXTURES_H_
#define SEMANTICA_TESTS_FIXTURES_H_

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "semantica/workload.h"

namespace semantica::testing {

inline std::string UserName(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "u%03zu", i);
  return buf;
}

// One user per embedding; user i holds document "d<i>" (equal to its
// embedding) for training. `extra_train[i]` lists further documents by index
// into `docs` appended after the per-user ones; `test[i]` likewise.
struct FixtureDesc {
  std::vector<std::vector<double>> users;
  std::vector<std::vector<double>> docs;
  std::vector<std::vector<std::size_t>> extra_train;
  std::vector<std::vector<std::size_t>> test;
};

inline Workload MakeWorkload(const FixtureDesc& desc) {
  Corpus corpus;
  for (std::size_t i = 0; i < desc.users.size(); ++i) {
    corpus.Add("d" + UserName(i), Embedding(desc.users[i]));
  }
  const auto first_shared = static_cast<DocIndex>(corpus.size());
  for (std::size_t j = 0; j < desc.docs.size(); ++j) {
    corpus.Add("s" + std::to_string(j), Embedding(desc.docs[j]));
  }
  std::vector<UserProfile> profiles;
  for (std::size_t i = 0; i < desc.users.size(); ++i) {
    UserProfile p;
    p.user_id = UserName(i);
    p.train_docs.push_back(static_cast<DocIndex>(i));
    if (i < desc.extra_train.size()) {
      for (std::size_t j : desc.extra_train[i]) {
        p.train_docs.push_back(first_shared + static_cast<DocIndex>(j));
      }
    }
    if (i < desc.test.size()) {
      for (std::size_t j : desc.test[i]) {
        p.test_docs.push_back(first_shared + static_cast<DocIndex>(j));
      }
    }
    profiles.push_back(std::move(p));
  }
  return Workload(std::move(corpus), std::move(profiles));
}

// Users only; each user's embedding is exactly the given vector.
inline Workload PointWorkload(const std::vector<std::vector<double>>& points) {
  return MakeWorkload({points, {}, {}, {}});
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path ScratchDir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("semantica-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace semantica::testing

#endif  // SEMANTICA_TESTS_FIXTURES_H_
