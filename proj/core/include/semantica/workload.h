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

// Users, their documents and the embeddings that place them in semantic
// space. A Workload is either ingested from an access log plus an embedding
// file, or synthesized from Gaussian clusters for desk-scale runs.

#ifndef SEMANTICA_WORKLOAD_H_
#define SEMANTICA_WORKLOAD_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "semantica/embedding.h"

namespace semantica {

// Dense indices. User indices follow ascending user_id order, so index order
// doubles as the user_id tie-break everywhere.
using UserIndex = std::uint32_t;
using DocIndex = std::uint32_t;

// Documents keyed by opaque id, in insertion order.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::size_t dim) : dim_(dim) {}

  // Throws DomainError on a duplicate id or a zero-norm embedding and
  // StructuralError on a dimension mismatch.
  DocIndex Add(std::string doc_id, Embedding embedding);

  std::optional<DocIndex> Find(std::string_view doc_id) const;

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  // 0 until a dimension is fixed by the first record or the constructor.
  std::size_t dim() const { return dim_; }

  const std::string& id(DocIndex d) const { return ids_[d]; }
  const Embedding& embedding(DocIndex d) const { return embeddings_[d]; }
  std::span<const Embedding> embeddings() const { return embeddings_; }

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> ids_;
  std::vector<Embedding> embeddings_;
  std::unordered_map<std::string, DocIndex> index_;
};

struct AccessEvent {
  std::string user_id;
  std::string doc_id;
  std::string timestamp;
  std::string query_text;
};

// Orders timestamps numerically when both parse as numbers, otherwise
// lexicographically (ISO-8601 style stamps sort correctly as text).
bool TimestampLess(std::string_view a, std::string_view b);

// Keeps, per (user_id, doc_id), the event with the minimum timestamp. Ties
// keep the earliest event in input order. Survivors keep their input order.
std::vector<AccessEvent> DedupeFirstAccess(std::span<const AccessEvent> events);

// A user's unique documents before the split, in first-access order.
struct RawProfile {
  std::string user_id;
  std::vector<std::string> doc_ids;
  std::vector<std::string> query_texts;  // parallel to doc_ids
};

// Groups deduplicated events by user. Output is sorted by user_id.
std::vector<RawProfile> GroupByUser(std::span<const AccessEvent> events);

// Drops users with fewer than `min_docs` unique documents.
std::vector<RawProfile> FilterMinDocs(std::vector<RawProfile> profiles,
                                      std::size_t min_docs = 30);

struct UserProfile {
  std::string user_id;
  std::vector<DocIndex> train_docs;  // sorted ascending
  std::vector<DocIndex> test_docs;   // sorted ascending
  // Either empty (queries use the test document's own embedding) or parallel
  // to test_docs.
  std::vector<Embedding> test_queries;
  Embedding embedding;  // mean of the train documents' embeddings
};

// Samples exactly `test_size` of `docs` uniformly without replacement into
// the test set; the rest become training documents and define the user
// embedding. Throws DomainError unless docs.size() > test_size.
UserProfile SplitTrainTest(std::string user_id, std::span<const DocIndex> docs,
                           const Corpus& corpus, std::size_t test_size,
                           std::uint64_t seed);

class Workload {
 public:
  Workload() = default;
  // Validates the profiles: ids strictly ascending, train and test disjoint,
  // doc indices in range, train non-empty, user embedding consistent with the
  // train documents. Throws DomainError otherwise.
  Workload(Corpus corpus, std::vector<UserProfile> users);

  const Corpus& corpus() const { return corpus_; }
  std::span<const UserProfile> users() const { return users_; }
  const UserProfile& user(UserIndex u) const { return users_[u]; }
  std::size_t size() const { return users_.size(); }
  std::size_t dim() const { return corpus_.dim(); }

  const Embedding& user_embedding(UserIndex u) const {
    return users_[u].embedding;
  }
  std::optional<UserIndex> FindUser(std::string_view user_id) const;

  // Perfect local search: true iff `doc` is among u's training documents.
  bool Holds(UserIndex u, DocIndex doc) const;
  // Users holding `doc` as a training document, ascending.
  std::span<const UserIndex> Holders(DocIndex doc) const;

  // Embedding used to query for the test document in `slot` of u's test set.
  const Embedding& QueryEmbedding(UserIndex u, std::size_t slot) const;

  // FNV-1a over ids, splits and embedding bits. Keys on-disk caches.
  std::uint64_t ContentHash() const;

 private:
  Corpus corpus_;
  std::vector<UserProfile> users_;
  std::unordered_map<std::string, UserIndex> user_index_;
  std::vector<std::vector<UserIndex>> holders_;
};

// Cosine index over the user embeddings, row i == UserIndex i.
CosineIndex BuildUserCosineIndex(const Workload& workload);

// ---------------------------------------------------------------------------
// Files

// Embedding file: header `dim=<D>`, then `<id>\t<f1> ... <fD>` per line.
// An empty file yields an empty corpus. Throws IngestionError naming the line
// on malformed records, dimension mismatches, duplicate ids and zero-norm
// vectors.
Corpus ParseEmbeddings(std::istream& in, const std::string& source);
Corpus LoadEmbeddingFile(const std::filesystem::path& path);

// Writes at round-trip precision, so a reload is bit-identical.
void WriteEmbeddings(std::ostream& out, const Corpus& corpus);
void WriteEmbeddingFile(const std::filesystem::path& path,
                        const Corpus& corpus);

// Access log: tab-separated `user_id, query_text, timestamp, doc_id, title`,
// extra columns ignored. A first line whose first field reads like a column
// name ("user", "userid", "anonid", ...) is skipped as a header.
std::vector<AccessEvent> ParseAccessLog(std::istream& in,
                                        const std::string& source);
std::vector<AccessEvent> LoadAccessLog(const std::filesystem::path& path);

struct DatasetOptions {
  std::size_t min_docs = 30;
  std::size_t test_size = 10;
  std::uint64_t seed = 0;
};

struct DatasetReport {
  std::size_t events_read = 0;
  std::size_t events_after_dedupe = 0;
  std::size_t events_missing_embedding = 0;
  std::size_t users_before_filter = 0;
  std::size_t users_after_filter = 0;
};

// Dedupe, drop events whose document has no embedding, filter users by unique
// document count, then split each survivor. `query_embeddings`, keyed by query
// text, supplies query vectors for test documents when present.
Workload BuildDatasetWorkload(std::span<const AccessEvent> events,
                              const Corpus& doc_embeddings,
                              const Corpus* query_embeddings,
                              const DatasetOptions& options,
                              DatasetReport* report = nullptr);

// Workload directory: docs.emb, users.tsv (`user_id\ttrain|test\tdoc_id`) and,
// when any user carries query vectors, queries.emb keyed `user_id|doc_id`.
void SaveWorkload(const Workload& workload, const std::filesystem::path& dir);
Workload LoadWorkload(const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// Synthetic workloads

struct SynthParams {
  std::size_t n_users = 2000;
  std::size_t n_clusters = 10;
  std::size_t docs_per_user = 40;
  std::size_t dim = 64;
  // Norm of the Gaussian offsets applied to user positions and documents.
  double noise_scale = 0.5;
  // Fraction of each user's documents drawn from its cluster's shared pool.
  double co_occurrence_rate = 0.5;
  std::size_t test_size = 10;
  // Shared documents per cluster; 0 picks 4 * docs_per_user.
  std::size_t pool_size = 0;
  std::uint64_t seed = 0;
};

struct SyntheticWorkload {
  Workload workload;
  std::vector<Embedding> centers;
  std::vector<std::uint32_t> cluster_of;  // per user
};

// Cluster centers are random unit vectors. Each user sits at its center plus
// noise; its private documents scatter around that position and its shared
// documents are sampled from the pool documents nearest to it, so users that
// are close in space also co-hold documents. All documents have unit norm.
SyntheticWorkload SynthesizeWorkload(const SynthParams& params);

// ---------------------------------------------------------------------------
// Statistics

struct UserCooccurrence {
  UserIndex user = 0;
  std::size_t max_shared_docs = 0;  // over all other users, train and test
  Similarity max_cosine = -1.0;     // between user embeddings
};

// One entry per user, in user order. With a single user both maxima stay at
// their neutral values (0 and -1).
std::vector<UserCooccurrence> CooccurrenceStats(const Workload& workload);

}  // namespace semantica

#endif  // SEMANTICA_WORKLOAD_H_
