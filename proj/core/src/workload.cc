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

#include "semantica/workload.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <utility>

#include "semantica/errors.h"
#include "semantica/rng.h"

namespace semantica {
namespace {

constexpr std::uint64_t kSplitStream = 0x5e1;
constexpr std::uint64_t kSynthStream = 0x5e2;

std::uint64_t Fnv1a(std::uint64_t h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t Fnv1a(std::uint64_t h, std::string_view s) {
  h = Fnv1a(h, s.data(), s.size());
  const unsigned char sep = 0xff;
  return Fnv1a(h, &sep, 1);
}

std::uint64_t HashString(std::string_view s) {
  return Fnv1a(0xcbf29ce484222325ULL, s);
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::string_view StripCr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

std::optional<double> ParseDouble(std::string_view s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return v;
}

std::string FormatDouble(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

// ---------------------------------------------------------------------------
// Corpus

DocIndex Corpus::Add(std::string doc_id, Embedding embedding) {
  if (dim_ == 0) dim_ = embedding.dim();
  if (embedding.dim() != dim_) {
    throw StructuralError("document '" + doc_id + "' has dim " +
                          std::to_string(embedding.dim()) + ", corpus dim " +
                          std::to_string(dim_));
  }
  if (embedding.Norm() == 0.0) {
    throw DomainError("document '" + doc_id + "' has a zero-norm embedding");
  }
  const auto index = static_cast<DocIndex>(ids_.size());
  if (!index_.emplace(doc_id, index).second) {
    throw DomainError("duplicate document id '" + doc_id + "'");
  }
  ids_.push_back(std::move(doc_id));
  embeddings_.push_back(std::move(embedding));
  return index;
}

std::optional<DocIndex> Corpus::Find(std::string_view doc_id) const {
  const auto it = index_.find(std::string(doc_id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// Dedupe, grouping, filtering, splitting

bool TimestampLess(std::string_view a, std::string_view b) {
  const auto na = ParseDouble(a);
  const auto nb = ParseDouble(b);
  if (na && nb) return *na < *nb;
  return a < b;
}

std::vector<AccessEvent> DedupeFirstAccess(
    std::span<const AccessEvent> events) {
  // (user, doc) -> index of the winning event so far.
  std::map<std::pair<std::string_view, std::string_view>, std::size_t> best;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto key = std::pair<std::string_view, std::string_view>(
        events[i].user_id, events[i].doc_id);
    auto [it, inserted] = best.emplace(key, i);
    if (!inserted &&
        TimestampLess(events[i].timestamp, events[it->second].timestamp)) {
      it->second = i;
    }
  }
  std::vector<bool> keep(events.size(), false);
  for (const auto& [key, index] : best) keep[index] = true;
  std::vector<AccessEvent> out;
  out.reserve(best.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (keep[i]) out.push_back(events[i]);
  }
  return out;
}

std::vector<RawProfile> GroupByUser(std::span<const AccessEvent> events) {
  std::map<std::string, RawProfile> by_user;
  std::map<std::string, std::unordered_map<std::string, bool>> seen;
  for (const AccessEvent& e : events) {
    RawProfile& p = by_user[e.user_id];
    p.user_id = e.user_id;
    if (seen[e.user_id].emplace(e.doc_id, true).second) {
      p.doc_ids.push_back(e.doc_id);
      p.query_texts.push_back(e.query_text);
    }
  }
  std::vector<RawProfile> out;
  out.reserve(by_user.size());
  for (auto& [id, profile] : by_user) out.push_back(std::move(profile));
  return out;
}

std::vector<RawProfile> FilterMinDocs(std::vector<RawProfile> profiles,
                                      std::size_t min_docs) {
  std::erase_if(profiles, [min_docs](const RawProfile& p) {
    return p.doc_ids.size() < min_docs;
  });
  return profiles;
}

UserProfile SplitTrainTest(std::string user_id, std::span<const DocIndex> docs,
                           const Corpus& corpus, std::size_t test_size,
                           std::uint64_t seed) {
  if (docs.size() <= test_size) {
    throw DomainError("user '" + user_id + "' has " +
                      std::to_string(docs.size()) +
                      " documents, needs more than test_size=" +
                      std::to_string(test_size));
  }
  std::vector<DocIndex> order(docs.begin(), docs.end());
  Rng rng(seed);
  // Partial Fisher-Yates: the first test_size slots are a uniform sample.
  for (std::size_t i = 0; i < test_size; ++i) {
    const std::size_t j = i + rng.UniformIndex(order.size() - i);
    std::swap(order[i], order[j]);
  }
  UserProfile p;
  p.user_id = std::move(user_id);
  p.test_docs.assign(order.begin(), order.begin() + test_size);
  p.train_docs.assign(order.begin() + test_size, order.end());
  std::sort(p.test_docs.begin(), p.test_docs.end());
  std::sort(p.train_docs.begin(), p.train_docs.end());
  std::vector<std::size_t> idx(p.train_docs.begin(), p.train_docs.end());
  p.embedding = MeanEmbedding(corpus.embeddings(), idx);
  return p;
}

// ---------------------------------------------------------------------------
// Workload

Workload::Workload(Corpus corpus, std::vector<UserProfile> users)
    : corpus_(std::move(corpus)), users_(std::move(users)) {
  holders_.assign(corpus_.size(), {});
  for (std::size_t u = 0; u < users_.size(); ++u) {
    UserProfile& p = users_[u];
    if (u > 0 && !(users_[u - 1].user_id < p.user_id)) {
      throw DomainError("user ids must be unique and ascending at '" +
                        p.user_id + "'");
    }
    if (p.train_docs.empty()) {
      throw DomainError("user '" + p.user_id + "' has no training documents");
    }
    if (!p.test_queries.empty() && p.test_queries.size() != p.test_docs.size()) {
      throw DomainError("user '" + p.user_id +
                        "' has a query list that does not match its test set");
    }
    std::sort(p.train_docs.begin(), p.train_docs.end());
    std::sort(p.test_docs.begin(), p.test_docs.end());
    for (const auto* list : {&p.train_docs, &p.test_docs}) {
      for (std::size_t i = 0; i < list->size(); ++i) {
        if ((*list)[i] >= corpus_.size()) {
          throw DomainError("user '" + p.user_id + "' references an unknown "
                            "document index");
        }
        if (i > 0 && (*list)[i] == (*list)[i - 1]) {
          throw DomainError("user '" + p.user_id + "' lists a document twice");
        }
      }
    }
    for (DocIndex d : p.test_docs) {
      if (std::binary_search(p.train_docs.begin(), p.train_docs.end(), d)) {
        throw DomainError("user '" + p.user_id + "' has document '" +
                          corpus_.id(d) + "' in both train and test");
      }
    }
    std::vector<std::size_t> idx(p.train_docs.begin(), p.train_docs.end());
    Embedding expected = MeanEmbedding(corpus_.embeddings(), idx);
    if (p.embedding.dim() == 0) {
      p.embedding = std::move(expected);
    } else if (!(p.embedding == expected)) {
      throw DomainError("user '" + p.user_id +
                        "' embedding is not the mean of its training documents");
    }
    if (p.embedding.Norm() == 0.0) {
      throw DomainError("user '" + p.user_id + "' has a zero-norm embedding");
    }
    user_index_.emplace(p.user_id, static_cast<UserIndex>(u));
    for (DocIndex d : p.train_docs) {
      holders_[d].push_back(static_cast<UserIndex>(u));
    }
  }
}

std::optional<UserIndex> Workload::FindUser(std::string_view user_id) const {
  const auto it = user_index_.find(std::string(user_id));
  if (it == user_index_.end()) return std::nullopt;
  return it->second;
}

bool Workload::Holds(UserIndex u, DocIndex doc) const {
  const auto& train = users_[u].train_docs;
  return std::binary_search(train.begin(), train.end(), doc);
}

std::span<const UserIndex> Workload::Holders(DocIndex doc) const {
  return holders_[doc];
}

const Embedding& Workload::QueryEmbedding(UserIndex u,
                                          std::size_t slot) const {
  const UserProfile& p = users_[u];
  if (!p.test_queries.empty()) return p.test_queries[slot];
  return corpus_.embedding(p.test_docs[slot]);
}

std::uint64_t Workload::ContentHash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const std::uint64_t dimension = dim();
  h = Fnv1a(h, &dimension, sizeof dimension);
  auto hash_embedding = [&h](const Embedding& e) {
    for (double v : e.values()) {
      const auto bits = std::bit_cast<std::uint64_t>(v);
      h = Fnv1a(h, &bits, sizeof bits);
    }
  };
  for (DocIndex d = 0; d < corpus_.size(); ++d) {
    h = Fnv1a(h, corpus_.id(d));
    hash_embedding(corpus_.embedding(d));
  }
  for (const UserProfile& p : users_) {
    h = Fnv1a(h, p.user_id);
    for (DocIndex d : p.train_docs) h = Fnv1a(h, &d, sizeof d);
    h = Fnv1a(h, "|");
    for (DocIndex d : p.test_docs) h = Fnv1a(h, &d, sizeof d);
    for (const Embedding& q : p.test_queries) hash_embedding(q);
  }
  return h;
}

CosineIndex BuildUserCosineIndex(const Workload& workload) {
  std::vector<Embedding> rows;
  rows.reserve(workload.size());
  for (const UserProfile& p : workload.users()) rows.push_back(p.embedding);
  return CosineIndex(rows);
}

// ---------------------------------------------------------------------------
// Embedding files

Corpus ParseEmbeddings(std::istream& in, const std::string& source) {
  Corpus corpus;
  std::string line;
  std::size_t line_no = 0;
  std::size_t dim = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = StripCr(line);
    if (dim == 0) {
      if (view.empty()) continue;
      if (!view.starts_with("dim=")) {
        throw IngestionError(source, line_no, "expected header 'dim=<D>'");
      }
      const std::string_view num = view.substr(4);
      std::size_t parsed = 0;
      const auto [ptr, ec] =
          std::from_chars(num.data(), num.data() + num.size(), parsed);
      if (ec != std::errc() || ptr != num.data() + num.size() || parsed == 0) {
        throw IngestionError(source, line_no, "invalid dimension in header");
      }
      dim = parsed;
      corpus = Corpus(dim);
      continue;
    }
    if (view.empty()) continue;
    const std::size_t tab = view.find('\t');
    if (tab == std::string_view::npos || tab == 0) {
      throw IngestionError(source, line_no, "expected '<id>\\t<values>'");
    }
    const std::string_view id = view.substr(0, tab);
    std::string_view rest = view.substr(tab + 1);
    std::vector<double> values;
    values.reserve(dim);
    while (!rest.empty()) {
      const std::size_t start = rest.find_first_not_of(' ');
      if (start == std::string_view::npos) break;
      rest.remove_prefix(start);
      const std::size_t end = std::min(rest.find(' '), rest.size());
      const auto v = ParseDouble(rest.substr(0, end));
      if (!v || !std::isfinite(*v)) {
        throw IngestionError(source, line_no,
                             "invalid number '" +
                                 std::string(rest.substr(0, end)) + "'");
      }
      values.push_back(*v);
      rest.remove_prefix(end);
    }
    if (values.size() != dim) {
      throw IngestionError(source, line_no,
                           "expected " + std::to_string(dim) + " values, got " +
                               std::to_string(values.size()));
    }
    try {
      corpus.Add(std::string(id), Embedding(std::move(values)));
    } catch (const std::exception& e) {
      throw IngestionError(source, line_no, e.what());
    }
  }
  return corpus;
}

Corpus LoadEmbeddingFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError(path.string(), 0, "cannot open file");
  return ParseEmbeddings(in, path.string());
}

void WriteEmbeddings(std::ostream& out, const Corpus& corpus) {
  out << "dim=" << corpus.dim() << '\n';
  for (DocIndex d = 0; d < corpus.size(); ++d) {
    out << corpus.id(d) << '\t';
    const auto values = corpus.embedding(d).values();
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i > 0) out << ' ';
      out << FormatDouble(values[i]);
    }
    out << '\n';
  }
}

void WriteEmbeddingFile(const std::filesystem::path& path,
                        const Corpus& corpus) {
  std::ofstream out(path);
  if (!out) throw IngestionError(path.string(), 0, "cannot write file");
  WriteEmbeddings(out, corpus);
}

// ---------------------------------------------------------------------------
// Access logs and dataset assembly

std::vector<AccessEvent> ParseAccessLog(std::istream& in,
                                        const std::string& source) {
  std::vector<AccessEvent> events;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = StripCr(line);
    if (view.empty()) continue;
    const auto fields = SplitTabs(view);
    if (line_no == 1) {
      std::string first(fields[0]);
      std::transform(first.begin(), first.end(), first.begin(),
                     [](unsigned char c) { return std::tolower(c); });
      if (first.find("user") != std::string::npos || first == "anonid") {
        continue;
      }
    }
    if (fields.size() < 4) {
      throw IngestionError(source, line_no,
                           "expected at least 4 tab-separated columns");
    }
    if (fields[0].empty() || fields[3].empty()) {
      throw IngestionError(source, line_no, "empty user_id or doc_id");
    }
    events.push_back(AccessEvent{std::string(fields[0]), std::string(fields[3]),
                                 std::string(fields[2]),
                                 std::string(fields[1])});
  }
  return events;
}

std::vector<AccessEvent> LoadAccessLog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError(path.string(), 0, "cannot open file");
  return ParseAccessLog(in, path.string());
}

Workload BuildDatasetWorkload(std::span<const AccessEvent> events,
                              const Corpus& doc_embeddings,
                              const Corpus* query_embeddings,
                              const DatasetOptions& options,
                              DatasetReport* report) {
  DatasetReport local;
  local.events_read = events.size();
  std::vector<AccessEvent> deduped = DedupeFirstAccess(events);
  local.events_after_dedupe = deduped.size();
  const auto missing = std::erase_if(deduped, [&](const AccessEvent& e) {
    return !doc_embeddings.Find(e.doc_id).has_value();
  });
  local.events_missing_embedding = missing;

  std::vector<RawProfile> raw = GroupByUser(deduped);
  local.users_before_filter = raw.size();
  raw = FilterMinDocs(std::move(raw), options.min_docs);
  local.users_after_filter = raw.size();

  // Corpus restricted to referenced documents, in doc_id order.
  std::map<std::string, DocIndex> referenced;
  for (const RawProfile& p : raw) {
    for (const std::string& d : p.doc_ids) referenced.emplace(d, 0);
  }
  Corpus corpus(doc_embeddings.dim());
  for (auto& [id, index] : referenced) {
    index = corpus.Add(id, doc_embeddings.embedding(*doc_embeddings.Find(id)));
  }

  std::vector<UserProfile> users;
  users.reserve(raw.size());
  for (const RawProfile& p : raw) {
    std::vector<DocIndex> docs;
    docs.reserve(p.doc_ids.size());
    for (const std::string& d : p.doc_ids) docs.push_back(referenced.at(d));
    UserProfile profile =
        SplitTrainTest(p.user_id, docs, corpus, options.test_size,
                       DeriveSeed(options.seed, kSplitStream,
                                  HashString(p.user_id)));
    if (query_embeddings != nullptr && !profile.test_docs.empty()) {
      std::unordered_map<DocIndex, const std::string*> query_of;
      for (std::size_t i = 0; i < docs.size(); ++i) {
        query_of.emplace(docs[i], &p.query_texts[i]);
      }
      for (DocIndex d : profile.test_docs) {
        const auto q = query_embeddings->Find(*query_of.at(d));
        profile.test_queries.push_back(q ? query_embeddings->embedding(*q)
                                         : corpus.embedding(d));
      }
    }
    users.push_back(std::move(profile));
  }
  if (report != nullptr) *report = local;
  return Workload(std::move(corpus), std::move(users));
}

// ---------------------------------------------------------------------------
// Workload directories

void SaveWorkload(const Workload& workload, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  WriteEmbeddingFile(dir / "docs.emb", workload.corpus());
  std::ofstream users(dir / "users.tsv");
  if (!users) throw IngestionError((dir / "users.tsv").string(), 0,
                                   "cannot write file");
  Corpus queries(workload.dim());
  for (const UserProfile& p : workload.users()) {
    for (DocIndex d : p.train_docs) {
      users << p.user_id << "\ttrain\t" << workload.corpus().id(d) << '\n';
    }
    for (std::size_t i = 0; i < p.test_docs.size(); ++i) {
      const std::string& doc = workload.corpus().id(p.test_docs[i]);
      users << p.user_id << "\ttest\t" << doc << '\n';
      if (!p.test_queries.empty()) {
        queries.Add(p.user_id + "|" + doc, p.test_queries[i]);
      }
    }
  }
  if (!queries.empty()) WriteEmbeddingFile(dir / "queries.emb", queries);
}

Workload LoadWorkload(const std::filesystem::path& dir) {
  Corpus corpus = LoadEmbeddingFile(dir / "docs.emb");
  std::optional<Corpus> queries;
  if (std::filesystem::exists(dir / "queries.emb")) {
    queries = LoadEmbeddingFile(dir / "queries.emb");
  }
  const std::string source = (dir / "users.tsv").string();
  std::ifstream in(dir / "users.tsv");
  if (!in) throw IngestionError(source, 0, "cannot open file");
  std::map<std::string, UserProfile> by_user;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = StripCr(line);
    if (view.empty()) continue;
    const auto fields = SplitTabs(view);
    if (fields.size() != 3 || (fields[1] != "train" && fields[1] != "test")) {
      throw IngestionError(source, line_no,
                           "expected '<user_id>\\ttrain|test\\t<doc_id>'");
    }
    const auto doc = corpus.Find(fields[2]);
    if (!doc) {
      throw IngestionError(source, line_no,
                           "unknown document '" + std::string(fields[2]) + "'");
    }
    UserProfile& p = by_user[std::string(fields[0])];
    p.user_id = std::string(fields[0]);
    (fields[1] == "train" ? p.train_docs : p.test_docs).push_back(*doc);
  }
  std::vector<UserProfile> users;
  users.reserve(by_user.size());
  for (auto& [id, p] : by_user) {
    std::sort(p.test_docs.begin(), p.test_docs.end());
    if (queries) {
      for (DocIndex d : p.test_docs) {
        const auto q = queries->Find(id + "|" + corpus.id(d));
        p.test_queries.push_back(q ? queries->embedding(*q)
                                   : corpus.embedding(d));
      }
    }
    users.push_back(std::move(p));
  }
  return Workload(std::move(corpus), std::move(users));
}

// ---------------------------------------------------------------------------
// Synthetic workloads

namespace {

std::vector<double> GaussianOffset(Rng& rng, std::size_t dim, double scale) {
  std::vector<double> v(dim);
  const double s = scale / std::sqrt(static_cast<double>(dim));
  for (double& x : v) x = rng.Normal() * s;
  return v;
}

Embedding Jitter(Rng& rng, std::span<const double> base, double scale) {
  std::vector<double> v = GaussianOffset(rng, base.size(), scale);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += base[i];
  return Embedding(std::move(v));
}

std::string PaddedNumber(std::size_t value, std::size_t width) {
  std::string s = std::to_string(value);
  if (s.size() < width) s.insert(0, width - s.size(), '0');
  return s;
}

}  // namespace

SyntheticWorkload SynthesizeWorkload(const SynthParams& params) {
  if (params.n_users == 0 || params.n_clusters == 0 ||
      params.docs_per_user == 0 || params.dim == 0) {
    throw DomainError("synthetic workload counts must be positive");
  }
  if (params.co_occurrence_rate < 0.0 || params.co_occurrence_rate > 1.0) {
    throw DomainError("co_occurrence_rate must be in [0, 1]");
  }
  Rng rng(DeriveSeed(params.seed, kSynthStream));
  const std::size_t dim = params.dim;

  SyntheticWorkload out;
  for (std::size_t c = 0; c < params.n_clusters; ++c) {
    Embedding raw;
    do {
      raw = Embedding(GaussianOffset(rng, dim, 1.0));
    } while (raw.Norm() == 0.0);
    out.centers.push_back(Normalized(raw));
  }

  const auto shared_per_user = static_cast<std::size_t>(std::llround(
      params.co_occurrence_rate * static_cast<double>(params.docs_per_user)));
  const std::size_t pool_size =
      params.pool_size > 0 ? params.pool_size
                           : std::max<std::size_t>(4 * params.docs_per_user, 1);
  if (shared_per_user > pool_size) {
    throw DomainError("pool_size is smaller than the shared documents per user");
  }
  const std::size_t window = std::min(pool_size, 2 * shared_per_user);

  Corpus corpus(dim);
  const std::size_t cluster_width =
      std::to_string(params.n_clusters - 1).size();
  const std::size_t pool_width = std::to_string(pool_size - 1).size();
  std::vector<std::vector<DocIndex>> pools(params.n_clusters);
  if (shared_per_user > 0) {
    for (std::size_t c = 0; c < params.n_clusters; ++c) {
      for (std::size_t k = 0; k < pool_size; ++k) {
        Embedding e =
            Normalized(Jitter(rng, out.centers[c].values(), params.noise_scale));
        pools[c].push_back(corpus.Add("c" + PaddedNumber(c, cluster_width) +
                                          "/p" + PaddedNumber(k, pool_width),
                                      std::move(e)));
      }
    }
  }

  const std::size_t user_width =
      std::max<std::size_t>(5, std::to_string(params.n_users - 1).size());
  const std::size_t doc_width =
      std::to_string(params.docs_per_user - 1).size();
  std::vector<std::vector<DocIndex>> user_docs(params.n_users);
  out.cluster_of.resize(params.n_users);
  for (std::size_t u = 0; u < params.n_users; ++u) {
    const auto c = static_cast<std::uint32_t>(rng.UniformIndex(params.n_clusters));
    out.cluster_of[u] = c;
    const Embedding position =
        Jitter(rng, out.centers[c].values(), params.noise_scale);
    const std::string uid = "u" + PaddedNumber(u, user_width);

    for (std::size_t k = shared_per_user; k < params.docs_per_user; ++k) {
      Embedding e = Normalized(Jitter(rng, position.values(), params.noise_scale));
      user_docs[u].push_back(
          corpus.Add(uid + "/d" + PaddedNumber(k, doc_width), std::move(e)));
    }
    if (shared_per_user > 0) {
      // Nearest pool documents to this user's position, then a uniform sample.
      std::vector<std::pair<double, DocIndex>> ranked;
      ranked.reserve(pool_size);
      for (DocIndex d : pools[c]) {
        ranked.emplace_back(EuclideanDistance(position, corpus.embedding(d)), d);
      }
      std::partial_sort(ranked.begin(), ranked.begin() + window, ranked.end());
      for (std::size_t i = 0; i < shared_per_user; ++i) {
        const std::size_t j = i + rng.UniformIndex(window - i);
        std::swap(ranked[i], ranked[j]);
        user_docs[u].push_back(ranked[i].second);
      }
    }
  }

  std::vector<UserProfile> users;
  users.reserve(params.n_users);
  for (std::size_t u = 0; u < params.n_users; ++u) {
    users.push_back(SplitTrainTest(
        "u" + PaddedNumber(u, user_width), user_docs[u], corpus,
        params.test_size, DeriveSeed(params.seed, kSplitStream, u)));
  }
  out.workload = Workload(std::move(corpus), std::move(users));
  return out;
}

// ---------------------------------------------------------------------------
// Statistics

std::vector<UserCooccurrence> CooccurrenceStats(const Workload& workload) {
  const std::size_t n = workload.size();
  std::vector<std::vector<UserIndex>> doc_users(workload.corpus().size());
  for (UserIndex u = 0; u < n; ++u) {
    const UserProfile& p = workload.user(u);
    for (DocIndex d : p.train_docs) doc_users[d].push_back(u);
    for (DocIndex d : p.test_docs) doc_users[d].push_back(u);
  }
  std::vector<UserCooccurrence> out(n);
  std::vector<std::size_t> shared(n, 0);
  for (UserIndex u = 0; u < n; ++u) {
    out[u].user = u;
    std::fill(shared.begin(), shared.end(), 0);
    const UserProfile& p = workload.user(u);
    for (const auto* list : {&p.train_docs, &p.test_docs}) {
      for (DocIndex d : *list) {
        for (UserIndex v : doc_users[d]) {
          if (v != u) ++shared[v];
        }
      }
    }
    for (UserIndex v = 0; v < n; ++v) {
      if (v == u) continue;
      out[u].max_shared_docs = std::max(out[u].max_shared_docs, shared[v]);
      out[u].max_cosine =
          std::max(out[u].max_cosine,
                   CosineSimilarity(workload.user_embedding(u),
                                    workload.user_embedding(v)));
    }
  }
  return out;
}

}  // namespace semantica
