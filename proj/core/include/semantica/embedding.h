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

// Dense embedding vectors and the similarity kernel shared by every module.

#ifndef SEMANTICA_EMBEDDING_H_
#define SEMANTICA_EMBEDDING_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace semantica {

// Fixed-dimension vector of finite doubles. Values are stored in double
// precision regardless of the precision of the source file.
class Embedding {
 public:
  Embedding() = default;
  // Throws DomainError on an empty vector or a non-finite component.
  explicit Embedding(std::vector<double> values);
  Embedding(std::initializer_list<double> values);

  // All-zero vector of the given dimension. Used as an accumulator only.
  static Embedding Zeros(std::size_t dim);

  std::size_t dim() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  double Norm() const;

  friend bool operator==(const Embedding&, const Embedding&) = default;

 private:
  std::vector<double> values_;
};

using Similarity = double;

double Dot(const Embedding& a, const Embedding& b);

// dot(a, b) / (|a| |b|). Throws StructuralError on a dimension mismatch and
// DomainError when either input has zero norm.
Similarity CosineSimilarity(const Embedding& a, const Embedding& b);

// L2 norm of a - b. Throws StructuralError on a dimension mismatch.
double EuclideanDistance(const Embedding& a, const Embedding& b);

// Componentwise arithmetic mean. Throws DomainError on an empty input and
// StructuralError when dimensions differ.
Embedding MeanEmbedding(std::span<const Embedding> vectors);

// Same as above over a subset of `pool` selected by index.
Embedding MeanEmbedding(std::span<const Embedding> pool,
                        std::span<const std::size_t> indices);

// a / |a|. Throws DomainError on a zero vector.
Embedding Normalized(const Embedding& a);

// Pre-normalized copies of a fixed set of vectors, so repeated cosine
// lookups cost one dot product. Rows keep the order of the input.
class CosineIndex {
 public:
  CosineIndex() = default;
  explicit CosineIndex(std::span<const Embedding> vectors);

  std::size_t size() const { return dim_ == 0 ? 0 : unit_.size() / dim_; }

  Similarity operator()(std::size_t i, std::size_t j) const;
  // Cosine between an arbitrary non-zero vector and row j.
  Similarity operator()(const Embedding& query, std::size_t j) const;

 private:
  std::span<const double> Row(std::size_t i) const {
    return std::span<const double>(unit_).subspan(i * dim_, dim_);
  }

  std::size_t dim_ = 0;
  std::vector<double> unit_;
};

}  // namespace semantica

#endif  // SEMANTICA_EMBEDDING_H_
