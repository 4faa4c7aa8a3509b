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

#include "semantica/embedding.h"

#include <cmath>
#include <string>
#include <utility>

#include "semantica/errors.h"

namespace semantica {
namespace {

void CheckSameDim(const Embedding& a, const Embedding& b) {
  if (a.dim() != b.dim()) {
    throw StructuralError("embedding dimension mismatch: " +
                          std::to_string(a.dim()) + " vs " +
                          std::to_string(b.dim()));
  }
}

}  // namespace

Embedding::Embedding(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DomainError("embedding must have dim > 0");
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw DomainError("embedding has a non-finite component");
    }
  }
}

Embedding::Embedding(std::initializer_list<double> values)
    : Embedding(std::vector<double>(values)) {}

Embedding Embedding::Zeros(std::size_t dim) {
  return Embedding(std::vector<double>(dim, 0.0));
}

double Embedding::Norm() const {
  double sum = 0.0;
  for (double v : values_) sum += v * v;
  return std::sqrt(sum);
}

double Dot(const Embedding& a, const Embedding& b) {
  CheckSameDim(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) sum += a[i] * b[i];
  return sum;
}

Similarity CosineSimilarity(const Embedding& a, const Embedding& b) {
  CheckSameDim(a, b);
  const double na = a.Norm();
  const double nb = b.Norm();
  if (na == 0.0 || nb == 0.0) {
    throw DomainError("cosine similarity of a zero-norm embedding");
  }
  double cos = Dot(a, b) / (na * nb);
  // Rounding can push |cos| a hair past 1 for parallel vectors.
  if (cos > 1.0) cos = 1.0;
  if (cos < -1.0) cos = -1.0;
  return cos;
}

double EuclideanDistance(const Embedding& a, const Embedding& b) {
  CheckSameDim(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

Embedding MeanEmbedding(std::span<const Embedding> vectors) {
  if (vectors.empty()) throw DomainError("mean of an empty embedding set");
  const std::size_t dim = vectors.front().dim();
  std::vector<double> sum(dim, 0.0);
  for (const Embedding& v : vectors) {
    CheckSameDim(vectors.front(), v);
    for (std::size_t i = 0; i < dim; ++i) sum[i] += v[i];
  }
  const double n = static_cast<double>(vectors.size());
  for (double& s : sum) s /= n;
  return Embedding(std::move(sum));
}

Embedding MeanEmbedding(std::span<const Embedding> pool,
                        std::span<const std::size_t> indices) {
  if (indices.empty()) throw DomainError("mean of an empty embedding set");
  const Embedding& first = pool[indices.front()];
  std::vector<double> sum(first.dim(), 0.0);
  for (std::size_t idx : indices) {
    const Embedding& v = pool[idx];
    CheckSameDim(first, v);
    for (std::size_t i = 0; i < v.dim(); ++i) sum[i] += v[i];
  }
  const double n = static_cast<double>(indices.size());
  for (double& s : sum) s /= n;
  return Embedding(std::move(sum));
}

Embedding Normalized(const Embedding& a) {
  const double n = a.Norm();
  if (n == 0.0) throw DomainError("cannot normalize a zero-norm embedding");
  std::vector<double> out(a.values().begin(), a.values().end());
  for (double& v : out) v /= n;
  return Embedding(std::move(out));
}

CosineIndex::CosineIndex(std::span<const Embedding> vectors) {
  if (vectors.empty()) return;
  dim_ = vectors.front().dim();
  unit_.reserve(vectors.size() * dim_);
  for (const Embedding& v : vectors) {
    if (v.dim() != dim_) {
      throw StructuralError("cosine index rows must share one dimension");
    }
    const double n = v.Norm();
    if (n == 0.0) throw DomainError("cosine index row has zero norm");
    for (double x : v.values()) unit_.push_back(x / n);
  }
}

Similarity CosineIndex::operator()(std::size_t i, std::size_t j) const {
  const auto a = Row(i);
  const auto b = Row(j);
  double sum = 0.0;
  for (std::size_t k = 0; k < dim_; ++k) sum += a[k] * b[k];
  return sum;
}

Similarity CosineIndex::operator()(const Embedding& query,
                                   std::size_t j) const {
  if (query.dim() != dim_) {
    throw StructuralError("query dimension does not match the cosine index");
  }
  const double n = query.Norm();
  if (n == 0.0) throw DomainError("cosine similarity of a zero-norm query");
  const auto b = Row(j);
  double sum = 0.0;
  for (std::size_t k = 0; k < dim_; ++k) sum += query[k] * b[k];
  return sum / n;
}

}  // namespace semantica
