/* Copyright 2026 The editlens Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "editlens/kernels.hpp"

#include <omp.h>

#include <algorithm>

#include "editlens/error.hpp"

namespace editlens::kernels {

namespace {

double row_max(const embedding::EmbeddingVector& q, std::span<const embedding::EmbeddingVector> refs) {
  double best = -1.0;
  for (const auto& r : refs) best = std::max(best, embedding::cosine_similarity(q, r));
  return best;
}

void row_logits(const SparseVector& row, std::span<const double> weights, std::span<const double> bias,
                std::size_t n_out, std::size_t dim, double* out) {
  for (std::size_t k = 0; k < n_out; ++k) {
    const double* w = weights.data() + k * dim;
    double z = bias[k];
    for (std::size_t t = 0; t < row.nnz(); ++t) z += w[row.indices[t]] * row.values[t];
    out[k] = z;
  }
}

void check_linear(std::span<const SparseVector> rows, std::span<const double> weights, std::span<const double> bias,
                  std::size_t n_out, std::size_t dim) {
  require(weights.size() == n_out * dim, "linear_logits: weight shape mismatch");
  require(bias.size() == n_out, "linear_logits: bias shape mismatch");
  for (const auto& row : rows) {
    require(row.indices.size() == row.values.size(), "linear_logits: malformed sparse row");
    for (auto idx : row.indices) require(idx < dim, "linear_logits: feature index out of range");
  }
}

}  // namespace

int max_threads() { return omp_get_max_threads(); }

std::vector<double> max_cosine(std::span<const embedding::EmbeddingVector> queries,
                               std::span<const embedding::EmbeddingVector> refs) {
  require(!refs.empty(), "max_cosine: empty reference set");
  std::vector<double> out(queries.size());
  parallel_for(queries.size(), [&](std::size_t q) { out[q] = row_max(queries[q], refs); });
  return out;
}

std::vector<double> linear_logits(std::span<const SparseVector> rows, std::span<const double> weights,
                                  std::span<const double> bias, std::size_t n_out, std::size_t dim) {
  check_linear(rows, weights, bias, n_out, dim);
  std::vector<double> out(rows.size() * n_out);
  parallel_for(rows.size(), [&](std::size_t r) { row_logits(rows[r], weights, bias, n_out, dim, out.data() + r * n_out); });
  return out;
}

namespace reference {

std::vector<double> max_cosine(std::span<const embedding::EmbeddingVector> queries,
                               std::span<const embedding::EmbeddingVector> refs) {
  require(!refs.empty(), "max_cosine: empty reference set");
  std::vector<double> out;
  out.reserve(queries.size());
  for (const auto& q : queries) out.push_back(row_max(q, refs));
  return out;
}

std::vector<double> linear_logits(std::span<const SparseVector> rows, std::span<const double> weights,
                                  std::span<const double> bias, std::size_t n_out, std::size_t dim) {
  check_linear(rows, weights, bias, n_out, dim);
  std::vector<double> out(rows.size() * n_out);
  for (std::size_t r = 0; r < rows.size(); ++r) row_logits(rows[r], weights, bias, n_out, dim, out.data() + r * n_out);
  return out;
}

}  // namespace reference

}  // namespace editlens::kernels
