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

#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <span>
#include <vector>

#include "editlens/embedding.hpp"

// Data-parallel inner loops. Each kernel has an OpenMP version used by the
// library and a plain serial version under `reference` kept for tests and
// benchmarks. Both compute every output element in one iteration with the
// same arithmetic order and produce bit-identical results.
namespace editlens::kernels {

// Sorted, duplicate-free sparse vector.
struct SparseVector {
  std::vector<std::uint32_t> indices;
  std::vector<double> values;

  std::size_t nnz() const { return indices.size(); }
  bool operator==(const SparseVector&) const = default;
};

// out[q] = max_r cosine_similarity(queries[q], refs[r]); refs must be non-empty.
std::vector<double> max_cosine(std::span<const embedding::EmbeddingVector> queries,
                               std::span<const embedding::EmbeddingVector> refs);

// logits[i * n_out + k] = bias[k] + sum_j weights[k * dim + j] * rows[i][j].
std::vector<double> linear_logits(std::span<const SparseVector> rows, std::span<const double> weights,
                                  std::span<const double> bias, std::size_t n_out, std::size_t dim);

// Runs body(i) for i in [0, count) with independent iterations. The first
// exception thrown by any iteration is rethrown on the calling thread.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
  const auto n = static_cast<std::ptrdiff_t>(count);
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(editlens_parallel_for_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

int max_threads();

namespace reference {

std::vector<double> max_cosine(std::span<const embedding::EmbeddingVector> queries,
                               std::span<const embedding::EmbeddingVector> refs);

std::vector<double> linear_logits(std::span<const SparseVector> rows, std::span<const double> weights,
                                  std::span<const double> bias, std::size_t n_out, std::size_t dim);

}  // namespace reference

}  // namespace editlens::kernels
