/*
 * Copyright 2026 The embdrift Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "embdrift/vectorstore.hpp"

namespace embdrift {

// Dense row-major matrix of doubles.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0.0) {}

  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * cols, cols};
  }
  std::span<double> row(std::size_t i) { return {values.data() + i * cols, cols}; }

  bool operator==(const Matrix&) const = default;
};

Matrix to_matrix(const Dataset& ds);

namespace kmeans {

struct Options {
  std::size_t max_iter = 300;
  double tol = 1e-6;  // relative inertia improvement
};

struct Model {
  Matrix centroids;  // k x d
  double inertia = 0.0;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  bool converged = false;
  // Inertia after every assignment step, starting with the k-means++ seeds.
  std::vector<double> inertia_history;

  std::size_t k() const { return centroids.rows; }
};

double squared_distance(std::span<const double> a, std::span<const double> b);

// Index of the nearest centroid; ties go to the lowest index.
std::size_t assign(const Matrix& centroids, std::span<const double> point);

// Number of distinct rows (exact comparison).
std::size_t count_distinct(const Matrix& points);

// Lloyd's algorithm from a k-means++ start. Deterministic in
// (points, k, seed, options); the assignment step may run on several threads.
Model fit(const Matrix& points, std::size_t k, std::uint64_t seed, const Options& options = {});
Model fit(const Dataset& points, std::size_t k, std::uint64_t seed, const Options& options = {});

}  // namespace kmeans
}  // namespace embdrift
