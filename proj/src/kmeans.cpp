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

#include "embdrift/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "embdrift/error.hpp"
#include "embdrift/parallel.hpp"
#include "embdrift/rng.hpp"

namespace embdrift {

Matrix to_matrix(const Dataset& ds) {
  Matrix m(ds.records.size(), ds.dim);
  for (std::size_t i = 0; i < ds.records.size(); ++i) {
    const auto& v = ds.records[i].vector;
    if (v.size() != ds.dim) {
      throw DimensionMismatch("record '" + ds.records[i].id + "' has dimension " +
                              std::to_string(v.size()) + ", expected " + std::to_string(ds.dim));
    }
    std::copy(v.begin(), v.end(), m.row(i).begin());
  }
  return m;
}

namespace kmeans {

namespace {

// k-means++: first seed uniform, then each next seed drawn with probability
// proportional to its squared distance from the nearest chosen seed.
Matrix plus_plus_init(const Matrix& points, std::size_t k, Rng& rng) {
  const std::size_t n = points.rows;
  Matrix centroids(k, points.cols);
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());

  std::size_t chosen = rng.index(n);
  for (std::size_t c = 0; c < k; ++c) {
    auto dst = centroids.row(c);
    auto src = points.row(chosen);
    std::copy(src.begin(), src.end(), dst.begin());
    if (c + 1 == k) {
      break;
    }
    parallel_for(n, [&](std::size_t i) {
      nearest[i] = std::min(nearest[i], squared_distance(points.row(i), centroids.row(c)));
    });
    double total = 0.0;
    for (double d : nearest) {
      total += d;
    }
    // total > 0 is guaranteed while fewer than `distinct` seeds are chosen.
    const double target = rng.uniform() * total;
    double running = 0.0;
    chosen = n;
    for (std::size_t i = 0; i < n; ++i) {
      running += nearest[i];
      if (running > target && nearest[i] > 0.0) {
        chosen = i;
        break;
      }
    }
    if (chosen == n) {
      // Rounding pushed target past the last increment; take the last point
      // that still carries weight.
      for (std::size_t i = n; i-- > 0;) {
        if (nearest[i] > 0.0) {
          chosen = i;
          break;
        }
      }
    }
  }
  return centroids;
}

double assign_all(const Matrix& points, const Matrix& centroids, std::vector<std::size_t>& labels,
                  std::vector<double>& distances) {
  parallel_for(points.rows, [&](std::size_t i) {
    const auto p = points.row(i);
    std::size_t best = 0;
    double best_d = squared_distance(p, centroids.row(0));
    for (std::size_t c = 1; c < centroids.rows; ++c) {
      const double d = squared_distance(p, centroids.row(c));
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    labels[i] = best;
    distances[i] = best_d;
  });
  // Sequential sum in point order: identical for any thread count.
  double inertia = 0.0;
  for (double d : distances) {
    inertia += d;
  }
  return inertia;
}

// Moves one point into every empty cluster: the point farthest from its
// current centroid, lowest index on ties, taken only from clusters that keep
// at least one member.
void repair_empty_clusters(std::vector<std::size_t>& labels, std::vector<double>& distances,
                           std::size_t k) {
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t l : labels) {
    ++counts[l];
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] != 0) {
      continue;
    }
    std::size_t donor = labels.size();
    double far = -1.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (counts[labels[i]] >= 2 && distances[i] > far) {
        far = distances[i];
        donor = i;
      }
    }
    if (donor == labels.size()) {
      throw Error("k-means: cannot repair empty cluster (too few points)");
    }
    --counts[labels[donor]];
    labels[donor] = c;
    distances[donor] = 0.0;
    counts[c] = 1;
  }
}

void update_centroids(const Matrix& points, const std::vector<std::size_t>& labels,
                      Matrix& centroids) {
  const std::size_t k = centroids.rows;
  std::vector<std::size_t> counts(k, 0);
  std::fill(centroids.values.begin(), centroids.values.end(), 0.0);
  for (std::size_t i = 0; i < points.rows; ++i) {
    auto dst = centroids.row(labels[i]);
    auto src = points.row(i);
    for (std::size_t j = 0; j < points.cols; ++j) {
      dst[j] += src[j];
    }
    ++counts[labels[i]];
  }
  for (std::size_t c = 0; c < k; ++c) {
    auto dst = centroids.row(c);
    const double inv = static_cast<double>(counts[c]);
    for (double& v : dst) {
      v /= inv;
    }
  }
}

}  // namespace

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return sum;
}

std::size_t assign(const Matrix& centroids, std::span<const double> point) {
  if (centroids.rows == 0) {
    throw InvalidArgument("assign: no centroids");
  }
  if (point.size() != centroids.cols) {
    throw DimensionMismatch("assign: point has dimension " + std::to_string(point.size()) +
                            ", centroids have " + std::to_string(centroids.cols));
  }
  std::size_t best = 0;
  double best_d = squared_distance(point, centroids.row(0));
  for (std::size_t c = 1; c < centroids.rows; ++c) {
    const double d = squared_distance(point, centroids.row(c));
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

std::size_t count_distinct(const Matrix& points) {
  std::vector<std::size_t> order(points.rows);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto row_less = [&](std::size_t a, std::size_t b) {
    auto ra = points.row(a);
    auto rb = points.row(b);
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
  };
  std::sort(order.begin(), order.end(), row_less);
  std::size_t distinct = order.empty() ? 0 : 1;
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (row_less(order[i - 1], order[i])) {
      ++distinct;
    }
  }
  return distinct;
}

Model fit(const Matrix& points, std::size_t k, std::uint64_t seed, const Options& options) {
  if (k == 0) {
    throw InvalidArgument("k-means: k must be positive");
  }
  if (options.max_iter == 0) {
    throw InvalidArgument("k-means: max_iter must be at least 1");
  }
  if (!(options.tol >= 0.0)) {
    throw InvalidArgument("k-means: tol must be nonnegative");
  }
  if (points.rows == 0 || points.cols == 0) {
    throw EmptyInput("k-means: no points");
  }
  const std::size_t distinct = count_distinct(points);
  if (k > distinct) {
    throw InvalidArgument("k-means: k=" + std::to_string(k) + " exceeds the " +
                          std::to_string(distinct) + " distinct points");
  }

  Rng rng(seed);
  Model model;
  model.seed = seed;
  model.centroids = plus_plus_init(points, k, rng);

  const std::size_t n = points.rows;
  std::vector<std::size_t> labels(n, 0);
  std::vector<std::size_t> previous(n, 0);
  std::vector<double> distances(n, 0.0);

  double inertia = assign_all(points, model.centroids, labels, distances);
  model.inertia_history.push_back(inertia);

  for (std::size_t iter = 1; iter <= options.max_iter; ++iter) {
    repair_empty_clusters(labels, distances, k);
    update_centroids(points, labels, model.centroids);
    previous = labels;
    const double prev_inertia = inertia;
    inertia = assign_all(points, model.centroids, labels, distances);
    model.inertia_history.push_back(inertia);
    model.iterations = iter;

    if (labels == previous) {
      model.converged = true;
      break;
    }
    if (prev_inertia <= 0.0 || (prev_inertia - inertia) < options.tol * prev_inertia) {
      model.converged = true;
      break;
    }
  }
  model.inertia = inertia;
  return model;
}

Model fit(const Dataset& points, std::size_t k, std::uint64_t seed, const Options& options) {
  return fit(to_matrix(points), k, seed, options);
}

}  // namespace kmeans
}  // namespace embdrift
