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
#include <filesystem>
#include <string>
#include <vector>

#include "embdrift/kmeans.hpp"
#include "embdrift/vectorstore.hpp"

namespace embdrift {

// Fitted baseline: k-means centroids plus the normalized histogram of the
// baseline data over them. Bin i is the nearest-centroid region of row i.
struct BaselineModel {
  static constexpr int kFormatVersion = 1;

  Matrix centroids;
  std::vector<double> frequencies;
  std::vector<std::uint64_t> counts;
  std::size_t k = 0;
  std::size_t dim = 0;
  std::uint64_t seed = 0;
  std::string prng = "mt19937_64";
  bool normalize = false;  // L2-normalize vectors before fit and bin
  std::uint64_t created_n = 0;

  bool operator==(const BaselineModel&) const = default;
};

struct Histogram {
  std::vector<std::uint64_t> counts;
  std::vector<double> frequencies;
  std::uint64_t n = 0;

  bool operator==(const Histogram&) const = default;
};

struct BinnerOptions {
  bool normalize = false;
  kmeans::Options kmeans;
};

// Fits k-means on the baseline and histograms the baseline over the result.
BaselineModel initialize_clusters(const Dataset& base, std::size_t k, std::uint64_t seed,
                                  const BinnerOptions& options = {});

// Applies the model's preprocessing (L2 normalization if enabled) to ds.
Dataset preprocess(const BaselineModel& model, const Dataset& ds);

// Nearest-centroid bin of every record, in record order.
std::vector<std::size_t> assign_bins(const BaselineModel& model, const Dataset& ds);

Histogram bin(const BaselineModel& model, const Dataset& ds);

// counts / total; all zeros when total is 0.
Histogram histogram_from_counts(std::vector<std::uint64_t> counts);

void save_model(const BaselineModel& model, const std::filesystem::path& path);
BaselineModel load_model(const std::filesystem::path& path);

std::string model_to_json(const BaselineModel& model);
BaselineModel model_from_json(const std::string& text);

}  // namespace embdrift
