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
#include <map>
#include <span>
#include <string>
#include <vector>

#include "embdrift/binner.hpp"
#include "embdrift/drift.hpp"
#include "embdrift/vectorstore.hpp"

namespace embdrift::experiments {

struct Split {
  Dataset base;
  Dataset pool;
};

// Seeded split without replacement; base receives round(frac * n) records.
// Both halves keep the input order.
Split split_baseline(const Dataset& ds, double frac, std::uint64_t seed);

// Production mixture recipe. Labels in `proportions` get exactly their share
// of n (largest-remainder rounding); the leftover share 1 - sum is drawn
// uniformly from records whose label is not selected.
struct ScenarioSpec {
  std::map<std::string, double> proportions;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

struct Scenario {
  Dataset data;
  std::map<std::string, std::uint64_t> label_counts;  // selected labels only
  std::uint64_t remainder_count = 0;
  // Groups that had to be sampled with replacement; "*" marks the remainder.
  std::vector<std::string> resampled;
};

// Integer counts summing to n, proportional to shares (which sum to 1 within 1e-9).
// Ties in the fractional parts go to the lower index.
std::vector<std::uint64_t> largest_remainder(std::span<const double> shares, std::size_t n);

Scenario make_scenario(const Dataset& pool, const ScenarioSpec& spec);

// Empirical label distribution over the sorted union of labels.
std::map<std::string, double> label_distribution(const Dataset& ds);

// JSD between the label distributions of two labeled datasets.
double label_jsd(const Dataset& base, const Dataset& prod);

struct SweepPoint {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation of samples
  std::vector<double> samples;
};

struct Series {
  std::string name;
  std::vector<SweepPoint> points;
};

struct SweepResult {
  std::string parameter;  // "fraction", "k" or "d"
  std::vector<double> x;
  std::vector<Series> series;

  const Series* find(const std::string& name) const;
};

// One embedding of the same records: a baseline plus either the pool that
// scenarios are drawn from or a fixed production set. Records are matched
// across embeddings by id.
struct EmbeddingInput {
  std::string name;
  const Dataset* base = nullptr;
  const Dataset* other = nullptr;
};

struct SweepOptions {
  BinnerOptions binner;
  Metric metric = Metric::kJsd;
};

// Reference series holding the label-distribution JSD in sensitivity curves.
inline constexpr const char* kLabelSeries = "label_distribution";

// Drift of scenarios {label: fraction} for every fraction, per embedding,
// plus the label-distribution JSD. Scenario i uses seed + i and is drawn once
// (on the first embedding's pool) so all embeddings see the same records.
SweepResult sensitivity_curve(std::span<const EmbeddingInput> embeddings, const std::string& label,
                              std::span<const double> fractions, std::size_t n, std::size_t k,
                              std::uint64_t seed, const SweepOptions& options = {});

SweepResult sensitivity_curve(const Dataset& base, const Dataset& pool, const std::string& label,
                              std::span<const double> fractions, std::size_t n, std::size_t k,
                              std::uint64_t seed, const SweepOptions& options = {});

// compute_drift for every k on fixed base/prod datasets.
SweepResult cluster_sweep(std::span<const EmbeddingInput> embeddings,
                          std::span<const std::size_t> ks, std::uint64_t seed,
                          const SweepOptions& options = {});
SweepResult cluster_sweep(const Dataset& base, const Dataset& prod,
                          std::span<const std::size_t> ks, std::uint64_t seed,
                          const SweepOptions& options = {});

struct DimSweepOptions {
  SweepOptions sweep;
  // When set, every repeat fits k-means with `seed`; otherwise seed + repeat.
  bool fixed_kmeans_seed = false;
};

// For every d: `repeats` random component subsets (seed + repeat), one drift
// value each, summarized by mean and std. Embeddings with dim < d are skipped
// for that d (their point is left empty).
SweepResult dim_sweep(std::span<const EmbeddingInput> embeddings, std::span<const std::size_t> dims,
                      std::size_t repeats, std::size_t k, std::uint64_t seed,
                      const DimSweepOptions& options = {});
SweepResult dim_sweep(const Dataset& base, const Dataset& prod, std::span<const std::size_t> dims,
                      std::size_t repeats, std::size_t k, std::uint64_t seed,
                      const DimSweepOptions& options = {});

// Rows `x,series,mean,std`.
std::string sweep_to_csv(const SweepResult& result);

}  // namespace embdrift::experiments
