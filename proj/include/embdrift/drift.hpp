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
#include <string>
#include <vector>

#include "embdrift/binner.hpp"
#include "embdrift/vectorstore.hpp"

namespace embdrift {

enum class Metric { kJsd, kTvd, kHellinger };

std::string to_string(Metric metric);
Metric parse_metric(const std::string& name);

struct BinDrift {
  std::size_t bin = 0;
  double p = 0.0;  // baseline frequency
  double q = 0.0;  // production frequency
  double contribution = 0.0;

  bool operator==(const BinDrift&) const = default;
};

struct DriftReport {
  double value = 0.0;
  Metric metric = Metric::kJsd;
  std::size_t k = 0;
  std::uint64_t n_base = 0;
  std::uint64_t n_prod = 0;
  std::vector<BinDrift> per_bin;

  bool operator==(const DriftReport&) const = default;
};

// Jensen-Shannon divergence with base-2 logs, so the result lies in [0, 1].
// Inputs must have equal length, nonnegative entries and sum to 1 within 1e-9.
double jsd(std::span<const double> p, std::span<const double> q);

// Per-bin split of jsd(p, q): 0.5 * [p_i log2(p_i/m_i) + q_i log2(q_i/m_i)].
// Individual terms may be negative; they sum to jsd(p, q).
std::vector<double> bin_contributions(std::span<const double> p, std::span<const double> q);

// tvd = 0.5 * sum |p - q|; hellinger = sqrt(0.5 * sum (sqrt p - sqrt q)^2).
double distance(std::span<const double> p, std::span<const double> q, Metric metric);

// Fits a baseline on `base` and measures `prod` against it.
DriftReport compute_drift(const Dataset& base, const Dataset& prod, std::size_t k,
                          std::uint64_t seed, const BinnerOptions& options = {},
                          Metric metric = Metric::kJsd);

DriftReport compute_drift_with_model(const BaselineModel& model, const Dataset& prod,
                                     Metric metric = Metric::kJsd);

// Builds a report from an already-binned production histogram.
DriftReport report_from_histogram(const BaselineModel& model, const Histogram& prod,
                                  Metric metric = Metric::kJsd);

}  // namespace embdrift
