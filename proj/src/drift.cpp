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

#include "embdrift/drift.hpp"

#include <algorithm>
#include <cmath>

#include "embdrift/error.hpp"

namespace embdrift {

namespace {

constexpr double kSumTolerance = 1e-9;

void check_distribution(std::span<const double> v, const char* name) {
  double sum = 0.0;
  for (double x : v) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw InvalidArgument(std::string(name) + " has a negative or non-finite entry");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw InvalidArgument(std::string(name) + " sums to " + std::to_string(sum) +
                          ", not 1");
  }
}

void check_pair(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw DimensionMismatch("distributions have lengths " + std::to_string(p.size()) + " and " +
                            std::to_string(q.size()));
  }
  if (p.empty()) {
    throw InvalidArgument("distributions are empty");
  }
  check_distribution(p, "p");
  check_distribution(q, "q");
}

// x * log2(x / m), with 0 * log 0 = 0.
double kl_term(double x, double m) { return x > 0.0 ? x * std::log2(x / m) : 0.0; }

std::vector<double> contributions_unchecked(std::span<const double> p,
                                            std::span<const double> q) {
  std::vector<double> out(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double m = 0.5 * (p[i] + q[i]);
    out[i] = 0.5 * (kl_term(p[i], m) + kl_term(q[i], m));
  }
  return out;
}

double sum_clamped(const std::vector<double>& terms) {
  double total = 0.0;
  for (double t : terms) {
    total += t;
  }
  return std::clamp(total, 0.0, 1.0);
}

}  // namespace

std::string to_string(Metric metric) {
  switch (metric) {
    case Metric::kJsd:
      return "jsd";
    case Metric::kTvd:
      return "tvd";
    case Metric::kHellinger:
      return "hellinger";
  }
  return "jsd";
}

Metric parse_metric(const std::string& name) {
  if (name == "jsd") return Metric::kJsd;
  if (name == "tvd") return Metric::kTvd;
  if (name == "hellinger") return Metric::kHellinger;
  throw InvalidArgument("unknown metric '" + name + "' (expected jsd, tvd or hellinger)");
}

double jsd(std::span<const double> p, std::span<const double> q) {
  check_pair(p, q);
  return sum_clamped(contributions_unchecked(p, q));
}

std::vector<double> bin_contributions(std::span<const double> p, std::span<const double> q) {
  check_pair(p, q);
  return contributions_unchecked(p, q);
}

double distance(std::span<const double> p, std::span<const double> q, Metric metric) {
  check_pair(p, q);
  switch (metric) {
    case Metric::kJsd:
      return sum_clamped(contributions_unchecked(p, q));
    case Metric::kTvd: {
      double sum = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        sum += std::abs(p[i] - q[i]);
      }
      return std::clamp(0.5 * sum, 0.0, 1.0);
    }
    case Metric::kHellinger: {
      double sum = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = std::sqrt(p[i]) - std::sqrt(q[i]);
        sum += d * d;
      }
      return std::clamp(std::sqrt(0.5 * sum), 0.0, 1.0);
    }
  }
  return 0.0;
}

DriftReport report_from_histogram(const BaselineModel& model, const Histogram& prod,
                                  Metric metric) {
  if (prod.frequencies.size() != model.k) {
    throw DimensionMismatch("histogram has " + std::to_string(prod.frequencies.size()) +
                            " bins, model has " + std::to_string(model.k));
  }
  if (prod.n == 0) {
    throw EmptyInput("production histogram is empty");
  }
  DriftReport report;
  report.metric = metric;
  report.k = model.k;
  report.n_base = model.created_n;
  report.n_prod = prod.n;
  report.value = distance(model.frequencies, prod.frequencies, metric);

  // Per-bin attribution sums to value for every metric. Hellinger is not
  // additive, so its squared per-bin terms are rescaled to the total.
  std::vector<double> contrib;
  const auto& p = model.frequencies;
  const auto& q = prod.frequencies;
  switch (metric) {
    case Metric::kJsd:
      contrib = contributions_unchecked(p, q);
      break;
    case Metric::kTvd:
      for (std::size_t i = 0; i < p.size(); ++i) {
        contrib.push_back(0.5 * std::abs(p[i] - q[i]));
      }
      break;
    case Metric::kHellinger: {
      double total = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = std::sqrt(p[i]) - std::sqrt(q[i]);
        contrib.push_back(d * d);
        total += d * d;
      }
      for (double& c : contrib) {
        c = total > 0.0 ? report.value * c / total : 0.0;
      }
      break;
    }
  }
  report.per_bin.reserve(model.k);
  for (std::size_t i = 0; i < model.k; ++i) {
    report.per_bin.push_back({i, model.frequencies[i], prod.frequencies[i], contrib[i]});
  }
  return report;
}

DriftReport compute_drift_with_model(const BaselineModel& model, const Dataset& prod,
                                     Metric metric) {
  return report_from_histogram(model, bin(model, prod), metric);
}

DriftReport compute_drift(const Dataset& base, const Dataset& prod, std::size_t k,
                          std::uint64_t seed, const BinnerOptions& options, Metric metric) {
  if (base.empty() || prod.empty()) {
    throw EmptyInput("compute_drift: baseline and production must be non-empty");
  }
  if (base.dim != prod.dim) {
    throw DimensionMismatch("baseline has dimension " + std::to_string(base.dim) +
                            ", production has " + std::to_string(prod.dim));
  }
  const BaselineModel model = initialize_clusters(base, k, seed, options);
  return compute_drift_with_model(model, prod, metric);
}

}  // namespace embdrift
