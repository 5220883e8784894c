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

#include "embdrift/selectk.hpp"

#include <algorithm>
#include <map>

#include "embdrift/error.hpp"

namespace embdrift {

namespace {

class FeasibilityCache {
 public:
  FeasibilityCache(const Dataset& base, const SelectKOptions& options)
      : base_(base), options_(options), distinct_(kmeans::count_distinct(to_matrix(base))) {}

  bool feasible(std::size_t k) { return evaluate(k).feasible; }

  const KFeasibility& evaluate(std::size_t k) {
    if (auto it = entries_.find(k); it != entries_.end()) {
      return it->second.info;
    }
    Entry entry;
    entry.info.k = k;
    // A k that cannot hold m_min points per bin, or exceeds the distinct
    // point count, is infeasible without fitting.
    if (k <= distinct_ && options_.m_min * k <= base_.size()) {
      entry.model = initialize_clusters(base_, k, options_.seed, options_.binner);
      entry.info.min_count = *std::min_element(entry.model->counts.begin(),
                                               entry.model->counts.end());
      entry.info.feasible = entry.info.min_count >= options_.m_min;
    }
    return entries_.emplace(k, std::move(entry)).first->second.info;
  }

  SelectKResult result(std::size_t k, bool linear) {
    SelectKResult out;
    out.k = k;
    out.model = *entries_.at(k).model;
    out.used_linear_scan = linear;
    for (const auto& [_, e] : entries_) {
      out.evaluated.push_back(e.info);
    }
    return out;
  }

 private:
  struct Entry {
    KFeasibility info;
    std::optional<BaselineModel> model;
  };

  const Dataset& base_;
  const SelectKOptions& options_;
  std::size_t distinct_;
  std::map<std::size_t, Entry> entries_;
};

void check_options(const Dataset& base, const SelectKOptions& options) {
  if (base.empty()) {
    throw EmptyInput("select_k: baseline dataset is empty");
  }
  if (options.m_min == 0) {
    throw InvalidArgument("select_k: m_min must be positive");
  }
  if (options.k_min < 2) {
    throw InvalidArgument("select_k: k_min must be at least 2");
  }
  if (options.k_max < options.k_min) {
    throw InvalidArgument("select_k: k_max must be >= k_min");
  }
}

std::size_t linear_scan(FeasibilityCache& cache, const SelectKOptions& options) {
  std::size_t best = 0;
  for (std::size_t k = options.k_min; k <= options.k_max; ++k) {
    if (cache.feasible(k)) {
      best = k;
    }
  }
  return best;
}

[[noreturn]] void no_feasible(const SelectKOptions& options, std::size_t n) {
  throw NoFeasibleK("no k in [" + std::to_string(options.k_min) + ", " +
                    std::to_string(options.k_max) + "] keeps " + std::to_string(options.m_min) +
                    " points in every bin of a " + std::to_string(n) + "-point baseline");
}

}  // namespace

SelectKResult select_k(const Dataset& base, const SelectKOptions& options) {
  check_options(base, options);
  FeasibilityCache cache(base, options);
  if (!cache.feasible(options.k_min)) {
    no_feasible(options, base.size());
  }

  // Invariant: feasible(lo) holds; everything above hi is assumed infeasible.
  std::size_t lo = options.k_min;
  std::size_t hi = options.k_max;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    if (cache.feasible(mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }

  if (lo == options.k_max || !cache.feasible(lo + 1)) {
    return cache.result(lo, false);
  }
  const std::size_t k = linear_scan(cache, options);
  return cache.result(k, true);
}

SelectKResult select_k_linear(const Dataset& base, const SelectKOptions& options) {
  check_options(base, options);
  FeasibilityCache cache(base, options);
  const std::size_t k = linear_scan(cache, options);
  if (k == 0) {
    no_feasible(options, base.size());
  }
  return cache.result(k, true);
}

}  // namespace embdrift
