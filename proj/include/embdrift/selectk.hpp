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
#include <optional>
#include <vector>

#include "embdrift/binner.hpp"

namespace embdrift {

// One evaluated candidate: k is feasible when every baseline bin holds at
// least m_min points.
struct KFeasibility {
  std::size_t k = 0;
  bool feasible = false;
  std::uint64_t min_count = 0;  // 0 when the fit itself was impossible
};

struct SelectKResult {
  std::size_t k = 0;
  BaselineModel model;
  std::vector<KFeasibility> evaluated;  // sorted by k
  bool used_linear_scan = false;
};

struct SelectKOptions {
  std::uint64_t m_min = 50;
  std::size_t k_min = 2;
  std::size_t k_max = 100;
  std::uint64_t seed = 0;
  BinnerOptions binner;
};

// Largest k in [k_min, k_max] whose fitted baseline has no bin below m_min.
// Binary search assumes feasibility is monotone in k; if the result fails
// the k+1 post-check, falls back to a full linear scan.
SelectKResult select_k(const Dataset& base, const SelectKOptions& options);

// Reference implementation: evaluates every k in range.
SelectKResult select_k_linear(const Dataset& base, const SelectKOptions& options);

}  // namespace embdrift
