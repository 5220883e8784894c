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
#include <string>
#include <vector>

#include "embdrift/binner.hpp"
#include "embdrift/drift.hpp"

namespace embdrift {

struct WindowPoint {
  std::int64_t window_start = 0;  // epoch seconds, multiple of window_seconds
  std::uint64_t n = 0;
  std::optional<DriftReport> report;  // nullopt: no events in the window

  bool operator==(const WindowPoint&) const = default;
};

// Tumbling windows [start, start + window_seconds) aligned to the epoch.
struct WindowedDriftSeries {
  std::int64_t window_seconds = 0;
  std::vector<WindowPoint> points;  // ascending window_start, no gaps

  bool operator==(const WindowedDriftSeries&) const = default;
};

struct AlertPolicy {
  double threshold = 0.1;
  std::uint64_t min_events = 50;
};

struct Alert {
  std::int64_t window_start = 0;
  double value = 0.0;
  std::uint64_t n = 0;

  bool operator==(const Alert&) const = default;
};

// floor(timestamp / window_seconds) * window_seconds, also for negative times.
std::int64_t window_start_for(std::int64_t timestamp, std::int64_t window_seconds);

// Partitions timestamped events into tumbling windows and measures each
// non-empty window against the model. Empty windows between the first and
// last event are emitted with no report.
WindowedDriftSeries window_drift(const BaselineModel& model, const Dataset& events,
                                 std::int64_t window_seconds, Metric metric = Metric::kJsd);

// Throws InvalidArgument unless threshold is in [0, 1] and min_events > 0.
void validate_policy(const AlertPolicy& policy);

// One alert per window with n >= min_events and value > threshold.
std::vector<Alert> check_alerts(const WindowedDriftSeries& series, const AlertPolicy& policy);

// `window_start,n,<metric>` rows; empty value for windows without events.
std::string series_to_csv(const WindowedDriftSeries& series);

}  // namespace embdrift
