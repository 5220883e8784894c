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

#include "embdrift/monitor.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "embdrift/error.hpp"
#include "embdrift/parallel.hpp"

namespace embdrift {

namespace {
// Guards against a pair of far-apart timestamps producing billions of empty windows.
constexpr std::int64_t kMaxWindows = 10'000'000;
}  // namespace

std::int64_t window_start_for(std::int64_t timestamp, std::int64_t window_seconds) {
  std::int64_t q = timestamp / window_seconds;
  if (timestamp % window_seconds != 0 && timestamp < 0) {
    --q;
  }
  return q * window_seconds;
}

WindowedDriftSeries window_drift(const BaselineModel& model, const Dataset& events,
                                 std::int64_t window_seconds, Metric metric) {
  if (window_seconds <= 0) {
    throw InvalidArgument("window_drift: window size must be positive");
  }
  for (const auto& rec : events.records) {
    if (!rec.timestamp) {
      throw InvalidArgument("window_drift: event '" + rec.id + "' has no timestamp");
    }
  }
  WindowedDriftSeries series;
  series.window_seconds = window_seconds;
  if (events.empty()) {
    return series;
  }

  const auto bins = assign_bins(model, events);

  std::int64_t first = window_start_for(*events.records.front().timestamp, window_seconds);
  std::int64_t last = first;
  for (const auto& rec : events.records) {
    const std::int64_t w = window_start_for(*rec.timestamp, window_seconds);
    first = std::min(first, w);
    last = std::max(last, w);
  }
  const std::int64_t span = (last - first) / window_seconds + 1;
  if (span > kMaxWindows) {
    throw InvalidArgument("window_drift: events span " + std::to_string(span) +
                          " windows; use a larger window");
  }

  std::vector<std::vector<std::uint64_t>> counts(static_cast<std::size_t>(span),
                                                 std::vector<std::uint64_t>(model.k, 0));
  for (std::size_t i = 0; i < events.size(); ++i) {
    const std::int64_t w = window_start_for(*events.records[i].timestamp, window_seconds);
    ++counts[static_cast<std::size_t>((w - first) / window_seconds)][bins[i]];
  }

  series.points.resize(counts.size());
  parallel_for(counts.size(), [&](std::size_t i) {
    WindowPoint& point = series.points[i];
    point.window_start = first + static_cast<std::int64_t>(i) * window_seconds;
    Histogram h = histogram_from_counts(counts[i]);
    point.n = h.n;
    if (h.n > 0) {
      point.report = report_from_histogram(model, h, metric);
    }
  });
  return series;
}

void validate_policy(const AlertPolicy& policy) {
  if (!(policy.threshold >= 0.0 && policy.threshold <= 1.0)) {
    throw InvalidArgument("alert threshold must lie in [0, 1]");
  }
  if (policy.min_events == 0) {
    throw InvalidArgument("alert min_events must be positive");
  }
}

std::vector<Alert> check_alerts(const WindowedDriftSeries& series, const AlertPolicy& policy) {
  std::vector<Alert> alerts;
  for (const auto& point : series.points) {
    if (point.report && point.n >= policy.min_events && point.report->value > policy.threshold) {
      alerts.push_back({point.window_start, point.report->value, point.n});
    }
  }
  return alerts;
}

std::string series_to_csv(const WindowedDriftSeries& series) {
  std::ostringstream out;
  std::string metric = "jsd";
  for (const auto& p : series.points) {
    if (p.report) {
      metric = to_string(p.report->metric);
      break;
    }
  }
  out << "window_start,n," << metric << '\n';
  for (const auto& p : series.points) {
    out << p.window_start << ',' << p.n << ',';
    if (p.report) {
      char buf[64];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), p.report->value);
      out << std::string(buf, ptr);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace embdrift
