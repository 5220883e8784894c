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

#include "embdrift/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "embdrift/error.hpp"
#include "embdrift/rng.hpp"

namespace embdrift::experiments {

namespace {

Dataset subset(const Dataset& ds, std::span<const std::size_t> indices, const std::string& name) {
  Dataset out;
  out.name = name;
  out.dim = ds.dim;
  out.records.reserve(indices.size());
  for (std::size_t i : indices) {
    out.records.push_back(ds.records[i]);
  }
  return out;
}

std::vector<std::size_t> draw(Rng& rng, const std::vector<std::size_t>& from, std::uint64_t count,
                              bool& with_replacement) {
  std::vector<std::size_t> out;
  out.reserve(count);
  with_replacement = count > from.size();
  if (!with_replacement) {
    for (std::size_t j : rng.sample_without_replacement(from.size(), count)) {
      out.push_back(from[j]);
    }
  } else {
    for (std::uint64_t i = 0; i < count; ++i) {
      out.push_back(from[rng.index(from.size())]);
    }
  }
  return out;
}

SweepPoint summarize(std::vector<double> samples) {
  SweepPoint p;
  if (samples.empty()) {
    return p;
  }
  const double n = static_cast<double>(samples.size());
  p.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double sq = 0.0;
  for (double s : samples) {
    sq += (s - p.mean) * (s - p.mean);
  }
  p.std = std::sqrt(sq / n);
  p.samples = std::move(samples);
  return p;
}

void check_inputs(std::span<const EmbeddingInput> embeddings) {
  if (embeddings.empty()) {
    throw InvalidArgument("sweep needs at least one embedding");
  }
  for (const auto& e : embeddings) {
    if (e.base == nullptr || e.other == nullptr) {
      throw InvalidArgument("embedding '" + e.name + "' is missing a dataset");
    }
    if (e.base->dim != e.other->dim) {
      throw DimensionMismatch("embedding '" + e.name + "': baseline and production dimensions differ");
    }
  }
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

const Series* SweepResult::find(const std::string& name) const {
  for (const auto& s : series) {
    if (s.name == name) {
      return &s;
    }
  }
  return nullptr;
}

Split split_baseline(const Dataset& ds, double frac, std::uint64_t seed) {
  if (!(frac > 0.0 && frac < 1.0)) {
    throw InvalidArgument("split_baseline: fraction must lie strictly between 0 and 1");
  }
  const std::size_t n = ds.size();
  const auto m = static_cast<std::size_t>(std::llround(frac * static_cast<double>(n)));
  if (m == 0 || m == n) {
    throw InvalidArgument("split_baseline: a fraction of " + format_number(frac) + " of " +
                          std::to_string(n) + " records leaves one side empty");
  }
  Rng rng(seed);
  std::vector<bool> in_base(n, false);
  for (std::size_t i : rng.sample_without_replacement(n, m)) {
    in_base[i] = true;
  }
  std::vector<std::size_t> base_idx;
  std::vector<std::size_t> pool_idx;
  for (std::size_t i = 0; i < n; ++i) {
    (in_base[i] ? base_idx : pool_idx).push_back(i);
  }
  return {subset(ds, base_idx, ds.name + "-base"), subset(ds, pool_idx, ds.name + "-pool")};
}

std::vector<std::uint64_t> largest_remainder(std::span<const double> shares, std::size_t n) {
  double total = 0.0;
  for (double s : shares) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw InvalidArgument("largest_remainder: shares must be nonnegative");
    }
    total += s;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw InvalidArgument("largest_remainder: shares must sum to 1");
  }
  std::vector<std::uint64_t> counts(shares.size(), 0);
  std::vector<double> fractional(shares.size(), 0.0);
  std::uint64_t assigned = 0;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    const double quota = shares[i] / total * static_cast<double>(n);
    counts[i] = static_cast<std::uint64_t>(std::floor(quota));
    fractional[i] = quota - std::floor(quota);
    assigned += counts[i];
  }
  std::vector<std::size_t> order(shares.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return fractional[a] > fractional[b]; });
  for (std::size_t j = 0; assigned < n && j < order.size(); ++j) {
    ++counts[order[j]];
    ++assigned;
  }
  return counts;
}

Scenario make_scenario(const Dataset& pool, const ScenarioSpec& spec) {
  if (spec.n == 0) {
    throw InvalidArgument("make_scenario: n must be positive");
  }
  if (spec.proportions.empty()) {
    throw InvalidArgument("make_scenario: no labels selected");
  }
  double selected_total = 0.0;
  for (const auto& [label, share] : spec.proportions) {
    if (!(share >= 0.0 && share <= 1.0)) {
      throw InvalidArgument("make_scenario: proportion for '" + label + "' is outside [0, 1]");
    }
    selected_total += share;
  }
  if (selected_total > 1.0 + 1e-9) {
    throw InvalidArgument("make_scenario: proportions sum to more than 1");
  }

  std::map<std::string, std::vector<std::size_t>> by_label;
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto& rec = pool.records[i];
    if (!rec.label) {
      throw InvalidArgument("make_scenario: pool record '" + rec.id + "' has no label");
    }
    if (spec.proportions.contains(*rec.label)) {
      by_label[*rec.label].push_back(i);
    } else {
      others.push_back(i);
    }
  }
  for (const auto& [label, _] : spec.proportions) {
    if (!by_label.contains(label)) {
      throw InvalidArgument("make_scenario: label '" + label + "' is absent from the pool");
    }
  }

  std::vector<double> shares;
  for (const auto& [_, share] : spec.proportions) {
    shares.push_back(share);
  }
  shares.push_back(std::max(0.0, 1.0 - selected_total));
  const auto counts = largest_remainder(shares, spec.n);

  Scenario scenario;
  Rng rng(spec.seed);
  std::vector<std::size_t> chosen;
  chosen.reserve(spec.n);
  std::size_t i = 0;
  for (const auto& [label, _] : spec.proportions) {
    bool replaced = false;
    auto picked = draw(rng, by_label[label], counts[i], replaced);
    if (replaced) {
      scenario.resampled.push_back(label);
    }
    scenario.label_counts[label] = counts[i];
    chosen.insert(chosen.end(), picked.begin(), picked.end());
    ++i;
  }
  scenario.remainder_count = counts.back();
  if (scenario.remainder_count > 0) {
    if (others.empty()) {
      throw InvalidArgument("make_scenario: remainder share needs records with unselected labels");
    }
    bool replaced = false;
    auto picked = draw(rng, others, scenario.remainder_count, replaced);
    if (replaced) {
      scenario.resampled.push_back("*");
    }
    chosen.insert(chosen.end(), picked.begin(), picked.end());
  }
  rng.shuffle(std::span<std::size_t>(chosen));
  scenario.data = subset(pool, chosen, pool.name + "-scenario");
  return scenario;
}

std::map<std::string, double> label_distribution(const Dataset& ds) {
  if (ds.empty()) {
    throw EmptyInput("label_distribution: dataset is empty");
  }
  std::map<std::string, double> dist;
  for (const auto& rec : ds.records) {
    if (!rec.label) {
      throw InvalidArgument("record '" + rec.id + "' has no label");
    }
    dist[*rec.label] += 1.0;
  }
  for (auto& [_, v] : dist) {
    v /= static_cast<double>(ds.size());
  }
  return dist;
}

double label_jsd(const Dataset& base, const Dataset& prod) {
  const auto p_map = label_distribution(base);
  const auto q_map = label_distribution(prod);
  std::map<std::string, std::pair<double, double>> joint;
  for (const auto& [label, v] : p_map) joint[label].first = v;
  for (const auto& [label, v] : q_map) joint[label].second = v;
  std::vector<double> p;
  std::vector<double> q;
  for (const auto& [_, pq] : joint) {
    p.push_back(pq.first);
    q.push_back(pq.second);
  }
  return jsd(p, q);
}

SweepResult sensitivity_curve(std::span<const EmbeddingInput> embeddings, const std::string& label,
                              std::span<const double> fractions, std::size_t n, std::size_t k,
                              std::uint64_t seed, const SweepOptions& options) {
  check_inputs(embeddings);
  for (double f : fractions) {
    if (!(f >= 0.0 && f <= 1.0)) {
      throw InvalidArgument("sensitivity_curve: fractions must lie in [0, 1]");
    }
  }
  const auto& reference = embeddings.front();

  std::vector<BaselineModel> models;
  std::vector<std::unordered_map<std::string, std::size_t>> id_index(embeddings.size());
  for (std::size_t e = 0; e < embeddings.size(); ++e) {
    models.push_back(initialize_clusters(*embeddings[e].base, k, seed, options.binner));
    if (e > 0) {
      const Dataset& pool = *embeddings[e].other;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        id_index[e].emplace(pool.records[i].id, i);
      }
    }
  }

  SweepResult result;
  result.parameter = "fraction";
  result.x.assign(fractions.begin(), fractions.end());
  result.series.resize(embeddings.size() + 1);
  for (std::size_t e = 0; e < embeddings.size(); ++e) {
    result.series[e].name = embeddings[e].name;
  }
  result.series.back().name = kLabelSeries;

  for (std::size_t f = 0; f < fractions.size(); ++f) {
    ScenarioSpec spec;
    spec.proportions[label] = fractions[f];
    spec.n = n;
    spec.seed = seed + f;
    const Scenario scenario = make_scenario(*reference.other, spec);

    for (std::size_t e = 0; e < embeddings.size(); ++e) {
      Dataset prod;
      if (e == 0) {
        prod = scenario.data;
      } else {
        prod.name = scenario.data.name;
        prod.dim = embeddings[e].other->dim;
        prod.records.reserve(scenario.data.size());
        for (const auto& rec : scenario.data.records) {
          auto it = id_index[e].find(rec.id);
          if (it == id_index[e].end()) {
            throw InvalidArgument("embedding '" + embeddings[e].name + "' has no record '" +
                                  rec.id + "'");
          }
          prod.records.push_back(embeddings[e].other->records[it->second]);
        }
      }
      const auto report = compute_drift_with_model(models[e], prod, options.metric);
      result.series[e].points.push_back(summarize({report.value}));
    }
    result.series.back().points.push_back(summarize({label_jsd(*reference.base, scenario.data)}));
  }
  return result;
}

SweepResult sensitivity_curve(const Dataset& base, const Dataset& pool, const std::string& label,
                              std::span<const double> fractions, std::size_t n, std::size_t k,
                              std::uint64_t seed, const SweepOptions& options) {
  const EmbeddingInput input{base.name.empty() ? "embedding" : base.name, &base, &pool};
  return sensitivity_curve(std::span(&input, 1), label, fractions, n, k, seed, options);
}

SweepResult cluster_sweep(std::span<const EmbeddingInput> embeddings,
                          std::span<const std::size_t> ks, std::uint64_t seed,
                          const SweepOptions& options) {
  check_inputs(embeddings);
  SweepResult result;
  result.parameter = "k";
  for (std::size_t k : ks) {
    result.x.push_back(static_cast<double>(k));
  }
  for (const auto& e : embeddings) {
    Series series{e.name, {}};
    for (std::size_t k : ks) {
      const auto report = compute_drift(*e.base, *e.other, k, seed, options.binner, options.metric);
      series.points.push_back(summarize({report.value}));
    }
    result.series.push_back(std::move(series));
  }
  return result;
}

SweepResult cluster_sweep(const Dataset& base, const Dataset& prod,
                          std::span<const std::size_t> ks, std::uint64_t seed,
                          const SweepOptions& options) {
  const EmbeddingInput input{base.name.empty() ? "embedding" : base.name, &base, &prod};
  return cluster_sweep(std::span(&input, 1), ks, seed, options);
}

SweepResult dim_sweep(std::span<const EmbeddingInput> embeddings, std::span<const std::size_t> dims,
                      std::size_t repeats, std::size_t k, std::uint64_t seed,
                      const DimSweepOptions& options) {
  check_inputs(embeddings);
  if (repeats == 0) {
    throw InvalidArgument("dim_sweep: repeats must be at least 1");
  }
  std::size_t widest = 0;
  for (const auto& e : embeddings) {
    widest = std::max(widest, e.base->dim);
  }
  for (std::size_t d : dims) {
    if (d == 0 || d > widest) {
      throw InvalidArgument("dim_sweep: d=" + std::to_string(d) + " exceeds every embedding");
    }
  }

  SweepResult result;
  result.parameter = "d";
  for (std::size_t d : dims) {
    result.x.push_back(static_cast<double>(d));
  }
  for (const auto& e : embeddings) {
    Series series{e.name, {}};
    for (std::size_t d : dims) {
      std::vector<double> samples;
      if (d <= e.base->dim) {
        for (std::size_t r = 0; r < repeats; ++r) {
          const auto indices = sample_dim_indices(e.base->dim, d, seed + r);
          const Dataset base = select_dims(*e.base, indices);
          const Dataset prod = select_dims(*e.other, indices);
          const std::uint64_t kmeans_seed = options.fixed_kmeans_seed ? seed : seed + r;
          samples.push_back(compute_drift(base, prod, k, kmeans_seed, options.sweep.binner,
                                          options.sweep.metric)
                                .value);
        }
      }
      series.points.push_back(summarize(std::move(samples)));
    }
    result.series.push_back(std::move(series));
  }
  return result;
}

SweepResult dim_sweep(const Dataset& base, const Dataset& prod, std::span<const std::size_t> dims,
                      std::size_t repeats, std::size_t k, std::uint64_t seed,
                      const DimSweepOptions& options) {
  const EmbeddingInput input{base.name.empty() ? "embedding" : base.name, &base, &prod};
  return dim_sweep(std::span(&input, 1), dims, repeats, k, seed, options);
}

std::string sweep_to_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "x,series,mean,std\n";
  for (std::size_t i = 0; i < result.x.size(); ++i) {
    for (const auto& s : result.series) {
      const auto& p = s.points[i];
      if (p.samples.empty()) {
        continue;
      }
      out << format_number(result.x[i]) << ',' << s.name << ',' << format_number(p.mean) << ','
          << format_number(p.std) << '\n';
    }
  }
  return out.str();
}

}  // namespace embdrift::experiments
