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

#include "embdrift/binner.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "embdrift/error.hpp"
#include "embdrift/parallel.hpp"
#include "embdrift/rng.hpp"

namespace embdrift {

using nlohmann::json;

namespace {

void require_dim(const BaselineModel& model, const Dataset& ds) {
  if (ds.dim != model.dim) {
    throw DimensionMismatch("dataset '" + ds.name + "' has dimension " + std::to_string(ds.dim) +
                            " but the baseline model expects " + std::to_string(model.dim));
  }
}

}  // namespace

Histogram histogram_from_counts(std::vector<std::uint64_t> counts) {
  Histogram h;
  for (auto c : counts) {
    h.n += c;
  }
  h.frequencies.resize(counts.size(), 0.0);
  if (h.n > 0) {
    const double total = static_cast<double>(h.n);
    for (std::size_t i = 0; i < counts.size(); ++i) {
      h.frequencies[i] = static_cast<double>(counts[i]) / total;
    }
  }
  h.counts = std::move(counts);
  return h;
}

BaselineModel initialize_clusters(const Dataset& base, std::size_t k, std::uint64_t seed,
                                  const BinnerOptions& options) {
  if (base.empty()) {
    throw EmptyInput("initialize_clusters: baseline dataset is empty");
  }
  validate_dataset(base);

  BaselineModel model;
  model.k = k;
  model.dim = base.dim;
  model.seed = seed;
  model.prng = std::string(Rng::kAlgorithm);
  model.normalize = options.normalize;

  const Dataset prepared = options.normalize ? l2_normalized(base) : base;
  auto fitted = kmeans::fit(prepared, k, seed, options.kmeans);
  model.centroids = std::move(fitted.centroids);

  // Histogram the baseline with the same rule production data will see.
  std::vector<std::uint64_t> counts(k, 0);
  for (const auto& rec : prepared.records) {
    ++counts[kmeans::assign(model.centroids, rec.vector)];
  }
  Histogram h = histogram_from_counts(std::move(counts));
  model.counts = std::move(h.counts);
  model.frequencies = std::move(h.frequencies);
  model.created_n = h.n;
  return model;
}

Dataset preprocess(const BaselineModel& model, const Dataset& ds) {
  require_dim(model, ds);
  return model.normalize ? l2_normalized(ds) : ds;
}

std::vector<std::size_t> assign_bins(const BaselineModel& model, const Dataset& ds) {
  require_dim(model, ds);
  std::vector<std::size_t> bins(ds.size(), 0);
  const Dataset normalized = model.normalize ? l2_normalized(ds) : Dataset{};
  const Dataset& prepared = model.normalize ? normalized : ds;
  parallel_for(prepared.size(), [&](std::size_t i) {
    bins[i] = kmeans::assign(model.centroids, prepared.records[i].vector);
  });
  return bins;
}

Histogram bin(const BaselineModel& model, const Dataset& ds) {
  if (ds.empty()) {
    throw EmptyInput("bin: dataset '" + ds.name + "' is empty");
  }
  const auto bins = assign_bins(model, ds);
  std::vector<std::uint64_t> counts(model.k, 0);
  for (std::size_t b : bins) {
    ++counts[b];
  }
  return histogram_from_counts(std::move(counts));
}

std::string model_to_json(const BaselineModel& model) {
  json j;
  j["version"] = BaselineModel::kFormatVersion;
  j["k"] = model.k;
  j["dim"] = model.dim;
  j["seed"] = model.seed;
  j["prng"] = model.prng;
  j["normalize"] = model.normalize;
  json rows = json::array();
  for (std::size_t i = 0; i < model.centroids.rows; ++i) {
    auto r = model.centroids.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  j["centroids"] = std::move(rows);
  j["counts"] = model.counts;
  j["frequencies"] = model.frequencies;
  j["created_n"] = model.created_n;
  return j.dump();
}

BaselineModel model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw CorruptFile(std::string("model file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw CorruptFile("model file must hold a JSON object");
  }
  auto version = j.find("version");
  if (version == j.end() || !version->is_number_integer()) {
    throw VersionMismatch("model file has no version tag");
  }
  if (version->get<int>() != BaselineModel::kFormatVersion) {
    throw VersionMismatch("unsupported model version " + version->dump() + " (expected " +
                          std::to_string(BaselineModel::kFormatVersion) + ")");
  }

  BaselineModel m;
  try {
    m.k = j.at("k").get<std::size_t>();
    m.dim = j.at("dim").get<std::size_t>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.prng = j.at("prng").get<std::string>();
    m.normalize = j.at("normalize").get<bool>();
    m.created_n = j.at("created_n").get<std::uint64_t>();
    m.counts = j.at("counts").get<std::vector<std::uint64_t>>();
    m.frequencies = j.at("frequencies").get<std::vector<double>>();
    const auto rows = j.at("centroids").get<std::vector<std::vector<double>>>();
    if (rows.size() != m.k) {
      throw CorruptFile("model declares k=" + std::to_string(m.k) + " but has " +
                        std::to_string(rows.size()) + " centroid rows");
    }
    m.centroids = Matrix(m.k, m.dim);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.dim) {
        throw CorruptFile("centroid " + std::to_string(i) + " has length " +
                          std::to_string(rows[i].size()) + ", expected " + std::to_string(m.dim));
      }
      for (std::size_t c = 0; c < m.dim; ++c) {
        if (!std::isfinite(rows[i][c])) {
          throw CorruptFile("centroid " + std::to_string(i) + " is not finite");
        }
        m.centroids.row(i)[c] = rows[i][c];
      }
    }
  } catch (const json::exception& e) {
    throw CorruptFile(std::string("model file is missing or mistypes a field: ") + e.what());
  }

  if (m.k == 0 || m.dim == 0) {
    throw CorruptFile("model must have k > 0 and dim > 0");
  }
  if (m.prng != Rng::kAlgorithm) {
    throw CorruptFile("model was fitted with unknown generator '" + m.prng + "'");
  }
  if (m.counts.size() != m.k || m.frequencies.size() != m.k) {
    throw CorruptFile("counts/frequencies length does not match k");
  }
  std::uint64_t total = 0;
  for (auto c : m.counts) {
    total += c;
  }
  if (total != m.created_n || m.created_n == 0) {
    throw CorruptFile("counts do not sum to created_n");
  }
  for (std::size_t i = 0; i < m.k; ++i) {
    const double expected = static_cast<double>(m.counts[i]) / static_cast<double>(m.created_n);
    if (!(std::abs(m.frequencies[i] - expected) <= 1e-12)) {
      throw CorruptFile("frequency " + std::to_string(i) + " disagrees with counts");
    }
  }
  return m;
}

void save_model(const BaselineModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write model file " + path.string());
  }
  out << model_to_json(model) << '\n';
  if (!out) {
    throw Error("failed writing model file " + path.string());
  }
}

BaselineModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open model file " + path.string());
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace embdrift
