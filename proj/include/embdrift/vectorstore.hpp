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
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace embdrift {

// One observation: an embedding vector plus optional metadata.
struct EmbeddingRecord {
  std::string id;
  std::vector<double> vector;
  std::optional<std::string> label;
  std::optional<std::int64_t> timestamp;  // epoch seconds
  std::optional<std::string> text;

  bool operator==(const EmbeddingRecord&) const = default;
};

// Ordered collection of records sharing one dimension. Treated as immutable
// once loaded; every transform returns a new Dataset.
struct Dataset {
  std::string name;
  std::size_t dim = 0;
  std::vector<EmbeddingRecord> records;

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }

  bool operator==(const Dataset&) const = default;
};

enum class FileFormat { kNdjson, kCsv };

// Picks the format from the extension: ".csv" is CSV, anything else NDJSON.
FileFormat format_from_path(const std::filesystem::path& path);

std::string to_string(FileFormat format);
FileFormat parse_file_format(const std::string& name);

// Loads a dataset; dim is taken from the first record. Throws ParseError
// (with line number), DimensionMismatch (naming the record id) or EmptyInput.
Dataset load_dataset(const std::filesystem::path& path, FileFormat format);
Dataset load_dataset(const std::filesystem::path& path);

// Writes doubles in shortest round-trip form, so load(save(ds)) == ds.
void save_dataset(const Dataset& ds, const std::filesystem::path& path, FileFormat format);

// Checks the Dataset invariants (uniform dim, finite components, dim > 0).
void validate_dataset(const Dataset& ds);

// Keeps the first d components of every vector.
Dataset truncate_dims(const Dataset& ds, std::size_t d);

// The index set sample_dims applies: d distinct indices from [0, dim),
// drawn with Rng(seed) and sorted ascending.
std::vector<std::size_t> sample_dim_indices(std::size_t dim, std::size_t d, std::uint64_t seed);

// Projects every vector onto one shared random subset of d components.
Dataset sample_dims(const Dataset& ds, std::size_t d, std::uint64_t seed);

// Projects every vector onto the given (valid, in-range) component indices.
Dataset select_dims(const Dataset& ds, std::span<const std::size_t> indices);

// Returns a copy with every non-zero vector scaled to unit L2 norm.
Dataset l2_normalized(const Dataset& ds);

}  // namespace embdrift
