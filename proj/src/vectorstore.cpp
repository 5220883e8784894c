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

#include "embdrift/vectorstore.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "embdrift/error.hpp"
#include "embdrift/rng.hpp"

namespace embdrift {

namespace {

using nlohmann::json;

void check_finite(const std::vector<double>& v, const std::string& source, std::size_t line,
                  const std::string& id) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw ParseError(source, line,
                       "record '" + id + "' component " + std::to_string(i) + " is not finite");
    }
  }
}

void check_dim(Dataset& ds, const EmbeddingRecord& rec, const std::string& source,
               std::size_t line) {
  if (rec.vector.empty()) {
    throw ParseError(source, line, "record '" + rec.id + "' has an empty vector");
  }
  if (ds.records.empty()) {
    ds.dim = rec.vector.size();
  } else if (rec.vector.size() != ds.dim) {
    throw DimensionMismatch(source + ":" + std::to_string(line) + ": record '" + rec.id +
                            "' has dimension " + std::to_string(rec.vector.size()) +
                            ", expected " + std::to_string(ds.dim));
  }
}

EmbeddingRecord parse_ndjson_record(const std::string& text, const std::string& source,
                                    std::size_t line) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(source, line, std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) {
    throw ParseError(source, line, "expected a JSON object");
  }
  EmbeddingRecord rec;
  auto id = obj.find("id");
  if (id == obj.end() || !id->is_string()) {
    throw ParseError(source, line, "missing string field 'id'");
  }
  rec.id = id->get<std::string>();

  auto vec = obj.find("vector");
  if (vec == obj.end() || !vec->is_array()) {
    throw ParseError(source, line, "record '" + rec.id + "' is missing array field 'vector'");
  }
  rec.vector.reserve(vec->size());
  for (const auto& x : *vec) {
    if (!x.is_number()) {
      throw ParseError(source, line, "record '" + rec.id + "' has a non-numeric component");
    }
    rec.vector.push_back(x.get<double>());
  }
  check_finite(rec.vector, source, line, rec.id);

  if (auto it = obj.find("label"); it != obj.end() && !it->is_null()) {
    if (!it->is_string()) {
      throw ParseError(source, line, "record '" + rec.id + "': 'label' must be a string");
    }
    rec.label = it->get<std::string>();
  }
  if (auto it = obj.find("timestamp"); it != obj.end() && !it->is_null()) {
    if (!it->is_number_integer()) {
      throw ParseError(source, line, "record '" + rec.id + "': 'timestamp' must be an integer");
    }
    rec.timestamp = it->get<std::int64_t>();
  }
  if (auto it = obj.find("text"); it != obj.end() && !it->is_null()) {
    if (!it->is_string()) {
      throw ParseError(source, line, "record '" + rec.id + "': 'text' must be a string");
    }
    rec.text = it->get<std::string>();
  }
  return rec;
}

// RFC 4180 style split: fields may be double-quoted, "" escapes a quote.
std::vector<std::string> split_csv_line(const std::string& line, const std::string& source,
                                        std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && field.empty() && !was_quoted) {
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else {
      field.push_back(c);
    }
  }
  if (quoted) {
    throw ParseError(source, line_no, "unterminated quoted field");
  }
  fields.push_back(std::move(field));
  return fields;
}

double parse_double(const std::string& s, const std::string& source, std::size_t line) {
  double value = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (!s.empty() && *begin == '+') {
    ++begin;
  }
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(source, line, "invalid number '" + s + "'");
  }
  return value;
}

std::int64_t parse_int(const std::string& s, const std::string& source, std::size_t line) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(source, line, "invalid integer timestamp '" + s + "'");
  }
  return value;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  return line;
}

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

Dataset load_ndjson(std::istream& in, const std::string& source) {
  Dataset ds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(std::move(line));
    if (is_blank(line)) {
      continue;
    }
    EmbeddingRecord rec = parse_ndjson_record(line, source, line_no);
    check_dim(ds, rec, source, line_no);
    ds.records.push_back(std::move(rec));
  }
  return ds;
}

Dataset load_csv(std::istream& in, const std::string& source) {
  Dataset ds;
  std::string line;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(std::move(line));
    if (is_blank(line)) {
      continue;
    }
    auto fields = split_csv_line(line, source, line_no);
    if (columns == 0) {
      if (fields.size() < 4 || fields[0] != "id" || fields[1] != "label" ||
          fields[2] != "timestamp") {
        throw ParseError(source, line_no, "expected header 'id,label,timestamp,v0,...'");
      }
      for (std::size_t i = 3; i < fields.size(); ++i) {
        if (fields[i] != "v" + std::to_string(i - 3)) {
          throw ParseError(source, line_no,
                           "header column " + std::to_string(i) + " should be v" +
                               std::to_string(i - 3));
        }
      }
      columns = fields.size();
      continue;
    }
    EmbeddingRecord rec;
    rec.id = fields[0];
    if (fields.size() != columns) {
      // Same wording as the NDJSON path so callers can match on the type.
      if (fields.size() < 4) {
        throw ParseError(source, line_no, "record '" + rec.id + "' has too few columns");
      }
      throw DimensionMismatch(source + ":" + std::to_string(line_no) + ": record '" + rec.id +
                              "' has dimension " + std::to_string(fields.size() - 3) +
                              ", expected " + std::to_string(columns - 3));
    }
    if (!fields[1].empty()) {
      rec.label = fields[1];
    }
    if (!fields[2].empty()) {
      rec.timestamp = parse_int(fields[2], source, line_no);
    }
    rec.vector.reserve(columns - 3);
    for (std::size_t i = 3; i < fields.size(); ++i) {
      rec.vector.push_back(parse_double(fields[i], source, line_no));
    }
    check_finite(rec.vector, source, line_no, rec.id);
    check_dim(ds, rec, source, line_no);
    ds.records.push_back(std::move(rec));
  }
  return ds;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') {
      out += "\"\"";
    } else {
      out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

}  // namespace

FileFormat format_from_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".csv" ? FileFormat::kCsv : FileFormat::kNdjson;
}

std::string to_string(FileFormat format) {
  return format == FileFormat::kCsv ? "csv" : "ndjson";
}

FileFormat parse_file_format(const std::string& name) {
  if (name == "csv") {
    return FileFormat::kCsv;
  }
  if (name == "ndjson" || name == "jsonl") {
    return FileFormat::kNdjson;
  }
  throw InvalidArgument("unknown dataset format '" + name + "' (expected ndjson or csv)");
}

Dataset load_dataset(const std::filesystem::path& path, FileFormat format) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open dataset file " + path.string());
  }
  const std::string source = path.string();
  Dataset ds = format == FileFormat::kCsv ? load_csv(in, source) : load_ndjson(in, source);
  if (ds.records.empty()) {
    throw EmptyInput(source + ": file contains no records");
  }
  ds.name = path.stem().string();
  return ds;
}

Dataset load_dataset(const std::filesystem::path& path) {
  return load_dataset(path, format_from_path(path));
}

void save_dataset(const Dataset& ds, const std::filesystem::path& path, FileFormat format) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write dataset file " + path.string());
  }
  if (format == FileFormat::kNdjson) {
    for (const auto& rec : ds.records) {
      json obj;
      obj["id"] = rec.id;
      obj["vector"] = rec.vector;
      if (rec.label) obj["label"] = *rec.label;
      if (rec.timestamp) obj["timestamp"] = *rec.timestamp;
      if (rec.text) obj["text"] = *rec.text;
      out << obj.dump() << '\n';
    }
  } else {
    out << "id,label,timestamp";
    for (std::size_t i = 0; i < ds.dim; ++i) {
      out << ",v" << i;
    }
    out << '\n';
    for (const auto& rec : ds.records) {
      out << csv_escape(rec.id) << ',' << csv_escape(rec.label.value_or("")) << ',';
      if (rec.timestamp) {
        out << *rec.timestamp;
      }
      for (double v : rec.vector) {
        out << ',' << format_double(v);
      }
      out << '\n';
    }
  }
  if (!out) {
    throw Error("failed writing dataset file " + path.string());
  }
}

void validate_dataset(const Dataset& ds) {
  if (ds.dim == 0) {
    throw InvalidArgument("dataset '" + ds.name + "' has dimension 0");
  }
  for (const auto& rec : ds.records) {
    if (rec.vector.size() != ds.dim) {
      throw DimensionMismatch("record '" + rec.id + "' has dimension " +
                              std::to_string(rec.vector.size()) + ", expected " +
                              std::to_string(ds.dim));
    }
    for (double v : rec.vector) {
      if (!std::isfinite(v)) {
        throw InvalidArgument("record '" + rec.id + "' has a non-finite component");
      }
    }
  }
}

Dataset truncate_dims(const Dataset& ds, std::size_t d) {
  if (d == 0) {
    throw InvalidArgument("truncate_dims: d must be positive");
  }
  if (d > ds.dim) {
    throw InvalidArgument("truncate_dims: d=" + std::to_string(d) + " exceeds dimension " +
                          std::to_string(ds.dim));
  }
  Dataset out = ds;
  out.dim = d;
  for (auto& rec : out.records) {
    rec.vector.resize(d);
  }
  return out;
}

std::vector<std::size_t> sample_dim_indices(std::size_t dim, std::size_t d, std::uint64_t seed) {
  if (d == 0) {
    throw InvalidArgument("sample_dims: d must be positive");
  }
  if (d > dim) {
    throw InvalidArgument("sample_dims: d=" + std::to_string(d) + " exceeds dimension " +
                          std::to_string(dim));
  }
  Rng rng(seed);
  auto indices = rng.sample_without_replacement(dim, d);
  std::sort(indices.begin(), indices.end());
  return indices;
}

Dataset sample_dims(const Dataset& ds, std::size_t d, std::uint64_t seed) {
  const auto indices = sample_dim_indices(ds.dim, d, seed);
  return select_dims(ds, indices);
}

Dataset select_dims(const Dataset& ds, std::span<const std::size_t> indices) {
  for (std::size_t idx : indices) {
    if (idx >= ds.dim) {
      throw InvalidArgument("select_dims: index " + std::to_string(idx) + " out of range");
    }
  }
  if (indices.empty()) {
    throw InvalidArgument("select_dims: empty index set");
  }
  Dataset out;
  out.name = ds.name;
  out.dim = indices.size();
  out.records.reserve(ds.records.size());
  for (const auto& rec : ds.records) {
    EmbeddingRecord r = rec;
    r.vector.resize(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
      r.vector[i] = rec.vector[indices[i]];
    }
    out.records.push_back(std::move(r));
  }
  return out;
}

Dataset l2_normalized(const Dataset& ds) {
  Dataset out = ds;
  for (auto& rec : out.records) {
    double sq = 0.0;
    for (double v : rec.vector) {
      sq += v * v;
    }
    if (sq > 0.0) {
      const double norm = std::sqrt(sq);
      for (double& v : rec.vector) {
        v /= norm;
      }
    }
  }
  return out;
}

}  // namespace embdrift
