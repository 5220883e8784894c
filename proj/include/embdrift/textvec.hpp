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
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "embdrift/binner.hpp"
#include "embdrift/vectorstore.hpp"

namespace embdrift::textvec {

// Lowercases ASCII and splits on anything that is not [a-z0-9]. Bytes >= 0x80
// are kept inside tokens so UTF-8 words survive intact.
std::vector<std::string> tokenize(std::string_view text);

struct VocabularyEntry {
  std::string term;
  std::uint64_t document_frequency = 0;

  bool operator==(const VocabularyEntry&) const = default;
};

// Smoothed TF-IDF: idf(t) = ln((1 + N) / (1 + df(t))) + 1, raw term counts as
// tf, L2-normalized output.
class TfidfVectorizer {
 public:
  // Vocabulary = the max_vocab terms with the highest document frequency,
  // ties broken lexicographically; that order is also the component order.
  static TfidfVectorizer fit(std::span<const std::string> corpus, std::size_t max_vocab,
                             const std::set<std::string>& stopwords = {});

  // Out-of-vocabulary terms are ignored; a text with no known terms maps to
  // the zero vector.
  std::vector<double> transform(std::string_view text) const;

  const std::vector<VocabularyEntry>& vocabulary() const { return vocabulary_; }
  const std::vector<double>& idf() const { return idf_; }
  std::size_t dim() const { return vocabulary_.size(); }
  std::size_t documents() const { return documents_; }
  std::optional<std::size_t> index_of(const std::string& term) const;

 private:
  std::vector<VocabularyEntry> vocabulary_;
  std::vector<double> idf_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t documents_ = 0;
};

TfidfVectorizer fit_tfidf(std::span<const std::string> corpus, std::size_t max_vocab,
                          const std::set<std::string>& stopwords = {});

// Replaces every record's vector with the TF-IDF transform of its text.
Dataset embed(const TfidfVectorizer& vectorizer, const Dataset& texts);

struct ClusterSummary {
  std::size_t bin = 0;
  std::size_t members = 0;
  std::vector<std::pair<std::string, double>> top_terms;  // descending score
  std::vector<std::string> representatives;               // nearest to centroid first
};

// Per bin: terms ranked by mean in-bin TF-IDF weight (vectorizer fitted on the
// bin's own texts) and the r members closest to the centroid. Bins without
// text get no terms.
std::vector<ClusterSummary> cluster_summary(const BaselineModel& model, const Dataset& ds,
                                            std::size_t top_n, std::size_t r,
                                            const std::set<std::string>& stopwords = {});

}  // namespace embdrift::textvec
