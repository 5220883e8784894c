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

#include "embdrift/textvec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "embdrift/error.hpp"
#include "embdrift/kmeans.hpp"

namespace embdrift::textvec {

namespace {

bool is_token_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_token_byte(c)) {
      current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : ch);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) {
    tokens.push_back(std::move(current));
  }
  return tokens;
}

TfidfVectorizer TfidfVectorizer::fit(std::span<const std::string> corpus, std::size_t max_vocab,
                                     const std::set<std::string>& stopwords) {
  if (corpus.empty()) {
    throw EmptyInput("fit_tfidf: empty corpus");
  }
  if (max_vocab == 0) {
    throw InvalidArgument("fit_tfidf: max_vocab must be positive");
  }
  std::map<std::string, std::uint64_t> df;
  for (const auto& doc : corpus) {
    auto tokens = tokenize(doc);
    std::sort(tokens.begin(), tokens.end());
    tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
    for (auto& t : tokens) {
      if (!stopwords.contains(t)) {
        ++df[std::move(t)];
      }
    }
  }
  if (df.empty()) {
    throw EmptyInput("fit_tfidf: corpus has no usable tokens");
  }

  std::vector<VocabularyEntry> entries;
  entries.reserve(df.size());
  for (auto& [term, count] : df) {
    entries.push_back({term, count});
  }
  // std::map iteration is already lexicographic, so a stable sort by df keeps
  // the lexicographic tie-break.
  std::stable_sort(entries.begin(), entries.end(),
                   [](const VocabularyEntry& a, const VocabularyEntry& b) {
                     return a.document_frequency > b.document_frequency;
                   });
  if (entries.size() > max_vocab) {
    entries.resize(max_vocab);
  }

  TfidfVectorizer v;
  v.documents_ = corpus.size();
  v.vocabulary_ = std::move(entries);
  const double n = static_cast<double>(corpus.size());
  v.idf_.reserve(v.vocabulary_.size());
  for (std::size_t i = 0; i < v.vocabulary_.size(); ++i) {
    const double dfi = static_cast<double>(v.vocabulary_[i].document_frequency);
    v.idf_.push_back(std::log((1.0 + n) / (1.0 + dfi)) + 1.0);
    v.index_.emplace(v.vocabulary_[i].term, i);
  }
  return v;
}

std::optional<std::size_t> TfidfVectorizer::index_of(const std::string& term) const {
  if (auto it = index_.find(term); it != index_.end()) {
    return it->second;
  }
  return std::nullopt;
}

std::vector<double> TfidfVectorizer::transform(std::string_view text) const {
  std::vector<double> out(vocabulary_.size(), 0.0);
  for (const auto& token : tokenize(text)) {
    if (auto it = index_.find(token); it != index_.end()) {
      out[it->second] += 1.0;
    }
  }
  double sq = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] *= idf_[i];
    sq += out[i] * out[i];
  }
  if (sq > 0.0) {
    const double norm = std::sqrt(sq);
    for (double& x : out) {
      x /= norm;
    }
  }
  return out;
}

TfidfVectorizer fit_tfidf(std::span<const std::string> corpus, std::size_t max_vocab,
                          const std::set<std::string>& stopwords) {
  return TfidfVectorizer::fit(corpus, max_vocab, stopwords);
}

Dataset embed(const TfidfVectorizer& vectorizer, const Dataset& texts) {
  Dataset out;
  out.name = texts.name;
  out.dim = vectorizer.dim();
  out.records.reserve(texts.size());
  for (const auto& rec : texts.records) {
    if (!rec.text) {
      throw InvalidArgument("record '" + rec.id + "' has no text to embed");
    }
    EmbeddingRecord r = rec;
    r.vector = vectorizer.transform(*rec.text);
    out.records.push_back(std::move(r));
  }
  return out;
}

std::vector<ClusterSummary> cluster_summary(const BaselineModel& model, const Dataset& ds,
                                            std::size_t top_n, std::size_t r,
                                            const std::set<std::string>& stopwords) {
  const Dataset prepared = preprocess(model, ds);
  const auto bins = assign_bins(model, ds);

  std::vector<std::vector<std::size_t>> members(model.k);
  for (std::size_t i = 0; i < bins.size(); ++i) {
    members[bins[i]].push_back(i);
  }

  std::vector<ClusterSummary> summaries(model.k);
  for (std::size_t b = 0; b < model.k; ++b) {
    ClusterSummary& summary = summaries[b];
    summary.bin = b;
    summary.members = members[b].size();

    // Representatives: ascending distance to the centroid, record order on ties.
    std::vector<std::pair<double, std::size_t>> by_distance;
    by_distance.reserve(members[b].size());
    for (std::size_t i : members[b]) {
      by_distance.emplace_back(
          kmeans::squared_distance(prepared.records[i].vector, model.centroids.row(b)), i);
    }
    std::stable_sort(by_distance.begin(), by_distance.end(),
                     [](const auto& a, const auto& c) { return a.first < c.first; });
    for (std::size_t j = 0; j < std::min(r, by_distance.size()); ++j) {
      summary.representatives.push_back(ds.records[by_distance[j].second].id);
    }

    std::vector<std::string> texts;
    for (std::size_t i : members[b]) {
      if (ds.records[i].text) {
        texts.push_back(*ds.records[i].text);
      }
    }
    if (texts.empty() || top_n == 0) {
      continue;
    }
    std::optional<TfidfVectorizer> vectorizer;
    try {
      vectorizer = TfidfVectorizer::fit(texts, std::numeric_limits<std::size_t>::max(), stopwords);
    } catch (const EmptyInput&) {
      continue;  // texts without usable tokens
    }
    std::vector<double> mean(vectorizer->dim(), 0.0);
    for (const auto& t : texts) {
      const auto w = vectorizer->transform(t);
      for (std::size_t j = 0; j < w.size(); ++j) {
        mean[j] += w[j];
      }
    }
    std::vector<std::pair<std::string, double>> scored;
    scored.reserve(mean.size());
    for (std::size_t j = 0; j < mean.size(); ++j) {
      scored.emplace_back(vectorizer->vocabulary()[j].term,
                          mean[j] / static_cast<double>(texts.size()));
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& c) {
      return a.second != c.second ? a.second > c.second : a.first < c.first;
    });
    if (scored.size() > top_n) {
      scored.resize(top_n);
    }
    summary.top_terms = std::move(scored);
  }
  return summaries;
}

}  // namespace embdrift::textvec
