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

#include "synthetic.hpp"

#include <cmath>
#include <fstream>
#include <limits>

namespace embdrift::testing {

namespace {

EmbeddingRecord draw_point(const Blob& blob, Rng& rng, std::size_t id) {
  EmbeddingRecord rec;
  rec.id = "p" + std::to_string(id);
  rec.label = blob.label;
  rec.vector.resize(blob.mean.size());
  for (std::size_t j = 0; j < blob.mean.size(); ++j) {
    rec.vector[j] = blob.mean[j] + blob.sigma * rng.normal();
  }
  return rec;
}

}  // namespace

Dataset gaussian_blobs(std::span<const Blob> blobs, std::span<const std::size_t> counts,
                       std::uint64_t seed, const std::string& name) {
  Rng rng(seed);
  Dataset ds;
  ds.name = name;
  ds.dim = blobs.front().mean.size();
  std::size_t id = 0;
  for (std::size_t b = 0; b < blobs.size(); ++b) {
    for (std::size_t i = 0; i < counts[b]; ++i) {
      ds.records.push_back(draw_point(blobs[b], rng, id++));
    }
  }
  return ds;
}

Dataset gaussian_mixture(std::span<const Blob> blobs, std::span<const double> weights,
                         std::size_t n, std::uint64_t seed, const std::string& name) {
  Rng rng(seed);
  Dataset ds;
  ds.name = name;
  ds.dim = blobs.front().mean.size();
  for (std::size_t i = 0; i < n; ++i) {
    double u = rng.uniform();
    std::size_t b = 0;
    while (b + 1 < weights.size() && u >= weights[b]) {
      u -= weights[b];
      ++b;
    }
    ds.records.push_back(draw_point(blobs[b], rng, i));
  }
  return ds;
}

std::vector<Blob> three_blobs() {
  return {{{0.0, 0.0}, 0.5, "a"}, {{8.0, 8.0}, 0.5, "b"}, {{16.0, 0.0}, 0.5, "c"}};
}

Dataset random_dataset(std::size_t n, std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  Dataset ds;
  ds.name = "random";
  ds.dim = dim;
  for (std::size_t i = 0; i < n; ++i) {
    EmbeddingRecord rec;
    rec.id = "r" + std::to_string(i);
    rec.vector.resize(dim);
    for (double& v : rec.vector) {
      v = rng.normal();
    }
    ds.records.push_back(std::move(rec));
  }
  return ds;
}

std::vector<double> random_distribution(std::size_t k, Rng& rng, double zero_prob) {
  std::vector<double> p(k, 0.0);
  double total = 0.0;
  for (auto& x : p) {
    x = rng.uniform() < zero_prob ? 0.0 : -std::log(1.0 - rng.uniform());
    total += x;
  }
  if (total == 0.0) {
    p[rng.index(k)] = 1.0;
    return p;
  }
  for (auto& x : p) {
    x /= total;
  }
  return p;
}

std::vector<std::string> corpus_topics() {
  return {"science", "computer", "religion", "forsale", "recreation"};
}

Corpus topic_corpus(std::size_t docs_per_topic, std::uint64_t seed) {
  const std::vector<std::vector<std::string>> topic_words = {
      {"physics", "atom", "quantum", "energy", "orbit", "telescope", "laboratory", "experiment",
       "molecule", "gravity", "theory", "particle", "research", "biology", "chemistry",
       "galaxy", "planet", "genome", "neutron", "climate"},
      {"software", "keyboard", "driver", "windows", "linux", "monitor", "graphics", "memory",
       "compiler", "network", "processor", "disk", "printer", "modem", "server", "kernel",
       "debug", "install", "cable", "pixel"},
      {"church", "faith", "bible", "prayer", "belief", "scripture", "gospel", "theology",
       "moral", "spirit", "worship", "sermon", "temple", "prophet", "doctrine", "sin",
       "heaven", "atheist", "soul", "ritual"},
      {"sale", "price", "offer", "shipping", "condition", "sell", "buyer", "cash", "discount",
       "bargain", "warranty", "brand", "deal", "bid", "auction", "used", "mint", "paypal",
       "obo", "package"},
      {"hockey", "baseball", "season", "team", "player", "game", "goal", "league", "motorcycle",
       "bike", "ride", "score", "coach", "playoff", "pitcher", "helmet", "engine", "fans",
       "tournament", "stadium"}};
  const std::vector<std::string> filler = {
      "the",   "a",     "and",   "of",    "to",    "in",     "is",   "it",   "that", "for",
      "with",  "this",  "on",    "have",  "you",   "about",  "just", "know", "think", "people",
      "would", "there", "what",  "some",  "when",  "really", "good", "time", "year", "thing"};

  Rng rng(seed);
  Corpus corpus;
  const auto topics = corpus_topics();
  for (std::size_t t = 0; t < topics.size(); ++t) {
    for (std::size_t d = 0; d < docs_per_topic; ++d) {
      const std::size_t len = 20 + rng.index(21);
      std::string text;
      for (std::size_t w = 0; w < len; ++w) {
        const double u = rng.uniform();
        std::string word;
        if (u < 0.45) {
          word = topic_words[t][rng.index(topic_words[t].size())];
        } else if (u < 0.55) {
          // Cross-topic leakage keeps clusters from being trivially pure.
          const std::size_t other = rng.index(topic_words.size());
          word = topic_words[other][rng.index(topic_words[other].size())];
        } else if (u < 0.9) {
          word = filler[rng.index(filler.size())];
        } else {
          // Long tail of rare shared tokens so the vocabulary exceeds a few hundred terms.
          word = "tail" + std::to_string(rng.index(400));
        }
        if (!text.empty()) text.push_back(' ');
        text += word;
      }
      corpus.texts.push_back(std::move(text));
      corpus.labels.push_back(topics[t]);
    }
  }
  return corpus;
}

double jsd_oracle(std::span<const double> p, std::span<const double> q) {
  auto kl = [](std::span<const double> a, const std::vector<double>& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] > 0.0) {
        s += a[i] * (std::log(a[i]) - std::log(m[i]));
      }
    }
    return s;
  };
  std::vector<double> m(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    m[i] = (p[i] + q[i]) / 2.0;
  }
  return (kl(p, m) + kl(q, m)) / (2.0 * std::log(2.0));
}

std::size_t nearest_oracle(const Matrix& centroids, std::span<const double> point) {
  std::size_t best = centroids.rows;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.rows; ++c) {
    double d = 0.0;
    for (std::size_t j = 0; j < point.size(); ++j) {
      d += (point[j] - centroids.values[c * centroids.cols + j]) *
           (point[j] - centroids.values[c * centroids.cols + j]);
    }
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
  const auto dir = std::filesystem::temp_directory_path() / "embdrift-tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << contents;
  return path;
}

}  // namespace embdrift::testing
