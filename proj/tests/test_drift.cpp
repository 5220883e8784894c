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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "embdrift/drift.hpp"
#include "embdrift/error.hpp"
#include "support/synthetic.hpp"

namespace embdrift {
namespace {

using V = std::vector<double>;

TEST(Jsd, UnitValues) {
  EXPECT_EQ(jsd(V{0.5, 0.5}, V{0.5, 0.5}), 0.0);
  EXPECT_EQ(jsd(V{1, 0}, V{0, 1}), 1.0);
  // Hand evaluation: KL(p||m) = log2(4/3), KL(q||m) = 0.5*log2(2/3) + 0.5.
  const double hand = 0.5 * (std::log2(4.0 / 3.0) + 0.5 * std::log2(2.0 / 3.0) + 0.5);
  EXPECT_NEAR(hand, 0.311278, 1e-6);
  EXPECT_NEAR(jsd(V{1, 0}, V{0.5, 0.5}), hand, 1e-15);
  EXPECT_NEAR(jsd(V{1, 0}, V{0.5, 0.5}), 0.311278, 1e-6);
}

TEST(Jsd, MatchesKlOracle) {
  Rng rng(12);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t k = 1 + rng.index(20);
    const auto p = testing::random_distribution(k, rng, 0.2);
    const auto q = testing::random_distribution(k, rng, 0.2);
    ASSERT_NEAR(jsd(p, q), testing::jsd_oracle(p, q), 1e-12);
  }
}

TEST(Jsd, SymmetricBoundedIdentity) {
  Rng rng(13);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t k = 2 + rng.index(30);
    const auto p = testing::random_distribution(k, rng, 0.3);
    const auto q = testing::random_distribution(k, rng, 0.3);
    const double v = jsd(p, q);
    ASSERT_NEAR(v, jsd(q, p), 1e-12);
    ASSERT_GE(v, 0.0);
    ASSERT_LE(v, 1.0);
    ASSERT_EQ(jsd(p, p), 0.0);
  }
}

TEST(Jsd, Errors) {
  EXPECT_THROW(jsd(V{1}, V{0.5, 0.5}), DimensionMismatch);
  EXPECT_THROW(jsd(V{1.5, -0.5}, V{0.5, 0.5}), InvalidArgument);
  EXPECT_THROW(jsd(V{0.5, 0.4}, V{0.5, 0.5}), InvalidArgument);
  EXPECT_NO_THROW(jsd(V{0.5, 0.5 + 1e-10}, V{0.5, 0.5}));
  EXPECT_THROW(jsd(V{}, V{}), InvalidArgument);
}

TEST(Distance, TvdAndHellinger) {
  EXPECT_EQ(distance(V{1, 0}, V{0, 1}, Metric::kTvd), 1.0);
  EXPECT_DOUBLE_EQ(distance(V{0.75, 0.25}, V{0.5, 0.5}, Metric::kTvd), 0.25);
  EXPECT_EQ(distance(V{0.2, 0.8}, V{0.2, 0.8}, Metric::kHellinger), 0.0);
  EXPECT_NEAR(distance(V{1, 0}, V{0, 1}, Metric::kHellinger), 1.0, 1e-15);
  EXPECT_EQ(distance(V{1, 0}, V{0.5, 0.5}, Metric::kJsd), jsd(V{1, 0}, V{0.5, 0.5}));
  EXPECT_THROW(distance(V{1}, V{0.5, 0.5}, Metric::kTvd), DimensionMismatch);
  EXPECT_EQ(parse_metric("hellinger"), Metric::kHellinger);
  EXPECT_THROW(parse_metric("kl"), InvalidArgument);
}

TEST(BinContributions, ZeroOnEqualInputs) {
  for (double c : bin_contributions(V{0.2, 0.3, 0.5}, V{0.2, 0.3, 0.5})) {
    EXPECT_EQ(c, 0.0);
  }
}

TEST(BinContributions, SumToJsd) {
  const auto c = bin_contributions(V{1, 0}, V{0.5, 0.5});
  EXPECT_NEAR(c[0] + c[1], 0.311278, 1e-6);
  EXPECT_NEAR(c[0] + c[1], jsd(V{1, 0}, V{0.5, 0.5}), 1e-12);
  Rng rng(14);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t k = 1 + rng.index(25);
    const auto p = testing::random_distribution(k, rng, 0.25);
    const auto q = testing::random_distribution(k, rng, 0.25);
    const auto parts = bin_contributions(p, q);
    double sum = 0.0;
    for (double x : parts) sum += x;
    ASSERT_NEAR(sum, jsd(p, q), 1e-12);
  }
}

TEST(BinContributions, LargestShiftDominates) {
  const auto c = bin_contributions(V{0.5, 0.5}, V{0.9, 0.1});
  const V p = {0.5, 0.5}, q = {0.9, 0.1};
  const std::size_t top = std::max_element(c.begin(), c.end()) - c.begin();
  double max_shift = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) max_shift = std::max(max_shift, std::abs(p[i] - q[i]));
  EXPECT_NEAR(std::abs(p[top] - q[top]), max_shift, 1e-15);
  // Both bins move by 0.4; the bin losing mass carries the larger split.
  EXPECT_GT(c[1], c[0]);
}

TEST(ComputeDrift, SelfDriftIsExactlyZero) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Dataset ds = testing::random_dataset(300, 8, seed);
    const auto report = compute_drift(ds, ds, 6, seed);
    EXPECT_EQ(report.value, 0.0);
    EXPECT_EQ(report.n_base, 300u);
    EXPECT_EQ(report.n_prod, 300u);
    for (const auto& b : report.per_bin) {
      EXPECT_EQ(b.contribution, 0.0);
      EXPECT_EQ(b.p, b.q);
    }
  }
}

TEST(ComputeDrift, WithModelAllInOneBin) {
  BaselineModel model;
  model.k = 2;
  model.dim = 1;
  model.centroids = Matrix(2, 1);
  model.centroids.values = {0.0, 10.0};
  model.counts = {5, 5};
  model.frequencies = {0.5, 0.5};
  model.created_n = 10;
  Dataset prod;
  prod.dim = 1;
  for (int i = 0; i < 4; ++i) prod.records.push_back({"x" + std::to_string(i), {0.5}, {}, {}, {}});
  const auto report = compute_drift_with_model(model, prod);
  EXPECT_NEAR(report.value, 0.311278, 1e-6);
  EXPECT_EQ(report.per_bin[0].q, 1.0);
  EXPECT_EQ(report.per_bin[1].q, 0.0);
  EXPECT_NEAR(report.per_bin[0].contribution + report.per_bin[1].contribution, report.value,
              1e-12);

  const auto tvd = compute_drift_with_model(model, prod, Metric::kTvd);
  EXPECT_DOUBLE_EQ(tvd.value, 0.5);
  EXPECT_DOUBLE_EQ(tvd.per_bin[0].contribution + tvd.per_bin[1].contribution, 0.5);
  const auto hel = compute_drift_with_model(model, prod, Metric::kHellinger);
  EXPECT_NEAR(hel.per_bin[0].contribution + hel.per_bin[1].contribution, hel.value, 1e-12);
}

TEST(ComputeDrift, PermutationInvariant) {
  const Dataset base = testing::random_dataset(200, 3, 1);
  Dataset prod = testing::random_dataset(150, 3, 2);
  const auto before = compute_drift(base, prod, 5, 9);
  Rng rng(1);
  rng.shuffle(std::span(prod.records));
  EXPECT_EQ(compute_drift(base, prod, 5, 9), before);
}

TEST(ComputeDrift, ThreeBlobShiftMatchesMixtureJsd) {
  const auto blobs = testing::three_blobs();
  const std::vector<std::size_t> counts = {1000, 1000, 1000};
  const Dataset base = testing::gaussian_blobs(blobs, counts, 1);
  const V w = {0.6, 0.2, 0.2};
  const Dataset prod = testing::gaussian_mixture(blobs, w, 3000, 2);
  const auto report = compute_drift(base, prod, 3, 5);
  const double expected = testing::jsd_oracle(V{1.0 / 3, 1.0 / 3, 1.0 / 3}, w);
  EXPECT_GT(report.value, 0.05);
  EXPECT_NEAR(report.value, expected, 0.03);
}

TEST(ComputeDrift, BootstrapResampleIsSmall) {
  // 100 Monte Carlo bootstrap resamples; every one must stay below 0.02.
  const Dataset base = testing::random_dataset(3000, 4, 40);
  const auto model = initialize_clusters(base, 10, 3);
  Rng rng(41);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Dataset boot;
    boot.dim = base.dim;
    for (std::size_t i = 0; i < base.size(); ++i) {
      boot.records.push_back(base.records[rng.index(base.size())]);
    }
    worst = std::max(worst, compute_drift_with_model(model, boot).value);
  }
  EXPECT_LT(worst, 0.02);
  EXPECT_GT(worst, 0.0);
}

TEST(ComputeDrift, Errors) {
  EXPECT_THROW(compute_drift(testing::random_dataset(20, 2, 1), testing::random_dataset(20, 3, 1), 2, 1),
               DimensionMismatch);
  Dataset empty;
  empty.dim = 2;
  EXPECT_THROW(compute_drift(testing::random_dataset(20, 2, 1), empty, 2, 1), EmptyInput);
}

}  // namespace
}  // namespace embdrift
