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

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "embdrift/binner.hpp"
#include "embdrift/cli.hpp"
#include "support/synthetic.hpp"

namespace embdrift::cli {
namespace {

using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_dataset(const Dataset& ds, const std::string& name) {
  const auto path = testing::temp_file(name);
  save_dataset(ds, path, format_from_path(path));
  return path.string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    base_ = write_dataset(testing::random_dataset(120, 3, 1), "cli-base.ndjson");
    model_ = testing::temp_file("cli-model.json").string();
  }
  std::string base_;
  std::string model_;
};

TEST_F(CliTest, FitThenSelfDrift) {
  const auto fit = call({"fit", "--data", base_, "--k", "4", "--seed", "7", "--out", model_});
  ASSERT_EQ(fit.code, kOk) << fit.err;
  const auto model = load_model(model_);
  EXPECT_EQ(model.k, 4u);
  EXPECT_EQ(model.seed, 7u);
  EXPECT_EQ(json::parse(fit.out)["command"], "fit");

  const auto drift = call({"drift", "--model", model_, "--data", base_});
  ASSERT_EQ(drift.code, kOk) << drift.err;
  const json doc = json::parse(drift.out);
  EXPECT_EQ(doc["version"], 1);
  EXPECT_EQ(doc["result"]["value"].get<double>(), 0.0);
  EXPECT_EQ(doc["config"]["prng"], "mt19937_64");
  EXPECT_EQ(doc["result"]["per_bin"].size(), 4u);
}

TEST_F(CliTest, DriftWithOnTheFlyBaseline) {
  const auto prod = write_dataset(testing::random_dataset(80, 3, 2), "cli-prod.csv");
  const auto r = call({"drift", "--base", base_, "--k", "3", "--data", prod, "--metric", "tvd"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["result"]["metric"], "tvd");
  EXPECT_EQ(doc["result"]["n_prod"], 80);
}

TEST_F(CliTest, WrongDimensionIsRuntimeError) {
  ASSERT_EQ(call({"fit", "--data", base_, "--k", "3", "--out", model_}).code, kOk);
  const auto wrong = write_dataset(testing::random_dataset(10, 5, 2), "cli-wrong.ndjson");
  const auto r = call({"drift", "--model", model_, "--data", wrong});
  EXPECT_EQ(r.code, kRuntimeError);
  EXPECT_NE(r.err.find("dimension"), std::string::npos) << r.err;
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(call({}).code, kUsageError);
  EXPECT_EQ(call({"bogus"}).code, kUsageError);
  EXPECT_EQ(call({"fit", "--data", base_, "--k", "3", "--nope"}).code, kUsageError);
  EXPECT_EQ(call({"fit", "--data", base_, "--k", "3"}).code, kUsageError);
  EXPECT_EQ(call({"drift", "--data", base_}).code, kUsageError);
  EXPECT_EQ(call({"drift", "--model", model_, "--data", base_, "--metric", "kl"}).code, kUsageError);
  EXPECT_EQ(call({"--help"}).code, kOk);
}

TEST_F(CliTest, MissingFileIsRuntimeError) {
  const auto r = call({"validate", "--data", "/nonexistent/file.ndjson"});
  EXPECT_EQ(r.code, kRuntimeError);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, DeterministicOutputIsByteIdentical) {
  ASSERT_EQ(call({"fit", "--data", base_, "--k", "3", "--out", model_}).code, kOk);
  const std::vector<std::string> args = {"drift", "--model", model_, "--data", base_,
                                         "--deterministic"};
  const auto a = call(args);
  const auto b = call(args);
  ASSERT_EQ(a.code, kOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(json::parse(a.out).contains("elapsed_ms"));
}

TEST_F(CliTest, MonitorRaisesAlerts) {
  const auto blobs = testing::three_blobs();
  const std::vector<std::size_t> even = {100, 100, 100};
  const auto base = write_dataset(testing::gaussian_blobs(blobs, even, 1), "cli-mon-base.ndjson");
  ASSERT_EQ(call({"fit", "--data", base, "--k", "3", "--out", model_}).code, kOk);

  Dataset events = testing::gaussian_blobs(blobs, even, 2);
  for (auto& r : events.records) r.timestamp = 100;
  const std::vector<std::size_t> skewed = {0, 0, 100};
  Dataset late = testing::gaussian_blobs(blobs, skewed, 3);
  for (auto& r : late.records) {
    r.id = "late-" + r.id;
    r.timestamp = 86400 + 100;
    events.records.push_back(r);
  }
  const auto events_path = write_dataset(events, "cli-events.ndjson");
  const auto plot = testing::temp_file("cli-plot.csv").string();
  const auto r = call({"monitor", "--model", model_, "--events", events_path, "--window-hours",
                       "24", "--threshold", "0.1", "--min-events", "50", "--plot-csv", plot});
  EXPECT_EQ(r.code, kAlertsRaised) << r.err;
  const json doc = json::parse(r.out);
  ASSERT_EQ(doc["result"]["alerts"].size(), 1u);
  EXPECT_EQ(doc["result"]["alerts"][0]["window_start"], 86400);
  EXPECT_EQ(slurp(plot).substr(0, 18), "window_start,n,jsd");

  const auto quiet = call({"monitor", "--model", model_, "--events", events_path,
                           "--window-hours", "24", "--threshold", "0.99"});
  EXPECT_EQ(quiet.code, kOk);
}

TEST_F(CliTest, ValidateReportsShape) {
  const auto r = call({"validate", "--data", base_, "--dim", "3"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(json::parse(r.out)["result"]["n"], 120);
  EXPECT_EQ(call({"validate", "--data", base_, "--dim", "4"}).code, kRuntimeError);
}

TEST_F(CliTest, SelectKWritesModel) {
  const auto out_model = testing::temp_file("cli-selectk.json").string();
  const auto r = call({"select-k", "--data", base_, "--m-min", "20", "--k-max", "8",
                       "--model-out", out_model});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto k = json::parse(r.out)["result"]["k"].get<std::size_t>();
  EXPECT_EQ(load_model(out_model).k, k);
  EXPECT_NE(r.err.find("chosen k"), std::string::npos);
}

TEST_F(CliTest, Summarize) {
  Dataset ds = testing::random_dataset(40, 2, 9);
  for (auto& rec : ds.records) rec.text = "solar physics lab";
  const auto data = write_dataset(ds, "cli-text.ndjson");
  ASSERT_EQ(call({"fit", "--data", data, "--k", "2", "--out", model_}).code, kOk);
  const auto r = call({"summarize", "--model", model_, "--data", data, "--top-n", "2", "--reps",
                       "1"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const json list = json::parse(r.out)["result"];
  ASSERT_EQ(list.size(), 2u);
  EXPECT_LE(list[0]["top_terms"].size(), 2u);
}

TEST_F(CliTest, ExperimentCsv) {
  const auto prod = write_dataset(testing::random_dataset(100, 3, 5), "cli-exp-prod.ndjson");
  const auto r = call({"experiment", "cluster-sweep", "--base", base_, "--prod", prod, "--ks",
                       "2-4", "--format", "csv"});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "x,series,mean,std");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 3);
}

TEST_F(CliTest, ExperimentSensitivityJson) {
  const auto blobs = testing::three_blobs();
  const std::vector<std::size_t> counts = {100, 100, 100};
  const auto base = write_dataset(testing::gaussian_blobs(blobs, counts, 1), "cli-sb.ndjson");
  const auto pool = write_dataset(testing::gaussian_blobs(blobs, counts, 2), "cli-sp.ndjson");
  const auto r = call({"experiment", "sensitivity", "--base", base, "--pool", pool, "--label",
                       "a", "--fractions", "0:1:0.5", "--n", "90", "--k", "3"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["result"]["x"].size(), 3u);
}

}  // namespace
}  // namespace embdrift::cli
