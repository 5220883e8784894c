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

#include "embdrift/cli.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "embdrift/binner.hpp"
#include "embdrift/drift.hpp"
#include "embdrift/error.hpp"
#include "embdrift/experiments.hpp"
#include "embdrift/monitor.hpp"
#include "embdrift/parallel.hpp"
#include "embdrift/rng.hpp"
#include "embdrift/selectk.hpp"
#include "embdrift/textvec.hpp"
#include "embdrift/vectorstore.hpp"

namespace embdrift::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kOutputVersion = 1;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct SharedOptions {
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out;
  std::string format = "json";
  bool deterministic = false;
};

// ---------------------------------------------------------------------------
// JSON views of library types.

json report_json(const DriftReport& r) {
  json bins = json::array();
  for (const auto& b : r.per_bin) {
    bins.push_back({{"bin", b.bin}, {"p", b.p}, {"q", b.q}, {"contribution", b.contribution}});
  }
  return {{"value", r.value},   {"metric", to_string(r.metric)}, {"k", r.k},
          {"n_base", r.n_base}, {"n_prod", r.n_prod},            {"per_bin", std::move(bins)}};
}

json series_json(const WindowedDriftSeries& s) {
  json points = json::array();
  for (const auto& p : s.points) {
    json item = {{"window_start", p.window_start}, {"n", p.n}};
    if (p.report) {
      item["value"] = p.report->value;
      item["report"] = report_json(*p.report);
    } else {
      item["value"] = nullptr;
      item["report"] = "insufficient";
    }
    points.push_back(std::move(item));
  }
  return {{"window_seconds", s.window_seconds}, {"points", std::move(points)}};
}

json sweep_json(const experiments::SweepResult& r) {
  json series = json::array();
  for (const auto& s : r.series) {
    json points = json::array();
    for (const auto& p : s.points) {
      if (p.samples.empty()) {
        points.push_back(nullptr);
      } else {
        points.push_back({{"mean", p.mean}, {"std", p.std}, {"samples", p.samples}});
      }
    }
    series.push_back({{"name", s.name}, {"points", std::move(points)}});
  }
  return {{"parameter", r.parameter}, {"x", r.x}, {"series", std::move(series)}};
}

// ---------------------------------------------------------------------------
// Argument helpers.

std::vector<double> parse_reals(const std::string& text) {
  // "a,b,c" or "start:stop:step" (inclusive of stop within rounding).
  std::vector<double> values;
  if (text.find(':') != std::string::npos) {
    double start = 0.0, stop = 0.0, step = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0.0) {
      throw UsageError("invalid range '" + text + "' (expected start:stop:step)");
    }
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) {
      values.push_back(start + static_cast<double>(i) * step);
    }
    return values;
  }
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("invalid number '" + item + "' in list '" + text + "'");
    }
  }
  if (values.empty()) {
    throw UsageError("empty list");
  }
  return values;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  // "a,b,c" or "lo-hi".
  std::vector<std::size_t> values;
  auto dash = text.find('-');
  try {
    if (dash != std::string::npos && text.find(',') == std::string::npos) {
      const std::size_t lo = std::stoul(text.substr(0, dash));
      const std::size_t hi = std::stoul(text.substr(dash + 1));
      if (hi < lo) throw std::invalid_argument(text);
      for (std::size_t v = lo; v <= hi; ++v) values.push_back(v);
      return values;
    }
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
      std::size_t used = 0;
      values.push_back(std::stoul(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    }
  } catch (const std::exception&) {
    throw UsageError("invalid integer list '" + text + "'");
  }
  if (values.empty()) {
    throw UsageError("empty list");
  }
  return values;
}

Dataset load(const std::string& path, const std::string& input_format) {
  if (!fs::exists(path)) {
    throw Error("file not found: " + path);
  }
  return input_format.empty() ? load_dataset(path) : load_dataset(path, parse_file_format(input_format));
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

class Output {
 public:
  Output(const SharedOptions& shared, std::ostream& out) : shared_(shared), out_(out) {}

  void write_text(const std::string& text) const {
    if (shared_.out.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(shared_.out);
    if (!f) {
      throw Error("cannot write output file " + shared_.out);
    }
    f << text;
  }

  void write_json(const std::string& command, json config, json result,
                  std::chrono::steady_clock::time_point started) const {
    json doc = {{"version", kOutputVersion},
                {"command", command},
                {"config", std::move(config)},
                {"result", std::move(result)}};
    if (!shared_.deterministic) {
      doc["generated_at"] = utc_now();
      doc["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - started)
                              .count();
    }
    write_text(doc.dump(2) + "\n");
  }

 private:
  const SharedOptions& shared_;
  std::ostream& out_;
};

json shared_config(const SharedOptions& shared) {
  return {{"seed", shared.seed}, {"prng", std::string(Rng::kAlgorithm)}};
}

void require_json_format(const SharedOptions& shared, const std::string& command) {
  if (shared.format != "json") {
    throw UsageError(command + " only supports --format json");
  }
}

std::vector<std::string> names_for(const std::vector<std::string>& paths,
                                   const std::vector<std::string>& names) {
  if (!names.empty() && names.size() != paths.size()) {
    throw UsageError("--name must be given once per --base");
  }
  if (!names.empty()) {
    return names;
  }
  std::vector<std::string> out;
  for (const auto& p : paths) {
    out.push_back(fs::path(p).stem().string());
  }
  return out;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();

  CLI::App app{"Embedding drift measurement via k-means binning and Jensen-Shannon divergence",
               "embdrift"};
  app.require_subcommand(1);
  app.fallthrough();

  SharedOptions shared;
  app.add_option("--seed", shared.seed, "Seed for every random draw");
  app.add_option("--threads", shared.threads, "Worker thread cap (0 = all cores)");
  app.add_option("--out", shared.out, "Write the result here instead of stdout");
  app.add_option("--format", shared.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--deterministic", shared.deterministic, "Omit wall-clock fields from JSON output");

  std::string input_format;
  auto add_input_format = [&](CLI::App* sub) {
    sub->add_option("--input-format", input_format, "Dataset format (ndjson|csv); default by extension")
        ->check(CLI::IsMember({"ndjson", "csv"}));
  };

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "Fit a baseline model");
  std::string fit_data;
  std::size_t fit_k = 10;
  std::size_t max_iter = 300;
  double tol = 1e-6;
  bool normalize = false;
  fit_cmd->add_option("--data", fit_data, "Baseline dataset")->required();
  fit_cmd->add_option("--k", fit_k, "Number of clusters (bins)")->check(CLI::PositiveNumber);
  fit_cmd->add_option("--max-iter", max_iter, "Lloyd iteration cap")->check(CLI::PositiveNumber);
  fit_cmd->add_option("--tol", tol, "Relative inertia tolerance")->check(CLI::NonNegativeNumber);
  fit_cmd->add_flag("--normalize", normalize, "L2-normalize vectors before clustering");
  add_input_format(fit_cmd);

  // drift
  auto* drift_cmd = app.add_subcommand("drift", "Measure drift of a dataset against a baseline");
  std::string drift_model;
  std::string drift_base;
  std::string drift_data;
  std::string metric_name = "jsd";
  std::size_t drift_k = 10;
  drift_cmd->add_option("--model", drift_model, "Baseline model file");
  drift_cmd->add_option("--base", drift_base, "Baseline dataset (fit on the fly)");
  drift_cmd->add_option("--data", drift_data, "Production dataset")->required();
  drift_cmd->add_option("--k", drift_k, "Clusters when fitting on the fly")->check(CLI::PositiveNumber);
  drift_cmd->add_option("--metric", metric_name)->check(CLI::IsMember({"jsd", "tvd", "hellinger"}));
  drift_cmd->add_flag("--normalize", normalize, "L2-normalize when fitting on the fly");
  add_input_format(drift_cmd);

  // select-k
  auto* selectk_cmd = app.add_subcommand("select-k", "Choose the largest well-populated k");
  std::string sk_data;
  std::string sk_model_out;
  SelectKOptions sk;
  selectk_cmd->add_option("--data", sk_data, "Baseline dataset")->required();
  selectk_cmd->add_option("--m-min", sk.m_min, "Minimum points per bin")->check(CLI::PositiveNumber);
  selectk_cmd->add_option("--k-min", sk.k_min);
  selectk_cmd->add_option("--k-max", sk.k_max);
  selectk_cmd->add_option("--model-out", sk_model_out, "Also save the chosen model here");
  selectk_cmd->add_flag("--normalize", normalize, "L2-normalize vectors before clustering");
  add_input_format(selectk_cmd);

  // monitor
  auto* monitor_cmd = app.add_subcommand("monitor", "Windowed drift series with alerts");
  std::string mon_model;
  std::string mon_events;
  std::string plot_csv;
  double window_hours = 24.0;
  std::int64_t window_seconds = 0;
  AlertPolicy policy;
  monitor_cmd->add_option("--model", mon_model)->required();
  monitor_cmd->add_option("--events", mon_events, "Timestamped production events")->required();
  monitor_cmd->add_option("--window-hours", window_hours)->check(CLI::PositiveNumber);
  monitor_cmd->add_option("--window-seconds", window_seconds, "Overrides --window-hours")
      ->check(CLI::PositiveNumber);
  monitor_cmd->add_option("--threshold", policy.threshold)->check(CLI::Range(0.0, 1.0));
  monitor_cmd->add_option("--min-events", policy.min_events)->check(CLI::PositiveNumber);
  monitor_cmd->add_option("--metric", metric_name)->check(CLI::IsMember({"jsd", "tvd", "hellinger"}));
  monitor_cmd->add_option("--plot-csv", plot_csv, "Write window_start,n,value rows here");
  add_input_format(monitor_cmd);

  // summarize
  auto* summarize_cmd = app.add_subcommand("summarize", "Top terms and representatives per bin");
  std::string sum_model;
  std::string sum_data;
  std::string stopwords_path;
  std::size_t top_n = 10;
  std::size_t reps = 3;
  summarize_cmd->add_option("--model", sum_model)->required();
  summarize_cmd->add_option("--data", sum_data, "Dataset whose records carry text")->required();
  summarize_cmd->add_option("--top-n", top_n);
  summarize_cmd->add_option("--reps", reps);
  summarize_cmd->add_option("--stopwords", stopwords_path, "File with one stopword per line");
  add_input_format(summarize_cmd);

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "Synthetic drift experiments");
  exp_cmd->require_subcommand(1);
  std::vector<std::string> exp_base;
  std::vector<std::string> exp_other;
  std::vector<std::string> exp_names;
  std::string exp_label;
  std::string fractions_arg = "0:1:0.1";
  std::string ks_arg = "2-20";
  std::string dims_arg;
  std::size_t exp_n = 4000;
  std::size_t exp_k = 10;
  std::size_t repeats = 5;
  bool fixed_kmeans_seed = false;

  auto* sens_cmd = exp_cmd->add_subcommand("sensitivity", "Drift vs. label proportion");
  sens_cmd->add_option("--base", exp_base, "Baseline dataset (repeat per embedding)")->required();
  sens_cmd->add_option("--pool", exp_other, "Scenario pool (one per --base)")->required();
  sens_cmd->add_option("--name", exp_names, "Embedding name (one per --base)");
  sens_cmd->add_option("--label", exp_label, "Label whose share is varied")->required();
  sens_cmd->add_option("--fractions", fractions_arg, "List a,b,c or range start:stop:step");
  sens_cmd->add_option("--n", exp_n, "Records per scenario")->check(CLI::PositiveNumber);
  sens_cmd->add_option("--k", exp_k)->check(CLI::PositiveNumber);
  add_input_format(sens_cmd);

  auto* csweep_cmd = exp_cmd->add_subcommand("cluster-sweep", "Drift vs. number of clusters");
  csweep_cmd->add_option("--base", exp_base)->required();
  csweep_cmd->add_option("--prod", exp_other)->required();
  csweep_cmd->add_option("--name", exp_names);
  csweep_cmd->add_option("--ks", ks_arg, "List a,b,c or range lo-hi");
  add_input_format(csweep_cmd);

  auto* dsweep_cmd = exp_cmd->add_subcommand("dim-sweep", "Drift vs. sampled embedding dimension");
  dsweep_cmd->add_option("--base", exp_base)->required();
  dsweep_cmd->add_option("--prod", exp_other)->required();
  dsweep_cmd->add_option("--name", exp_names);
  dsweep_cmd->add_option("--dims", dims_arg, "List of dimensions")->required();
  dsweep_cmd->add_option("--repeats", repeats)->check(CLI::PositiveNumber);
  dsweep_cmd->add_option("--k", exp_k)->check(CLI::PositiveNumber);
  dsweep_cmd->add_flag("--fixed-kmeans-seed", fixed_kmeans_seed,
                       "Use --seed for every repeat's k-means fit");
  add_input_format(dsweep_cmd);

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "Check a dataset file");
  std::string val_data;
  std::size_t val_dim = 0;
  validate_cmd->add_option("--data", val_data)->required();
  validate_cmd->add_option("--dim", val_dim, "Required dimension");
  add_input_format(validate_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << "run with --help for usage\n";
    return kUsageError;
  }

  set_thread_limit(shared.threads);
  const Output output(shared, out);

  try {
    if (fit_cmd->parsed()) {
      require_json_format(shared, "fit");
      if (shared.out.empty()) {
        throw UsageError("fit needs --out for the model file");
      }
      const Dataset base = load(fit_data, input_format);
      err << "fitting k=" << fit_k << " on " << base.size() << " records (dim " << base.dim
          << ")\n";
      BinnerOptions options;
      options.normalize = normalize;
      options.kmeans.max_iter = max_iter;
      options.kmeans.tol = tol;
      const BaselineModel model = initialize_clusters(base, fit_k, shared.seed, options);
      save_model(model, shared.out);
      json config = shared_config(shared);
      config.update({{"data", fit_data}, {"k", fit_k}, {"max_iter", max_iter}, {"tol", tol},
                     {"normalize", normalize}, {"model", shared.out}});
      json result = {{"k", model.k}, {"dim", model.dim}, {"created_n", model.created_n},
                     {"counts", model.counts}, {"frequencies", model.frequencies}};
      json doc = {{"version", kOutputVersion}, {"command", "fit"}, {"config", config},
                  {"result", result}};
      if (!shared.deterministic) {
        doc["generated_at"] = utc_now();
      }
      out << doc.dump(2) << "\n";
      return kOk;
    }

    if (drift_cmd->parsed()) {
      require_json_format(shared, "drift");
      if (drift_model.empty() == drift_base.empty()) {
        throw UsageError("drift needs exactly one of --model or --base");
      }
      const Metric metric = parse_metric(metric_name);
      BaselineModel model;
      if (!drift_model.empty()) {
        model = load_model(drift_model);
      } else {
        BinnerOptions options;
        options.normalize = normalize;
        model = initialize_clusters(load(drift_base, input_format), drift_k, shared.seed, options);
      }
      const Dataset prod = load(drift_data, input_format);
      const DriftReport report = compute_drift_with_model(model, prod, metric);
      err << to_string(metric) << " = " << report.value << " over " << prod.size()
          << " records\n";
      json config = shared_config(shared);
      config.update({{"data", drift_data}, {"metric", metric_name}, {"k", model.k},
                     {"model_seed", model.seed}, {"normalize", model.normalize}});
      if (!drift_model.empty()) config["model"] = drift_model;
      if (!drift_base.empty()) config["base"] = drift_base;
      output.write_json("drift", config, report_json(report), started);
      return kOk;
    }

    if (selectk_cmd->parsed()) {
      require_json_format(shared, "select-k");
      const Dataset base = load(sk_data, input_format);
      sk.seed = shared.seed;
      sk.binner.normalize = normalize;
      const SelectKResult result = select_k(base, sk);
      err << "k  feasible  min_count\n";
      json table = json::array();
      for (const auto& row : result.evaluated) {
        err << std::setw(3) << row.k << "  " << std::setw(8) << (row.feasible ? "yes" : "no")
            << "  " << row.min_count << "\n";
        table.push_back({{"k", row.k}, {"feasible", row.feasible}, {"min_count", row.min_count}});
      }
      err << "chosen k = " << result.k << "\n";
      if (!sk_model_out.empty()) {
        save_model(result.model, sk_model_out);
      }
      json config = shared_config(shared);
      config.update({{"data", sk_data}, {"m_min", sk.m_min}, {"k_min", sk.k_min},
                     {"k_max", sk.k_max}, {"normalize", normalize}});
      output.write_json("select-k", config,
                        {{"k", result.k},
                         {"linear_scan", result.used_linear_scan},
                         {"counts", result.model.counts},
                         {"table", table}},
                        started);
      return kOk;
    }

    if (monitor_cmd->parsed()) {
      require_json_format(shared, "monitor");
      validate_policy(policy);
      const Metric metric = parse_metric(metric_name);
      const BaselineModel model = load_model(mon_model);
      const Dataset events = load(mon_events, input_format);
      const std::int64_t window =
          window_seconds > 0 ? window_seconds
                             : static_cast<std::int64_t>(std::llround(window_hours * 3600.0));
      if (window <= 0) {
        throw UsageError("window must be at least one second");
      }
      const auto series = window_drift(model, events, window, metric);
      const auto alerts = check_alerts(series, policy);
      if (!plot_csv.empty()) {
        std::ofstream f(plot_csv);
        if (!f) throw Error("cannot write " + plot_csv);
        f << series_to_csv(series);
      }
      json alert_list = json::array();
      for (const auto& a : alerts) {
        alert_list.push_back({{"window_start", a.window_start}, {"value", a.value}, {"n", a.n}});
      }
      err << series.points.size() << " windows, " << alerts.size() << " alert(s)\n";
      json config = shared_config(shared);
      config.update({{"model", mon_model}, {"events", mon_events}, {"window_seconds", window},
                     {"threshold", policy.threshold}, {"min_events", policy.min_events},
                     {"metric", metric_name}});
      json result = series_json(series);
      result["alerts"] = std::move(alert_list);
      output.write_json("monitor", config, std::move(result), started);
      return alerts.empty() ? kOk : kAlertsRaised;
    }

    if (summarize_cmd->parsed()) {
      require_json_format(shared, "summarize");
      std::set<std::string> stopwords;
      if (!stopwords_path.empty()) {
        std::ifstream f(stopwords_path);
        if (!f) throw Error("cannot open stopword file " + stopwords_path);
        std::string word;
        while (f >> word) {
          for (auto& t : textvec::tokenize(word)) stopwords.insert(t);
        }
      }
      const BaselineModel model = load_model(sum_model);
      const Dataset ds = load(sum_data, input_format);
      const auto summaries = textvec::cluster_summary(model, ds, top_n, reps, stopwords);
      json list = json::array();
      for (const auto& s : summaries) {
        json terms = json::array();
        for (const auto& [term, score] : s.top_terms) {
          terms.push_back({{"term", term}, {"score", score}});
        }
        list.push_back({{"bin", s.bin},
                        {"members", s.members},
                        {"top_terms", std::move(terms)},
                        {"representatives", s.representatives}});
      }
      json config = shared_config(shared);
      config.update({{"model", sum_model}, {"data", sum_data}, {"top_n", top_n}, {"reps", reps},
                     {"stopwords", stopwords_path}});
      output.write_json("summarize", config, std::move(list), started);
      return kOk;
    }

    if (exp_cmd->parsed()) {
      if (exp_base.size() != exp_other.size()) {
        throw UsageError("give one --pool/--prod per --base");
      }
      const auto names = names_for(exp_base, exp_names);
      std::vector<Dataset> bases;
      std::vector<Dataset> others;
      for (std::size_t i = 0; i < exp_base.size(); ++i) {
        bases.push_back(load(exp_base[i], input_format));
        others.push_back(load(exp_other[i], input_format));
      }
      std::vector<experiments::EmbeddingInput> inputs;
      for (std::size_t i = 0; i < bases.size(); ++i) {
        inputs.push_back({names[i], &bases[i], &others[i]});
      }

      json config = shared_config(shared);
      config.update({{"base", exp_base}, {"names", names}});
      experiments::SweepResult result;
      std::string command;
      if (sens_cmd->parsed()) {
        command = "experiment sensitivity";
        const auto fractions = parse_reals(fractions_arg);
        err << "sensitivity sweep over " << fractions.size() << " fractions\n";
        result = experiments::sensitivity_curve(inputs, exp_label, fractions, exp_n, exp_k,
                                                shared.seed);
        config.update({{"pool", exp_other}, {"label", exp_label}, {"fractions", fractions},
                       {"n", exp_n}, {"k", exp_k}});
      } else if (csweep_cmd->parsed()) {
        command = "experiment cluster-sweep";
        const auto ks = parse_sizes(ks_arg);
        err << "cluster sweep over " << ks.size() << " values of k\n";
        result = experiments::cluster_sweep(inputs, ks, shared.seed);
        config.update({{"prod", exp_other}, {"ks", ks}});
      } else {
        command = "experiment dim-sweep";
        const auto dims = parse_sizes(dims_arg);
        err << "dimension sweep over " << dims.size() << " values of d, " << repeats
            << " repeats\n";
        experiments::DimSweepOptions options;
        options.fixed_kmeans_seed = fixed_kmeans_seed;
        result = experiments::dim_sweep(inputs, dims, repeats, exp_k, shared.seed, options);
        config.update({{"prod", exp_other}, {"dims", dims}, {"repeats", repeats}, {"k", exp_k},
                       {"fixed_kmeans_seed", fixed_kmeans_seed}});
      }
      if (shared.format == "csv") {
        output.write_text(experiments::sweep_to_csv(result));
      } else {
        output.write_json(command, config, sweep_json(result), started);
      }
      return kOk;
    }

    if (validate_cmd->parsed()) {
      require_json_format(shared, "validate");
      const Dataset ds = load(val_data, input_format);
      validate_dataset(ds);
      if (val_dim != 0 && ds.dim != val_dim) {
        throw DimensionMismatch(val_data + ": dimension " + std::to_string(ds.dim) +
                                ", expected " + std::to_string(val_dim));
      }
      std::size_t labeled = 0, timestamped = 0, with_text = 0;
      for (const auto& r : ds.records) {
        labeled += r.label.has_value();
        timestamped += r.timestamp.has_value();
        with_text += r.text.has_value();
      }
      err << val_data << ": " << ds.size() << " records, dim " << ds.dim << "\n";
      output.write_json("validate", {{"data", val_data}, {"dim", val_dim}},
                        {{"valid", true}, {"n", ds.size()}, {"dim", ds.dim}, {"labeled", labeled},
                         {"timestamped", timestamped}, {"with_text", with_text}},
                        started);
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace embdrift::cli
