/*
 * Copyright 2026 The gbbench Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>

#include "gbbench/bench.h"
#include "gbbench/error.h"
#include "gbbench/metrics.h"
#include "gbbench/random.h"

namespace gbbench {

namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct LoadedDataset {
  Dataset data;
  FoldPlan plan;
  std::string plan_json;
  std::string error;
};

struct Task {
  size_t dataset;
  size_t model;
  size_t regime;
  int fold;
};

std::map<std::string, double> Score(const Dataset& test, const BoostedEnsemble& model,
                                    const std::vector<std::string>& metrics) {
  const int c = static_cast<int>(test.num_classes());
  std::vector<double> proba;
  std::vector<int32_t> predicted;
  proba.reserve(test.num_rows() * static_cast<size_t>(c));
  for (size_t i = 0; i < test.num_rows(); ++i) {
    const std::vector<double> margin = PredictMargin(model, test, i);
    const std::vector<double> p = MarginsToProba(margin, c);
    proba.insert(proba.end(), p.begin(), p.end());
    predicted.push_back(MarginsToLabel(margin, c));
  }
  const std::span<const int32_t> truth = test.labels();
  std::map<std::string, double> out;
  for (const std::string& m : metrics) {
    if (m == "accuracy") {
      out[m] = Accuracy(truth, predicted);
    } else if (m == "f1") {
      out[m] = c == 2 ? F1Binary(truth, predicted, 1) : F1Weighted(truth, predicted);
    } else if (m == "auc") {
      if (c == 2) {
        std::vector<uint8_t> positive;
        std::vector<double> score;
        for (size_t i = 0; i < truth.size(); ++i) {
          positive.push_back(truth[i] == 1);
          score.push_back(proba[2 * i + 1]);
        }
        out[m] = AucBinary(positive, score);
      } else {
        out[m] = AucWeightedOvr(truth, proba, c).value;
      }
    } else if (m == "log_loss") {
      out[m] = LogLoss(truth, proba, c);
    }
  }
  return out;
}

FoldRecord RunFold(const ExperimentConfig& config, const LoadedDataset& loaded, const Task& t) {
  const DatasetSpec& ds = config.datasets[t.dataset];
  const ModelSpec& ms = config.models[t.model];
  const RegimeSpec& rs = config.regimes[t.regime];
  FoldRecord rec;
  rec.fold = t.fold;
  const uint64_t cell_seed =
      DeriveSeed(config.seed, {HashName(ds.name), HashName(ms.name), HashName(rs.name()),
                               static_cast<uint64_t>(t.fold)});
  try {
    Dataset train = loaded.data.Subset(loaded.plan.TrainRows(t.fold));
    Dataset test = loaded.data.Subset(loaded.plan.TestRows(t.fold));

    // Encoding depends on (dataset, fold) only, so every cell sees the same
    // encoded fold.
    const auto encode_start = Clock::now();
    if (train.HasRawCategoricals()) {
      OrderedTargetOptions options;
      options.seed = DeriveSeed(config.seed, {HashName(ds.name), static_cast<uint64_t>(t.fold),
                                              HashName("encode")});
      EncodedPair pair = EncodeCategoricals(train, test, options);
      train = std::move(pair.train);
      test = std::move(pair.eval);
    }
    const double encode_seconds = Seconds(encode_start);

    BoostConfig init = ms.init;
    init.n_estimators = ds.n_estimators;
    BoostConfig chosen = init;
    if (rs.regime != Regime::kNone) {
      const auto tune_start = Clock::now();
      const TuneMethod method = rs.regime == Regime::kTpe ? TuneMethod::kTpe : TuneMethod::kRandom;
      TuneResult tuned = Tune(train, init, ms.space, method, rs.n_iter, config.inner_k, cell_seed);
      rec.tune_seconds = Seconds(tune_start);
      rec.n_trials = static_cast<int>(tuned.history.trials.size());
      for (const Trial& trial : tuned.history.trials) {
        if (!std::isfinite(trial.score)) ++rec.failed_trials;
      }
      rec.best_params = tuned.best_params;
      chosen = tuned.best_config;
    }
    chosen.seed = DeriveSeed(cell_seed, {HashName("fit")});

    const auto fit_start = Clock::now();
    const BoostedEnsemble model = Fit(train, chosen);
    rec.fit_seconds = encode_seconds + Seconds(fit_start);
    rec.metrics = Score(test, model, config.metrics);
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  return rec;
}

}  // namespace

ExperimentReport RunExperiment(const ExperimentConfig& config,
                               const std::function<void(const std::string&)>& progress) {
  config.Validate();
  ExperimentReport report;
  report.outer_k = config.outer_k;
  report.seed = config.seed;
  report.metrics = config.metrics;
  for (const DatasetSpec& d : config.datasets) report.datasets.push_back(d.name);
  for (const ModelSpec& m : config.models) report.models.push_back(m.name);
  for (const RegimeSpec& r : config.regimes) report.regimes.push_back(r.name());

  // Loading is outside every timer.
  std::vector<LoadedDataset> loaded(config.datasets.size());
  for (size_t d = 0; d < config.datasets.size(); ++d) {
    const DatasetSpec& ds = config.datasets[d];
    try {
      loaded[d].data = LoadCsv(ds.path, ds.Schema());
      loaded[d].plan = StratifiedKFold(loaded[d].data.labels(), config.outer_k,
                                       DeriveSeed(config.seed, {HashName(ds.name)}));
      loaded[d].plan_json = loaded[d].plan.ToJson();
    } catch (const std::exception& e) {
      loaded[d].error = e.what();
      report.errors.push_back(ds.name + ": " + e.what());
    }
  }

  std::vector<Task> tasks;
  for (size_t d = 0; d < config.datasets.size(); ++d) {
    for (size_t m = 0; m < config.models.size(); ++m) {
      for (size_t r = 0; r < config.regimes.size(); ++r) {
        for (int f = 0; f < config.outer_k; ++f) tasks.push_back({d, m, r, f});
      }
    }
  }
  std::vector<FoldRecord> records(tasks.size());
  std::atomic<size_t> next{0};
  std::atomic<size_t> done{0};
  std::mutex log_mutex;
  auto worker = [&]() {
    for (size_t i = next++; i < tasks.size(); i = next++) {
      const Task& t = tasks[i];
      const LoadedDataset& ld = loaded[t.dataset];
      if (!ld.error.empty()) {
        records[i].fold = t.fold;
        records[i].error = "dataset failed to load: " + ld.error;
      } else {
        records[i] = RunFold(config, ld, t);
      }
      const size_t finished = ++done;
      if (progress) {
        const std::lock_guard<std::mutex> lock(log_mutex);
        progress("[" + std::to_string(finished) + "/" + std::to_string(tasks.size()) + "] " +
                 config.datasets[t.dataset].name + " " + config.models[t.model].name + " " +
                 config.regimes[t.regime].name() + " fold " + std::to_string(t.fold) +
                 (records[i].ok() ? "" : " failed: " + records[i].error));
      }
    }
  };
  const int cap = config.threads > 0 ? config.threads : ThreadCap();
  const size_t n_threads = std::min(static_cast<size_t>(cap), std::max<size_t>(1, tasks.size()));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  size_t i = 0;
  for (size_t d = 0; d < config.datasets.size(); ++d) {
    for (size_t m = 0; m < config.models.size(); ++m) {
      for (size_t r = 0; r < config.regimes.size(); ++r) {
        CellResult cell;
        cell.dataset = config.datasets[d].name;
        cell.model = config.models[m].name;
        cell.regime = config.regimes[r].name();
        cell.fold_plan = loaded[d].plan_json;
        for (int f = 0; f < config.outer_k; ++f) cell.folds.push_back(std::move(records[i++]));
        report.cells.push_back(std::move(cell));
      }
    }
  }
  return report;
}

}  // namespace gbbench
