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

#ifndef GBBENCH_BENCH_H_
#define GBBENCH_BENCH_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gbbench/boost.h"
#include "gbbench/data.h"
#include "gbbench/stats.h"
#include "gbbench/tune.h"

namespace gbbench {

struct DatasetSpec {
  std::string name;
  std::string path;
  std::string label;
  std::vector<std::string> categorical;
  std::vector<std::string> text;
  std::vector<std::string> drop;
  int n_estimators = 150;
  size_t text_vocab_size = 10000;

  CsvSchema Schema() const;
};

struct ModelSpec {
  std::string name;
  BoostConfig init;
  SearchSpace space;
};

// gbm, xgboost, lightgbm, catboost.
std::vector<std::string> PresetNames();
ModelSpec Preset(const std::string& name);

enum class Regime { kNone, kTpe, kRandom };
std::string_view RegimeName(Regime regime);

struct RegimeSpec {
  Regime regime = Regime::kNone;
  int n_iter = 0;  // 15 for tpe, 30 for random unless overridden

  std::string name() const { return std::string(RegimeName(regime)); }
};

inline const std::vector<std::string> kAllMetrics = {"accuracy", "f1", "auc", "log_loss"};
bool HigherIsBetter(const std::string& metric);

struct ExperimentConfig {
  std::vector<DatasetSpec> datasets;
  std::vector<ModelSpec> models;
  std::vector<RegimeSpec> regimes;
  int outer_k = 10;
  int inner_k = 5;
  uint64_t seed = 0;
  std::vector<std::string> metrics = kAllMetrics;
  std::string output_dir = "results";
  int threads = 0;  // 0: GBBENCH_THREADS or the hardware count

  void Validate() const;
  // Relative dataset paths and output_dir resolve against `base_dir`.
  static ExperimentConfig FromJson(const std::string& text, const std::string& base_dir = ".");
  static ExperimentConfig FromFile(const std::string& path);
};

struct FoldRecord {
  int fold = 0;
  std::map<std::string, double> metrics;
  double fit_seconds = 0.0;
  double tune_seconds = 0.0;
  int n_trials = 0;
  int failed_trials = 0;
  ParamConfig best_params;
  std::string error;  // nonempty when the fold failed

  bool ok() const { return error.empty(); }
};

struct CellResult {
  std::string dataset;
  std::string model;
  std::string regime;
  std::vector<FoldRecord> folds;
  std::string fold_plan;  // serialized outer plan this cell used

  std::vector<double> Values(const std::string& metric) const;  // successful folds
  double Mean(const std::string& metric) const;
  double Sd(const std::string& metric) const;  // sample sd, 0 for fewer than 2
  double MeanFitSeconds() const;
  double MeanTuneSeconds() const;
};

struct ExperimentReport {
  std::vector<std::string> datasets;
  std::vector<std::string> models;
  std::vector<std::string> regimes;
  std::vector<std::string> metrics;
  int outer_k = 0;
  uint64_t seed = 0;
  std::vector<CellResult> cells;  // dataset-major, then model, then regime
  std::vector<std::string> errors;  // dataset level failures

  const CellResult* Find(const std::string& dataset, const std::string& model,
                         const std::string& regime) const;
  std::string ToJson() const;
  static ExperimentReport FromJson(const std::string& text);
};

// GBBENCH_THREADS when set and positive, else the hardware count.
int ThreadCap();

// `progress`, when set, receives one line per finished fold. It may be called
// from worker threads, one call at a time.
ExperimentReport RunExperiment(const ExperimentConfig& config,
                               const std::function<void(const std::string&)>& progress = {});

// 100 * (tuned - baseline) / baseline.
double PercentDifference(double tuned, double baseline);

// Friedman ranks over datasets with one column per (model, regime).
struct RankTable {
  std::string metric;
  std::vector<std::string> columns;
  std::vector<double> mean_ranks;
  int num_datasets = 0;
  double alpha = 0.05;
  double cd = 0.0;
  std::optional<FriedmanResult> friedman;
  std::vector<std::vector<bool>> significant;
};

RankTable BuildRankTable(const ExperimentReport& report, const std::string& metric,
                         double alpha = 0.05);

enum class ReportFormat { kCsv, kMarkdown, kAll };

// Writes folds.csv, summary.csv, pct_diff.csv, ranks.csv, nemenyi.csv,
// wilcoxon.csv, digest.md and results.json (formats permitting) into `dir`.
// Returns the written paths.
std::vector<std::string> EmitReport(const ExperimentReport& report, const std::string& dir,
                                    ReportFormat format = ReportFormat::kAll);

// True when every cell of each dataset carries the same serialized plan.
bool FoldPlansIdentical(const ExperimentReport& report);

}  // namespace gbbench

#endif  // GBBENCH_BENCH_H_
