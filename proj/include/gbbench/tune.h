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

#ifndef GBBENCH_TUNE_H_
#define GBBENCH_TUNE_H_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gbbench/boost.h"
#include "gbbench/data.h"

namespace gbbench {

struct ParamSpec {
  enum class Kind { kChoice, kUniform, kLogUniform };

  std::string name;
  Kind kind = Kind::kUniform;
  std::vector<double> choices;  // kChoice
  double lo = 0.0;              // continuous kinds
  double hi = 1.0;

  static ParamSpec Choice(std::string name, std::vector<double> values);
  static ParamSpec Uniform(std::string name, double lo, double hi);
  static ParamSpec LogUniform(std::string name, double lo, double hi);

  void Validate() const;
  bool Contains(double v) const;
};

std::string_view ParamKindName(ParamSpec::Kind kind);

using ParamConfig = std::map<std::string, double>;

struct SearchSpace {
  std::vector<ParamSpec> params;

  void Validate() const;
  bool Contains(const ParamConfig& config) const;
};

struct Trial {
  ParamConfig config;
  double score = 0.0;  // minimized; +inf for failed trials
  std::vector<double> fold_scores;
  double wall_time = 0.0;  // seconds
  std::string error;
};

struct TuningHistory {
  std::vector<Trial> trials;

  // Lowest score, earliest on ties. Requires a nonempty history.
  size_t BestIndex() const;
  std::vector<double> BestSoFar() const;
};

ParamConfig SampleRandom(const SearchSpace& space, uint64_t seed);

struct TpeSplit {
  std::vector<size_t> good;  // trial indices, best first
  std::vector<size_t> bad;
};

// good = the ceil(alpha * n) lowest scores, insertion order breaking ties.
TpeSplit TpeSplitHistory(const TuningHistory& history, double alpha);

struct TpeOptions {
  double alpha = 0.25;
  int n_startup = 10;
  int n_candidates = 24;
};

ParamConfig TpeSuggest(const SearchSpace& space, const TuningHistory& history,
                       const TpeOptions& options, uint64_t seed);

enum class TuneMethod { kRandom, kTpe };

// Runs `n_iter` trials of `objective`; trial i draws from DeriveSeed(seed, {i}).
// Exceptions thrown by the objective become +inf trials.
using Objective = std::function<double(const ParamConfig&, std::vector<double>& fold_scores)>;
TuningHistory Optimize(const SearchSpace& space, const Objective& objective, TuneMethod method,
                       int n_iter, uint64_t seed, const TpeOptions& options = {});

// Overrides fields of `base` by parameter name. Unknown names raise a
// parameter error.
BoostConfig ApplyParams(BoostConfig base, const ParamConfig& params);

// Mean validation log loss of `config` over `plan`.
double CrossValidatedLogLoss(const Dataset& data, const BoostConfig& config, const FoldPlan& plan,
                             std::vector<double>* fold_scores = nullptr);

struct TuneResult {
  ParamConfig best_params;
  BoostConfig best_config;
  TuningHistory history;
  FoldPlan inner_plan;
};

// One inner stratified plan is drawn per call and shared by every trial.
TuneResult Tune(const Dataset& data, const BoostConfig& init, const SearchSpace& space,
                TuneMethod method, int n_iter, int inner_k, uint64_t seed,
                const TpeOptions& options = {});

}  // namespace gbbench

#endif  // GBBENCH_TUNE_H_
