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
#include <chrono>
#include <cmath>
#include <limits>

#include "gbbench/error.h"
#include "gbbench/metrics.h"
#include "gbbench/random.h"
#include "gbbench/tune.h"

namespace gbbench {

ParamSpec ParamSpec::Choice(std::string name, std::vector<double> values) {
  ParamSpec s{std::move(name), Kind::kChoice, std::move(values), 0.0, 0.0};
  s.Validate();
  return s;
}

ParamSpec ParamSpec::Uniform(std::string name, double lo, double hi) {
  ParamSpec s{std::move(name), Kind::kUniform, {}, lo, hi};
  s.Validate();
  return s;
}

ParamSpec ParamSpec::LogUniform(std::string name, double lo, double hi) {
  ParamSpec s{std::move(name), Kind::kLogUniform, {}, lo, hi};
  s.Validate();
  return s;
}

void ParamSpec::Validate() const {
  if (name.empty()) Fail(ErrorCode::kParameter, "parameter without a name");
  if (kind == Kind::kChoice) {
    if (choices.empty()) Fail(ErrorCode::kParameter, "choice '" + name + "' has no values");
    for (double c : choices) {
      if (!std::isfinite(c)) Fail(ErrorCode::kParameter, "choice '" + name + "' is not finite");
    }
    return;
  }
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    Fail(ErrorCode::kParameter, "'" + name + "' needs finite lo < hi");
  }
  if (kind == Kind::kLogUniform && !(lo > 0.0)) {
    Fail(ErrorCode::kParameter, "log-uniform '" + name + "' needs lo > 0");
  }
}

bool ParamSpec::Contains(double v) const {
  if (kind == Kind::kChoice) return std::find(choices.begin(), choices.end(), v) != choices.end();
  return v >= lo && v < hi;
}

std::string_view ParamKindName(ParamSpec::Kind kind) {
  switch (kind) {
    case ParamSpec::Kind::kChoice:
      return "choice";
    case ParamSpec::Kind::kUniform:
      return "uniform";
    case ParamSpec::Kind::kLogUniform:
      return "loguniform";
  }
  return "?";
}

void SearchSpace::Validate() const {
  if (params.empty()) Fail(ErrorCode::kParameter, "empty search space");
  for (size_t i = 0; i < params.size(); ++i) {
    params[i].Validate();
    for (size_t j = 0; j < i; ++j) {
      if (params[j].name == params[i].name) {
        Fail(ErrorCode::kParameter, "duplicate parameter '" + params[i].name + "'");
      }
    }
  }
}

bool SearchSpace::Contains(const ParamConfig& config) const {
  if (config.size() != params.size()) return false;
  for (const ParamSpec& p : params) {
    const auto it = config.find(p.name);
    if (it == config.end() || !p.Contains(it->second)) return false;
  }
  return true;
}

size_t TuningHistory::BestIndex() const {
  if (trials.empty()) Fail(ErrorCode::kParameter, "empty tuning history");
  size_t best = 0;
  for (size_t i = 1; i < trials.size(); ++i) {
    if (trials[i].score < trials[best].score) best = i;
  }
  return best;
}

std::vector<double> TuningHistory::BestSoFar() const {
  std::vector<double> out;
  double best = std::numeric_limits<double>::infinity();
  for (const Trial& t : trials) {
    best = std::min(best, t.score);
    out.push_back(best);
  }
  return out;
}

namespace {

// Upper bounds are exclusive; guard against rounding onto them.
double BelowHi(double v, double lo, double hi) {
  if (v >= hi) v = std::nextafter(hi, lo);
  return std::max(v, lo);
}

}  // namespace

ParamConfig SampleRandom(const SearchSpace& space, uint64_t seed) {
  space.Validate();
  Rng rng(seed);
  ParamConfig out;
  for (const ParamSpec& p : space.params) {
    switch (p.kind) {
      case ParamSpec::Kind::kChoice:
        out[p.name] = p.choices[rng.UniformInt(p.choices.size())];
        break;
      case ParamSpec::Kind::kUniform:
        out[p.name] = BelowHi(rng.Uniform(p.lo, p.hi), p.lo, p.hi);
        break;
      case ParamSpec::Kind::kLogUniform:
        out[p.name] =
            BelowHi(std::exp(rng.Uniform(std::log(p.lo), std::log(p.hi))), p.lo, p.hi);
        break;
    }
  }
  return out;
}

TuningHistory Optimize(const SearchSpace& space, const Objective& objective, TuneMethod method,
                       int n_iter, uint64_t seed, const TpeOptions& options) {
  space.Validate();
  if (n_iter < 1) Fail(ErrorCode::kParameter, "n_iter must be >= 1");
  TuningHistory history;
  for (int i = 0; i < n_iter; ++i) {
    const uint64_t trial_seed = DeriveSeed(seed, {static_cast<uint64_t>(i)});
    Trial trial;
    trial.config = method == TuneMethod::kRandom ? SampleRandom(space, trial_seed)
                                                 : TpeSuggest(space, history, options, trial_seed);
    const auto start = std::chrono::steady_clock::now();
    try {
      trial.score = objective(trial.config, trial.fold_scores);
      if (std::isnan(trial.score)) trial.score = std::numeric_limits<double>::infinity();
    } catch (const std::exception& e) {
      trial.score = std::numeric_limits<double>::infinity();
      trial.error = e.what();
    }
    trial.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    history.trials.push_back(std::move(trial));
  }
  return history;
}

BoostConfig ApplyParams(BoostConfig base, const ParamConfig& params) {
  auto as_int = [](double v) { return static_cast<int>(std::lround(v)); };
  for (const auto& [name, v] : params) {
    if (name == "n_estimators") {
      base.n_estimators = as_int(v);
    } else if (name == "learning_rate") {
      base.learning_rate = v;
    } else if (name == "subsample") {
      base.subsample = v;
    } else if (name == "colsample" || name == "colsample_bytree" || name == "max_features") {
      base.colsample = v;
    } else if (name == "max_depth" || name == "depth") {
      base.tree.max_depth = as_int(v);
    } else if (name == "min_samples_split") {
      base.tree.min_samples_split = as_int(v);
    } else if (name == "gamma") {
      base.tree.gamma = v;
    } else if (name == "reg_alpha" || name == "alpha_l1") {
      base.tree.alpha_l1 = v;
    } else if (name == "reg_lambda" || name == "l2_leaf_reg" || name == "lambda_l2") {
      base.tree.lambda_l2 = v;
    } else if (name == "num_leaves") {
      base.tree.num_leaves = as_int(v);
    } else if (name == "max_bins" || name == "max_bin") {
      base.tree.max_bins = as_int(v);
    } else if (name == "top_rate" || name == "other_rate") {
      if (!base.goss) base.goss = GossParams{};
      (name == "top_rate" ? base.goss->top_rate : base.goss->other_rate) = v;
    } else if (name == "leaf_estimation_iterations") {
      base.leaf_estimation_iterations = as_int(v);
    } else {
      Fail(ErrorCode::kParameter, "unknown hyperparameter '" + name + "'");
    }
  }
  return base;
}

double CrossValidatedLogLoss(const Dataset& data, const BoostConfig& config, const FoldPlan& plan,
                             std::vector<double>* fold_scores) {
  double total = 0.0;
  const int c = static_cast<int>(data.num_classes());
  for (int f = 0; f < plan.k; ++f) {
    const std::vector<uint32_t> train_rows = plan.TrainRows(f);
    const std::vector<uint32_t> test_rows = plan.TestRows(f);
    const Dataset train = data.Subset(train_rows);
    const Dataset test = data.Subset(test_rows);
    const BoostedEnsemble model = Fit(train, config);
    std::vector<double> proba;
    proba.reserve(test.num_rows() * static_cast<size_t>(c));
    for (size_t i = 0; i < test.num_rows(); ++i) {
      const auto p = PredictProba(model, test, i);
      proba.insert(proba.end(), p.begin(), p.end());
    }
    const double loss = LogLoss(test.labels(), proba, c);
    if (fold_scores) fold_scores->push_back(loss);
    total += loss;
  }
  return total / plan.k;
}

TuneResult Tune(const Dataset& data, const BoostConfig& init, const SearchSpace& space,
                TuneMethod method, int n_iter, int inner_k, uint64_t seed,
                const TpeOptions& options) {
  if (inner_k < 2) Fail(ErrorCode::kParameter, "inner_k must be >= 2");
  TuneResult out;
  out.inner_plan = StratifiedKFold(data.labels(), inner_k, DeriveSeed(seed, {HashName("inner")}));
  const Objective objective = [&](const ParamConfig& params, std::vector<double>& folds) {
    return CrossValidatedLogLoss(data, ApplyParams(init, params), out.inner_plan, &folds);
  };
  out.history = Optimize(space, objective, method, n_iter, DeriveSeed(seed, {HashName("trials")}),
                         options);
  const size_t best = out.history.BestIndex();
  out.best_params = out.history.trials[best].config;
  out.best_config = ApplyParams(init, out.best_params);
  return out;
}

}  // namespace gbbench
