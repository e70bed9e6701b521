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

#ifndef GBBENCH_BOOST_H_
#define GBBENCH_BOOST_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gbbench/data.h"
#include "gbbench/tree.h"

namespace gbbench {

struct GossParams {
  double top_rate = 0.2;
  double other_rate = 0.1;
};

struct BoostConfig {
  int n_estimators = 150;
  double learning_rate = 0.1;
  double subsample = 1.0;  // ignored when goss is set
  double colsample = 1.0;  // fraction of features drawn per tree
  std::optional<GossParams> goss;
  TreeParams tree;
  // Newton passes per leaf value. Passes after the first re-evaluate the
  // gradients at the updated leaf value (L2 only).
  int leaf_estimation_iterations = 1;
  uint64_t seed = 0;

  void Validate() const;
};

// Binary problems keep one chain scoring the greater class id; multiclass
// problems keep one one-vs-rest chain per class.
struct BoostedEnsemble {
  int num_classes = 0;
  std::vector<std::string> class_names;
  std::vector<std::string> feature_names;
  double nu = 0.1;
  std::vector<double> f0;                          // per chain
  std::vector<std::vector<RegressionTree>> trees;  // [chain][iteration]

  size_t num_chains() const { return f0.size(); }
  std::string ToJson() const;
  static BoostedEnsemble FromJson(const std::string& text);
};

// 0.5 * ln((1 + ybar) / (1 - ybar)) for labels in {-1, +1}.
double InitF0(std::span<const int> labels);

// 2y / (1 + exp(2yF)) per row.
std::vector<double> PseudoResiduals(std::span<const int> labels, std::span<const double> margins);

// g = -r, h = |r| (2 - |r|).
GradientPair GradientFromResidual(double residual);

// sum r / sum |r| (2 - |r|), 0 when the denominator vanishes. `weights`, when
// given, multiplies each term.
double LeafGammaLogloss(std::span<const double> residuals, std::span<const double> weights = {});

struct GossSampleResult {
  std::vector<uint32_t> rows;     // ascending
  std::vector<double> weights;    // parallel to rows
};

GossSampleResult GossSample(std::span<const double> gradients, double top_rate, double other_rate,
                            uint64_t seed);

// `train_loss`, when given, receives the training log loss after every
// iteration (summed over chains for multiclass).
BoostedEnsemble Fit(const Dataset& data, const BoostConfig& config,
                    std::vector<double>* train_loss = nullptr);

std::vector<double> PredictMargin(const BoostedEnsemble& model, const Dataset& data, size_t row);
std::vector<double> PredictMargin(const BoostedEnsemble& model, std::span<const double> row);
// Per-class probabilities. Multiclass scores are normalized to sum to 1.
std::vector<double> PredictProba(const BoostedEnsemble& model, const Dataset& data, size_t row);
std::vector<double> PredictProba(const BoostedEnsemble& model, std::span<const double> row);
int32_t PredictLabel(const BoostedEnsemble& model, const Dataset& data, size_t row);
int32_t PredictLabel(const BoostedEnsemble& model, std::span<const double> row);

// Probabilities of class ids from per-chain margins.
std::vector<double> MarginsToProba(std::span<const double> margins, int num_classes);
int32_t MarginsToLabel(std::span<const double> margins, int num_classes);

}  // namespace gbbench

#endif  // GBBENCH_BOOST_H_
