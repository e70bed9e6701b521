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

#include "gbbench/boost.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gbbench/error.h"
#include "gbbench/random.h"

namespace gbbench {

namespace {

constexpr double kMarginClamp = 36.0;

double Clamp(double f) { return std::clamp(f, -kMarginClamp, kMarginClamp); }

double Residual(int y, double f) { return 2.0 * y / (1.0 + std::exp(2.0 * y * Clamp(f))); }

// ln(1 + exp(-2yF)) is the log loss of the true class.
double RowLoss(int y, double f) { return std::log1p(std::exp(-2.0 * y * Clamp(f))); }

size_t CeilCount(double fraction, size_t n) {
  return std::min(n, static_cast<size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9)));
}

// First `k` entries of a seeded Fisher-Yates pass over 0..n-1, sorted.
std::vector<uint32_t> SampleWithoutReplacement(size_t n, size_t k, Rng& rng) {
  std::vector<uint32_t> all(n);
  std::iota(all.begin(), all.end(), 0u);
  if (k >= n) return all;
  for (size_t i = 0; i < k; ++i) {
    const size_t j = i + rng.UniformInt(n - i);
    std::swap(all[i], all[j]);
  }
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace

void BoostConfig::Validate() const {
  if (n_estimators < 0) Fail(ErrorCode::kParameter, "n_estimators must be >= 0");
  if (!(learning_rate >= 0.0 && learning_rate <= 1.0)) {
    Fail(ErrorCode::kParameter, "learning_rate must lie in [0, 1]");
  }
  if (!(subsample > 0.0 && subsample <= 1.0)) Fail(ErrorCode::kParameter, "subsample must lie in (0, 1]");
  if (!(colsample > 0.0 && colsample <= 1.0)) Fail(ErrorCode::kParameter, "colsample must lie in (0, 1]");
  if (goss) {
    if (!(goss->top_rate >= 0.0) || !(goss->other_rate > 0.0) ||
        !(goss->top_rate + goss->other_rate <= 1.0 + 1e-12)) {
      Fail(ErrorCode::kParameter, "goss needs top_rate >= 0, other_rate > 0, sum <= 1");
    }
  }
  if (leaf_estimation_iterations < 1) {
    Fail(ErrorCode::kParameter, "leaf_estimation_iterations must be >= 1");
  }
  tree.Validate();
}

double InitF0(std::span<const int> labels) {
  if (labels.empty()) Fail(ErrorCode::kDegenerate, "no labels");
  double sum = 0.0;
  for (int y : labels) sum += y;
  const double ybar = sum / static_cast<double>(labels.size());
  if (!(ybar > -1.0 && ybar < 1.0)) Fail(ErrorCode::kDegenerate, "single-class labels");
  return 0.5 * std::log((1.0 + ybar) / (1.0 - ybar));
}

std::vector<double> PseudoResiduals(std::span<const int> labels, std::span<const double> margins) {
  if (labels.size() != margins.size()) Fail(ErrorCode::kParameter, "length mismatch");
  std::vector<double> r(labels.size());
  for (size_t i = 0; i < r.size(); ++i) r[i] = Residual(labels[i], margins[i]);
  return r;
}

GradientPair GradientFromResidual(double residual) {
  const double a = std::abs(residual);
  return {-residual, a * (2.0 - a), 1.0};
}

double LeafGammaLogloss(std::span<const double> residuals, std::span<const double> weights) {
  double num = 0.0;
  double den = 0.0;
  for (size_t i = 0; i < residuals.size(); ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    const double a = std::abs(residuals[i]);
    num += w * residuals[i];
    den += w * a * (2.0 - a);
  }
  return den > 0.0 ? num / den : 0.0;
}

GossSampleResult GossSample(std::span<const double> gradients, double top_rate, double other_rate,
                            uint64_t seed) {
  if (!(top_rate >= 0.0) || !(other_rate > 0.0) || !(top_rate + other_rate <= 1.0 + 1e-12)) {
    Fail(ErrorCode::kParameter, "goss needs top_rate >= 0, other_rate > 0, sum <= 1");
  }
  const size_t n = gradients.size();
  std::vector<uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    return std::abs(gradients[a]) > std::abs(gradients[b]);
  });
  const size_t top = CeilCount(top_rate, n);
  const size_t rest = n - top;
  const size_t sampled = std::min(rest, CeilCount(other_rate, n));
  const double amplify = (1.0 - top_rate) / other_rate;

  std::vector<double> weight(n, 0.0);
  for (size_t i = 0; i < top; ++i) weight[order[i]] = 1.0;
  // Remainder kept in row order so the draw does not depend on sort ties.
  std::vector<uint32_t> remainder(order.begin() + static_cast<std::ptrdiff_t>(top), order.end());
  std::sort(remainder.begin(), remainder.end());
  Rng rng(seed);
  for (uint32_t pick : SampleWithoutReplacement(rest, sampled, rng)) {
    weight[remainder[pick]] = amplify;
  }
  GossSampleResult out;
  for (uint32_t r = 0; r < n; ++r) {
    if (weight[r] > 0.0) {
      out.rows.push_back(r);
      out.weights.push_back(weight[r]);
    }
  }
  return out;
}

BoostedEnsemble Fit(const Dataset& data, const BoostConfig& config,
                    std::vector<double>* train_loss) {
  config.Validate();
  const size_t n = data.num_rows();
  const size_t p = data.num_features();
  const int num_classes = static_cast<int>(data.num_classes());
  if (num_classes < 2) Fail(ErrorCode::kParameter, "need at least 2 classes");
  if (n == 0 || p == 0) Fail(ErrorCode::kParameter, "empty training data");

  BoostedEnsemble model;
  model.num_classes = num_classes;
  model.class_names = data.class_names();
  for (const ColumnSchema& s : data.schemas()) model.feature_names.push_back(s.name);
  model.nu = config.learning_rate;
  const size_t chains = num_classes == 2 ? 1 : static_cast<size_t>(num_classes);

  std::vector<std::vector<int>> y(chains, std::vector<int>(n));
  for (size_t c = 0; c < chains; ++c) {
    const int32_t positive = num_classes == 2 ? 1 : static_cast<int32_t>(c);
    for (size_t i = 0; i < n; ++i) y[c][i] = data.labels()[i] == positive ? 1 : -1;
    model.f0.push_back(InitF0(y[c]));
  }
  model.trees.assign(chains, {});
  std::vector<std::vector<double>> margin(chains);
  for (size_t c = 0; c < chains; ++c) margin[c].assign(n, model.f0[c]);

  const TreeParams& tp = config.tree;
  const FeatureIndex index(data, tp);
  const bool unregularized = tp.lambda_l2 == 0.0 && tp.alpha_l1 == 0.0;
  std::vector<GradientPair> grads(n);
  std::vector<double> residual(n);
  std::vector<int32_t> leaf_of(n);
  if (train_loss) train_loss->clear();

  for (int m = 0; m < config.n_estimators; ++m) {
    for (size_t c = 0; c < chains; ++c) {
      for (size_t i = 0; i < n; ++i) {
        residual[i] = Residual(y[c][i], margin[c][i]);
        grads[i] = GradientFromResidual(residual[i]);
      }
      Rng rng(DeriveSeed(config.seed, {c, static_cast<uint64_t>(m)}));
      std::vector<uint32_t> rows;
      if (config.goss) {
        std::vector<double> g(n);
        for (size_t i = 0; i < n; ++i) g[i] = grads[i].g;
        GossSampleResult s = GossSample(g, config.goss->top_rate, config.goss->other_rate,
                                        DeriveSeed(config.seed, {c, static_cast<uint64_t>(m), 1}));
        for (size_t k = 0; k < s.rows.size(); ++k) grads[s.rows[k]].w_sample = s.weights[k];
        rows = std::move(s.rows);
      } else {
        rows = SampleWithoutReplacement(n, std::max<size_t>(1, CeilCount(config.subsample, n)), rng);
      }
      const std::vector<uint32_t> features =
          SampleWithoutReplacement(p, std::max<size_t>(1, CeilCount(config.colsample, p)), rng);

      RegressionTree tree = FitTree(index, grads, rows, features, tp);
      if (tp.gamma > 0.0) tree = GammaPrune(tree, tp.gamma, tp.lambda_l2, tp.alpha_l1);

      for (size_t i = 0; i < n; ++i) leaf_of[i] = LeafIndex(tree, data, i);
      const size_t num_nodes = tree.nodes.size();
      std::vector<double> num(num_nodes, 0.0);
      std::vector<double> den(num_nodes, 0.0);
      for (uint32_t r : rows) {
        const double w = grads[r].w_sample;
        const double a = std::abs(residual[r]);
        num[leaf_of[r]] += w * residual[r];
        den[leaf_of[r]] += w * a * (2.0 - a);
      }
      for (size_t j = 0; j < num_nodes; ++j) {
        TreeNode& node = tree.nodes[j];
        if (!node.is_leaf()) continue;
        if (unregularized) {
          node.weight = den[j] > 0.0 ? num[j] / den[j] : 0.0;
        } else {
          node.weight = den[j] + tp.lambda_l2 > 0.0
                            ? LeafWeight(-num[j], den[j], tp.lambda_l2, tp.alpha_l1)
                            : 0.0;
        }
      }
      for (int pass = 1; pass < config.leaf_estimation_iterations; ++pass) {
        std::vector<double> g_sum(num_nodes, 0.0);
        std::vector<double> h_sum(num_nodes, 0.0);
        for (uint32_t r : rows) {
          const int32_t j = leaf_of[r];
          const GradientPair gp =
              GradientFromResidual(Residual(y[c][r], margin[c][r] + tree.nodes[j].weight));
          g_sum[j] += grads[r].w_sample * gp.g;
          h_sum[j] += grads[r].w_sample * gp.h;
        }
        for (size_t j = 0; j < num_nodes; ++j) {
          TreeNode& node = tree.nodes[j];
          if (!node.is_leaf() || !(h_sum[j] + tp.lambda_l2 > 0.0)) continue;
          node.weight -= (g_sum[j] + tp.lambda_l2 * node.weight) / (h_sum[j] + tp.lambda_l2);
        }
      }
      for (size_t i = 0; i < n; ++i) margin[c][i] += model.nu * tree.nodes[leaf_of[i]].weight;
      for (uint32_t r : rows) grads[r].w_sample = 1.0;
      model.trees[c].push_back(std::move(tree));
    }
    if (train_loss) {
      double loss = 0.0;
      for (size_t c = 0; c < chains; ++c) {
        double s = 0.0;
        for (size_t i = 0; i < n; ++i) s += RowLoss(y[c][i], margin[c][i]);
        loss += s / static_cast<double>(n);
      }
      train_loss->push_back(loss);
    }
  }
  return model;
}

namespace {

template <typename Predict>
std::vector<double> Margins(const BoostedEnsemble& model, Predict predict) {
  std::vector<double> out(model.num_chains());
  for (size_t c = 0; c < out.size(); ++c) {
    double f = model.f0[c];
    for (const RegressionTree& t : model.trees[c]) f += model.nu * predict(t);
    out[c] = f;
  }
  return out;
}

}  // namespace

std::vector<double> PredictMargin(const BoostedEnsemble& model, const Dataset& data, size_t row) {
  if (data.num_features() != model.feature_names.size()) {
    Fail(ErrorCode::kPrediction, "feature count differs from the training schema");
  }
  if (row >= data.num_rows()) Fail(ErrorCode::kPrediction, "row out of range");
  return Margins(model, [&](const RegressionTree& t) { return PredictTree(t, data, row); });
}

std::vector<double> PredictMargin(const BoostedEnsemble& model, std::span<const double> row) {
  if (row.size() != model.feature_names.size()) {
    Fail(ErrorCode::kPrediction, "feature count differs from the training schema");
  }
  return Margins(model, [&](const RegressionTree& t) { return PredictTree(t, row); });
}

std::vector<double> MarginsToProba(std::span<const double> margins, int num_classes) {
  if (num_classes == 2) {
    if (margins.size() != 1) Fail(ErrorCode::kPrediction, "binary model needs one margin");
    const double f = Clamp(margins[0]);
    // Compute the smaller probability directly; the other is its complement.
    if (f >= 0.0) {
      const double neg = 1.0 / (1.0 + std::exp(2.0 * f));
      return {neg, 1.0 - neg};
    }
    const double pos = 1.0 / (1.0 + std::exp(-2.0 * f));
    return {1.0 - pos, pos};
  }
  if (margins.size() != static_cast<size_t>(num_classes)) {
    Fail(ErrorCode::kPrediction, "one margin per class expected");
  }
  std::vector<double> p(margins.size());
  double sum = 0.0;
  for (size_t c = 0; c < p.size(); ++c) {
    p[c] = 1.0 / (1.0 + std::exp(-2.0 * Clamp(margins[c])));
    sum += p[c];
  }
  for (double& v : p) v /= sum;
  return p;
}

int32_t MarginsToLabel(std::span<const double> margins, int num_classes) {
  if (num_classes == 2) {
    const std::vector<double> p = MarginsToProba(margins, 2);
    return p[1] > p[0] ? 1 : 0;
  }
  // Raw OvR scores are monotone in the margin, so argmax over margins is
  // argmax over unnormalized probabilities.
  int32_t best = 0;
  double best_p = -1.0;
  for (size_t c = 0; c < margins.size(); ++c) {
    const double pc = 1.0 / (1.0 + std::exp(-2.0 * Clamp(margins[c])));
    if (pc > best_p) {
      best_p = pc;
      best = static_cast<int32_t>(c);
    }
  }
  return best;
}

std::vector<double> PredictProba(const BoostedEnsemble& model, const Dataset& data, size_t row) {
  return MarginsToProba(PredictMargin(model, data, row), model.num_classes);
}

std::vector<double> PredictProba(const BoostedEnsemble& model, std::span<const double> row) {
  return MarginsToProba(PredictMargin(model, row), model.num_classes);
}

int32_t PredictLabel(const BoostedEnsemble& model, const Dataset& data, size_t row) {
  return MarginsToLabel(PredictMargin(model, data, row), model.num_classes);
}

int32_t PredictLabel(const BoostedEnsemble& model, std::span<const double> row) {
  return MarginsToLabel(PredictMargin(model, row), model.num_classes);
}

}  // namespace gbbench
