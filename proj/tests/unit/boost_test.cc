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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "gbbench/boost.h"
#include "gbbench/error.h"
#include "gbbench/random.h"
#include "synthetic.h"

namespace gbbench {
namespace {

using testing::ImbalancedData;
using testing::NoisyXorData;
using testing::SeparableData;
using testing::ThreeClassData;

TEST(InitF0, Examples) {
  const std::vector<int> balanced{1, -1, 1, -1};
  EXPECT_DOUBLE_EQ(InitF0(balanced), 0.0);
  const std::vector<int> skew{1, 1, 1, -1};
  EXPECT_NEAR(InitF0(skew), 0.5 * std::log(3.0), 1e-15);
  const std::vector<int> single{1, 1, 1};
  EXPECT_THROW(InitF0(single), Error);
}

TEST(PseudoResiduals, Examples) {
  const std::vector<int> y{1, -1, 1};
  const std::vector<double> f{0.0, 0.0, 10.0};
  const auto r = PseudoResiduals(y, f);
  EXPECT_DOUBLE_EQ(r[0], 1.0);
  EXPECT_DOUBLE_EQ(r[1], -1.0);
  EXPECT_NEAR(r[2], 2.0 / (1.0 + std::exp(20.0)), 1e-20);
  EXPECT_NEAR(r[2], 4.1e-9, 1e-10);
  const GradientPair gp = GradientFromResidual(0.5);
  EXPECT_DOUBLE_EQ(gp.g, -0.5);
  EXPECT_DOUBLE_EQ(gp.h, 0.75);
}

TEST(LeafGammaLogloss, Examples) {
  const std::vector<double> one{1.0};
  EXPECT_DOUBLE_EQ(LeafGammaLogloss(one), 1.0);
  const std::vector<double> cancel{1.0, -1.0};
  EXPECT_DOUBLE_EQ(LeafGammaLogloss(cancel), 0.0);
  const std::vector<double> half{0.5};
  EXPECT_NEAR(LeafGammaLogloss(half), 0.5 / 0.75, 1e-15);
  const std::vector<double> degenerate{2.0, 0.0, -2.0};
  EXPECT_DOUBLE_EQ(LeafGammaLogloss(degenerate), 0.0);
}

TEST(LeafGammaLogloss, EqualsUnregularizedLeafWeight) {
  Rng rng(1);
  for (int region = 0; region < 500; ++region) {
    const size_t n = 1 + rng.UniformInt(40);
    std::vector<int> y(n);
    std::vector<double> f(n);
    for (size_t i = 0; i < n; ++i) {
      y[i] = rng.Uniform() < 0.5 ? 1 : -1;
      f[i] = rng.Uniform(-3, 3);
    }
    const auto r = PseudoResiduals(y, f);
    double g = 0.0;
    double h = 0.0;
    for (double v : r) {
      g += -v;
      h += std::abs(v) * (2 - std::abs(v));
    }
    EXPECT_NEAR(LeafGammaLogloss(r), LeafWeight(g, h, 0, 0), 1e-12);
  }
}

TEST(GossSample, Counts) {
  std::vector<double> g(100);
  Rng rng(2);
  for (double& v : g) v = rng.Uniform(-1, 1);
  const auto s = GossSample(g, 0.2, 0.1, 7);
  ASSERT_EQ(s.rows.size(), 30u);
  int top = 0;
  int sampled = 0;
  for (double w : s.weights) {
    if (w == 1.0) ++top;
    if (w == 8.0) ++sampled;
  }
  EXPECT_EQ(top, 20);
  EXPECT_EQ(sampled, 10);
  // Kept rows are exactly the 20 largest |g|.
  std::vector<uint32_t> order(100);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](uint32_t a, uint32_t b) { return std::abs(g[a]) > std::abs(g[b]); });
  for (size_t i = 0; i < 20; ++i) {
    const auto it = std::find(s.rows.begin(), s.rows.end(), order[i]);
    ASSERT_NE(it, s.rows.end());
    EXPECT_EQ(s.weights[it - s.rows.begin()], 1.0);
  }
}

TEST(GossSample, DegenerateRates) {
  const std::vector<double> g{0.3, -0.1, 0.2, 0.9};
  const auto all = GossSample(g, 0.0, 1.0, 1);
  EXPECT_EQ(all.rows.size(), 4u);
  for (double w : all.weights) EXPECT_EQ(w, 1.0);
  const auto kept = GossSample(g, 0.9, 0.1, 1);
  EXPECT_EQ(kept.rows.size(), 4u);
  for (double w : kept.weights) EXPECT_EQ(w, 1.0);
  EXPECT_THROW(GossSample(g, 0.8, 0.3, 1), Error);
}

TEST(GossSample, GradientSumUnbiased) {
  Rng rng(3);
  std::vector<double> g(200);
  for (double& v : g) v = rng.Uniform(-1, 1) + 0.3;
  const double truth = std::accumulate(g.begin(), g.end(), 0.0);
  double mean = 0.0;
  const int reps = 4000;
  for (int s = 0; s < reps; ++s) {
    const auto r = GossSample(g, 0.1, 0.2, static_cast<uint64_t>(s));
    double sum = 0.0;
    for (size_t k = 0; k < r.rows.size(); ++k) sum += r.weights[k] * g[r.rows[k]];
    mean += sum / reps;
  }
  // The amplified sample covers 40 of 180 remaining rows, so the constant
  // (1-a)/b = 4.5 matches 180/40 exactly.
  EXPECT_NEAR(mean, truth, 0.02 * std::abs(truth) + 0.5);
}

BoostConfig Basic(int m, double nu, int depth) {
  BoostConfig c;
  c.n_estimators = m;
  c.learning_rate = nu;
  c.tree.max_depth = depth;
  return c;
}

TEST(Fit, NoTreesPredictsPrior) {
  const Dataset d = ImbalancedData(100, 1);
  const auto model = Fit(d, Basic(0, 0.1, 3));
  const double f0 = model.f0[0];
  for (size_t i = 0; i < d.num_rows(); ++i) {
    EXPECT_NEAR(PredictProba(model, d, i)[1], 1.0 / (1.0 + std::exp(-2 * f0)), 1e-15);
  }
}

TEST(Fit, ZeroShrinkageEqualsNoTrees) {
  const Dataset d = NoisyXorData(80, 2);
  const auto a = Fit(d, Basic(0, 0.1, 3));
  const auto b = Fit(d, Basic(10, 0.0, 3));
  for (size_t i = 0; i < d.num_rows(); ++i) {
    EXPECT_EQ(PredictProba(a, d, i), PredictProba(b, d, i));
  }
}

TEST(Fit, SeparableToyReachesPerfectAccuracy) {
  const Dataset d = SeparableData(20, 3);
  const auto model = Fit(d, Basic(20, 0.1, 2));
  for (size_t i = 0; i < d.num_rows(); ++i) EXPECT_EQ(PredictLabel(model, d, i), d.labels()[i]);
}

TEST(Fit, TrainingLossNonIncreasing) {
  for (const Dataset& d : {SeparableData(200, 4), NoisyXorData(300, 5), ImbalancedData(300, 6)}) {
    std::vector<double> loss;
    Fit(d, Basic(100, 0.1, 3), &loss);
    ASSERT_EQ(loss.size(), 100u);
    for (size_t m = 1; m < loss.size(); ++m) EXPECT_LE(loss[m], loss[m - 1]) << "iteration " << m;
  }
}

TEST(Fit, TrainingLossMatchesPredictions) {
  const Dataset d = NoisyXorData(120, 7);
  std::vector<double> loss;
  const auto model = Fit(d, Basic(15, 0.3, 3), &loss);
  double s = 0.0;
  for (size_t i = 0; i < d.num_rows(); ++i) s -= std::log(PredictProba(model, d, i)[d.labels()[i]]);
  EXPECT_NEAR(loss.back(), s / d.num_rows(), 1e-9);
}

TEST(Fit, ProbabilitiesAndShrinkageBound) {
  const Dataset d = NoisyXorData(150, 8);
  BoostConfig c = Basic(30, 0.2, 4);
  c.subsample = 0.7;
  c.colsample = 0.67;
  const auto model = Fit(d, c);
  double bound = 0.0;
  for (const auto& t : model.trees[0]) bound += model.nu * t.MaxAbsLeafWeight();
  for (size_t i = 0; i < d.num_rows(); ++i) {
    const auto p = PredictProba(model, d, i);
    EXPECT_GE(p[0], 0.0);
    EXPECT_LE(p[1], 1.0);
    EXPECT_EQ(p[0] + p[1], 1.0);
    EXPECT_LE(std::abs(PredictMargin(model, d, i)[0] - model.f0[0]), bound + 1e-12);
  }
}

TEST(Fit, SeedDeterminism) {
  const Dataset d = NoisyXorData(150, 9);
  BoostConfig c = Basic(20, 0.1, 3);
  c.subsample = 0.6;
  c.colsample = 0.5;
  c.seed = 11;
  EXPECT_EQ(Fit(d, c).ToJson(), Fit(d, c).ToJson());
  c.goss = GossParams{0.2, 0.3};
  EXPECT_EQ(Fit(d, c).ToJson(), Fit(d, c).ToJson());
  BoostConfig other = c;
  other.seed = 12;
  EXPECT_NE(Fit(d, c).ToJson(), Fit(d, other).ToJson());
}

TEST(Fit, AllVariantsTrain) {
  const Dataset d = NoisyXorData(200, 10);
  for (int growth = 0; growth < 3; ++growth) {
    BoostConfig c = Basic(40, 0.2, 4);
    c.tree.growth = static_cast<Growth>(growth);
    c.tree.num_leaves = 8;
    c.tree.sparsity_aware = growth == 1;
    c.tree.split_method = growth == 1 ? SplitMethod::kHistogram : SplitMethod::kExact;
    c.tree.lambda_l2 = growth == 2 ? 3.0 : 0.0;
    c.tree.gamma = growth == 0 ? 0.1 : 0.0;
    c.leaf_estimation_iterations = growth == 2 ? 10 : 1;
    if (growth == 1) c.goss = GossParams{0.2, 0.1};
    std::vector<double> loss;
    const auto model = Fit(d, c, &loss);
    EXPECT_LT(loss.back(), loss.front()) << "growth " << growth;
    int correct = 0;
    for (size_t i = 0; i < d.num_rows(); ++i) correct += PredictLabel(model, d, i) == d.labels()[i];
    EXPECT_GT(correct, 150) << "growth " << growth;
  }
}

TEST(Predict, BinaryConventions) {
  const std::vector<double> zero{0.0};
  EXPECT_EQ(MarginsToProba(zero, 2), (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(MarginsToLabel(zero, 2), 0);
  const std::vector<double> half{0.5};
  EXPECT_NEAR(MarginsToProba(half, 2)[1], 1.0 / (1.0 + std::exp(-1.0)), 1e-15);
  Rng rng(5);
  for (int t = 0; t < 1000; ++t) {
    const std::vector<double> f{rng.Uniform(-50, 50)};
    const auto p = MarginsToProba(f, 2);
    EXPECT_EQ(p[0] + p[1], 1.0);
  }
}

TEST(Predict, MulticlassNormalizationNeutral) {
  const Dataset d = ThreeClassData(150, 11);
  const auto model = Fit(d, Basic(20, 0.2, 3));
  ASSERT_EQ(model.num_chains(), 3u);
  int correct = 0;
  for (size_t i = 0; i < d.num_rows(); ++i) {
    const auto m = PredictMargin(model, d, i);
    std::vector<double> raw(3);
    for (int c = 0; c < 3; ++c) raw[c] = 1.0 / (1.0 + std::exp(-2 * m[c]));
    const auto p = PredictProba(model, d, i);
    EXPECT_NEAR(p[0] + p[1] + p[2], 1.0, 1e-12);
    const auto arg = [](const std::vector<double>& v) {
      return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
    };
    EXPECT_EQ(arg(raw), arg(p));
    EXPECT_EQ(PredictLabel(model, d, i), arg(raw));
    correct += PredictLabel(model, d, i) == d.labels()[i];
  }
  EXPECT_GT(correct, 120);
}

TEST(Predict, SchemaMismatch) {
  const Dataset d = SeparableData(20, 3);
  const auto model = Fit(d, Basic(3, 0.1, 2));
  const std::vector<double> short_row{1.0};
  EXPECT_THROW(PredictMargin(model, short_row), Error);
}

TEST(Serialize, RoundTrip) {
  const Dataset d = ThreeClassData(90, 12);
  BoostConfig c = Basic(5, 0.3, 3);
  c.tree.sparsity_aware = true;
  const auto model = Fit(d, c);
  const auto back = BoostedEnsemble::FromJson(model.ToJson());
  EXPECT_EQ(back.ToJson(), model.ToJson());
  for (size_t i = 0; i < d.num_rows(); ++i) {
    EXPECT_EQ(PredictMargin(back, d, i), PredictMargin(model, d, i));
  }
  EXPECT_THROW(BoostedEnsemble::FromJson("{\"format\":\"x\"}"), Error);
}

TEST(Config, Validation) {
  const Dataset d = SeparableData(20, 3);
  BoostConfig c = Basic(5, 0.1, 2);
  c.goss = GossParams{0.7, 0.5};
  EXPECT_THROW(Fit(d, c), Error);
  c.goss.reset();
  c.learning_rate = 1.5;
  EXPECT_THROW(Fit(d, c), Error);
}

}  // namespace
}  // namespace gbbench
