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

#include <algorithm>
#include <cmath>
#include <limits>

#include "gbbench/error.h"
#include "gbbench/random.h"
#include "gbbench/tune.h"
#include "synthetic.h"

namespace gbbench {
namespace {

double Quadratic(const ParamConfig& c, std::vector<double>&) {
  const double x = c.at("x");
  return (x - 2) * (x - 2);
}

TEST(SampleRandom, Bounds) {
  SearchSpace s{{ParamSpec::Choice("k", {5}), ParamSpec::Uniform("u", 0, 1),
                 ParamSpec::LogUniform("lr", 0.01, 0.3)}};
  for (uint64_t seed = 0; seed < 500; ++seed) {
    const auto c = SampleRandom(s, seed);
    EXPECT_EQ(c.at("k"), 5);
    EXPECT_TRUE(s.Contains(c));
  }
  EXPECT_EQ(SampleRandom(s, 3), SampleRandom(s, 3));
}

// Kolmogorov-Smirnov statistic of ln(value) against the uniform law on
// [ln 0.01, ln 0.3]; the 1% critical value for n = 10000 is 1.628 / 100.
TEST(SampleRandom, LogUniformIsUniformInLogSpace) {
  SearchSpace s{{ParamSpec::LogUniform("lr", 0.01, 0.3)}};
  std::vector<double> u;
  const double a = std::log(0.01);
  const double b = std::log(0.3);
  for (uint64_t seed = 0; seed < 10000; ++seed) {
    u.push_back((std::log(SampleRandom(s, seed).at("lr")) - a) / (b - a));
  }
  std::sort(u.begin(), u.end());
  double ks = 0.0;
  const double n = static_cast<double>(u.size());
  for (size_t i = 0; i < u.size(); ++i) {
    ks = std::max({ks, (i + 1) / n - u[i], u[i] - i / n});
  }
  EXPECT_LT(ks, 1.628 / std::sqrt(n));
}

TuningHistory HistoryOf(const std::vector<double>& scores) {
  TuningHistory h;
  for (double s : scores) h.trials.push_back({{{"x", s}}, s, {}, 0.0, ""});
  return h;
}

TEST(TpeSplit, Sizes) {
  std::vector<double> scores(20);
  Rng rng(1);
  for (double& s : scores) s = rng.Uniform();
  const auto split = TpeSplitHistory(HistoryOf(scores), 0.25);
  EXPECT_EQ(split.good.size(), 5u);
  EXPECT_EQ(split.good.size() + split.bad.size(), 20u);
  std::vector<size_t> all(split.good);
  all.insert(all.end(), split.bad.begin(), split.bad.end());
  std::sort(all.begin(), all.end());
  for (size_t i = 0; i < 20; ++i) EXPECT_EQ(all[i], i);
  for (size_t g : split.good) {
    for (size_t b : split.bad) EXPECT_LE(scores[g], scores[b]);
  }
  const auto one = TpeSplitHistory(HistoryOf({3.0}), 0.25);
  EXPECT_EQ(one.good.size(), 1u);
  EXPECT_TRUE(one.bad.empty());
  const auto tied = TpeSplitHistory(HistoryOf(std::vector<double>(8, 1.0)), 0.25);
  EXPECT_EQ(tied.good, (std::vector<size_t>{0, 1}));
}

TEST(TpeSuggest, StartupAndDeterminism) {
  SearchSpace s{{ParamSpec::Uniform("x", -5, 5), ParamSpec::Choice("d", {2, 4, 6}),
                 ParamSpec::LogUniform("lr", 0.01, 0.3)}};
  EXPECT_TRUE(s.Contains(TpeSuggest(s, {}, {}, 4)));
  TuningHistory h;
  for (uint64_t i = 0; i < 30; ++i) {
    auto c = SampleRandom(s, i);
    const double score = std::abs(c["x"]) + c["d"] / 10;
    h.trials.push_back({c, score, {}, 0.0, ""});
  }
  const auto a = TpeSuggest(s, h, {}, 99);
  EXPECT_EQ(a, TpeSuggest(s, h, {}, 99));
  EXPECT_TRUE(s.Contains(a));
  for (uint64_t seed = 0; seed < 200; ++seed) EXPECT_TRUE(s.Contains(TpeSuggest(s, h, {}, seed)));
}

double BestAfter(const SearchSpace& s, const Objective& f, TuneMethod m, int n, uint64_t seed) {
  const auto h = Optimize(s, f, m, n, seed);
  return h.trials[h.BestIndex()].score;
}

TEST(TpeSuggest, BeatsRandomOnQuadratic) {
  SearchSpace s{{ParamSpec::Uniform("x", -5, 5)}};
  int wins = 0;
  for (uint64_t seed = 0; seed < 40; ++seed) {
    wins += BestAfter(s, Quadratic, TuneMethod::kTpe, 50, seed) <=
            BestAfter(s, Quadratic, TuneMethod::kRandom, 50, seed);
  }
  EXPECT_GE(wins, 24);
}

TEST(Optimize, HistoryProperties) {
  SearchSpace s{{ParamSpec::Uniform("x", -5, 5)}};
  const auto h = Optimize(s, Quadratic, TuneMethod::kTpe, 30, 7);
  ASSERT_EQ(h.trials.size(), 30u);
  const auto best = h.BestSoFar();
  for (size_t i = 1; i < best.size(); ++i) EXPECT_LE(best[i], best[i - 1]);
  for (const auto& t : h.trials) EXPECT_TRUE(s.Contains(t.config));
  // Random search: 30 trials contain the 15.
  EXPECT_LE(BestAfter(s, Quadratic, TuneMethod::kRandom, 30, 3),
            BestAfter(s, Quadratic, TuneMethod::kRandom, 15, 3));
}

TEST(Optimize, FailedTrialsScoreInfinity) {
  SearchSpace s{{ParamSpec::Uniform("x", -5, 5)}};
  int calls = 0;
  const Objective flaky = [&](const ParamConfig& c, std::vector<double>& f) {
    if (++calls % 2 == 0) throw Error(ErrorCode::kDegenerate, "boom");
    return Quadratic(c, f);
  };
  const auto h = Optimize(s, flaky, TuneMethod::kTpe, 15, 1);
  ASSERT_EQ(h.trials.size(), 15u);
  EXPECT_EQ(h.trials[1].score, std::numeric_limits<double>::infinity());
  EXPECT_FALSE(h.trials[1].error.empty());
  EXPECT_TRUE(std::isfinite(h.trials[h.BestIndex()].score));
}

TEST(ApplyParams, MapsNames) {
  BoostConfig base;
  const auto c = ApplyParams(base, {{"max_depth", 6}, {"reg_lambda", 2.5}, {"top_rate", 0.3},
                                    {"learning_rate", 0.05}, {"num_leaves", 20}});
  EXPECT_EQ(c.tree.max_depth, 6);
  EXPECT_EQ(c.tree.lambda_l2, 2.5);
  ASSERT_TRUE(c.goss);
  EXPECT_EQ(c.goss->top_rate, 0.3);
  EXPECT_EQ(c.learning_rate, 0.05);
  EXPECT_EQ(c.tree.num_leaves, 20);
  EXPECT_THROW(ApplyParams(base, {{"bogus", 1}}), Error);
}

TEST(Tune, SingleTrialAndInitOnlySpace) {
  const Dataset d = testing::NoisyXorData(120, 3);
  BoostConfig init;
  init.n_estimators = 10;
  init.learning_rate = 0.2;
  init.tree.max_depth = 3;
  const SearchSpace only_init{{ParamSpec::Choice("max_depth", {3}),
                               ParamSpec::Choice("learning_rate", {0.2})}};
  const auto r = Tune(d, init, only_init, TuneMethod::kRandom, 1, 5, 11);
  ASSERT_EQ(r.history.trials.size(), 1u);
  EXPECT_EQ(r.history.trials[0].fold_scores.size(), 5u);
  const double direct = CrossValidatedLogLoss(d, init, r.inner_plan);
  EXPECT_EQ(r.history.trials[0].score, direct);

  const SearchSpace space{{ParamSpec::Choice("max_depth", {1, 2, 3}),
                           ParamSpec::LogUniform("learning_rate", 0.01, 0.3)}};
  const auto t = Tune(d, init, space, TuneMethod::kTpe, 12, 3, 11);
  EXPECT_EQ(t.history.trials.size(), 12u);
  const auto best = t.history.trials[t.history.BestIndex()];
  EXPECT_EQ(t.best_params, best.config);
  EXPECT_EQ(t.best_config.tree.max_depth, static_cast<int>(best.config.at("max_depth")));
}

}  // namespace
}  // namespace gbbench
