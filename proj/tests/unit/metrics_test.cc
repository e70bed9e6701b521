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
#include <numeric>

#include "gbbench/error.h"
#include "gbbench/metrics.h"
#include "gbbench/random.h"

namespace gbbench {
namespace {

using V = std::vector<int32_t>;

// Direct count over every (positive, negative) pair.
double PairCountAuc(const std::vector<uint8_t>& pos, const std::vector<double>& s) {
  double wins = 0.0;
  double pairs = 0.0;
  for (size_t i = 0; i < s.size(); ++i) {
    for (size_t j = 0; j < s.size(); ++j) {
      if (!pos[i] || pos[j]) continue;
      pairs += 1;
      wins += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
    }
  }
  return wins / pairs;
}

TEST(Accuracy, Examples) {
  EXPECT_EQ(Accuracy(V{0, 1, 2}, V{0, 1, 2}), 1.0);
  EXPECT_EQ(Accuracy(V{0, 1}, V{1, 0}), 0.0);
  EXPECT_EQ(Accuracy(V{0, 0, 1, 1}, V{0, 1, 1, 1}), 0.75);
  EXPECT_THROW(Accuracy(V{0, 1}, V{0}), Error);
}

TEST(F1, Examples) {
  EXPECT_EQ(F1Binary(V{1, 0, 1}, V{1, 0, 1}, 1), 1.0);
  // P = 1/1, R = 1/2.
  EXPECT_NEAR(F1Binary(V{1, 1, 0, 0}, V{1, 0, 0, 0}, 1), 2 * 1.0 * 0.5 / 1.5, 1e-15);
  EXPECT_EQ(F1Binary(V{1, 1}, V{0, 0}, 1), 0.0);
  EXPECT_EQ(F1Weighted(V{0, 1, 2, 2}, V{0, 1, 2, 2}), 1.0);
}

TEST(F1, WeightedEqualsMacroOnBalancedSupport) {
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    V truth;
    V pred;
    for (int c = 0; c < 3; ++c) {
      for (int k = 0; k < 5; ++k) {
        truth.push_back(c);
        pred.push_back(static_cast<int32_t>(rng.UniformInt(3)));
      }
    }
    double macro = 0.0;
    for (int c = 0; c < 3; ++c) macro += F1Binary(truth, pred, c) / 3;
    EXPECT_NEAR(F1Weighted(truth, pred), macro, 1e-12);
  }
}

TEST(AucBinary, Examples) {
  EXPECT_EQ(AucBinary(std::vector<uint8_t>{1, 1, 0, 0}, std::vector<double>{0.9, 0.8, 0.2, 0.1}),
            1.0);
  EXPECT_EQ(AucBinary(std::vector<uint8_t>{1, 0, 1, 0}, std::vector<double>{3, 3, 3, 3}), 0.5);
  EXPECT_EQ(AucBinary(std::vector<uint8_t>{1, 1, 0, 0}, std::vector<double>{0.9, 0.4, 0.5, 0.1}),
            0.75);
  EXPECT_THROW(AucBinary(std::vector<uint8_t>{1, 1}, std::vector<double>{1, 2}), Error);
}

TEST(AucBinary, MatchesPairCounting) {
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    const size_t n = 2 + rng.UniformInt(29);
    std::vector<uint8_t> pos(n);
    std::vector<double> s(n);
    for (size_t i = 0; i < n; ++i) {
      pos[i] = rng.Uniform() < 0.5;
      s[i] = static_cast<double>(rng.UniformInt(6)) / 5.0;
    }
    pos[0] = 1;
    pos[1] = 0;
    EXPECT_EQ(AucBinary(pos, s), PairCountAuc(pos, s));
  }
}

TEST(AucBinary, SymmetryAndMonotoneInvariance) {
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const size_t n = 10 + rng.UniformInt(20);
    std::vector<uint8_t> pos(n);
    std::vector<uint8_t> flipped(n);
    std::vector<double> s(n);
    std::vector<double> cubed(n);
    for (size_t i = 0; i < n; ++i) {
      pos[i] = i % 3 == 0;
      flipped[i] = !pos[i];
      s[i] = std::round(rng.Uniform(-2, 2) * 4) / 4;
      cubed[i] = std::exp(s[i]) * 3 + 1;
    }
    EXPECT_NEAR(AucBinary(pos, s) + AucBinary(flipped, s), 1.0, 1e-15);
    EXPECT_EQ(AucBinary(pos, s), AucBinary(pos, cubed));
  }
}

TEST(AucWeightedOvr, BinaryMatchesAuc) {
  const V truth{0, 1, 1, 0, 1};
  const std::vector<double> p1{0.2, 0.7, 0.4, 0.5, 0.9};
  std::vector<double> scores;
  for (double v : p1) {
    scores.push_back(1 - v);
    scores.push_back(v);
  }
  std::vector<uint8_t> pos(truth.begin(), truth.end());
  EXPECT_NEAR(AucWeightedOvr(truth, scores, 2).value, AucBinary(pos, p1), 1e-15);
}

TEST(AucWeightedOvr, HandInstanceAgainstPairCounting) {
  const V truth{0, 1, 2, 0, 1, 2};
  const std::vector<double> s{0.5, 0.3, 0.2, 0.2, 0.5, 0.3, 0.1, 0.3, 0.6,
                              0.4, 0.4, 0.2, 0.3, 0.3, 0.4, 0.3, 0.3, 0.4};
  double expect = 0.0;
  for (int c = 0; c < 3; ++c) {
    std::vector<uint8_t> pos;
    std::vector<double> col;
    for (size_t i = 0; i < 6; ++i) {
      pos.push_back(truth[i] == c);
      col.push_back(s[i * 3 + c]);
    }
    expect += 2.0 / 6.0 * PairCountAuc(pos, col);
  }
  EXPECT_NEAR(AucWeightedOvr(truth, s, 3).value, expect, 1e-15);
  const std::vector<double> perfect{1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 0, 0, 0, 1};
  EXPECT_EQ(AucWeightedOvr(truth, perfect, 3).value, 1.0);
}

TEST(AucWeightedOvr, AbsentClassSkipped) {
  const V truth{0, 1, 0, 1};
  const std::vector<double> s{0.6, 0.3, 0.1, 0.2, 0.7, 0.1, 0.5, 0.4, 0.1, 0.3, 0.3, 0.4};
  const auto r = AucWeightedOvr(truth, s, 3);
  EXPECT_EQ(r.warnings.size(), 1u);
  EXPECT_GE(r.value, 0.0);
}

TEST(LogLoss, Examples) {
  EXPECT_NEAR(LogLoss(V{0, 1}, std::vector<double>{0.5, 0.5, 0.5, 0.5}, 2), std::log(2.0), 1e-15);
  EXPECT_LE(LogLoss(V{0, 1}, std::vector<double>{1, 0, 0, 1}, 2), 1.2e-15);
  EXPECT_NEAR(LogLoss(V{1, 0}, std::vector<double>{0.2, 0.8, 0.6, 0.4}, 2),
              -(std::log(0.8) + std::log(0.6)) / 2, 1e-15);
  EXPECT_NEAR(LogLoss(V{0}, std::vector<double>{0.0, 1.0}, 2), -std::log(1e-15), 1e-9);
}

TEST(Metrics, PermutationInvariant) {
  Rng rng(4);
  const size_t n = 30;
  V truth(n);
  V pred(n);
  std::vector<double> score(n);
  for (size_t i = 0; i < n; ++i) {
    truth[i] = static_cast<int32_t>(rng.UniformInt(2));
    pred[i] = static_cast<int32_t>(rng.UniformInt(2));
    score[i] = rng.Uniform();
  }
  truth[0] = 0;
  truth[1] = 1;
  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  rng.Shuffle(std::span<size_t>(perm));
  V t2(n), p2(n);
  std::vector<double> s2(n);
  std::vector<uint8_t> pos(n), pos2(n);
  for (size_t i = 0; i < n; ++i) {
    t2[i] = truth[perm[i]];
    p2[i] = pred[perm[i]];
    s2[i] = score[perm[i]];
    pos[i] = truth[i];
    pos2[i] = t2[i];
  }
  EXPECT_EQ(Accuracy(truth, pred), Accuracy(t2, p2));
  EXPECT_NEAR(F1Weighted(truth, pred), F1Weighted(t2, p2), 1e-15);
  EXPECT_EQ(AucBinary(pos, score), AucBinary(pos2, s2));
}

}  // namespace
}  // namespace gbbench
