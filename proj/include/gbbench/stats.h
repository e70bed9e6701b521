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

#ifndef GBBENCH_STATS_H_
#define GBBENCH_STATS_H_

#include <span>
#include <string>
#include <vector>

namespace gbbench {

enum class Alternative { kGreater, kLess, kTwoSided };
std::string_view AlternativeName(Alternative a);

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::string method;
  Alternative alternative = Alternative::kTwoSided;
  double alpha = 0.05;
  int n = 0;  // effective sample size (Wilcoxon: nonzero differences)
};

enum class WilcoxonMethod { kAuto, kExact, kNormal };

// Signed-rank test on d = a - b. Zero differences are dropped. The statistic
// is W+, the rank sum of positive differences. kAuto uses the exact null
// distribution for n <= 25 and the tie-corrected normal approximation with
// continuity correction otherwise.
TestResult WilcoxonSignedRank(std::span<const double> a, std::span<const double> b,
                              Alternative alternative,
                              WilcoxonMethod method = WilcoxonMethod::kAuto, double alpha = 0.05);

// D datasets (rows) by k models (columns).
struct ScoreMatrix {
  std::vector<std::string> datasets;
  std::vector<std::string> models;
  std::vector<std::vector<double>> values;

  void Validate() const;
  static ScoreMatrix FromCsv(std::string_view text);
};

// Ranks 1..k within one row, mid-ranks for ties. The best model gets k.
std::vector<double> RankRow(std::span<const double> row, bool higher_better);
std::vector<double> AverageRanks(const ScoreMatrix& scores, bool higher_better);

struct FriedmanResult {
  TestResult chi_square;      // gates significance
  TestResult iman_davenport;  // F statistic
  std::vector<double> mean_ranks;
};

FriedmanResult FriedmanTest(const ScoreMatrix& scores, bool higher_better, double alpha = 0.05);

// Studentized range quantile divided by sqrt(2); alpha is 0.05 or 0.10.
double NemenyiQ(int k, double alpha);
double NemenyiCd(int k, int num_datasets, double alpha);
// significant[i][j] when |R_i - R_j| > cd.
std::vector<std::vector<bool>> NemenyiSignificance(std::span<const double> mean_ranks, double cd);

// Special functions.
double RegularizedGammaP(double a, double x);
double RegularizedGammaQ(double a, double x);
double RegularizedBeta(double x, double a, double b);
double ChiSquareSurvival(double x, double df);
double FSurvival(double f, double df1, double df2);
double NormalSurvival(double z);

}  // namespace gbbench

#endif  // GBBENCH_STATS_H_
