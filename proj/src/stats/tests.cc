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
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "gbbench/error.h"
#include "gbbench/stats.h"

namespace gbbench {

namespace {

constexpr double kMinP = std::numeric_limits<double>::min();

double ClampP(double p) { return std::clamp(p, kMinP, 1.0); }

// Mid-ranks (1-based) of `values`, ascending.
std::vector<double> MidRanks(std::span<const double> values) {
  const size_t n = values.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (size_t i = 0; i < n;) {
    size_t j = i;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    const double mid = 0.5 * static_cast<double>(i + 1 + j);
    for (size_t k = i; k < j; ++k) ranks[order[k]] = mid;
    i = j;
  }
  return ranks;
}

// Null distribution of twice W+ over all 2^n equally likely sign patterns,
// built one rank at a time. counts[s] = patterns with doubled sum s.
std::vector<double> SignedRankCounts(std::span<const int> doubled_ranks) {
  const int total = std::accumulate(doubled_ranks.begin(), doubled_ranks.end(), 0);
  std::vector<double> counts(static_cast<size_t>(total) + 1, 0.0);
  counts[0] = 1.0;
  int reach = 0;
  for (int r : doubled_ranks) {
    for (int s = reach; s >= 0; --s) {
      if (counts[static_cast<size_t>(s)] != 0.0) counts[static_cast<size_t>(s + r)] += counts[static_cast<size_t>(s)];
    }
    reach += r;
  }
  return counts;
}

}  // namespace

std::string_view AlternativeName(Alternative a) {
  switch (a) {
    case Alternative::kGreater:
      return "greater";
    case Alternative::kLess:
      return "less";
    case Alternative::kTwoSided:
      return "two-sided";
  }
  return "?";
}

TestResult WilcoxonSignedRank(std::span<const double> a, std::span<const double> b,
                              Alternative alternative, WilcoxonMethod method, double alpha) {
  if (a.size() != b.size()) Fail(ErrorCode::kParameter, "paired samples differ in length");
  if (a.empty()) Fail(ErrorCode::kParameter, "no paired samples");
  std::vector<double> d;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) d.push_back(a[i] - b[i]);
  }
  TestResult out;
  out.alternative = alternative;
  out.alpha = alpha;
  out.n = static_cast<int>(d.size());
  if (d.empty()) {
    out.method = "wilcoxon-none";
    out.p_value = 1.0;
    return out;
  }
  std::vector<double> magnitude(d.size());
  for (size_t i = 0; i < d.size(); ++i) magnitude[i] = std::abs(d[i]);
  const std::vector<double> ranks = MidRanks(magnitude);
  double w_plus = 0.0;
  for (size_t i = 0; i < d.size(); ++i) {
    if (d[i] > 0) w_plus += ranks[i];
  }
  out.statistic = w_plus;
  const size_t n = d.size();
  const bool exact =
      method == WilcoxonMethod::kExact || (method == WilcoxonMethod::kAuto && n <= 25);
  if (exact) {
    if (n > 60) Fail(ErrorCode::kParameter, "exact signed-rank test limited to n <= 60");
    std::vector<int> doubled(n);
    for (size_t i = 0; i < n; ++i) doubled[i] = static_cast<int>(std::lround(2 * ranks[i]));
    const std::vector<double> counts = SignedRankCounts(doubled);
    const int w2 = static_cast<int>(std::lround(2 * w_plus));
    const double total = std::ldexp(1.0, static_cast<int>(n));
    double upper = 0.0;  // P(W+ >= w)
    double lower = 0.0;  // P(W+ <= w)
    for (size_t s = 0; s < counts.size(); ++s) {
      if (static_cast<int>(s) >= w2) upper += counts[s];
      if (static_cast<int>(s) <= w2) lower += counts[s];
    }
    upper /= total;
    lower /= total;
    out.method = "wilcoxon-exact";
    switch (alternative) {
      case Alternative::kGreater:
        out.p_value = upper;
        break;
      case Alternative::kLess:
        out.p_value = lower;
        break;
      case Alternative::kTwoSided:
        out.p_value = std::min(1.0, 2.0 * std::min(upper, lower));
        break;
    }
  } else {
    const double nn = static_cast<double>(n);
    const double mean = nn * (nn + 1) / 4.0;
    double tie = 0.0;
    std::vector<double> sorted = ranks;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < n;) {
      size_t j = i;
      while (j < n && sorted[j] == sorted[i]) ++j;
      const double t = static_cast<double>(j - i);
      tie += t * t * t - t;
      i = j;
    }
    const double sd = std::sqrt(nn * (nn + 1) * (2 * nn + 1) / 24.0 - tie / 48.0);
    out.method = "wilcoxon-normal";
    if (sd == 0.0) {
      out.p_value = 1.0;
      return out;
    }
    switch (alternative) {
      case Alternative::kGreater:
        out.p_value = NormalSurvival((w_plus - mean - 0.5) / sd);
        break;
      case Alternative::kLess:
        out.p_value = NormalSurvival((mean - w_plus - 0.5) / sd);
        break;
      case Alternative::kTwoSided:
        out.p_value =
            std::min(1.0, 2.0 * NormalSurvival(std::max(0.0, std::abs(w_plus - mean) - 0.5) / sd));
        break;
    }
  }
  out.p_value = ClampP(out.p_value);
  return out;
}

void ScoreMatrix::Validate() const {
  if (values.size() < 2) Fail(ErrorCode::kParameter, "need at least 2 datasets");
  if (models.size() < 2) Fail(ErrorCode::kParameter, "need at least 2 models");
  if (!datasets.empty() && datasets.size() != values.size()) {
    Fail(ErrorCode::kParameter, "dataset names do not match rows");
  }
  for (const auto& row : values) {
    if (row.size() != models.size()) Fail(ErrorCode::kParameter, "ragged score matrix");
    for (double v : row) {
      if (!std::isfinite(v)) Fail(ErrorCode::kParameter, "score matrix has a missing cell");
    }
  }
}

// First column holds dataset names; the header names the models.
ScoreMatrix ScoreMatrix::FromCsv(std::string_view text) {
  ScoreMatrix m;
  std::istringstream in{std::string(text)};
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(s);
    while (std::getline(ls, cell, ',')) {
      while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
      while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
      cells.push_back(cell);
    }
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };
  if (!std::getline(in, line)) Fail(ErrorCode::kIngestion, "empty score file");
  const auto header = split(line);
  if (header.size() < 3) Fail(ErrorCode::kIngestion, "score file needs a name column and 2 models");
  m.models.assign(header.begin() + 1, header.end());
  size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \r\t") == std::string::npos) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      Fail(ErrorCode::kIngestion, "row " + std::to_string(row) + " has the wrong cell count");
    }
    m.datasets.push_back(cells[0]);
    std::vector<double> v;
    for (size_t c = 1; c < cells.size(); ++c) {
      try {
        size_t used = 0;
        v.push_back(std::stod(cells[c], &used));
        if (used != cells[c].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        Fail(ErrorCode::kIngestion, "row " + std::to_string(row) + ", column '" + header[c] +
                                        "': not a number");
      }
    }
    m.values.push_back(std::move(v));
  }
  m.Validate();
  return m;
}

std::vector<double> RankRow(std::span<const double> row, bool higher_better) {
  std::vector<double> keyed(row.begin(), row.end());
  if (!higher_better) {
    for (double& v : keyed) v = -v;
  }
  return MidRanks(keyed);
}

std::vector<double> AverageRanks(const ScoreMatrix& scores, bool higher_better) {
  scores.Validate();
  const size_t k = scores.models.size();
  std::vector<double> mean(k, 0.0);
  for (const auto& row : scores.values) {
    const auto r = RankRow(row, higher_better);
    for (size_t j = 0; j < k; ++j) mean[j] += r[j];
  }
  for (double& v : mean) v /= static_cast<double>(scores.values.size());
  return mean;
}

FriedmanResult FriedmanTest(const ScoreMatrix& scores, bool higher_better, double alpha) {
  FriedmanResult out;
  out.mean_ranks = AverageRanks(scores, higher_better);
  const double k = static_cast<double>(scores.models.size());
  const double d = static_cast<double>(scores.values.size());
  double sum_sq = 0.0;
  for (double r : out.mean_ranks) sum_sq += r * r;
  double chi = 12.0 * d / (k * (k + 1)) * sum_sq - 3.0 * d * (k + 1);
  if (std::abs(chi) < 1e-12) chi = 0.0;
  out.chi_square.statistic = chi;
  out.chi_square.p_value = ClampP(ChiSquareSurvival(chi, k - 1));
  out.chi_square.method = "friedman-chi2";
  out.chi_square.alpha = alpha;
  out.chi_square.n = static_cast<int>(d);

  const double denom = d * (k - 1) - chi;
  const double f = denom > 0 ? (d - 1) * chi / denom : std::numeric_limits<double>::infinity();
  out.iman_davenport.statistic = f;
  out.iman_davenport.p_value = ClampP(FSurvival(f, k - 1, (k - 1) * (d - 1)));
  out.iman_davenport.method = "iman-davenport-F";
  out.iman_davenport.alpha = alpha;
  out.iman_davenport.n = static_cast<int>(d);
  return out;
}

namespace {

// k = 2..20. Entries up to k = 10 are the two-tailed Nemenyi values from
// Demsar (2006); the rest are studentized range quantiles (infinite df)
// divided by sqrt(2).
constexpr double kQ05[] = {1.960, 2.343, 2.569, 2.728, 2.850, 2.949, 3.031, 3.102, 3.164, 3.219,
                           3.268, 3.313, 3.354, 3.391, 3.426, 3.458, 3.489, 3.517, 3.544};
constexpr double kQ10[] = {1.645, 2.052, 2.291, 2.459, 2.589, 2.693, 2.780, 2.855, 2.920, 2.978,
                           3.030, 3.077, 3.120, 3.159, 3.196, 3.230, 3.261, 3.291, 3.319};

}  // namespace

double NemenyiQ(int k, double alpha) {
  if (k < 2 || k > 20) Fail(ErrorCode::kParameter, "Nemenyi table covers 2 <= k <= 20");
  if (std::abs(alpha - 0.05) < 1e-12) return kQ05[k - 2];
  if (std::abs(alpha - 0.10) < 1e-12) return kQ10[k - 2];
  Fail(ErrorCode::kParameter, "Nemenyi alpha must be 0.05 or 0.10");
}

double NemenyiCd(int k, int num_datasets, double alpha) {
  if (num_datasets < 1) Fail(ErrorCode::kParameter, "need at least one dataset");
  const double kk = k;
  return NemenyiQ(k, alpha) * std::sqrt(kk * (kk + 1) / (6.0 * num_datasets));
}

std::vector<std::vector<bool>> NemenyiSignificance(std::span<const double> mean_ranks, double cd) {
  const size_t k = mean_ranks.size();
  std::vector<std::vector<bool>> out(k, std::vector<bool>(k, false));
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) out[i][j] = std::abs(mean_ranks[i] - mean_ranks[j]) > cd;
  }
  return out;
}

}  // namespace gbbench
