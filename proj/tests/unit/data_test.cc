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
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "gbbench/data.h"
#include "gbbench/error.h"
#include "gbbench/random.h"

namespace gbbench {
namespace {

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kConfig;
}

TEST(Csv, LabelsMappedBySortedValue) {
  const Dataset d = ParseCsv("a,b,label\n1,2,A\n3,4,B\n5,6,A\n", {.label_column = "label"});
  EXPECT_EQ(d.num_rows(), 3u);
  EXPECT_EQ(d.num_features(), 2u);
  EXPECT_EQ(std::vector<int32_t>(d.labels().begin(), d.labels().end()),
            (std::vector<int32_t>{0, 1, 0}));
  EXPECT_EQ(d.class_names(), (std::vector<std::string>{"A", "B"}));
}

TEST(Csv, NumericLabelsSortNumerically) {
  const Dataset d = ParseCsv("x,y\n1,10\n2,9\n3,10\n", {.label_column = "y"});
  EXPECT_EQ(d.class_names(), (std::vector<std::string>{"9", "10"}));
  EXPECT_EQ(d.labels()[0], 1);
}

TEST(Csv, EmptyCellIsMissingNotZero) {
  const Dataset d = ParseCsv("a,label\n1,0\n,1\n", {.label_column = "label"});
  const Cell c = d.Lookup(1, 0);
  EXPECT_EQ(c.state, Cell::State::kMissing);
  EXPECT_TRUE(IsMissing(d.DenseRow(1)[0]));
}

TEST(Csv, SingleClassRejected) {
  try {
    ParseCsv("a,label\n1,x\n2,x\n", {.label_column = "label"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("fewer than 2 classes"), std::string::npos);
  }
}

TEST(Csv, BadNumericNamesRowAndColumn) {
  try {
    ParseCsv("a,b,label\n1,2,x\n1,oops,y\n", {.label_column = "label"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIngestion);
    const std::string msg = e.what();
    EXPECT_NE(msg.find("b"), std::string::npos);
    EXPECT_NE(msg.find("2"), std::string::npos);
  }
}

TEST(Csv, UnknownDeclaredColumn) {
  CsvSchema s{.label_column = "label"};
  s.kinds["nope"] = ColumnKind::kCategorical;
  EXPECT_EQ(CodeOf([&] { ParseCsv("a,label\n1,x\n2,y\n", s); }), ErrorCode::kSchema);
  EXPECT_EQ(CodeOf([&] { ParseCsv("a,label\n1,x\n2,y\n", {.label_column = "zz"}); }),
            ErrorCode::kSchema);
}

TEST(Csv, QuotedFieldsAndCategoricals) {
  CsvSchema s{.label_column = "label"};
  s.kinds["c"] = ColumnKind::kCategorical;
  const Dataset d = ParseCsv("c,\"n,um\",label\n\"red\",1.5,x\nblue,\"2\",y\n,3,x\n", s);
  ASSERT_EQ(d.num_features(), 2u);
  const auto& cat = std::get<CategoricalColumn>(d.column(0));
  EXPECT_EQ(cat.levels, (std::vector<std::string>{"blue", "red"}));
  EXPECT_EQ(cat.codes, (std::vector<int32_t>{1, 0, -1}));
  EXPECT_EQ(d.schema(1).name, "n,um");
  EXPECT_DOUBLE_EQ(d.Lookup(1, 1).value, 2.0);
}

TEST(Csv, LoadsBundledDatasets) {
  const std::filesystem::path root = GBBENCH_SOURCE_DIR;
  CsvSchema heart{.label_column = "target"};
  heart.kinds["thal"] = ColumnKind::kCategorical;
  const Dataset h = LoadCsv((root / "data/heart.csv").string(), heart);
  EXPECT_EQ(h.num_rows(), 303u);
  EXPECT_EQ(h.num_features(), 13u);
  const Dataset b = LoadCsv((root / "data/breast_cancer.csv").string(),
                            {.label_column = "diagnosis"});
  EXPECT_EQ(b.num_rows(), 569u);
  EXPECT_EQ(b.num_features(), 30u);
}

Dataset CategoryData(const std::vector<int32_t>& codes, const std::vector<int32_t>& labels,
                     std::vector<std::string> levels) {
  return Dataset({{"c", ColumnKind::kCategorical}}, {CategoricalColumn{codes, std::move(levels)}},
                 labels, {"0", "1"});
}

// Running statistic evaluated directly over an explicit permutation.
std::vector<double> OracleOrdered(const std::vector<int32_t>& cats, const std::vector<double>& t,
                                  const std::vector<size_t>& order, double a) {
  double p = 0.0;
  for (double v : t) p += v;
  p /= static_cast<double>(t.size());
  std::vector<double> out(t.size());
  for (size_t pos = 0; pos < order.size(); ++pos) {
    const size_t i = order[pos];
    double sum = 0.0;
    double n = 0.0;
    for (size_t q = 0; q < pos; ++q) {
      if (cats[order[q]] == cats[i]) {
        sum += t[order[q]];
        n += 1.0;
      }
    }
    out[i] = (sum + a * p) / (n + a);
  }
  return out;
}

TEST(OrderedTarget, FirstOccurrenceIsPrior) {
  const Dataset d = CategoryData({0, 1, 2, 3}, {1, 0, 0, 1}, {"a", "b", "c", "d"});
  for (double v : OrderedTargetEncode(d, 0, {.prior_weight = 2.0, .seed = 9})) {
    EXPECT_DOUBLE_EQ(v, 0.5);
  }
}

TEST(OrderedTarget, MatchesRunningStatisticOracle) {
  // Recover the permutation the encoder uses: it shuffles 0..n-1 with Rng(seed).
  const std::vector<int32_t> cats{0, 0, 0, 1, 1, 0, 1, 0};
  const std::vector<int32_t> labels{1, 1, 0, 0, 1, 1, 0, 0};
  const Dataset d = CategoryData(cats, labels, {"a", "b"});
  std::vector<size_t> order(cats.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(77);
  rng.Shuffle(std::span<size_t>(order));
  const std::vector<double> t(labels.begin(), labels.end());
  const auto expect = OracleOrdered(cats, t, order, 1.0);
  const auto got = OrderedTargetEncode(d, 0, {.prior_weight = 1.0, .seed = 77});
  ASSERT_EQ(got.size(), expect.size());
  for (size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], expect[i], 1e-12);
}

TEST(OrderedTarget, HandExampleIdentityOrder) {
  // targets [1,1,0], one category, a=1, P=2/3, rows in natural order:
  // (0+2/3)/1, (1+2/3)/2, (2+2/3)/3.
  const auto v = OracleOrdered({0, 0, 0}, {1, 1, 0}, {0, 1, 2}, 1.0);
  EXPECT_NEAR(v[0], 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(v[1], 5.0 / 6.0, 1e-12);
  EXPECT_NEAR(v[2], 8.0 / 9.0, 1e-12);
}

// Flipping row i's target moves the global prior P, so rows at or before i
// in the permutation may change only through P: their value must equal the
// old running sums combined with the new prior.
TEST(OrderedTarget, LeakageFree) {
  const std::vector<int32_t> cats{0, 1, 0, 1, 0, 0, 1, 1, 0, 1};
  const std::vector<int32_t> labels{1, 0, 1, 0, 0, 1, 1, 0, 1, 0};
  std::vector<size_t> order(cats.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(5);
  rng.Shuffle(std::span<size_t>(order));
  std::vector<size_t> pos(cats.size());
  for (size_t q = 0; q < order.size(); ++q) pos[order[q]] = q;
  for (size_t i = 0; i < cats.size(); ++i) {
    auto flipped = labels;
    flipped[i] = 1 - flipped[i];
    double p_new = 0.0;
    for (int32_t l : flipped) p_new += l;
    p_new /= static_cast<double>(flipped.size());
    const auto enc = OrderedTargetEncode(CategoryData(cats, flipped, {"a", "b"}), 0, {.seed = 5});
    for (size_t j = 0; j < cats.size(); ++j) {
      if (pos[j] > pos[i]) continue;
      double sum_old = 0.0;
      double n = 0.0;
      for (size_t q = 0; q < pos[j]; ++q) {
        if (cats[order[q]] == cats[j]) {
          sum_old += labels[order[q]];
          n += 1.0;
        }
      }
      EXPECT_NEAR(enc[j], (sum_old + p_new) / (n + 1.0), 1e-12) << "i=" << i << " j=" << j;
    }
  }
}

TEST(OrderedTarget, ShapeAndErrors) {
  const Dataset d = CategoryData({0, 1, -1, 1}, {0, 1, 1, 0}, {"a", "b"});
  EXPECT_EQ(OrderedTargetEncode(d, 0, {.seed = 1}).size(), 4u);
  EXPECT_EQ(CodeOf([&] { OrderedTargetEncode(d, 0, {.prior_weight = 0.0}); }),
            ErrorCode::kParameter);
}

TEST(OrderedTarget, EvalUsesTrainStatistics) {
  const Dataset train = CategoryData({0, 0, 1, 1}, {1, 1, 0, 1}, {"a", "b"});
  const Dataset eval = Dataset({{"c", ColumnKind::kCategorical}},
                               {CategoricalColumn{{0, 1, 2}, {"a", "b", "z"}}}, {0, 1, 0},
                               {"0", "1"}, false);
  const auto v = ApplyTargetStatistics(train, 0, eval, {.prior_weight = 1.0});
  const double p = 0.75;
  EXPECT_NEAR(v[0], (2 + p) / 3, 1e-12);
  EXPECT_NEAR(v[1], (1 + p) / 3, 1e-12);
  EXPECT_NEAR(v[2], p, 1e-12);
}

TEST(Tfidf, SingleTerm) {
  const std::vector<std::string> docs{"cat"};
  const auto r = TfidfVectorize(docs, 1);
  ASSERT_EQ(r.columns.size(), 1u);
  EXPECT_DOUBLE_EQ(r.columns[0].values.at(0), 1.0);
}

TEST(Tfidf, TwoDocuments) {
  const std::vector<std::string> docs{"a b", "a"};
  const auto r = TfidfVectorize(docs, 2);
  ASSERT_EQ(r.vocabulary, (std::vector<std::string>{"a", "b"}));
  const double ia = std::log(3.0 / 3.0) + 1.0;
  const double ib = std::log(3.0 / 2.0) + 1.0;
  const double norm = std::hypot(ia, ib);
  EXPECT_NEAR(r.columns[0].values[0], ia / norm, 1e-12);
  EXPECT_NEAR(r.columns[1].values[0], ib / norm, 1e-12);
  // Absent term: no stored entry for doc 1 in column "b".
  EXPECT_EQ(r.columns[1].rows, (std::vector<uint32_t>{0}));
  EXPECT_NEAR(r.columns[0].values[1], 1.0, 1e-12);
}

TEST(Tfidf, RowsUnitNormAndErrors) {
  const std::vector<std::string> docs{"The cat, the HAT!", "dog 42 dog", "cat dog bird", ""};
  const auto r = TfidfVectorize(docs, 10);
  std::vector<double> sq(docs.size(), 0.0);
  for (const auto& c : r.columns) {
    for (size_t i = 0; i < c.rows.size(); ++i) sq[c.rows[i]] += c.values[i] * c.values[i];
  }
  for (size_t d = 0; d < 3; ++d) EXPECT_NEAR(std::sqrt(sq[d]), 1.0, 1e-9);
  EXPECT_EQ(sq[3], 0.0);
  const std::vector<std::string> empty{"", "  ,"};
  EXPECT_EQ(CodeOf([&] { TfidfVectorize(empty, 5); }), ErrorCode::kVectorization);
}

TEST(Folds, DivisibleStratification) {
  std::vector<int32_t> labels(8, 0);
  labels.insert(labels.end(), 4, 1);
  const FoldPlan plan = StratifiedKFold(labels, 4, 3);
  std::map<std::pair<int, int>, int> counts;
  for (size_t i = 0; i < labels.size(); ++i) ++counts[{plan.assignments[i], labels[i]}];
  for (int f = 0; f < 4; ++f) {
    EXPECT_EQ((counts[{f, 0}]), 2);
    EXPECT_EQ((counts[{f, 1}]), 1);
  }
}

TEST(Folds, DeterministicAndPartitioned) {
  Rng rng(1);
  std::vector<int32_t> labels(157);
  for (auto& l : labels) l = static_cast<int32_t>(rng.UniformInt(3));
  const FoldPlan a = StratifiedKFold(labels, 10, 42);
  const FoldPlan b = StratifiedKFold(labels, 10, 42);
  EXPECT_EQ(a.ToJson(), b.ToJson());
  std::set<uint32_t> seen;
  for (int f = 0; f < 10; ++f) {
    const auto test = a.TestRows(f);
    EXPECT_FALSE(test.empty());
    EXPECT_EQ(test.size() + a.TrainRows(f).size(), labels.size());
    for (uint32_t r : test) EXPECT_TRUE(seen.insert(r).second);
  }
  EXPECT_EQ(seen.size(), labels.size());
  for (int c = 0; c < 3; ++c) {
    std::vector<int> per_fold(10, 0);
    for (size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == c) ++per_fold[a.assignments[i]];
    }
    EXPECT_LE(*std::max_element(per_fold.begin(), per_fold.end()) -
                  *std::min_element(per_fold.begin(), per_fold.end()),
              1);
  }
}

TEST(Folds, Errors) {
  const std::vector<int32_t> labels{0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1};
  EXPECT_EQ(CodeOf([&] { StratifiedKFold(labels, 13, 0); }), ErrorCode::kParameter);
  EXPECT_EQ(CodeOf([&] { StratifiedKFold(labels, 1, 0); }), ErrorCode::kParameter);
  EXPECT_FALSE(StratifiedKFold(labels, 8, 0).warnings.empty());
}

TEST(Dataset, RejectsBadSparseOrder) {
  EXPECT_EQ(CodeOf([] {
              Dataset({{"s"}}, {SparseColumn{{2, 1}, {1.0, 2.0}}}, {0, 1, 0}, {"a", "b"});
            }),
            ErrorCode::kSchema);
}

}  // namespace
}  // namespace gbbench
