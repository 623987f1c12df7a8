// Copyright 2026 The hc3detect Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hc3detect/logistic_regression.h"

#include <cmath>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "hc3detect/corpus.h"
#include "testing/test_util.h"

namespace hc3detect {
namespace {

double Normal(Rng& rng) {
  const double u1 = 1.0 - rng.Uniform();
  const double u2 = rng.Uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

// Two overlapping Gaussian classes in `dim` dimensions.
std::vector<LabeledVector> Blobs(Rng& rng, int n, int dim, double gap) {
  std::vector<LabeledVector> out;
  for (int i = 0; i < n; ++i) {
    LabeledVector row;
    row.label = i % 2;
    for (int j = 0; j < dim; ++j) {
      row.x.push_back(Normal(rng) + (row.label ? gap : 0.0) * (j + 1) / dim);
    }
    out.push_back(std::move(row));
  }
  return out;
}

double Sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

TEST(TrainLogRegTest, TwoSeparablePoints) {
  const std::vector<LabeledVector> data = {{{-1.0}, 0}, {{1.0}, 1}};
  auto trained = TrainLogReg(data, TrainOptions{.lambda = 0.1});
  ASSERT_TRUE(trained.ok()) << trained.status();
  const auto& model = trained->first;
  EXPECT_GT(model.weights[0], 0.0);
  EXPECT_LT(Predict(model, std::vector<double>{-1.0})->label, 1);
  EXPECT_EQ(Predict(model, std::vector<double>{1.0})->label, 1);
  EXPECT_TRUE(trained->second.converged);
  // Symmetric data puts the bias at zero.
  EXPECT_NEAR(model.bias, 0.0, 1e-9);
}

TEST(LogisticObjectiveTest, GradientAtZero) {
  Rng rng(5);
  const std::size_t n = 30, dim = 4;
  std::vector<double> rows(n * dim);
  std::vector<int> labels(n);
  for (auto& v : rows) v = Normal(rng);
  for (auto& y : labels) y = static_cast<int>(rng.Below(2));
  LogisticObjective objective(rows, dim, labels, 0.7);
  std::vector<double> w(dim, 0.0), grad;
  double grad_b = 0.0;
  const double value = objective.ValueAndGradient(w, 0.0, grad, grad_b);
  EXPECT_NEAR(value, std::log(2.0), 1e-15);
  for (std::size_t j = 0; j < dim; ++j) {
    double expected = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      expected += (0.5 - labels[i]) * rows[i * dim + j];
    }
    EXPECT_NEAR(grad[j], expected / n, 1e-14);
  }
  double expected_b = 0.0;
  for (int y : labels) expected_b += 0.5 - y;
  EXPECT_NEAR(grad_b, expected_b / n, 1e-15);
}

TEST(LogisticObjectiveTest, GradientMatchesCentralDifferences) {
  Rng rng(2024);
  constexpr double kH = 1e-5;
  for (int instance = 0; instance < 20; ++instance) {
    const std::size_t n = 5 + rng.Below(40);
    const std::size_t dim = 1 + rng.Below(6);
    std::vector<double> rows(n * dim);
    std::vector<int> labels(n);
    for (auto& v : rows) v = 2.0 * Normal(rng);
    for (auto& y : labels) y = static_cast<int>(rng.Below(2));
    const double lambda = rng.Below(2) ? 0.0 : rng.Uniform();
    LogisticObjective objective(rows, dim, labels, lambda);

    std::vector<double> w(dim);
    for (auto& v : w) v = Normal(rng);
    const double b = Normal(rng);
    std::vector<double> grad;
    double grad_b = 0.0;
    objective.ValueAndGradient(w, b, grad, grad_b);

    std::vector<double> analytic = grad;
    analytic.push_back(grad_b);
    std::vector<double> numeric;
    for (std::size_t j = 0; j <= dim; ++j) {
      auto wp = w, wm = w;
      double bp = b, bm = b;
      if (j < dim) {
        wp[j] += kH;
        wm[j] -= kH;
      } else {
        bp += kH;
        bm -= kH;
      }
      numeric.push_back((objective.Value(wp, bp) - objective.Value(wm, bm)) /
                        (2.0 * kH));
    }
    double diff = 0.0, norm = 0.0;
    for (std::size_t j = 0; j < analytic.size(); ++j) {
      diff += (analytic[j] - numeric[j]) * (analytic[j] - numeric[j]);
      norm += analytic[j] * analytic[j];
    }
    EXPECT_LE(std::sqrt(diff), 1e-6 * std::sqrt(norm))
        << "instance " << instance;
  }
}

TEST(TrainLogRegTest, LossNeverIncreases) {
  Rng rng(6);
  const auto data = Blobs(rng, 200, 3, 1.5);
  auto trained = TrainLogReg(data, TrainOptions{.lambda = 1e-3});
  ASSERT_TRUE(trained.ok());
  const auto& history = trained->second.loss_history;
  ASSERT_GE(history.size(), 2u);
  for (std::size_t i = 1; i < history.size(); ++i) {
    EXPECT_LE(history[i], history[i - 1]);
  }
  EXPECT_EQ(trained->second.final_loss, history.back());
  EXPECT_TRUE(trained->second.converged);
}

TEST(PredictTest, ZeroWeightsAndMeanInput) {
  LogRegModel model;
  model.weights = {0.0, 0.0};
  model.standardizer = {{1.0, 2.0}, {1.0, 1.0}};
  EXPECT_EQ(Predict(model, std::vector<double>{5.0, -3.0})->probability, 0.5);
  EXPECT_EQ(Predict(model, std::vector<double>{5.0, -3.0})->label, 1);
  model.weights = {3.0, -2.0};
  model.bias = 0.4;
  EXPECT_DOUBLE_EQ(Predict(model, std::vector<double>{1.0, 2.0})->probability,
                   Sigmoid(0.4));
  EXPECT_FALSE(Predict(model, std::vector<double>{1.0}).ok());
}

TEST(TrainLogRegTest, InputErrors) {
  const std::vector<LabeledVector> one_class = {{{1.0}, 1}, {{2.0}, 1}};
  EXPECT_FALSE(TrainLogReg(one_class, TrainOptions{}).ok());
  const std::vector<LabeledVector> ragged = {{{1.0}, 0}, {{2.0, 3.0}, 1}};
  EXPECT_FALSE(TrainLogReg(ragged, TrainOptions{}).ok());
  const std::vector<LabeledVector> nan = {{{NAN}, 0}, {{2.0}, 1}};
  EXPECT_FALSE(TrainLogReg(nan, TrainOptions{}).ok());
  const std::vector<LabeledVector> ok = {{{1.0}, 0}, {{2.0}, 1}};
  EXPECT_FALSE(TrainLogReg(ok, TrainOptions{.lambda = -1.0}).ok());
  EXPECT_FALSE(TrainLogReg(ok, TrainOptions{.threshold = 1.0}).ok());
  EXPECT_FALSE(TrainLogReg({}, TrainOptions{}).ok());
}

TEST(StandardizerTest, PopulationStdAndConstantColumns) {
  const std::vector<LabeledVector> data = {{{1.0, 7.0}, 0}, {{3.0, 7.0}, 1}};
  auto s = Standardizer::Fit(data);
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(s->means, (std::vector<double>{2.0, 7.0}));
  EXPECT_EQ(s->stds, (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(s->Transform(std::vector<double>{3.0, 9.0}),
            (std::vector<double>{1.0, 2.0}));
}

TEST(LogRegModelTest, SaveLoadBitIdentical) {
  Rng rng(7);
  const auto data = Blobs(rng, 100, 5, 2.0);
  auto trained = TrainLogReg(data, TrainOptions{.lambda = 0.01, .seed = 3});
  ASSERT_TRUE(trained.ok());
  const auto dir = testing::MakeTempDir("logreg");
  ASSERT_TRUE(trained->first.Save(dir / "m.json").ok());
  auto loaded = LogRegModel::Load(dir / "m.json");
  ASSERT_TRUE(loaded.ok()) << loaded.status();
  EXPECT_EQ(loaded->weights, trained->first.weights);
  EXPECT_EQ(loaded->bias, trained->first.bias);
  EXPECT_EQ(loaded->standardizer.means, trained->first.standardizer.means);
  EXPECT_EQ(loaded->standardizer.stds, trained->first.standardizer.stds);
  EXPECT_EQ(loaded->seed, 3u);
  ASSERT_TRUE(loaded->Save(dir / "again.json").ok());
  EXPECT_EQ(*ReadFile(dir / "m.json"), *ReadFile(dir / "again.json"));
  for (const auto& row : data) {
    EXPECT_EQ(Predict(*loaded, row.x)->probability,
              Predict(trained->first, row.x)->probability);
  }
}

TEST(LogRegModelTest, RejectsInconsistentFiles) {
  LogRegModel model;
  model.weights = {1.0, 2.0};  // default config expects five
  model.standardizer = {{0.0, 0.0}, {1.0, 1.0}};
  EXPECT_FALSE(
      LogRegModel::FromJson(nlohmann::json::parse(model.ToJson().dump())).ok());
  EXPECT_FALSE(LogRegModel::FromJson(nlohmann::json::object()).ok());
  EXPECT_EQ(LogRegModel::Load("/nonexistent/model.json").status().code(),
            absl::StatusCode::kNotFound);
}

TEST(StratifiedFoldsTest, BalancedAndDeterministic) {
  std::vector<int> labels;
  for (int i = 0; i < 53; ++i) labels.push_back(i % 3 == 0 ? 1 : 0);
  auto a = StratifiedFolds(labels, 5, 11);
  auto b = StratifiedFolds(labels, 5, 11);
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_EQ(*a, *b);
  for (int cls : {0, 1}) {
    std::vector<int> per_fold(5, 0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == cls) ++per_fold[(*a)[i]];
    }
    const auto [lo, hi] = std::minmax_element(per_fold.begin(), per_fold.end());
    EXPECT_LE(*hi - *lo, 1);
    EXPECT_GE(*lo, 1);
  }
}

TEST(StratifiedFoldsTest, TooFewOfAClassIsAnError) {
  const std::vector<int> labels = {0, 0, 0, 0, 0, 1, 1, 1};
  EXPECT_EQ(StratifiedFolds(labels, 5, 1).status().code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_FALSE(StratifiedFolds(labels, 1, 1).ok());
}

TEST(GridSearchTest, SingletonGridChoosesIt) {
  Rng rng(8);
  const auto data = Blobs(rng, 60, 2, 2.0);
  auto result = GridSearch(data, GridOptions{.lambdas = {0.3}});
  ASSERT_TRUE(result.ok()) << result.status();
  EXPECT_EQ(result->chosen_lambda, 0.3);
  ASSERT_EQ(result->scores.size(), 1u);
}

TEST(GridSearchTest, HugePenaltyLoses) {
  Rng rng(9);
  const auto data = Blobs(rng, 200, 3, 3.0);
  auto result = GridSearch(data, GridOptions{.lambdas = {0.0, 1e6}});
  ASSERT_TRUE(result.ok()) << result.status();
  EXPECT_EQ(result->chosen_lambda, 0.0);
  EXPECT_GT(result->scores[0].second, result->scores[1].second);
}

TEST(GridSearchTest, TiesPreferLargerLambda) {
  // Perfectly separated data: every small penalty scores 1.0.
  std::vector<LabeledVector> data;
  for (int i = 0; i < 20; ++i) {
    data.push_back({{static_cast<double>(i % 2 ? 10 + i : -10 - i)}, i % 2});
  }
  auto result = GridSearch(data, GridOptions{.lambdas = {1e-4, 1e-2}});
  ASSERT_TRUE(result.ok());
  EXPECT_EQ(result->scores[0].second, result->scores[1].second);
  EXPECT_EQ(result->chosen_lambda, 1e-2);
}

TEST(GridSearchTest, DeterministicUnderSeed) {
  Rng rng(10);
  const auto data = Blobs(rng, 120, 3, 1.0);
  GridOptions options;
  options.seed = 99;
  auto a = GridSearch(data, options);
  auto b = GridSearch(data, options);
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_EQ(a->ToJson().dump(), b->ToJson().dump());
  EXPECT_EQ(a->fold_of, b->fold_of);
}

TEST(GridSearchTest, SmallClassIsAnError) {
  Rng rng(12);
  auto data = Blobs(rng, 40, 2, 1.0);
  for (std::size_t i = 0; i < data.size(); ++i) data[i].label = i < 3 ? 1 : 0;
  EXPECT_FALSE(GridSearch(data, GridOptions{}).ok());
}

TEST(TrainLogRegTest, InvariantToAffineFeatureScaling) {
  Rng rng(13);
  const auto data = Blobs(rng, 150, 3, 1.5);
  auto scaled = data;
  for (auto& row : scaled) {
    row.x[0] = 1000.0 * row.x[0] + 5.0;
    row.x[2] = 0.001 * row.x[2] - 2.0;
  }
  auto a = TrainLogReg(data, TrainOptions{.lambda = 0.01});
  auto b = TrainLogReg(scaled, TrainOptions{.lambda = 0.01});
  ASSERT_TRUE(a.ok() && b.ok());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto pa = *Predict(a->first, data[i].x);
    const auto pb = *Predict(b->first, scaled[i].x);
    EXPECT_NEAR(pa.probability, pb.probability, 1e-7);
  }
}

TEST(TrainLogRegTest, LabelSwapMirrorsProbabilities) {
  Rng rng(14);
  const auto data = Blobs(rng, 150, 4, 1.2);
  auto swapped = data;
  for (auto& row : swapped) row.label = 1 - row.label;
  auto a = TrainLogReg(data, TrainOptions{.lambda = 0.05});
  auto b = TrainLogReg(swapped, TrainOptions{.lambda = 0.05});
  ASSERT_TRUE(a.ok() && b.ok());
  for (std::size_t j = 0; j < a->first.weights.size(); ++j) {
    EXPECT_NEAR(a->first.weights[j], -b->first.weights[j], 1e-7);
  }
  for (const auto& row : data) {
    EXPECT_NEAR(Predict(a->first, row.x)->probability,
                1.0 - Predict(b->first, row.x)->probability, 1e-7);
  }
}

}  // namespace
}  // namespace hc3detect
