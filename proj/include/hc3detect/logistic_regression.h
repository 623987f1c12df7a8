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

// Binary logistic regression trained by deterministic full-batch gradient
// descent, plus stratified k-fold selection of the L2 strength.

#ifndef HC3DETECT_LOGISTIC_REGRESSION_H_
#define HC3DETECT_LOGISTIC_REGRESSION_H_

#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "hc3detect/features.h"
#include "json.hpp"

namespace hc3detect {

struct LabeledVector {
  std::vector<double> x;
  int label = 0;
};

// Per-feature centering and scaling fitted on training data. Features with
// zero variance get a scale of 1.
struct Standardizer {
  std::vector<double> means;
  std::vector<double> stds;

  static absl::StatusOr<Standardizer> Fit(std::span<const LabeledVector> data);
  std::vector<double> Transform(std::span<const double> x) const;
};

struct LogRegModel {
  std::vector<double> weights;
  double bias = 0.0;
  double lambda = 0.0;
  Standardizer standardizer;
  double threshold = 0.5;
  uint64_t seed = 0;
  FeatureConfig feature_config;

  nlohmann::ordered_json ToJson() const;
  static absl::StatusOr<LogRegModel> FromJson(const nlohmann::json& json);
  absl::Status Save(const std::filesystem::path& path) const;
  static absl::StatusOr<LogRegModel> Load(const std::filesystem::path& path);
};

// Mean log-loss plus (lambda / 2) * |w|^2 over already standardized rows.
// The bias is not regularized.
class LogisticObjective {
 public:
  LogisticObjective(std::vector<double> rows, std::size_t dimension,
                    std::vector<int> labels, double lambda);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return labels_.size(); }

  double Value(std::span<const double> w, double b) const;
  // Returns the value and writes d/dw into `grad_w` and d/db into `grad_b`.
  double ValueAndGradient(std::span<const double> w, double b,
                          std::vector<double>& grad_w, double& grad_b) const;

 private:
  std::vector<double> rows_;  // row-major, size() x dimension()
  std::size_t dimension_;
  std::vector<int> labels_;
  double lambda_;
};

struct TrainOptions {
  double lambda = 0.0;
  uint64_t seed = 0;
  int max_iters = 10000;
  double tol = 1e-8;
  double threshold = 0.5;
  FeatureConfig feature_config;
};

struct TrainReport {
  double final_loss = 0.0;
  int iterations = 0;
  bool converged = false;
  double chosen_lambda = 0.0;
  double validation_f1 = std::numeric_limits<double>::quiet_NaN();
  int max_iters = 0;
  double tol = 0.0;
  // Objective value after each accepted step, starting at w = 0, b = 0.
  std::vector<double> loss_history;

  nlohmann::ordered_json ToJson() const;
};

// Gradient descent from w = 0, b = 0 with Armijo backtracking. Stops when
// the gradient infinity-norm drops below tol or after max_iters steps.
absl::StatusOr<std::pair<LogRegModel, TrainReport>> TrainLogReg(
    std::span<const LabeledVector> data, const TrainOptions& options);

struct Prediction {
  double probability = 0.5;
  int label = 0;
};

absl::StatusOr<Prediction> Predict(const LogRegModel& model,
                                   std::span<const double> x);

struct GridOptions {
  std::vector<double> lambdas = {0.0, 1e-4, 1e-3, 1e-2, 1e-1, 1.0};
  int folds = 5;
  uint64_t seed = 0;
  TrainOptions base;
};

struct GridResult {
  double chosen_lambda = 0.0;
  // (lambda, mean cross-validated macro F1) in input order.
  std::vector<std::pair<double, double>> scores;
  std::vector<int> fold_of;

  nlohmann::ordered_json ToJson() const;
};

// Stratified k-fold assignment: each class is shuffled with the seed and
// dealt round-robin across folds. Every fold must hold both classes.
absl::StatusOr<std::vector<int>> StratifiedFolds(std::span<const int> labels,
                                                 int folds, uint64_t seed);

// Picks the lambda with the best mean macro F1; ties go to the larger
// lambda.
absl::StatusOr<GridResult> GridSearch(std::span<const LabeledVector> data,
                                      const GridOptions& options);

}  // namespace hc3detect

#endif  // HC3DETECT_LOGISTIC_REGRESSION_H_
