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

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "hc3detect/metrics.h"
#include "hc3detect/random.h"

namespace hc3detect {

using nlohmann::json;

namespace {

constexpr std::string_view kModelFormat = "hc3detect-logreg";
constexpr int kModelVersion = 1;

// log(1 + exp(z)) without overflow.
double Softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double Sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

absl::Status CheckData(std::span<const LabeledVector> data) {
  if (data.empty()) return absl::InvalidArgumentError("no training data");
  const std::size_t dim = data[0].x.size();
  if (dim == 0) return absl::InvalidArgumentError("zero-dimensional features");
  bool has[2] = {false, false};
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i].x.size() != dim) {
      return absl::InvalidArgumentError(absl::StrCat(
          "dimension mismatch at row ", i, ": ", data[i].x.size(), " vs ", dim));
    }
    if (data[i].label != 0 && data[i].label != 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", i, ": label must be 0 or 1"));
    }
    for (double v : data[i].x) {
      if (!std::isfinite(v)) {
        return absl::InvalidArgumentError(
            absl::StrCat("row ", i, ": non-finite feature value"));
      }
    }
    has[data[i].label] = true;
  }
  if (!has[0] || !has[1]) {
    return absl::InvalidArgumentError(
        "training data must contain both labels");
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Standardizer> Standardizer::Fit(
    std::span<const LabeledVector> data) {
  if (data.empty()) return absl::InvalidArgumentError("no data to standardize");
  const std::size_t dim = data[0].x.size();
  Standardizer s;
  s.means.assign(dim, 0.0);
  s.stds.assign(dim, 0.0);
  for (const LabeledVector& row : data) {
    if (row.x.size() != dim) {
      return absl::InvalidArgumentError("dimension mismatch");
    }
    for (std::size_t j = 0; j < dim; ++j) s.means[j] += row.x[j];
  }
  const double n = static_cast<double>(data.size());
  for (double& m : s.means) m /= n;
  for (const LabeledVector& row : data) {
    for (std::size_t j = 0; j < dim; ++j) {
      const double d = row.x[j] - s.means[j];
      s.stds[j] += d * d;
    }
  }
  for (double& sd : s.stds) {
    sd = std::sqrt(sd / n);
    if (!(sd > 0.0)) sd = 1.0;
  }
  return s;
}

std::vector<double> Standardizer::Transform(std::span<const double> x) const {
  std::vector<double> z(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) z[j] = (x[j] - means[j]) / stds[j];
  return z;
}

LogisticObjective::LogisticObjective(std::vector<double> rows,
                                     std::size_t dimension,
                                     std::vector<int> labels, double lambda)
    : rows_(std::move(rows)),
      dimension_(dimension),
      labels_(std::move(labels)),
      lambda_(lambda) {}

double LogisticObjective::Value(std::span<const double> w, double b) const {
  double loss = 0.0;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const double* x = rows_.data() + i * dimension_;
    double z = b;
    for (std::size_t j = 0; j < dimension_; ++j) z += w[j] * x[j];
    loss += Softplus(z) - (labels_[i] == 1 ? z : 0.0);
  }
  double reg = 0.0;
  for (double wj : w) reg += wj * wj;
  return loss / static_cast<double>(labels_.size()) + 0.5 * lambda_ * reg;
}

double LogisticObjective::ValueAndGradient(std::span<const double> w, double b,
                                           std::vector<double>& grad_w,
                                           double& grad_b) const {
  grad_w.assign(dimension_, 0.0);
  grad_b = 0.0;
  double loss = 0.0;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const double* x = rows_.data() + i * dimension_;
    double z = b;
    for (std::size_t j = 0; j < dimension_; ++j) z += w[j] * x[j];
    const double y = labels_[i] == 1 ? 1.0 : 0.0;
    loss += Softplus(z) - y * z;
    const double r = Sigmoid(z) - y;
    for (std::size_t j = 0; j < dimension_; ++j) grad_w[j] += r * x[j];
    grad_b += r;
  }
  const double n = static_cast<double>(labels_.size());
  double reg = 0.0;
  for (std::size_t j = 0; j < dimension_; ++j) {
    grad_w[j] = grad_w[j] / n + lambda_ * w[j];
    reg += w[j] * w[j];
  }
  grad_b /= n;
  return loss / n + 0.5 * lambda_ * reg;
}

absl::StatusOr<std::pair<LogRegModel, TrainReport>> TrainLogReg(
    std::span<const LabeledVector> data, const TrainOptions& options) {
  if (auto s = CheckData(data); !s.ok()) return s;
  if (!(options.lambda >= 0.0) || !std::isfinite(options.lambda)) {
    return absl::InvalidArgumentError("lambda must be >= 0");
  }
  if (!(options.threshold > 0.0 && options.threshold < 1.0)) {
    return absl::InvalidArgumentError("threshold must be in (0, 1)");
  }
  auto standardizer = Standardizer::Fit(data);
  if (!standardizer.ok()) return standardizer.status();
  const std::size_t dim = data[0].x.size();
  std::vector<double> rows;
  rows.reserve(data.size() * dim);
  std::vector<int> labels;
  labels.reserve(data.size());
  for (const LabeledVector& row : data) {
    const auto z = standardizer->Transform(row.x);
    rows.insert(rows.end(), z.begin(), z.end());
    labels.push_back(row.label);
  }
  const LogisticObjective objective(std::move(rows), dim, std::move(labels),
                                    options.lambda);

  std::vector<double> w(dim, 0.0);
  double b = 0.0;
  std::vector<double> grad_w;
  double grad_b = 0.0;
  std::vector<double> trial_w(dim);
  double loss = objective.ValueAndGradient(w, b, grad_w, grad_b);

  TrainReport report;
  report.chosen_lambda = options.lambda;
  report.max_iters = options.max_iters;
  report.tol = options.tol;
  report.loss_history.push_back(loss);
  constexpr double kArmijo = 1e-4;
  constexpr double kMinStep = 1e-20;
  double step = 1.0;
  int iter = 0;
  for (; iter < options.max_iters; ++iter) {
    double grad_inf = std::abs(grad_b);
    double grad_sq = grad_b * grad_b;
    for (double g : grad_w) {
      grad_inf = std::max(grad_inf, std::abs(g));
      grad_sq += g * g;
    }
    if (grad_inf < options.tol) {
      report.converged = true;
      break;
    }
    // Start each line search a little above the last accepted step.
    step = std::min(step * 2.0, 1e6);
    double trial_loss = 0.0;
    while (true) {
      for (std::size_t j = 0; j < dim; ++j) trial_w[j] = w[j] - step * grad_w[j];
      const double trial_b = b - step * grad_b;
      trial_loss = objective.Value(trial_w, trial_b);
      if (trial_loss <= loss - kArmijo * step * grad_sq) {
        w.swap(trial_w);
        b = trial_b;
        break;
      }
      step *= 0.5;
      if (step < kMinStep) break;
    }
    if (step < kMinStep) break;  // no further decrease is representable
    loss = objective.ValueAndGradient(w, b, grad_w, grad_b);
    report.loss_history.push_back(loss);
  }
  report.iterations = iter;
  report.final_loss = loss;

  LogRegModel model;
  model.weights = std::move(w);
  model.bias = b;
  model.lambda = options.lambda;
  model.standardizer = *std::move(standardizer);
  model.threshold = options.threshold;
  model.seed = options.seed;
  model.feature_config = options.feature_config;
  return std::make_pair(std::move(model), std::move(report));
}

absl::StatusOr<Prediction> Predict(const LogRegModel& model,
                                   std::span<const double> x) {
  if (x.size() != model.weights.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("feature dimension mismatch: model expects ",
                     model.weights.size(), ", got ", x.size()));
  }
  const auto z = model.standardizer.Transform(x);
  double score = model.bias;
  for (std::size_t j = 0; j < z.size(); ++j) score += model.weights[j] * z[j];
  Prediction prediction;
  prediction.probability = Sigmoid(score);
  prediction.label = prediction.probability >= model.threshold ? 1 : 0;
  return prediction;
}

absl::StatusOr<std::vector<int>> StratifiedFolds(std::span<const int> labels,
                                                 int folds, uint64_t seed) {
  if (folds < 2) return absl::InvalidArgumentError("folds must be >= 2");
  std::vector<int> fold_of(labels.size(), -1);
  Rng rng(seed);
  for (int cls : {0, 1}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == cls) members.push_back(i);
    }
    if (members.size() < static_cast<std::size_t>(folds)) {
      return absl::FailedPreconditionError(absl::StrCat(
          "class ", cls, " has ", members.size(), " sample(s); fold ",
          members.size(), " of ", folds, " would miss it"));
    }
    rng.Shuffle(std::span(members));
    for (std::size_t k = 0; k < members.size(); ++k) {
      fold_of[members[k]] = static_cast<int>(k % static_cast<std::size_t>(folds));
    }
  }
  return fold_of;
}

absl::StatusOr<GridResult> GridSearch(std::span<const LabeledVector> data,
                                      const GridOptions& options) {
  if (options.lambdas.empty()) {
    return absl::InvalidArgumentError("lambda grid is empty");
  }
  if (auto s = CheckData(data); !s.ok()) return s;
  std::vector<int> labels;
  for (const LabeledVector& row : data) labels.push_back(row.label);
  auto folds = StratifiedFolds(labels, options.folds, options.seed);
  if (!folds.ok()) return folds.status();

  GridResult result;
  result.fold_of = *folds;
  double best = -1.0;
  for (double lambda : options.lambdas) {
    TrainOptions train = options.base;
    train.lambda = lambda;
    double total = 0.0;
    for (int k = 0; k < options.folds; ++k) {
      std::vector<LabeledVector> fit;
      std::vector<const LabeledVector*> held;
      for (std::size_t i = 0; i < data.size(); ++i) {
        if (result.fold_of[i] == k) {
          held.push_back(&data[i]);
        } else {
          fit.push_back(data[i]);
        }
      }
      auto trained = TrainLogReg(fit, train);
      if (!trained.ok()) return trained.status();
      std::vector<int> predicted;
      std::vector<int> truth;
      for (const LabeledVector* row : held) {
        auto p = Predict(trained->first, row->x);
        if (!p.ok()) return p.status();
        predicted.push_back(p->label);
        truth.push_back(row->label);
      }
      auto f1 = ComputeF1(predicted, truth);
      if (!f1.ok()) return f1.status();
      total += f1->macro_f1;
    }
    const double mean = total / options.folds;
    result.scores.emplace_back(lambda, mean);
    if (mean > best || (mean == best && lambda > result.chosen_lambda)) {
      best = mean;
      result.chosen_lambda = lambda;
    }
  }
  return result;
}

nlohmann::ordered_json TrainReport::ToJson() const {
  nlohmann::ordered_json v;
  v["final_loss"] = final_loss;
  v["iterations"] = iterations;
  v["converged"] = converged;
  v["chosen_lambda"] = chosen_lambda;
  if (std::isnan(validation_f1)) {
    v["validation_f1"] = nullptr;
  } else {
    v["validation_f1"] = validation_f1;
  }
  v["max_iters"] = max_iters;
  v["tol"] = tol;
  return v;
}

nlohmann::ordered_json GridResult::ToJson() const {
  nlohmann::ordered_json v;
  v["chosen_lambda"] = chosen_lambda;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& [lambda, f1] : scores) {
    rows.push_back({{"lambda", lambda}, {"macro_f1", f1}});
  }
  v["scores"] = rows;
  return v;
}

nlohmann::ordered_json LogRegModel::ToJson() const {
  nlohmann::ordered_json v;
  v["format"] = kModelFormat;
  v["version"] = kModelVersion;
  v["feature_config"] = feature_config.ToJson();
  v["standardizer"] = {{"means", standardizer.means},
                       {"stds", standardizer.stds}};
  v["weights"] = weights;
  v["bias"] = bias;
  v["lambda"] = lambda;
  v["seed"] = seed;
  v["threshold"] = threshold;
  return v;
}

absl::StatusOr<LogRegModel> LogRegModel::FromJson(const json& v) {
  if (!v.is_object() || v.value("format", "") != kModelFormat) {
    return absl::InvalidArgumentError("not a logistic-regression model file");
  }
  if (v.value("version", 0) != kModelVersion) {
    return absl::InvalidArgumentError("unsupported model file version");
  }
  LogRegModel model;
  try {
    auto config = FeatureConfig::FromJson(v.at("feature_config"));
    if (!config.ok()) return config.status();
    model.feature_config = *config;
    model.standardizer.means =
        v.at("standardizer").at("means").get<std::vector<double>>();
    model.standardizer.stds =
        v.at("standardizer").at("stds").get<std::vector<double>>();
    model.weights = v.at("weights").get<std::vector<double>>();
    model.bias = v.at("bias").get<double>();
    model.lambda = v.at("lambda").get<double>();
    model.seed = v.at("seed").get<uint64_t>();
    model.threshold = v.at("threshold").get<double>();
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed model file: ", e.what()));
  }
  const std::size_t dim = model.weights.size();
  if (dim != model.feature_config.Dimension() ||
      model.standardizer.means.size() != dim ||
      model.standardizer.stds.size() != dim) {
    return absl::InvalidArgumentError(
        "model weights, standardizer and feature_config disagree on "
        "dimension");
  }
  for (double sd : model.standardizer.stds) {
    if (!(sd > 0.0)) {
      return absl::InvalidArgumentError("standardizer scales must be > 0");
    }
  }
  if (!(model.threshold > 0.0 && model.threshold < 1.0)) {
    return absl::InvalidArgumentError("threshold must be in (0, 1)");
  }
  return model;
}

absl::Status LogRegModel::Save(const std::filesystem::path& path) const {
  return WriteFile(path, ToJson().dump(2) + "\n");
}

absl::StatusOr<LogRegModel> LogRegModel::Load(
    const std::filesystem::path& path) {
  auto content = ReadFile(path);
  if (!content.ok()) return content.status();
  json v = json::parse(*content, nullptr, /*allow_exceptions=*/false);
  if (v.is_discarded()) {
    return absl::InvalidArgumentError(
        absl::StrCat("model file ", path.string(), " is not valid JSON"));
  }
  return FromJson(v);
}

}  // namespace hc3detect
