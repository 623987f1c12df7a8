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

// Train-version x test-version evaluation matrix and per-source reports.

#ifndef HC3DETECT_EXPERIMENT_H_
#define HC3DETECT_EXPERIMENT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "hc3detect/features.h"
#include "hc3detect/logistic_regression.h"
#include "hc3detect/metrics.h"
#include "hc3detect/token_scorer.h"
#include "hc3detect/variants.h"
#include "json.hpp"

namespace hc3detect {

struct PipelineConfig {
  FeatureConfig features;
  GridOptions grid;  // grid.base carries max_iters, tol and threshold
  uint64_t seed = 0;
  int jobs = 1;
  std::string model_tag = "gltr-logreg";

  nlohmann::ordered_json ToJson() const;
};

struct DetectorFit {
  LogRegModel model;
  TrainReport report;
  GridResult grid;
};

std::vector<LabeledVector> ToLabeledVectors(
    std::span<const FeatureRecord> records, const FeatureConfig& config);

// Grid search over the configured lambdas, then a final fit on all rows
// with the chosen lambda. `stage` names the seed stream.
absl::StatusOr<DetectorFit> FitDetector(std::span<const FeatureRecord> records,
                                        const PipelineConfig& config,
                                        std::string_view stage);

// Fails with "config mismatch" when the records were extracted in a
// different QA mode than the model expects.
absl::StatusOr<std::vector<Prediction>> PredictRecords(
    const LogRegModel& model, std::span<const FeatureRecord> records);

absl::StatusOr<F1Report> EvaluateRecords(const LogRegModel& model,
                                         std::span<const FeatureRecord> records);

struct MatrixRow {
  VersionSpec train;
  double chosen_lambda = 0.0;
  double validation_f1 = 0.0;
  int64_t train_size = 0;
  std::map<VersionSpec, F1Report> cells;  // absent cells are missing keys
  // Mean macro F1 over the present cells.
  double average = 0.0;
};

struct MatrixReport {
  std::string model_tag;
  std::string language;
  std::vector<VersionSpec> columns;
  std::vector<MatrixRow> rows;
  std::vector<std::string> warnings;
  // Final model per train version; not serialized.
  std::map<VersionSpec, LogRegModel> models;

  const F1Report* Cell(const VersionSpec& train, const VersionSpec& test) const;

  nlohmann::ordered_json ToJson() const;
  // Rows "Train" by columns "Test" of macro F1 in percent, plus the row
  // average.
  std::string ToMarkdown() const;
  // One row per (train, test, class) with class in {human, chatgpt, macro}.
  std::string ToCsv() const;
};

// For every requested version with a bundle: featurize the train split,
// grid-search and fit one model, and evaluate it on the test split of
// every present version. Missing bundles and untrainable splits leave
// cells absent and add a warning. Samples shared between versions are
// scored once.
absl::StatusOr<MatrixReport> RunMatrix(
    const BundleMap& bundles, const TokenScorer& scorer,
    const PipelineConfig& config,
    std::span<const VersionSpec> versions = AllVersions());

struct SourceGroup {
  std::string source;
  Granularity granularity = Granularity::kFull;
  F1Report report;
};

struct SourceBreakdown {
  std::vector<SourceGroup> groups;  // ordered by (source, granularity)
  F1Report overall;
  std::vector<std::string> warnings;

  nlohmann::ordered_json ToJson() const;
  std::string ToMarkdown() const;
  std::string ToCsv() const;
};

// Sources listed in `expected_sources` that have no records are reported
// in the warnings.
absl::StatusOr<SourceBreakdown> BreakdownBySource(
    const LogRegModel& model, std::span<const FeatureRecord> records,
    std::span<const std::string> expected_sources = {});

}  // namespace hc3detect

#endif  // HC3DETECT_EXPERIMENT_H_
