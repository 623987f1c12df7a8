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

#include "hc3detect/experiment.h"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "hc3detect/random.h"

namespace hc3detect {

namespace {

std::string CacheKey(const LabeledSample& sample, bool qa_mode) {
  std::string key(LanguageName(sample.language));
  key.push_back('\x1f');
  if (qa_mode && sample.question.has_value()) key += *sample.question;
  key.push_back('\x1f');
  key += sample.text;
  return key;
}

using FeatureCache = std::unordered_map<std::string, GltrFeatureVector>;

std::vector<FeatureRecord> FromCache(std::span<const LabeledSample> samples,
                                     const FeatureCache& cache, bool qa_mode) {
  std::vector<FeatureRecord> out;
  out.reserve(samples.size());
  for (const LabeledSample& s : samples) {
    FeatureRecord r;
    r.sample_id = s.sample_id;
    r.label = s.label;
    r.source = s.source;
    r.granularity = s.granularity;
    r.qa_mode = qa_mode;
    r.features = cache.at(CacheKey(s, qa_mode));
    out.push_back(std::move(r));
  }
  return out;
}

nlohmann::ordered_json VersionList(std::span<const VersionSpec> versions) {
  nlohmann::ordered_json v = nlohmann::ordered_json::array();
  for (const VersionSpec& s : versions) v.push_back(s.Name());
  return v;
}

void AppendCsvRows(std::string& out, std::string_view prefix,
                   const F1Report& report) {
  auto row = [&](std::string_view cls, double p, double r, double f1,
                 int64_t support) {
    absl::StrAppendFormat(&out, "%s,%s,%.6f,%.6f,%.6f,%d\n", std::string(prefix),
                          std::string(cls), p, r, f1, support);
  };
  row("human", report.human.precision, report.human.recall, report.human.f1,
      report.human.support);
  row("chatgpt", report.chatgpt.precision, report.chatgpt.recall,
      report.chatgpt.f1, report.chatgpt.support);
  const double mp = 0.5 * (report.human.precision + report.chatgpt.precision);
  const double mr = 0.5 * (report.human.recall + report.chatgpt.recall);
  row("macro", mp, mr, report.macro_f1, report.counts.total());
}

}  // namespace

nlohmann::ordered_json PipelineConfig::ToJson() const {
  nlohmann::ordered_json v;
  v["model_tag"] = model_tag;
  v["seed"] = seed;
  v["features"] = features.ToJson();
  v["lambdas"] = grid.lambdas;
  v["folds"] = grid.folds;
  v["max_iters"] = grid.base.max_iters;
  v["tol"] = grid.base.tol;
  v["threshold"] = grid.base.threshold;
  v["jobs"] = jobs;
  return v;
}

std::vector<LabeledVector> ToLabeledVectors(
    std::span<const FeatureRecord> records, const FeatureConfig& config) {
  std::vector<LabeledVector> out;
  out.reserve(records.size());
  for (const FeatureRecord& r : records) {
    out.push_back({ClassifierInput(r.features, config), r.label});
  }
  return out;
}

absl::StatusOr<DetectorFit> FitDetector(std::span<const FeatureRecord> records,
                                        const PipelineConfig& config,
                                        std::string_view stage) {
  for (const FeatureRecord& r : records) {
    if (r.qa_mode != config.features.qa_mode) {
      return absl::InvalidArgumentError(absl::StrCat(
          "config mismatch: features of ", r.sample_id,
          " were extracted with qa_mode=", r.qa_mode ? "true" : "false"));
    }
  }
  const std::vector<LabeledVector> data =
      ToLabeledVectors(records, config.features);
  GridOptions grid = config.grid;
  grid.seed = StageSeed(config.seed, absl::StrCat("grid/", std::string(stage)));
  grid.base.feature_config = config.features;
  grid.base.seed = config.seed;
  auto searched = GridSearch(data, grid);
  if (!searched.ok()) return searched.status();

  TrainOptions train = grid.base;
  train.lambda = searched->chosen_lambda;
  auto fitted = TrainLogReg(data, train);
  if (!fitted.ok()) return fitted.status();
  DetectorFit fit;
  fit.model = std::move(fitted->first);
  fit.report = std::move(fitted->second);
  for (const auto& [lambda, f1] : searched->scores) {
    if (lambda == searched->chosen_lambda) fit.report.validation_f1 = f1;
  }
  fit.grid = *std::move(searched);
  return fit;
}

absl::StatusOr<std::vector<Prediction>> PredictRecords(
    const LogRegModel& model, std::span<const FeatureRecord> records) {
  std::vector<Prediction> out;
  out.reserve(records.size());
  for (const FeatureRecord& r : records) {
    if (r.qa_mode != model.feature_config.qa_mode) {
      return absl::InvalidArgumentError(absl::StrCat(
          "config mismatch: model expects qa_mode=",
          model.feature_config.qa_mode ? "true" : "false", " but ",
          r.sample_id, " has qa_mode=", r.qa_mode ? "true" : "false"));
    }
    auto p = Predict(model, ClassifierInput(r.features, model.feature_config));
    if (!p.ok()) return p.status();
    out.push_back(*p);
  }
  return out;
}

absl::StatusOr<F1Report> EvaluateRecords(
    const LogRegModel& model, std::span<const FeatureRecord> records) {
  auto predictions = PredictRecords(model, records);
  if (!predictions.ok()) return predictions.status();
  std::vector<int> predicted;
  std::vector<int> labels;
  for (std::size_t i = 0; i < records.size(); ++i) {
    predicted.push_back((*predictions)[i].label);
    labels.push_back(records[i].label);
  }
  return ComputeF1(predicted, labels);
}

const F1Report* MatrixReport::Cell(const VersionSpec& train,
                                   const VersionSpec& test) const {
  for (const MatrixRow& row : rows) {
    if (row.train != train) continue;
    auto it = row.cells.find(test);
    return it == row.cells.end() ? nullptr : &it->second;
  }
  return nullptr;
}

absl::StatusOr<MatrixReport> RunMatrix(const BundleMap& bundles,
                                       const TokenScorer& scorer,
                                       const PipelineConfig& config,
                                       std::span<const VersionSpec> versions) {
  const bool qa = config.features.qa_mode;
  MatrixReport report;
  report.model_tag = config.model_tag;
  report.columns.assign(versions.begin(), versions.end());

  // Score every distinct sample once.
  std::set<Language> languages;
  FeatureCache cache;
  std::vector<LabeledSample> pending;
  for (const VersionSpec& v : versions) {
    auto it = bundles.find(v);
    if (it == bundles.end()) {
      report.warnings.push_back(
          absl::StrCat("missing bundle ", v.Name(), "; its cells are absent"));
      continue;
    }
    for (const auto* split : {&it->second.train, &it->second.test}) {
      for (const LabeledSample& s : *split) {
        languages.insert(s.language);
        if (cache.try_emplace(CacheKey(s, qa)).second) pending.push_back(s);
      }
    }
  }
  auto scored = FeaturizeSamples(pending, scorer, qa, config.jobs);
  if (!scored.ok()) return scored.status();
  for (std::size_t i = 0; i < pending.size(); ++i) {
    cache[CacheKey(pending[i], qa)] = (*scored)[i].features;
  }
  if (languages.size() == 1) {
    report.language = std::string(LanguageName(*languages.begin()));
  } else {
    report.language = languages.empty() ? "none" : "mixed";
  }

  for (const VersionSpec& train_version : versions) {
    auto train_it = bundles.find(train_version);
    if (train_it == bundles.end()) continue;
    const auto train_records = FromCache(train_it->second.train, cache, qa);
    auto fit = FitDetector(train_records, config, train_version.Name());
    if (!fit.ok()) {
      report.warnings.push_back(absl::StrCat(
          "cannot train on ", train_version.Name(), ": ", fit.status().message()));
      continue;
    }
    MatrixRow row;
    row.train = train_version;
    row.chosen_lambda = fit->report.chosen_lambda;
    row.validation_f1 = fit->report.validation_f1;
    row.train_size = static_cast<int64_t>(train_records.size());
    double sum = 0.0;
    for (const VersionSpec& test_version : versions) {
      auto test_it = bundles.find(test_version);
      if (test_it == bundles.end()) continue;
      if (test_it->second.test.empty()) {
        report.warnings.push_back(
            absl::StrCat("empty test split for ", test_version.Name()));
        continue;
      }
      const auto test_records = FromCache(test_it->second.test, cache, qa);
      auto f1 = EvaluateRecords(fit->model, test_records);
      if (!f1.ok()) return f1.status();
      sum += f1->macro_f1;
      row.cells.emplace(test_version, *f1);
    }
    if (!row.cells.empty()) {
      row.average = sum / static_cast<double>(row.cells.size());
    }
    if (row.cells.size() < versions.size()) {
      report.warnings.push_back(absl::StrCat(
          "row ", train_version.Name(), " averages ", row.cells.size(), " of ",
          versions.size(), " cells"));
    }
    report.models.emplace(train_version, std::move(fit->model));
    report.rows.push_back(std::move(row));
  }
  return report;
}

nlohmann::ordered_json MatrixReport::ToJson() const {
  nlohmann::ordered_json v;
  v["model_tag"] = model_tag;
  v["language"] = language;
  v["columns"] = VersionList(columns);
  nlohmann::ordered_json rows_json = nlohmann::ordered_json::array();
  for (const MatrixRow& row : rows) {
    nlohmann::ordered_json r;
    r["train"] = row.train.Name();
    r["chosen_lambda"] = row.chosen_lambda;
    r["validation_f1"] = row.validation_f1;
    r["train_size"] = row.train_size;
    nlohmann::ordered_json cells = nlohmann::ordered_json::object();
    for (const VersionSpec& c : columns) {
      auto it = row.cells.find(c);
      cells[c.Name()] =
          it == row.cells.end() ? nlohmann::ordered_json() : it->second.ToJson();
    }
    r["cells"] = cells;
    r["average"] = row.average;
    rows_json.push_back(r);
  }
  v["rows"] = rows_json;
  v["warnings"] = warnings;
  return v;
}

std::string MatrixReport::ToMarkdown() const {
  std::string out = absl::StrCat("Model: ", model_tag, " (", language,
                                 "), macro F1 %\n\n| Train \\ Test |");
  std::string rule = "|---|";
  for (const VersionSpec& c : columns) {
    absl::StrAppend(&out, " ", c.Name(), " |");
    rule += "---:|";
  }
  absl::StrAppend(&out, " avg |\n", rule, "---:|\n");
  for (const MatrixRow& row : rows) {
    absl::StrAppend(&out, "| ", row.train.Name(), " |");
    for (const VersionSpec& c : columns) {
      auto it = row.cells.find(c);
      if (it == row.cells.end()) {
        out += " n/a |";
      } else {
        absl::StrAppendFormat(&out, " %.2f |", 100.0 * it->second.macro_f1);
      }
    }
    absl::StrAppendFormat(&out, " %.2f |\n", 100.0 * row.average);
  }
  for (const std::string& w : warnings) absl::StrAppend(&out, "\nwarning: ", w);
  if (!warnings.empty()) out += "\n";
  return out;
}

std::string MatrixReport::ToCsv() const {
  std::string out = "train,test,class,precision,recall,f1,support\n";
  for (const MatrixRow& row : rows) {
    for (const VersionSpec& c : columns) {
      auto it = row.cells.find(c);
      if (it == row.cells.end()) continue;
      AppendCsvRows(out, absl::StrCat(row.train.Name(), ",", c.Name()),
                    it->second);
    }
  }
  return out;
}

absl::StatusOr<SourceBreakdown> BreakdownBySource(
    const LogRegModel& model, std::span<const FeatureRecord> records,
    std::span<const std::string> expected_sources) {
  auto predictions = PredictRecords(model, records);
  if (!predictions.ok()) return predictions.status();
  std::map<std::pair<std::string, Granularity>,
           std::pair<std::vector<int>, std::vector<int>>>
      groups;
  std::vector<int> all_pred;
  std::vector<int> all_labels;
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& g = groups[{records[i].source.name(), records[i].granularity}];
    g.first.push_back((*predictions)[i].label);
    g.second.push_back(records[i].label);
    all_pred.push_back((*predictions)[i].label);
    all_labels.push_back(records[i].label);
  }
  auto overall = ComputeF1(all_pred, all_labels);
  if (!overall.ok()) return overall.status();
  SourceBreakdown out;
  out.overall = *overall;
  std::set<std::string> seen;
  for (const auto& [key, pl] : groups) {
    auto f1 = ComputeF1(pl.first, pl.second);
    if (!f1.ok()) return f1.status();
    out.groups.push_back({key.first, key.second, *f1});
    seen.insert(key.first);
  }
  for (const std::string& s : expected_sources) {
    if (!seen.contains(s)) {
      out.warnings.push_back(absl::StrCat("no test samples for source ", s));
    }
  }
  return out;
}

nlohmann::ordered_json SourceBreakdown::ToJson() const {
  nlohmann::ordered_json v;
  nlohmann::ordered_json g = nlohmann::ordered_json::array();
  for (const SourceGroup& group : groups) {
    nlohmann::ordered_json e;
    e["source"] = group.source;
    e["granularity"] = GranularityName(group.granularity);
    e["report"] = group.report.ToJson();
    g.push_back(e);
  }
  v["groups"] = g;
  v["overall"] = overall.ToJson();
  v["warnings"] = warnings;
  return v;
}

std::string SourceBreakdown::ToMarkdown() const {
  std::string out =
      "| source | granularity | F1-hu | F1-ch | macro | support |\n"
      "|---|---|---:|---:|---:|---:|\n";
  auto line = [&](std::string_view source, std::string_view gran,
                  const F1Report& r) {
    absl::StrAppendFormat(&out, "| %s | %s | %.2f | %.2f | %.2f | %d |\n",
                          std::string(source), std::string(gran),
                          100.0 * r.human.f1, 100.0 * r.chatgpt.f1,
                          100.0 * r.macro_f1, r.counts.total());
  };
  for (const SourceGroup& g : groups) {
    line(g.source, GranularityName(g.granularity), g.report);
  }
  line("all", "all", overall);
  for (const std::string& w : warnings) absl::StrAppend(&out, "\nwarning: ", w);
  if (!warnings.empty()) out += "\n";
  return out;
}

std::string SourceBreakdown::ToCsv() const {
  std::string out = "source,granularity,class,precision,recall,f1,support\n";
  for (const SourceGroup& g : groups) {
    AppendCsvRows(out,
                  absl::StrCat(g.source, ",",
                               std::string(GranularityName(g.granularity))),
                  g.report);
  }
  AppendCsvRows(out, "all,all", overall);
  return out;
}

}  // namespace hc3detect
