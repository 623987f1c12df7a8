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

#include "hc3detect/metrics.h"

#include "absl/strings/str_cat.h"

namespace hc3detect {

ClassScores ScoresFor(const ConfusionCounts& c) {
  ClassScores s;
  s.support = c.tp + c.fn;
  const int64_t predicted = c.tp + c.fp;
  if (predicted > 0) {
    s.precision = static_cast<double>(c.tp) / static_cast<double>(predicted);
  } else {
    s.zero_division = true;
  }
  if (s.support > 0) {
    s.recall = static_cast<double>(c.tp) / static_cast<double>(s.support);
  } else {
    s.zero_division = true;
  }
  const double denom = s.precision + s.recall;
  s.f1 = denom > 0.0 ? 2.0 * s.precision * s.recall / denom : 0.0;
  return s;
}

F1Report ReportFromCounts(const ConfusionCounts& counts) {
  F1Report report;
  report.counts = counts;
  report.chatgpt = ScoresFor(counts);
  report.human = ScoresFor(counts.Swapped());
  report.macro_f1 = 0.5 * (report.chatgpt.f1 + report.human.f1);
  return report;
}

absl::StatusOr<ConfusionCounts> Confusion(std::span<const int> predictions,
                                          std::span<const int> labels) {
  if (predictions.size() != labels.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("prediction/label length mismatch: ", predictions.size(),
                     " vs ", labels.size()));
  }
  if (labels.empty()) {
    return absl::InvalidArgumentError("no samples to evaluate");
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int p = predictions[i];
    const int y = labels[i];
    if ((p != 0 && p != 1) || (y != 0 && y != 1)) {
      return absl::InvalidArgumentError(
          absl::StrCat("entry ", i, ": labels must be 0 or 1"));
    }
    if (p == 1 && y == 1) ++c.tp;
    if (p == 1 && y == 0) ++c.fp;
    if (p == 0 && y == 1) ++c.fn;
    if (p == 0 && y == 0) ++c.tn;
  }
  return c;
}

absl::StatusOr<F1Report> ComputeF1(std::span<const int> predictions,
                                   std::span<const int> labels) {
  auto counts = Confusion(predictions, labels);
  if (!counts.ok()) return counts.status();
  return ReportFromCounts(*counts);
}

nlohmann::ordered_json F1Report::ToJson() const {
  auto scores = [](const ClassScores& s) {
    nlohmann::ordered_json v;
    v["precision"] = s.precision;
    v["recall"] = s.recall;
    v["f1"] = s.f1;
    v["support"] = s.support;
    v["zero_division"] = s.zero_division;
    return v;
  };
  nlohmann::ordered_json v;
  v["f1_chatgpt"] = chatgpt.f1;
  v["f1_human"] = human.f1;
  v["macro_f1"] = macro_f1;
  v["chatgpt"] = scores(chatgpt);
  v["human"] = scores(human);
  v["confusion"] = {{"tp", counts.tp}, {"fp", counts.fp},
                    {"fn", counts.fn}, {"tn", counts.tn}};
  return v;
}

}  // namespace hc3detect
