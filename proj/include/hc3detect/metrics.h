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

#ifndef HC3DETECT_METRICS_H_
#define HC3DETECT_METRICS_H_

#include <cstdint>
#include <span>

#include "absl/status/statusor.h"
#include "json.hpp"

namespace hc3detect {

// Binary confusion counts with label 1 (ChatGPT) as the positive class.
struct ConfusionCounts {
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn = 0;
  int64_t tn = 0;

  int64_t total() const { return tp + fp + fn + tn; }
  // The same predictions seen with label 0 as the positive class.
  ConfusionCounts Swapped() const { return {tn, fn, fp, tp}; }

  friend bool operator==(const ConfusionCounts&,
                         const ConfusionCounts&) = default;
};

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  int64_t support = 0;
  // Set when precision or recall had a zero denominator (scored as 0).
  bool zero_division = false;
};

struct F1Report {
  ClassScores chatgpt;  // positive class 1
  ClassScores human;    // positive class 0
  double macro_f1 = 0.0;
  ConfusionCounts counts;

  nlohmann::ordered_json ToJson() const;
};

ClassScores ScoresFor(const ConfusionCounts& counts);
F1Report ReportFromCounts(const ConfusionCounts& counts);

// Labels and predictions must have equal, non-zero length and hold 0/1.
absl::StatusOr<ConfusionCounts> Confusion(std::span<const int> predictions,
                                          std::span<const int> labels);
absl::StatusOr<F1Report> ComputeF1(std::span<const int> predictions,
                                   std::span<const int> labels);

}  // namespace hc3detect

#endif  // HC3DETECT_METRICS_H_
