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

#ifndef HC3DETECT_TOKEN_SCORER_H_
#define HC3DETECT_TOKEN_SCORER_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "hc3detect/corpus.h"
#include "hc3detect/language_model.h"

namespace hc3detect {

// Source of per-token log-probabilities and ranks for a text, optionally
// conditioned on a context that produces no output entries. Implementations
// are safe to call from several threads at once.
class TokenScorer {
 public:
  virtual ~TokenScorer() = default;

  virtual absl::StatusOr<std::vector<RankedToken>> Score(
      std::string_view text,
      std::optional<std::string_view> context) const = 0;

  // Scores the concatenation of `segments` as one text and returns one
  // stream per segment. Backends that cannot attribute tokens to segments
  // return Unimplemented.
  virtual absl::StatusOr<std::vector<std::vector<RankedToken>>> ScoreSegments(
      std::span<const std::string> segments) const;

  // Short backend tag written into manifests, e.g. "ngram" or "bridge".
  virtual std::string Describe() const = 0;
};

// Scores with an in-process ProbabilityModel and the rule tokenizer.
class ModelScorer : public TokenScorer {
 public:
  ModelScorer(const ProbabilityModel& model, Language language,
              std::string tag = "ngram")
      : model_(model), language_(language), tag_(std::move(tag)) {}

  absl::StatusOr<std::vector<RankedToken>> Score(
      std::string_view text,
      std::optional<std::string_view> context) const override;

  absl::StatusOr<std::vector<std::vector<RankedToken>>> ScoreSegments(
      std::span<const std::string> segments) const override;

  std::string Describe() const override { return tag_; }

 private:
  const ProbabilityModel& model_;
  Language language_;
  std::string tag_;
};

}  // namespace hc3detect

#endif  // HC3DETECT_TOKEN_SCORER_H_
