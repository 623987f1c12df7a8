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

#include "hc3detect/token_scorer.h"

#include "hc3detect/tokenizer.h"

namespace hc3detect {

absl::StatusOr<std::vector<std::vector<RankedToken>>>
TokenScorer::ScoreSegments(std::span<const std::string> /*segments*/) const {
  return absl::UnimplementedError(
      "backend cannot attribute tokens to segments");
}

absl::StatusOr<std::vector<RankedToken>> ModelScorer::Score(
    std::string_view text, std::optional<std::string_view> context) const {
  return RankTokens(model_, text, context, language_);
}

absl::StatusOr<std::vector<std::vector<RankedToken>>>
ModelScorer::ScoreSegments(std::span<const std::string> segments) const {
  std::vector<std::string> tokens;
  std::vector<std::size_t> sizes;
  for (const std::string& segment : segments) {
    auto segment_tokens = Tokenize(segment, language_);
    sizes.push_back(segment_tokens.size());
    tokens.insert(tokens.end(), segment_tokens.begin(), segment_tokens.end());
  }
  auto ranked = RankTokenSequence(model_, tokens, {});
  if (!ranked.ok()) return ranked.status();
  std::vector<std::vector<RankedToken>> out;
  std::size_t pos = 0;
  for (std::size_t size : sizes) {
    out.emplace_back(ranked->begin() + static_cast<std::ptrdiff_t>(pos),
                     ranked->begin() + static_cast<std::ptrdiff_t>(pos + size));
    pos += size;
  }
  return out;
}

}  // namespace hc3detect
