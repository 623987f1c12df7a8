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

#ifndef HC3DETECT_LANGUAGE_MODEL_H_
#define HC3DETECT_LANGUAGE_MODEL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "absl/status/statusor.h"
#include "hc3detect/corpus.h"

namespace hc3detect {

using TokenId = int32_t;

// Token ids 0..2 are reserved markers; the rest are corpus surfaces in
// byte order. Markers contain '<' and '>', which the tokenizer always
// splits off, so no corpus token can collide with them.
inline constexpr TokenId kUnkId = 0;
inline constexpr TokenId kBosId = 1;
inline constexpr TokenId kSepId = 2;
inline constexpr TokenId kNumReservedIds = 3;
// Placeholder id for tokens scored by an external backend.
inline constexpr TokenId kNoTokenId = -1;

class Vocabulary {
 public:
  Vocabulary();
  // Duplicates and reserved surfaces are ignored; surfaces are sorted.
  explicit Vocabulary(std::vector<std::string> surfaces);

  TokenId Lookup(std::string_view surface) const;
  const std::string& Surface(TokenId id) const { return surfaces_[id]; }
  std::size_t size() const { return surfaces_.size(); }
  const std::vector<std::string>& surfaces() const { return surfaces_; }

 private:
  std::vector<std::string> surfaces_;
  std::unordered_map<std::string, TokenId> ids_;
};

// A next-token distribution over a fixed vocabulary. Implementations must
// put non-zero mass on every token so log-probabilities are finite.
class ProbabilityModel {
 public:
  virtual ~ProbabilityModel() = default;

  virtual const Vocabulary& vocabulary() const = 0;

  // `history` is every id seen so far, starting with kBosId.
  virtual std::vector<double> Distribution(
      std::span<const TokenId> history) const = 0;

  virtual double LogProb(std::span<const TokenId> history,
                         TokenId next) const;

  // 1-based position of `next` when the distribution is ordered by
  // descending probability, ties by ascending id.
  virtual int64_t Rank(std::span<const TokenId> history, TokenId next) const;
};

// Every token has probability 1/V.
class UniformModel : public ProbabilityModel {
 public:
  explicit UniformModel(Vocabulary vocabulary)
      : vocabulary_(std::move(vocabulary)) {}

  const Vocabulary& vocabulary() const override { return vocabulary_; }
  std::vector<double> Distribution(
      std::span<const TokenId> history) const override;
  double LogProb(std::span<const TokenId> history,
                 TokenId next) const override;
  int64_t Rank(std::span<const TokenId> history, TokenId next) const override;

 private:
  Vocabulary vocabulary_;
};

struct RankedToken {
  std::string surface;
  TokenId token_id = kNoTokenId;
  double logprob = 0.0;  // natural log
  int64_t rank = 1;
};

// Ranks each token of `tokens` under `model`. The left context is the BOS
// marker, then, when `conditioning` is non-empty, the conditioning tokens
// followed by the separator marker. Conditioning tokens produce no output.
absl::StatusOr<std::vector<RankedToken>> RankTokenSequence(
    const ProbabilityModel& model, std::span<const std::string> tokens,
    std::span<const std::string> conditioning);

// Tokenizes `text` (and `conditioning`) with the rule tokenizer and ranks.
// An empty token stream is an InvalidArgument error.
absl::StatusOr<std::vector<RankedToken>> RankTokens(
    const ProbabilityModel& model, std::string_view text,
    std::optional<std::string_view> conditioning, Language language);

}  // namespace hc3detect

#endif  // HC3DETECT_LANGUAGE_MODEL_H_
