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

#ifndef HC3DETECT_NGRAM_MODEL_H_
#define HC3DETECT_NGRAM_MODEL_H_

#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "hc3detect/language_model.h"

namespace hc3detect {

// Add-k smoothed n-gram model. For a context seen in training,
//
//   p(w | ctx) = (count(ctx, w) + k) / (count(ctx) + k * V)
//
// where V counts every vocabulary entry including the reserved markers.
// Contexts never seen in training use the unigram distribution
// (count(w) + k) / (N + k * V) directly.
class NGramModel : public ProbabilityModel {
 public:
  const Vocabulary& vocabulary() const override { return vocabulary_; }
  std::vector<double> Distribution(
      std::span<const TokenId> history) const override;
  double LogProb(std::span<const TokenId> history,
                 TokenId next) const override;
  int64_t Rank(std::span<const TokenId> history, TokenId next) const override;

  int order() const { return order_; }
  double k() const { return k_; }
  Language language() const { return language_; }

  // Whether the (order - 1)-token context ending `history` was seen.
  bool HasContext(std::span<const TokenId> history) const;

  // Versioned text dump of order, k, language, vocabulary and counts.
  std::string Serialize() const;
  static absl::StatusOr<NGramModel> Deserialize(std::string_view dump);

  absl::Status Save(const std::filesystem::path& path) const;
  static absl::StatusOr<NGramModel> Load(const std::filesystem::path& path);

 private:
  friend absl::StatusOr<NGramModel> TrainNGram(
      std::span<const std::string> texts, int order, double k,
      Language language);

  struct Counts {
    int64_t total = 0;
    // Sorted by token id; every count is positive.
    std::vector<std::pair<TokenId, int64_t>> entries;

    int64_t Get(TokenId id) const;
  };

  NGramModel() = default;

  std::string ContextKey(std::span<const TokenId> history) const;
  const Counts& CountsFor(std::span<const TokenId> history) const;

  Vocabulary vocabulary_;
  int order_ = 1;
  double k_ = 1.0;
  Language language_ = Language::kEnglish;
  Counts unigram_;
  std::unordered_map<std::string, Counts> contexts_;
};

// Trains on `texts` tokenized with the rule tokenizer. Each text is padded
// on the left with order - 1 BOS markers; there is no end marker.
absl::StatusOr<NGramModel> TrainNGram(std::span<const std::string> texts,
                                      int order, double k, Language language);

}  // namespace hc3detect

#endif  // HC3DETECT_NGRAM_MODEL_H_
