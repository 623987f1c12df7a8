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

// Rank-bucket (GLTR Test-2) features and perplexity over ranked token
// streams.

#ifndef HC3DETECT_FEATURES_H_
#define HC3DETECT_FEATURES_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "hc3detect/corpus.h"
#include "hc3detect/language_model.h"
#include "hc3detect/token_scorer.h"
#include "json.hpp"

namespace hc3detect {

inline constexpr int kNumRankBuckets = 4;

// Buckets: rank 1-10 -> 0, 11-100 -> 1, 101-1000 -> 2, >1000 -> 3.
int RankBucket(int64_t rank);

struct GltrFeatureVector {
  std::array<int64_t, kNumRankBuckets> counts{};
  std::array<double, kNumRankBuckets> fractions{};
  int64_t token_count = 0;

  friend bool operator==(const GltrFeatureVector&,
                         const GltrFeatureVector&) = default;
};

absl::StatusOr<GltrFeatureVector> GltrFeatures(
    std::span<const RankedToken> ranked);

// Half-open token index range [begin, end).
struct TokenRange {
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct PerplexityReport {
  double text_ppl = 1.0;
  std::vector<double> sentence_ppls;
  int64_t token_count = 0;
  // Empty sentence ranges are skipped and counted here.
  int skipped_sentences = 0;
};

// exp(-mean logprob) over the whole stream and over each range. The ranges
// must tile [0, ranked.size()) in order.
absl::StatusOr<PerplexityReport> Perplexity(
    std::span<const RankedToken> ranked, std::span<const TokenRange> ranges);

// Text- and sentence-level perplexity of `text`. Sentences come from
// SplitSentences. When the backend can attribute tokens to segments the
// sentence values are slices of one scored stream; otherwise each sentence
// is scored on its own.
absl::StatusOr<PerplexityReport> TextPerplexity(const TokenScorer& scorer,
                                                std::string_view text,
                                                Language language);

enum class FeatureScale { kFractions, kCounts };

// How a GltrFeatureVector becomes classifier input.
struct FeatureConfig {
  FeatureScale scale = FeatureScale::kFractions;
  // Appends ln(token_count).
  bool length_feature = true;
  // Question is the left context when scoring the answer.
  bool qa_mode = false;

  std::size_t Dimension() const {
    return kNumRankBuckets + (length_feature ? 1 : 0);
  }
  // e.g. "fractions+length" or "counts+length+qa".
  std::string Descriptor() const;
  nlohmann::ordered_json ToJson() const;
  static absl::StatusOr<FeatureConfig> FromJson(const nlohmann::json& json);

  friend bool operator==(const FeatureConfig&, const FeatureConfig&) = default;
};

std::vector<double> ClassifierInput(const GltrFeatureVector& features,
                                    const FeatureConfig& config);

// Scores the sample text (conditioned on its question in QA mode) and
// buckets the ranks of the answer tokens.
absl::StatusOr<GltrFeatureVector> FeaturizeSample(const LabeledSample& sample,
                                                  const TokenScorer& scorer,
                                                  bool qa_mode);

// One line of a feature dump.
struct FeatureRecord {
  std::string sample_id;
  int label = 0;
  SourceSplit source;
  Granularity granularity = Granularity::kFull;
  bool qa_mode = false;
  GltrFeatureVector features;
};

// Featurizes samples with up to `jobs` worker threads; output order follows
// input order. Fails on the first sample that cannot be featurized.
absl::StatusOr<std::vector<FeatureRecord>> FeaturizeSamples(
    std::span<const LabeledSample> samples, const TokenScorer& scorer,
    bool qa_mode, int jobs = 1);

std::string SerializeFeatures(std::span<const FeatureRecord> records);
absl::StatusOr<std::vector<FeatureRecord>> ParseFeatures(
    std::string_view content);
absl::Status WriteFeatures(const std::filesystem::path& path,
                           std::span<const FeatureRecord> records);
absl::StatusOr<std::vector<FeatureRecord>> ReadFeatures(
    const std::filesystem::path& path);

}  // namespace hc3detect

#endif  // HC3DETECT_FEATURES_H_
