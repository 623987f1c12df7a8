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

// Vocabulary statistics of answer collections: average length L, vocabulary
// size V and density D = 100 * V / (L * N).

#ifndef HC3DETECT_VOCAB_STATS_H_
#define HC3DETECT_VOCAB_STATS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "hc3detect/corpus.h"
#include "json.hpp"

namespace hc3detect {

inline constexpr std::string_view kAllSplits = "all";

struct VocabStats {
  Role role = Role::kHuman;
  std::string split;  // a source name or kAllSplits
  int64_t answers = 0;       // N
  int64_t total_tokens = 0;  // L * N
  double avg_length = 0.0;   // L
  int64_t vocab_size = 0;    // V
  double density = 0.0;      // D

  nlohmann::ordered_json ToJson() const;
};

// Density from its three inputs; 0 when there are no tokens.
double Density(int64_t vocab_size, double avg_length, int64_t answers);

// Statistics over already tokenized answers.
VocabStats StatsFromTokens(std::span<const std::vector<std::string>> answers,
                           Role role, std::string split);

struct VocabOptions {
  Role role = Role::kHuman;
  uint64_t seed = 0;
  // Draw one answer per record for the role instead of using them all.
  bool sample_one = false;
  // ASCII case folding before counting; counting is case-sensitive by
  // default.
  bool fold_case = false;
};

// One entry per source split in name order, then the kAllSplits entry.
// Records without answers for the role are skipped; if no record has any
// the call fails.
absl::StatusOr<std::vector<VocabStats>> ComputeVocabStats(
    std::span<const ComparisonRecord> records, const VocabOptions& options);

// Rows are split x role with columns avg. len., vocab size, density.
std::string VocabTableMarkdown(std::span<const VocabStats> rows);
std::string VocabTableCsv(std::span<const VocabStats> rows);

}  // namespace hc3detect

#endif  // HC3DETECT_VOCAB_STATS_H_
