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

#include "hc3detect/vocab_stats.h"

#include <map>
#include <unordered_set>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "hc3detect/random.h"
#include "hc3detect/tokenizer.h"
#include "hc3detect/utf8.h"

namespace hc3detect {

double Density(int64_t vocab_size, double avg_length, int64_t answers) {
  const double denom = avg_length * static_cast<double>(answers);
  if (!(denom > 0.0)) return 0.0;
  return 100.0 * static_cast<double>(vocab_size) / denom;
}

VocabStats StatsFromTokens(std::span<const std::vector<std::string>> answers,
                           Role role, std::string split) {
  VocabStats stats;
  stats.role = role;
  stats.split = std::move(split);
  stats.answers = static_cast<int64_t>(answers.size());
  std::unordered_set<std::string_view> vocab;
  for (const auto& tokens : answers) {
    stats.total_tokens += static_cast<int64_t>(tokens.size());
    for (const std::string& t : tokens) vocab.insert(t);
  }
  stats.vocab_size = static_cast<int64_t>(vocab.size());
  if (stats.answers > 0) {
    stats.avg_length = static_cast<double>(stats.total_tokens) /
                       static_cast<double>(stats.answers);
  }
  stats.density = Density(stats.vocab_size, stats.avg_length, stats.answers);
  return stats;
}

absl::StatusOr<std::vector<VocabStats>> ComputeVocabStats(
    std::span<const ComparisonRecord> records, const VocabOptions& options) {
  Rng rng(options.seed);
  std::map<std::string, std::vector<std::vector<std::string>>> by_split;
  std::vector<std::vector<std::string>> all;
  auto add = [&](const ComparisonRecord& record, const std::string& answer) {
    std::vector<std::string> tokens = Tokenize(answer, record.language);
    if (options.fold_case) {
      for (std::string& t : tokens) t = utf8::AsciiLower(t);
    }
    by_split[record.source.name()].push_back(tokens);
    all.push_back(std::move(tokens));
  };
  for (const ComparisonRecord& record : records) {
    const auto& answers = record.answers(options.role);
    if (answers.empty()) continue;
    if (options.sample_one) {
      add(record, answers[rng.Below(answers.size())]);
    } else {
      for (const std::string& answer : answers) add(record, answer);
    }
  }
  if (all.empty()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "no ", std::string(RoleName(options.role)), " answers in the corpus"));
  }
  std::vector<VocabStats> out;
  for (const auto& [split, answers] : by_split) {
    out.push_back(StatsFromTokens(answers, options.role, split));
  }
  out.push_back(StatsFromTokens(all, options.role, std::string(kAllSplits)));
  return out;
}

nlohmann::ordered_json VocabStats::ToJson() const {
  nlohmann::ordered_json v;
  v["split"] = split;
  v["role"] = RoleName(role);
  v["N"] = answers;
  v["total_tokens"] = total_tokens;
  v["L"] = avg_length;
  v["V"] = vocab_size;
  v["D"] = density;
  return v;
}

std::string VocabTableMarkdown(std::span<const VocabStats> rows) {
  std::string out =
      "| split | role | N | avg. len. | vocab size | density |\n"
      "|---|---|---:|---:|---:|---:|\n";
  for (const VocabStats& s : rows) {
    absl::StrAppendFormat(&out, "| %s | %s | %d | %.2f | %d | %.4f |\n",
                          s.split, std::string(RoleName(s.role)), s.answers,
                          s.avg_length,
                          s.vocab_size, s.density);
  }
  return out;
}

std::string VocabTableCsv(std::span<const VocabStats> rows) {
  std::string out = "split,role,N,total_tokens,avg_length,vocab_size,density\n";
  for (const VocabStats& s : rows) {
    absl::StrAppendFormat(&out, "%s,%s,%d,%d,%.17g,%d,%.17g\n", s.split,
                          std::string(RoleName(s.role)), s.answers, s.total_tokens,
                          s.avg_length, s.vocab_size, s.density);
  }
  return out;
}

}  // namespace hc3detect
