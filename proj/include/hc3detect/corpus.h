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

// Comparison-corpus data model: one question with the human and ChatGPT
// answers given to it, and the per-answer labeled samples derived from it.

#ifndef HC3DETECT_CORPUS_H_
#define HC3DETECT_CORPUS_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"

namespace hc3detect {

enum class Language { kEnglish, kChinese };

std::string_view LanguageName(Language language);

// Accepts "english"/"en" and "chinese"/"zh".
absl::StatusOr<Language> ParseLanguage(std::string_view name);

// Name of a corpus split such as "reddit_eli5" or "open_qa". Always a
// non-empty lowercase identifier matching [a-z][a-z0-9_]*.
class SourceSplit {
 public:
  SourceSplit() : name_("unknown") {}
  static absl::StatusOr<SourceSplit> Create(std::string_view name);

  const std::string& name() const { return name_; }

  friend bool operator==(const SourceSplit&, const SourceSplit&) = default;
  friend auto operator<=>(const SourceSplit&, const SourceSplit&) = default;

 private:
  explicit SourceSplit(std::string name) : name_(std::move(name)) {}
  std::string name_;
};

enum class Role { kHuman, kChatGpt };

inline int LabelOf(Role role) { return role == Role::kHuman ? 0 : 1; }
std::string_view RoleName(Role role);

enum class Granularity { kFull, kSent };

std::string_view GranularityName(Granularity granularity);
absl::StatusOr<Granularity> ParseGranularity(std::string_view name);

struct ComparisonRecord {
  std::string id;
  std::string question;
  std::vector<std::string> human_answers;
  std::vector<std::string> chatgpt_answers;
  SourceSplit source;
  Language language = Language::kEnglish;

  const std::vector<std::string>& answers(Role role) const {
    return role == Role::kHuman ? human_answers : chatgpt_answers;
  }
};

struct LabeledSample {
  std::string sample_id;
  std::string record_id;
  std::optional<std::string> question;
  std::string text;
  int label = 0;  // 0 = human, 1 = ChatGPT
  Granularity granularity = Granularity::kFull;
  int answer_index = 0;
  std::optional<int> sentence_index;
  SourceSplit source;
  Language language = Language::kEnglish;

  friend bool operator==(const LabeledSample&, const LabeledSample&) = default;
};

absl::Status ValidateRecord(const ComparisonRecord& record);
absl::Status ValidateSample(const LabeledSample& sample);

struct IngestOptions {
  Language language = Language::kEnglish;
  // Used for records without a "source" field.
  std::string default_source = "unknown";
  // When set, answers that are empty after trimming are dropped instead of
  // rejected. The number dropped is reported through `dropped_answers`.
  bool drop_empty_answers = false;
  int* dropped_answers = nullptr;
};

// Parses newline-delimited records (or a single top-level JSON array) in the
// comparison schema: "question", "human_answers", "chatgpt_answers" and the
// optional "id", "source", "language". Missing ids become the zero-padded
// 1-based record position. Input order is preserved.
absl::StatusOr<std::vector<ComparisonRecord>> ParseCorpus(
    std::string_view content, const IngestOptions& options);

absl::StatusOr<std::vector<ComparisonRecord>> IngestCorpus(
    const std::filesystem::path& path, const IngestOptions& options);

// Newline-delimited serialization accepted by ParseCorpus.
std::string SerializeRecords(std::span<const ComparisonRecord> records);

// One full-granularity sample per answer, human answers first within each
// record. sample_id is "<record_id>:<role>:<answer_index>".
std::vector<LabeledSample> ExplodeSamples(
    std::span<const ComparisonRecord> records);

nlohmann::ordered_json SampleToJson(const LabeledSample& sample);
absl::StatusOr<LabeledSample> SampleFromJson(const nlohmann::json& json);

// Sample export files hold one JSON object per line.
std::string SerializeSamples(std::span<const LabeledSample> samples);
absl::StatusOr<std::vector<LabeledSample>> ParseSamples(
    std::string_view content);
absl::Status WriteSamples(const std::filesystem::path& path,
                          std::span<const LabeledSample> samples);
absl::StatusOr<std::vector<LabeledSample>> ReadSamples(
    const std::filesystem::path& path);

// Whole-file helpers shared by the readers and writers in this project.
absl::StatusOr<std::string> ReadFile(const std::filesystem::path& path);
absl::Status WriteFile(const std::filesystem::path& path,
                       std::string_view content);

}  // namespace hc3detect

#endif  // HC3DETECT_CORPUS_H_
