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

#include "hc3detect/corpus.h"

#include <fstream>
#include <set>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "hc3detect/utf8.h"

namespace hc3detect {

using nlohmann::json;

std::string_view LanguageName(Language language) {
  return language == Language::kEnglish ? "english" : "chinese";
}

absl::StatusOr<Language> ParseLanguage(std::string_view name) {
  if (name == "english" || name == "en") return Language::kEnglish;
  if (name == "chinese" || name == "zh") return Language::kChinese;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown language '", std::string(name), "'"));
}

absl::StatusOr<SourceSplit> SourceSplit::Create(std::string_view name) {
  bool ok = !name.empty() && name[0] >= 'a' && name[0] <= 'z';
  for (char c : name) {
    ok = ok && ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_');
  }
  if (!ok) {
    return absl::InvalidArgumentError(absl::StrCat(
        "source '", std::string(name), "' is not a lowercase identifier"));
  }
  return SourceSplit(std::string(name));
}

std::string_view RoleName(Role role) {
  return role == Role::kHuman ? "human" : "chatgpt";
}

std::string_view GranularityName(Granularity granularity) {
  return granularity == Granularity::kFull ? "full" : "sent";
}

absl::StatusOr<Granularity> ParseGranularity(std::string_view name) {
  if (name == "full") return Granularity::kFull;
  if (name == "sent") return Granularity::kSent;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown granularity '", std::string(name), "'"));
}

absl::Status ValidateRecord(const ComparisonRecord& record) {
  if (utf8::Trim(record.question).empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("record ", record.id, ": question is empty"));
  }
  if (record.human_answers.empty() && record.chatgpt_answers.empty()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "record ", record.id, ": human_answers and chatgpt_answers are both "
        "empty"));
  }
  for (Role role : {Role::kHuman, Role::kChatGpt}) {
    const auto& answers = record.answers(role);
    for (std::size_t i = 0; i < answers.size(); ++i) {
      if (utf8::Trim(answers[i]).empty()) {
        return absl::InvalidArgumentError(
            absl::StrCat("record ", record.id, ": ", std::string(RoleName(role)),
                         "_answers[", i, "] is empty"));
      }
    }
  }
  return absl::OkStatus();
}

absl::Status ValidateSample(const LabeledSample& sample) {
  if (sample.label != 0 && sample.label != 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "sample ", sample.sample_id, ": label must be 0 or 1"));
  }
  if (utf8::Trim(sample.text).empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("sample ", sample.sample_id, ": text is empty"));
  }
  if (sample.answer_index < 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "sample ", sample.sample_id, ": answer_index is negative"));
  }
  const bool is_sent = sample.granularity == Granularity::kSent;
  if (is_sent != sample.sentence_index.has_value()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "sample ", sample.sample_id,
        ": sentence_index must be present exactly for sent granularity"));
  }
  if (sample.sentence_index.has_value() && *sample.sentence_index < 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "sample ", sample.sample_id, ": sentence_index is negative"));
  }
  return absl::OkStatus();
}

namespace {

absl::StatusOr<std::vector<std::string>> ReadAnswers(
    const json& value, std::string_view field, std::size_t index,
    const IngestOptions& options) {
  const std::string where = absl::StrCat("record ", index, ": ");
  auto it = value.find(field);
  if (it == value.end()) {
    return absl::InvalidArgumentError(
        absl::StrCat(where, "missing field '", std::string(field), "'"));
  }
  if (!it->is_array()) {
    return absl::InvalidArgumentError(absl::StrCat(
        where, "field '", std::string(field), "' must be an array of strings"));
  }
  std::vector<std::string> answers;
  for (std::size_t i = 0; i < it->size(); ++i) {
    const json& answer = (*it)[i];
    if (!answer.is_string()) {
      return absl::InvalidArgumentError(absl::StrCat(
          where, std::string(field), "[", i, "] is not a string"));
    }
    std::string text(utf8::Trim(answer.get_ref<const std::string&>()));
    if (text.empty()) {
      if (options.drop_empty_answers) {
        if (options.dropped_answers != nullptr) ++*options.dropped_answers;
        continue;
      }
      return absl::InvalidArgumentError(
          absl::StrCat(where, std::string(field), "[", i, "] is empty"));
    }
    answers.push_back(std::move(text));
  }
  return answers;
}

absl::StatusOr<std::string> OptionalString(const json& value,
                                           std::string_view field,
                                           std::size_t index) {
  auto it = value.find(field);
  if (it == value.end() || it->is_null()) return std::string();
  if (it->is_string()) return it->get<std::string>();
  // Published dumps sometimes carry integer ids.
  if (field == "id" && it->is_number_integer()) {
    return std::to_string(it->get<int64_t>());
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "record ", index, ": field '", std::string(field), "' must be a string"));
}

absl::StatusOr<ComparisonRecord> RecordFromJson(const json& value,
                                                std::size_t index,
                                                const IngestOptions& options) {
  if (!value.is_object()) {
    return absl::InvalidArgumentError(
        absl::StrCat("record ", index, ": not a JSON object"));
  }
  ComparisonRecord record;
  auto q = value.find("question");
  if (q == value.end()) {
    return absl::InvalidArgumentError(
        absl::StrCat("record ", index, ": missing field 'question'"));
  }
  if (!q->is_string()) {
    return absl::InvalidArgumentError(
        absl::StrCat("record ", index, ": field 'question' must be a string"));
  }
  record.question = std::string(utf8::Trim(q->get_ref<const std::string&>()));

  auto human = ReadAnswers(value, "human_answers", index, options);
  if (!human.ok()) return human.status();
  record.human_answers = *std::move(human);
  auto chatgpt = ReadAnswers(value, "chatgpt_answers", index, options);
  if (!chatgpt.ok()) return chatgpt.status();
  record.chatgpt_answers = *std::move(chatgpt);

  auto id = OptionalString(value, "id", index);
  if (!id.ok()) return id.status();
  record.id = id->empty() ? absl::StrFormat("%08d", index) : *id;

  auto source = OptionalString(value, "source", index);
  if (!source.ok()) return source.status();
  auto split =
      SourceSplit::Create(source->empty() ? options.default_source : *source);
  if (!split.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("record ", index, ": ", split.status().message()));
  }
  record.source = *split;

  auto language = OptionalString(value, "language", index);
  if (!language.ok()) return language.status();
  if (language->empty()) {
    record.language = options.language;
  } else {
    auto parsed = ParseLanguage(*language);
    if (!parsed.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("record ", index, ": ", parsed.status().message()));
    }
    record.language = *parsed;
  }

  if (auto status = ValidateRecord(record); !status.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("record ", index, ": ", status.message()));
  }
  return record;
}

}  // namespace

absl::StatusOr<std::vector<ComparisonRecord>> ParseCorpus(
    std::string_view content, const IngestOptions& options) {
  std::vector<std::pair<std::size_t, json>> items;
  const std::string_view trimmed = utf8::Trim(content);
  if (!trimmed.empty() && trimmed.front() == '[') {
    json array = json::parse(trimmed, nullptr, /*allow_exceptions=*/false);
    if (array.is_discarded() || !array.is_array()) {
      return absl::InvalidArgumentError("input is not a valid JSON array");
    }
    for (std::size_t i = 0; i < array.size(); ++i) {
      items.emplace_back(i + 1, std::move(array[i]));
    }
  } else {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < content.size()) {
      std::size_t end = content.find('\n', pos);
      if (end == std::string_view::npos) end = content.size();
      std::string_view line = content.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;
      if (utf8::Trim(line).empty()) continue;
      json value = json::parse(line, nullptr, /*allow_exceptions=*/false);
      if (value.is_discarded()) {
        return absl::InvalidArgumentError(
            absl::StrCat("record ", line_no, ": malformed JSON"));
      }
      items.emplace_back(line_no, std::move(value));
    }
  }

  std::vector<ComparisonRecord> records;
  records.reserve(items.size());
  std::set<std::string> seen_ids;
  for (const auto& [index, value] : items) {
    auto record = RecordFromJson(value, index, options);
    if (!record.ok()) return record.status();
    if (!seen_ids.insert(record->id).second) {
      return absl::InvalidArgumentError(absl::StrCat(
          "record ", index, ": duplicate id '", record->id, "'"));
    }
    records.push_back(*std::move(record));
  }
  return records;
}

absl::StatusOr<std::string> ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(
        absl::StrCat("no such input: ", path.string()));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status WriteFile(const std::filesystem::path& path,
                       std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot write ", path.string()));
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) {
    return absl::DataLossError(absl::StrCat("short write to ", path.string()));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<ComparisonRecord>> IngestCorpus(
    const std::filesystem::path& path, const IngestOptions& options) {
  auto content = ReadFile(path);
  if (!content.ok()) return content.status();
  return ParseCorpus(*content, options);
}

std::string SerializeRecords(std::span<const ComparisonRecord> records) {
  std::string out;
  for (const ComparisonRecord& record : records) {
    nlohmann::ordered_json value;
    value["id"] = record.id;
    value["question"] = record.question;
    value["human_answers"] = record.human_answers;
    value["chatgpt_answers"] = record.chatgpt_answers;
    value["source"] = record.source.name();
    value["language"] = LanguageName(record.language);
    out += value.dump();
    out += '\n';
  }
  return out;
}

std::vector<LabeledSample> ExplodeSamples(
    std::span<const ComparisonRecord> records) {
  std::vector<LabeledSample> samples;
  for (const ComparisonRecord& record : records) {
    for (Role role : {Role::kHuman, Role::kChatGpt}) {
      const auto& answers = record.answers(role);
      for (std::size_t i = 0; i < answers.size(); ++i) {
        LabeledSample sample;
        sample.sample_id = absl::StrCat(record.id, ":", std::string(RoleName(role)), ":", i);
        sample.record_id = record.id;
        sample.question = record.question;
        sample.text = answers[i];
        sample.label = LabelOf(role);
        sample.granularity = Granularity::kFull;
        sample.answer_index = static_cast<int>(i);
        sample.source = record.source;
        sample.language = record.language;
        samples.push_back(std::move(sample));
      }
    }
  }
  return samples;
}

nlohmann::ordered_json SampleToJson(const LabeledSample& sample) {
  nlohmann::ordered_json value;
  value["sample_id"] = sample.sample_id;
  value["record_id"] = sample.record_id;
  if (sample.question.has_value()) {
    value["question"] = *sample.question;
  } else {
    value["question"] = nullptr;
  }
  value["text"] = sample.text;
  value["label"] = sample.label;
  value["granularity"] = GranularityName(sample.granularity);
  value["source"] = sample.source.name();
  value["language"] = LanguageName(sample.language);
  value["answer_index"] = sample.answer_index;
  if (sample.sentence_index.has_value()) {
    value["sentence_index"] = *sample.sentence_index;
  } else {
    value["sentence_index"] = nullptr;
  }
  return value;
}

absl::StatusOr<LabeledSample> SampleFromJson(const json& value) {
  if (!value.is_object()) {
    return absl::InvalidArgumentError("sample is not a JSON object");
  }
  auto get_string = [&](const char* key) -> absl::StatusOr<std::string> {
    auto it = value.find(key);
    if (it == value.end() || !it->is_string()) {
      return absl::InvalidArgumentError(
          absl::StrCat("sample field '", key, "' must be a string"));
    }
    return it->get<std::string>();
  };
  auto get_int = [&](const char* key) -> absl::StatusOr<std::optional<int>> {
    auto it = value.find(key);
    if (it == value.end() || it->is_null()) return std::optional<int>();
    if (!it->is_number_integer()) {
      return absl::InvalidArgumentError(
          absl::StrCat("sample field '", key, "' must be an integer"));
    }
    return std::optional<int>(it->get<int>());
  };

  LabeledSample sample;
  auto sample_id = get_string("sample_id");
  if (!sample_id.ok()) return sample_id.status();
  sample.sample_id = *sample_id;
  auto record_id = get_string("record_id");
  if (!record_id.ok()) return record_id.status();
  sample.record_id = *record_id;
  auto text = get_string("text");
  if (!text.ok()) return text.status();
  sample.text = *text;
  if (auto q = value.find("question"); q != value.end() && !q->is_null()) {
    if (!q->is_string()) {
      return absl::InvalidArgumentError(
          "sample field 'question' must be a string or null");
    }
    sample.question = q->get<std::string>();
  }
  auto label = get_int("label");
  if (!label.ok()) return label.status();
  if (!label->has_value()) {
    return absl::InvalidArgumentError("sample field 'label' is missing");
  }
  sample.label = **label;
  auto granularity_name = get_string("granularity");
  if (!granularity_name.ok()) return granularity_name.status();
  auto granularity = ParseGranularity(*granularity_name);
  if (!granularity.ok()) return granularity.status();
  sample.granularity = *granularity;
  auto source_name = get_string("source");
  if (!source_name.ok()) return source_name.status();
  auto source = SourceSplit::Create(*source_name);
  if (!source.ok()) return source.status();
  sample.source = *source;
  auto language_name = get_string("language");
  if (!language_name.ok()) return language_name.status();
  auto language = ParseLanguage(*language_name);
  if (!language.ok()) return language.status();
  sample.language = *language;
  auto answer_index = get_int("answer_index");
  if (!answer_index.ok()) return answer_index.status();
  sample.answer_index = answer_index->value_or(0);
  auto sentence_index = get_int("sentence_index");
  if (!sentence_index.ok()) return sentence_index.status();
  sample.sentence_index = *sentence_index;
  if (auto status = ValidateSample(sample); !status.ok()) return status;
  return sample;
}

std::string SerializeSamples(std::span<const LabeledSample> samples) {
  std::string out;
  for (const LabeledSample& sample : samples) {
    out += SampleToJson(sample).dump();
    out += '\n';
  }
  return out;
}

absl::StatusOr<std::vector<LabeledSample>> ParseSamples(
    std::string_view content) {
  std::vector<LabeledSample> samples;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (utf8::Trim(line).empty()) continue;
    json value = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (value.is_discarded()) {
      return absl::InvalidArgumentError(
          absl::StrCat("sample line ", line_no, ": malformed JSON"));
    }
    auto sample = SampleFromJson(value);
    if (!sample.ok()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "sample line ", line_no, ": ", sample.status().message()));
    }
    samples.push_back(*std::move(sample));
  }
  return samples;
}

absl::Status WriteSamples(const std::filesystem::path& path,
                          std::span<const LabeledSample> samples) {
  return WriteFile(path, SerializeSamples(samples));
}

absl::StatusOr<std::vector<LabeledSample>> ReadSamples(
    const std::filesystem::path& path) {
  auto content = ReadFile(path);
  if (!content.ok()) return content.status();
  return ParseSamples(*content);
}

}  // namespace hc3detect
