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

#include "hc3detect/features.h"

#include <atomic>
#include <cmath>
#include <optional>
#include <thread>

#include "absl/strings/str_cat.h"
#include "hc3detect/sentence_splitter.h"
#include "hc3detect/utf8.h"

namespace hc3detect {

using nlohmann::json;

int RankBucket(int64_t rank) {
  if (rank <= 10) return 0;
  if (rank <= 100) return 1;
  if (rank <= 1000) return 2;
  return 3;
}

absl::StatusOr<GltrFeatureVector> GltrFeatures(
    std::span<const RankedToken> ranked) {
  if (ranked.empty()) {
    return absl::InvalidArgumentError("empty token stream");
  }
  GltrFeatureVector features;
  for (const RankedToken& token : ranked) ++features.counts[RankBucket(token.rank)];
  features.token_count = static_cast<int64_t>(ranked.size());
  for (int b = 0; b < kNumRankBuckets; ++b) {
    features.fractions[b] = static_cast<double>(features.counts[b]) /
                            static_cast<double>(features.token_count);
  }
  return features;
}

namespace {

double StreamPerplexity(std::span<const RankedToken> ranked) {
  double sum = 0.0;
  for (const RankedToken& token : ranked) sum += token.logprob;
  return std::exp(-sum / static_cast<double>(ranked.size()));
}

}  // namespace

absl::StatusOr<PerplexityReport> Perplexity(
    std::span<const RankedToken> ranked, std::span<const TokenRange> ranges) {
  if (ranked.empty()) {
    return absl::InvalidArgumentError("empty token stream");
  }
  std::size_t expected_begin = 0;
  for (const TokenRange& range : ranges) {
    if (range.begin != expected_begin || range.end < range.begin ||
        range.end > ranked.size()) {
      return absl::InvalidArgumentError(
          "sentence ranges must tile the token stream in order");
    }
    expected_begin = range.end;
  }
  if (!ranges.empty() && expected_begin != ranked.size()) {
    return absl::InvalidArgumentError(
        "sentence ranges do not cover the token stream");
  }
  PerplexityReport report;
  report.token_count = static_cast<int64_t>(ranked.size());
  report.text_ppl = StreamPerplexity(ranked);
  for (const TokenRange& range : ranges) {
    if (range.begin == range.end) {
      ++report.skipped_sentences;
      continue;
    }
    report.sentence_ppls.push_back(
        StreamPerplexity(ranked.subspan(range.begin, range.end - range.begin)));
  }
  return report;
}

absl::StatusOr<PerplexityReport> TextPerplexity(const TokenScorer& scorer,
                                                std::string_view text,
                                                Language language) {
  const std::vector<std::string> sentences = SplitSentences(text, language);
  auto segments = scorer.ScoreSegments(sentences);
  if (segments.ok()) {
    std::vector<RankedToken> stream;
    std::vector<TokenRange> ranges;
    for (auto& segment : *segments) {
      ranges.push_back({stream.size(), stream.size() + segment.size()});
      stream.insert(stream.end(), std::make_move_iterator(segment.begin()),
                    std::make_move_iterator(segment.end()));
    }
    return Perplexity(stream, ranges);
  }
  if (segments.status().code() != absl::StatusCode::kUnimplemented) {
    return segments.status();
  }
  auto whole = scorer.Score(text, std::nullopt);
  if (!whole.ok()) return whole.status();
  auto report = Perplexity(*whole, {});
  if (!report.ok()) return report.status();
  for (const std::string& sentence : sentences) {
    auto ranked = scorer.Score(sentence, std::nullopt);
    if (!ranked.ok()) return ranked.status();
    auto sentence_report = Perplexity(*ranked, {});
    if (!sentence_report.ok()) return sentence_report.status();
    report->sentence_ppls.push_back(sentence_report->text_ppl);
  }
  return report;
}

std::string FeatureConfig::Descriptor() const {
  std::string out = scale == FeatureScale::kFractions ? "fractions" : "counts";
  if (length_feature) out += "+length";
  if (qa_mode) out += "+qa";
  return out;
}

nlohmann::ordered_json FeatureConfig::ToJson() const {
  nlohmann::ordered_json value;
  value["scale"] = scale == FeatureScale::kFractions ? "fractions" : "counts";
  value["length_feature"] = length_feature;
  value["qa_mode"] = qa_mode;
  return value;
}

absl::StatusOr<FeatureConfig> FeatureConfig::FromJson(const json& value) {
  if (!value.is_object()) {
    return absl::InvalidArgumentError("feature_config must be an object");
  }
  FeatureConfig config;
  auto scale = value.find("scale");
  auto length = value.find("length_feature");
  auto qa = value.find("qa_mode");
  if (scale == value.end() || !scale->is_string() || length == value.end() ||
      !length->is_boolean() || qa == value.end() || !qa->is_boolean()) {
    return absl::InvalidArgumentError(
        "feature_config needs scale, length_feature and qa_mode");
  }
  if (*scale == "fractions") {
    config.scale = FeatureScale::kFractions;
  } else if (*scale == "counts") {
    config.scale = FeatureScale::kCounts;
  } else {
    return absl::InvalidArgumentError("feature_config scale is unknown");
  }
  config.length_feature = length->get<bool>();
  config.qa_mode = qa->get<bool>();
  return config;
}

std::vector<double> ClassifierInput(const GltrFeatureVector& features,
                                    const FeatureConfig& config) {
  std::vector<double> x;
  x.reserve(config.Dimension());
  for (int b = 0; b < kNumRankBuckets; ++b) {
    x.push_back(config.scale == FeatureScale::kFractions
                    ? features.fractions[b]
                    : static_cast<double>(features.counts[b]));
  }
  if (config.length_feature) {
    x.push_back(std::log(static_cast<double>(features.token_count)));
  }
  return x;
}

absl::StatusOr<GltrFeatureVector> FeaturizeSample(const LabeledSample& sample,
                                                  const TokenScorer& scorer,
                                                  bool qa_mode) {
  std::optional<std::string_view> context;
  if (qa_mode) {
    if (!sample.question.has_value()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "sample ", sample.sample_id, ": QA mode needs a question"));
    }
    // A blank question leaves the answer unconditioned.
    if (!utf8::Trim(*sample.question).empty()) context = *sample.question;
  }
  auto ranked = scorer.Score(sample.text, context);
  if (!ranked.ok()) {
    return absl::Status(ranked.status().code(),
                        absl::StrCat("sample ", sample.sample_id, ": ",
                                     ranked.status().message()));
  }
  return GltrFeatures(*ranked);
}

absl::StatusOr<std::vector<FeatureRecord>> FeaturizeSamples(
    std::span<const LabeledSample> samples, const TokenScorer& scorer,
    bool qa_mode, int jobs) {
  std::vector<absl::StatusOr<GltrFeatureVector>> results(
      samples.size(), absl::UnknownError("not computed"));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto work = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= samples.size()) return;
      results[i] = FeaturizeSample(samples[i], scorer, qa_mode);
      if (!results[i].ok()) failed.store(true);
    }
  };
  const int workers =
      std::max(1, std::min<int>(jobs, static_cast<int>(samples.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < workers; ++t) threads.emplace_back(work);
    for (auto& thread : threads) thread.join();
  }

  std::vector<FeatureRecord> records;
  records.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!results[i].ok()) return results[i].status();
    FeatureRecord record;
    record.sample_id = samples[i].sample_id;
    record.label = samples[i].label;
    record.source = samples[i].source;
    record.granularity = samples[i].granularity;
    record.qa_mode = qa_mode;
    record.features = *results[i];
    records.push_back(std::move(record));
  }
  return records;
}

std::string SerializeFeatures(std::span<const FeatureRecord> records) {
  std::string out;
  for (const FeatureRecord& record : records) {
    nlohmann::ordered_json value;
    value["sample_id"] = record.sample_id;
    value["label"] = record.label;
    value["counts"] = record.features.counts;
    value["fractions"] = record.features.fractions;
    value["token_count"] = record.features.token_count;
    value["source"] = record.source.name();
    value["granularity"] = GranularityName(record.granularity);
    value["qa_mode"] = record.qa_mode;
    out += value.dump();
    out += '\n';
  }
  return out;
}

namespace {

absl::StatusOr<FeatureRecord> FeatureRecordFromJson(const json& value) {
  if (!value.is_object()) {
    return absl::InvalidArgumentError("feature record is not an object");
  }
  FeatureRecord record;
  auto sample_id = value.find("sample_id");
  auto label = value.find("label");
  auto counts = value.find("counts");
  auto token_count = value.find("token_count");
  if (sample_id == value.end() || !sample_id->is_string() ||
      label == value.end() || !label->is_number_integer() ||
      counts == value.end() || !counts->is_array() ||
      counts->size() != kNumRankBuckets || token_count == value.end() ||
      !token_count->is_number_integer()) {
    return absl::InvalidArgumentError(
        "feature record needs sample_id, label, counts[4] and token_count");
  }
  record.sample_id = sample_id->get<std::string>();
  record.label = label->get<int>();
  if (record.label != 0 && record.label != 1) {
    return absl::InvalidArgumentError("feature record label must be 0 or 1");
  }
  int64_t total = 0;
  for (int b = 0; b < kNumRankBuckets; ++b) {
    const json& c = (*counts)[b];
    if (!c.is_number_integer() || c.get<int64_t>() < 0) {
      return absl::InvalidArgumentError("bucket counts must be >= 0");
    }
    record.features.counts[b] = c.get<int64_t>();
    total += record.features.counts[b];
  }
  record.features.token_count = token_count->get<int64_t>();
  if (record.features.token_count < 1 || total != record.features.token_count) {
    return absl::InvalidArgumentError(
        "bucket counts must sum to token_count >= 1");
  }
  // Fractions are derived, so they are recomputed rather than trusted.
  for (int b = 0; b < kNumRankBuckets; ++b) {
    record.features.fractions[b] =
        static_cast<double>(record.features.counts[b]) /
        static_cast<double>(record.features.token_count);
  }
  if (auto it = value.find("source"); it != value.end() && it->is_string()) {
    auto source = SourceSplit::Create(it->get<std::string>());
    if (!source.ok()) return source.status();
    record.source = *source;
  }
  if (auto it = value.find("granularity");
      it != value.end() && it->is_string()) {
    auto granularity = ParseGranularity(it->get<std::string>());
    if (!granularity.ok()) return granularity.status();
    record.granularity = *granularity;
  }
  if (auto it = value.find("qa_mode"); it != value.end() && it->is_boolean()) {
    record.qa_mode = it->get<bool>();
  }
  return record;
}

}  // namespace

absl::StatusOr<std::vector<FeatureRecord>> ParseFeatures(
    std::string_view content) {
  std::vector<FeatureRecord> records;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    const std::string_view line = content.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (utf8::Trim(line).empty()) continue;
    json value = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (value.is_discarded()) {
      return absl::InvalidArgumentError(
          absl::StrCat("feature line ", line_no, ": malformed JSON"));
    }
    auto record = FeatureRecordFromJson(value);
    if (!record.ok()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "feature line ", line_no, ": ", record.status().message()));
    }
    records.push_back(*std::move(record));
  }
  return records;
}

absl::Status WriteFeatures(const std::filesystem::path& path,
                           std::span<const FeatureRecord> records) {
  return WriteFile(path, SerializeFeatures(records));
}

absl::StatusOr<std::vector<FeatureRecord>> ReadFeatures(
    const std::filesystem::path& path) {
  auto content = ReadFile(path);
  if (!content.ok()) return content.status();
  return ParseFeatures(*content);
}

}  // namespace hc3detect
