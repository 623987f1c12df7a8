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

#include "hc3detect/variants.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "hc3detect/random.h"
#include "hc3detect/sentence_splitter.h"
#include "hc3detect/tokenizer.h"

namespace hc3detect {

std::string VersionSpec::Name() const {
  std::string name = filtering == Filtering::kRaw ? "raw-" : "filtered-";
  switch (granularity) {
    case VersionGranularity::kFull:
      return name + "full";
    case VersionGranularity::kSent:
      return name + "sent";
    case VersionGranularity::kMix:
      return name + "mix";
  }
  return name;
}

absl::StatusOr<VersionSpec> ParseVersion(std::string_view name) {
  for (const VersionSpec& version : AllVersions()) {
    if (version.Name() == name) return version;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown dataset version '", std::string(name), "'"));
}

const std::array<VersionSpec, 6>& AllVersions() {
  static const std::array<VersionSpec, 6> kVersions = {{
      {Filtering::kRaw, VersionGranularity::kFull},
      {Filtering::kRaw, VersionGranularity::kSent},
      {Filtering::kRaw, VersionGranularity::kMix},
      {Filtering::kFiltered, VersionGranularity::kFull},
      {Filtering::kFiltered, VersionGranularity::kSent},
      {Filtering::kFiltered, VersionGranularity::kMix},
  }};
  return kVersions;
}

std::string FilterAnswer(std::string_view text,
                         const IndicatingLexicon& lexicon, Language language) {
  std::vector<std::string> kept;
  for (std::string& sentence : SplitSentences(text, language)) {
    if (!lexicon.Matches(sentence)) kept.push_back(std::move(sentence));
  }
  return absl::StrJoin(kept, " ");
}

std::vector<LabeledSample> SentenceSamples(std::span<const LabeledSample> full,
                                           int min_sentence_tokens) {
  std::vector<LabeledSample> out;
  for (const LabeledSample& parent : full) {
    const auto sentences = SplitSentences(parent.text, parent.language);
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      const auto tokens = Tokenize(sentences[i], parent.language);
      if (static_cast<int>(tokens.size()) < min_sentence_tokens) continue;
      LabeledSample sample = parent;
      sample.sample_id = absl::StrCat(parent.sample_id, ":s", i);
      sample.text = sentences[i];
      sample.granularity = Granularity::kSent;
      sample.sentence_index = static_cast<int>(i);
      out.push_back(std::move(sample));
    }
  }
  return out;
}

std::map<std::string, std::vector<std::string>> RecordStrata(
    std::span<const LabeledSample> samples) {
  // Record ids in first-appearance order with their label set and source.
  std::vector<std::string> order;
  std::map<std::string, std::pair<std::string, int>> info;
  for (const LabeledSample& sample : samples) {
    auto [it, inserted] =
        info.try_emplace(sample.record_id, sample.source.name(), 0);
    if (inserted) order.push_back(sample.record_id);
    it->second.second |= 1 << sample.label;
  }
  std::map<std::string, std::vector<std::string>> strata;
  for (const std::string& id : order) {
    const auto& [source, mask] = info[id];
    const char* labels = mask == 1 ? "0" : (mask == 2 ? "1" : "01");
    strata[absl::StrCat(source, "/", labels)].push_back(id);
  }
  return strata;
}

absl::StatusOr<std::set<std::string>> PartitionRecords(
    std::span<const LabeledSample> samples, uint64_t seed,
    double test_fraction) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("test_fraction must be in (0, 1), got ", test_fraction));
  }
  Rng rng(seed);
  std::set<std::string> test_ids;
  for (auto& [stratum, ids] : RecordStrata(samples)) {
    const auto n = static_cast<int64_t>(ids.size());
    if (n < 2) {
      return absl::FailedPreconditionError(absl::StrCat(
          "cannot stratify: stratum '", stratum, "' has ", n,
          " record(s); at least 2 are needed for a train/test split"));
    }
    const int64_t n_test = std::clamp<int64_t>(
        std::llround(test_fraction * static_cast<double>(n)), 1, n - 1);
    rng.Shuffle(std::span(ids));
    test_ids.insert(ids.begin(), ids.begin() + n_test);
  }
  return test_ids;
}

absl::StatusOr<BundleMap> BuildVersions(std::span<const LabeledSample> samples,
                                        const IndicatingLexicon& lexicon,
                                        const BuildOptions& options) {
  if (!(options.test_fraction > 0.0 && options.test_fraction < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "test_fraction must be in (0, 1), got ", options.test_fraction));
  }
  for (const LabeledSample& sample : samples) {
    if (sample.granularity != Granularity::kFull) {
      return absl::InvalidArgumentError(absl::StrCat(
          "sample ", sample.sample_id, " is not full granularity"));
    }
  }

  BundleMap bundles;
  std::set<std::string> test_ids;
  if (!samples.empty()) {
    auto partition =
        PartitionRecords(samples, options.seed, options.test_fraction);
    if (!partition.ok()) return partition.status();
    test_ids = *std::move(partition);
  }

  std::vector<LabeledSample> raw_full(samples.begin(), samples.end());
  std::vector<LabeledSample> filtered_full;
  for (const LabeledSample& sample : samples) {
    std::string text = FilterAnswer(sample.text, lexicon, sample.language);
    if (text.empty() ||
        static_cast<int>(Tokenize(text, sample.language).size()) <
            options.min_sentence_tokens) {
      continue;
    }
    LabeledSample filtered = sample;
    filtered.text = std::move(text);
    filtered_full.push_back(std::move(filtered));
  }

  for (const Filtering filtering : {Filtering::kRaw, Filtering::kFiltered}) {
    const auto& full =
        filtering == Filtering::kRaw ? raw_full : filtered_full;
    const auto sent = SentenceSamples(full, options.min_sentence_tokens);
    for (const VersionGranularity granularity :
         {VersionGranularity::kFull, VersionGranularity::kSent,
          VersionGranularity::kMix}) {
      DatasetBundle bundle;
      bundle.version = {filtering, granularity};
      bundle.seed = options.seed;
      auto add = [&](const std::vector<LabeledSample>& from) {
        for (const LabeledSample& sample : from) {
          (test_ids.contains(sample.record_id) ? bundle.test : bundle.train)
              .push_back(sample);
        }
      };
      if (granularity != VersionGranularity::kSent) add(full);
      if (granularity != VersionGranularity::kFull) add(sent);
      bundles.emplace(bundle.version, std::move(bundle));
    }
  }
  return bundles;
}

absl::Status WriteBundles(const std::filesystem::path& dir,
                          const BundleMap& bundles) {
  for (const auto& [version, bundle] : bundles) {
    const auto version_dir = dir / version.Name();
    if (auto s = WriteSamples(version_dir / "train.jsonl", bundle.train);
        !s.ok()) {
      return s;
    }
    if (auto s = WriteSamples(version_dir / "test.jsonl", bundle.test);
        !s.ok()) {
      return s;
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<BundleMap> ReadBundles(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    return absl::NotFoundError(
        absl::StrCat("no such bundle directory: ", dir.string()));
  }
  BundleMap bundles;
  for (const VersionSpec& version : AllVersions()) {
    const auto version_dir = dir / version.Name();
    if (!std::filesystem::is_directory(version_dir)) continue;
    DatasetBundle bundle;
    bundle.version = version;
    auto train = ReadSamples(version_dir / "train.jsonl");
    if (!train.ok()) return train.status();
    auto test = ReadSamples(version_dir / "test.jsonl");
    if (!test.ok()) return test.status();
    bundle.train = *std::move(train);
    bundle.test = *std::move(test);
    bundles.emplace(version, std::move(bundle));
  }
  return bundles;
}

}  // namespace hc3detect
