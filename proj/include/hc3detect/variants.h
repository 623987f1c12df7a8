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

// The six dataset versions used to train and test detectors: raw or
// filtered (indicating sentences removed), at full-answer, sentence or mixed
// granularity, all sharing one record-level train/test partition.

#ifndef HC3DETECT_VARIANTS_H_
#define HC3DETECT_VARIANTS_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "hc3detect/corpus.h"
#include "hc3detect/lexicon.h"

namespace hc3detect {

enum class Filtering { kRaw, kFiltered };
enum class VersionGranularity { kFull, kSent, kMix };

struct VersionSpec {
  Filtering filtering = Filtering::kRaw;
  VersionGranularity granularity = VersionGranularity::kFull;

  // "raw-full", "filtered-mix", ...
  std::string Name() const;

  friend bool operator==(const VersionSpec&, const VersionSpec&) = default;
  friend auto operator<=>(const VersionSpec&, const VersionSpec&) = default;
};

absl::StatusOr<VersionSpec> ParseVersion(std::string_view name);

// raw-{full,sent,mix} then filtered-{full,sent,mix}.
const std::array<VersionSpec, 6>& AllVersions();

struct DatasetBundle {
  VersionSpec version;
  std::vector<LabeledSample> train;
  std::vector<LabeledSample> test;
  uint64_t seed = 0;
};

using BundleMap = std::map<VersionSpec, DatasetBundle>;

// Drops every sentence that contains a lexicon phrase and joins the
// survivors with single spaces. Returns "" when nothing survives.
std::string FilterAnswer(std::string_view text,
                         const IndicatingLexicon& lexicon, Language language);

// Sentence-level samples derived from full samples. Each sentence inherits
// label, question and provenance; sentence_index is its position in the
// split of the parent answer. Sentences with fewer than
// `min_sentence_tokens` tokens are dropped.
std::vector<LabeledSample> SentenceSamples(std::span<const LabeledSample> full,
                                           int min_sentence_tokens);

struct BuildOptions {
  uint64_t seed = 0;
  double test_fraction = 0.1;
  int min_sentence_tokens = 1;
};

// Stratum of a record for partitioning: "<source>/<labels present>", e.g.
// "open_qa/01".
std::map<std::string, std::vector<std::string>> RecordStrata(
    std::span<const LabeledSample> samples);

// Chooses the held-out record ids. Records are stratified by source and by
// which labels they contribute; each stratum is shuffled with the seed and
// round(test_fraction * n), clamped to [1, n - 1], of its records go to
// test. A stratum with fewer than two records cannot be split and is an
// error.
absl::StatusOr<std::set<std::string>> PartitionRecords(
    std::span<const LabeledSample> samples, uint64_t seed,
    double test_fraction);

// Builds all six versions from full-granularity samples.
absl::StatusOr<BundleMap> BuildVersions(std::span<const LabeledSample> samples,
                                        const IndicatingLexicon& lexicon,
                                        const BuildOptions& options);

// Bundles on disk: <dir>/<version name>/{train,test}.jsonl.
absl::Status WriteBundles(const std::filesystem::path& dir,
                          const BundleMap& bundles);

// Reads every version directory present under `dir`.
absl::StatusOr<BundleMap> ReadBundles(const std::filesystem::path& dir);

}  // namespace hc3detect

#endif  // HC3DETECT_VARIANTS_H_
