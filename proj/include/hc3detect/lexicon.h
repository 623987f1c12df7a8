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

#ifndef HC3DETECT_LEXICON_H_
#define HC3DETECT_LEXICON_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "hc3detect/corpus.h"

namespace hc3detect {

enum class CaseMode { kSensitive, kInsensitive };

// English phrases match case-insensitively, Chinese ones exactly.
CaseMode DefaultCaseMode(Language language);

// Phrases that give away the author of a sentence. A sentence containing
// any phrase from either list (substring match) is removed by filtering.
//
// Config file format (UTF-8):
//
//   # comment
//   [chatgpt]
//   AI assistant
//   [human]
//   Nope
//
// Comments are whole lines starting with '#'; blank lines are ignored.
class IndicatingLexicon {
 public:
  // Trims every phrase, rejects empty ones and drops duplicates while
  // keeping first-occurrence order.
  static absl::StatusOr<IndicatingLexicon> Create(
      std::vector<std::string> chatgpt_phrases,
      std::vector<std::string> human_phrases, CaseMode case_mode);

  static absl::StatusOr<IndicatingLexicon> Parse(std::string_view config,
                                                 CaseMode case_mode);

  // The built-in lexicon; same phrases as data/lexicon_default.txt.
  static IndicatingLexicon Default(CaseMode case_mode);
  static std::string_view DefaultConfig();

  // Canonical config text; Parse(Serialize()) reproduces the lexicon.
  std::string Serialize() const;

  bool Matches(std::string_view sentence) const;

  const std::vector<std::string>& chatgpt_phrases() const {
    return chatgpt_phrases_;
  }
  const std::vector<std::string>& human_phrases() const {
    return human_phrases_;
  }
  CaseMode case_mode() const { return case_mode_; }

 private:
  IndicatingLexicon() = default;

  std::vector<std::string> chatgpt_phrases_;
  std::vector<std::string> human_phrases_;
  CaseMode case_mode_ = CaseMode::kSensitive;
  // Both lists, case-folded when matching is insensitive.
  std::vector<std::string> match_keys_;
};

}  // namespace hc3detect

#endif  // HC3DETECT_LEXICON_H_
