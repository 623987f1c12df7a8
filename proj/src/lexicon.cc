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

#include "hc3detect/lexicon.h"

#include <set>

#include "absl/strings/str_cat.h"
#include "hc3detect/utf8.h"

namespace hc3detect {

namespace {

constexpr std::string_view kDefaultConfig =
    R"(# Indicating phrases removed when building the filtered corpus versions.
[chatgpt]
AI assistant
I'm sorry to hear that
There're a few steps
[human]
Hmm
Nope
My view is
LOL
TL;DR
GOAT
)";

absl::StatusOr<std::vector<std::string>> CleanPhrases(
    std::vector<std::string> phrases, std::string_view list_name) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < phrases.size(); ++i) {
    std::string phrase(utf8::Trim(phrases[i]));
    if (phrase.empty()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "lexicon: ", std::string(list_name), " phrase ", i, " is empty"));
    }
    if (seen.insert(phrase).second) out.push_back(std::move(phrase));
  }
  return out;
}

}  // namespace

CaseMode DefaultCaseMode(Language language) {
  return language == Language::kEnglish ? CaseMode::kInsensitive
                                        : CaseMode::kSensitive;
}

absl::StatusOr<IndicatingLexicon> IndicatingLexicon::Create(
    std::vector<std::string> chatgpt_phrases,
    std::vector<std::string> human_phrases, CaseMode case_mode) {
  IndicatingLexicon lexicon;
  auto chatgpt = CleanPhrases(std::move(chatgpt_phrases), "chatgpt");
  if (!chatgpt.ok()) return chatgpt.status();
  auto human = CleanPhrases(std::move(human_phrases), "human");
  if (!human.ok()) return human.status();
  lexicon.chatgpt_phrases_ = *std::move(chatgpt);
  lexicon.human_phrases_ = *std::move(human);
  lexicon.case_mode_ = case_mode;
  for (const auto* list : {&lexicon.chatgpt_phrases_, &lexicon.human_phrases_}) {
    for (const std::string& phrase : *list) {
      lexicon.match_keys_.push_back(case_mode == CaseMode::kInsensitive
                                        ? utf8::AsciiLower(phrase)
                                        : phrase);
    }
  }
  return lexicon;
}

absl::StatusOr<IndicatingLexicon> IndicatingLexicon::Parse(
    std::string_view config, CaseMode case_mode) {
  std::vector<std::string> chatgpt;
  std::vector<std::string> human;
  std::vector<std::string>* current = nullptr;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < config.size()) {
    std::size_t end = config.find('\n', pos);
    if (end == std::string_view::npos) end = config.size();
    const std::string_view line = utf8::Trim(config.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (line == "[chatgpt]") {
      current = &chatgpt;
    } else if (line == "[human]") {
      current = &human;
    } else if (line.front() == '[' && line.back() == ']') {
      return absl::InvalidArgumentError(absl::StrCat(
          "lexicon line ", line_no, ": unknown section ", std::string(line)));
    } else if (current == nullptr) {
      return absl::InvalidArgumentError(absl::StrCat(
          "lexicon line ", line_no, ": phrase outside [chatgpt]/[human]"));
    } else {
      current->emplace_back(line);
    }
  }
  return Create(std::move(chatgpt), std::move(human), case_mode);
}

std::string_view IndicatingLexicon::DefaultConfig() { return kDefaultConfig; }

IndicatingLexicon IndicatingLexicon::Default(CaseMode case_mode) {
  return *Parse(kDefaultConfig, case_mode);
}

std::string IndicatingLexicon::Serialize() const {
  std::string out = "[chatgpt]\n";
  for (const std::string& phrase : chatgpt_phrases_) absl::StrAppend(&out, phrase, "\n");
  out += "[human]\n";
  for (const std::string& phrase : human_phrases_) absl::StrAppend(&out, phrase, "\n");
  return out;
}

bool IndicatingLexicon::Matches(std::string_view sentence) const {
  const std::string folded = case_mode_ == CaseMode::kInsensitive
                                 ? utf8::AsciiLower(sentence)
                                 : std::string(sentence);
  for (const std::string& key : match_keys_) {
    if (folded.find(key) != std::string::npos) return true;
  }
  return false;
}

}  // namespace hc3detect
