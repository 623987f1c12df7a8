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

#include "hc3detect/sentence_splitter.h"

#include "hc3detect/utf8.h"

namespace hc3detect {

namespace {

bool IsAsciiTerminal(char32_t cp) { return cp == '.' || cp == '!' || cp == '?'; }

bool IsWideTerminal(char32_t cp) {
  return cp == U'。' || cp == U'！' || cp == U'？';
}

bool IsCloser(char32_t cp) {
  switch (cp) {
    case '"':
    case '\'':
    case ')':
    case ']':
    case '}':
    case U'”':
    case U'’':
    case U'»':
    case U'」':
    case U'』':
    case U'》':
    case U'〉':
    case U'）':
    case U'】':
    case U'］':
    case U'〕':
      return true;
    default:
      return false;
  }
}

}  // namespace

std::vector<std::string> SplitSentences(std::string_view text,
                                        Language language) {
  std::vector<std::string> sentences;
  const auto chars = utf8::Decode(text);
  auto emit = [&](std::size_t begin_char, std::size_t end_char) {
    if (begin_char >= end_char) return;
    const std::size_t begin = chars[begin_char].offset;
    const std::size_t end =
        chars[end_char - 1].offset + chars[end_char - 1].length;
    std::string sentence = utf8::CollapseSpaces(text.substr(begin, end - begin));
    if (!sentence.empty()) sentences.push_back(std::move(sentence));
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < chars.size()) {
    const char32_t cp = chars[i].cp;
    if (!IsAsciiTerminal(cp) && !IsWideTerminal(cp)) {
      ++i;
      continue;
    }
    bool wide = false;
    std::size_t j = i;
    while (j < chars.size() &&
           (IsAsciiTerminal(chars[j].cp) || IsWideTerminal(chars[j].cp))) {
      wide = wide || IsWideTerminal(chars[j].cp);
      ++j;
    }
    while (j < chars.size() && IsCloser(chars[j].cp)) ++j;
    const bool at_space = j == chars.size() || utf8::IsSpace(chars[j].cp);
    if (at_space || (wide && language == Language::kChinese)) {
      emit(start, j);
      start = j;
    }
    i = j;
  }
  emit(start, chars.size());
  return sentences;
}

}  // namespace hc3detect
