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

#ifndef HC3DETECT_UTF8_H_
#define HC3DETECT_UTF8_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hc3detect::utf8 {

// One decoded codepoint and the byte span it occupies in the source string.
// Malformed sequences decode to U+FFFD covering a single byte.
struct Char {
  char32_t cp;
  std::size_t offset;
  std::size_t length;
};

std::vector<Char> Decode(std::string_view text);

void Append(char32_t cp, std::string& out);

bool IsSpace(char32_t cp);

// Han ideographs, kana and Hangul syllables: one token per codepoint.
bool IsCjk(char32_t cp);

// ASCII punctuation plus the common Unicode punctuation and symbol blocks
// (general punctuation, CJK symbols, full-width forms).
bool IsPunct(char32_t cp);

// Trims leading/trailing whitespace (Unicode-aware).
std::string_view Trim(std::string_view text);

// Trims and replaces every interior whitespace run with one ASCII space.
std::string CollapseSpaces(std::string_view text);

// Folds ASCII letters to lowercase, leaving all other bytes intact.
std::string AsciiLower(std::string_view text);

}  // namespace hc3detect::utf8

#endif  // HC3DETECT_UTF8_H_
