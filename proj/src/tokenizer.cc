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

#include "hc3detect/tokenizer.h"

#include <span>

#include "hc3detect/utf8.h"

namespace hc3detect {

namespace {

std::string Slice(std::string_view text, const utf8::Char& first,
                  const utf8::Char& last) {
  return std::string(
      text.substr(first.offset, last.offset + last.length - first.offset));
}

void TokenizeEnglishChunk(std::string_view text,
                          std::span<const utf8::Char> chunk,
                          std::vector<std::string>& out) {
  std::size_t begin = 0;
  std::size_t end = chunk.size();
  while (begin < end && utf8::IsPunct(chunk[begin].cp)) {
    out.push_back(Slice(text, chunk[begin], chunk[begin]));
    ++begin;
  }
  std::vector<std::string> trailing;
  while (end > begin && utf8::IsPunct(chunk[end - 1].cp)) {
    trailing.push_back(Slice(text, chunk[end - 1], chunk[end - 1]));
    --end;
  }
  if (begin < end) out.push_back(Slice(text, chunk[begin], chunk[end - 1]));
  out.insert(out.end(), trailing.rbegin(), trailing.rend());
}

std::vector<std::string> TokenizeEnglish(std::string_view text) {
  std::vector<std::string> out;
  const auto chars = utf8::Decode(text);
  std::size_t i = 0;
  while (i < chars.size()) {
    if (utf8::IsSpace(chars[i].cp)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < chars.size() && !utf8::IsSpace(chars[j].cp)) ++j;
    TokenizeEnglishChunk(text, std::span(chars).subspan(i, j - i), out);
    i = j;
  }
  return out;
}

std::vector<std::string> TokenizeChinese(std::string_view text) {
  std::vector<std::string> out;
  const auto chars = utf8::Decode(text);
  std::size_t i = 0;
  while (i < chars.size()) {
    const char32_t cp = chars[i].cp;
    if (utf8::IsSpace(cp)) {
      ++i;
      continue;
    }
    if (utf8::IsCjk(cp) || utf8::IsPunct(cp)) {
      out.push_back(Slice(text, chars[i], chars[i]));
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < chars.size() && !utf8::IsSpace(chars[j].cp) &&
           !utf8::IsCjk(chars[j].cp) && !utf8::IsPunct(chars[j].cp)) {
      ++j;
    }
    out.push_back(Slice(text, chars[i], chars[j - 1]));
    i = j;
  }
  return out;
}

}  // namespace

std::vector<std::string> Tokenize(std::string_view text, Language language) {
  return language == Language::kEnglish ? TokenizeEnglish(text)
                                        : TokenizeChinese(text);
}

}  // namespace hc3detect
