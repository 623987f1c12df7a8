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

#ifndef HC3DETECT_TOKENIZER_H_
#define HC3DETECT_TOKENIZER_H_

#include <string>
#include <string_view>
#include <vector>

#include "hc3detect/corpus.h"

namespace hc3detect {

// Rule-based word tokenizer used by the n-gram model and the vocabulary
// statistics.
//
// English: whitespace-separated chunks; every leading and trailing
// punctuation character of a chunk becomes its own token, the remaining
// core (which may contain inner punctuation, e.g. "don't") is one token.
//
// Chinese: each CJK codepoint and each punctuation character is a token;
// maximal runs of any other non-space characters (Latin letters, digits)
// form one token.
std::vector<std::string> Tokenize(std::string_view text, Language language);

}  // namespace hc3detect

#endif  // HC3DETECT_TOKENIZER_H_
