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

#ifndef HC3DETECT_SENTENCE_SPLITTER_H_
#define HC3DETECT_SENTENCE_SPLITTER_H_

#include <string>
#include <string_view>
#include <vector>

#include "hc3detect/corpus.h"

namespace hc3detect {

// Splits text into sentences. A sentence ends after a run of terminal
// delimiters (. ! ? 。 ！ ？) plus any closing quotes or brackets that
// follow it. ASCII delimiters only end a sentence when followed by
// whitespace or the end of text; in Chinese text the full-width delimiters
// end a sentence immediately. A trailing undelimited fragment is its own
// sentence. Each sentence is returned with whitespace runs collapsed to a
// single space, so every boundary is also a token boundary for Tokenize().
std::vector<std::string> SplitSentences(std::string_view text,
                                        Language language);

}  // namespace hc3detect

#endif  // HC3DETECT_SENTENCE_SPLITTER_H_
