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

#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "hc3detect/corpus.h"

namespace hc3detect {
namespace {

using ::testing::ElementsAre;

TEST(LexiconTest, DefaultMatchesShippedFile) {
  auto file = ReadFile(HC3DETECT_SOURCE_DIR "/data/lexicon_default.txt");
  ASSERT_TRUE(file.ok()) << file.status();
  auto parsed = IndicatingLexicon::Parse(*file, CaseMode::kInsensitive);
  ASSERT_TRUE(parsed.ok()) << parsed.status();
  const auto builtin = IndicatingLexicon::Default(CaseMode::kInsensitive);
  EXPECT_EQ(parsed->chatgpt_phrases(), builtin.chatgpt_phrases());
  EXPECT_EQ(parsed->human_phrases(), builtin.human_phrases());
}

TEST(LexiconTest, CaseInsensitiveMatching) {
  const auto lexicon = IndicatingLexicon::Default(CaseMode::kInsensitive);
  EXPECT_TRUE(lexicon.Matches("As an ai ASSISTANT, I cannot."));
  EXPECT_TRUE(lexicon.Matches("hmm, not sure"));
  EXPECT_FALSE(lexicon.Matches("Plain sentence."));
}

TEST(LexiconTest, CaseSensitiveMatching) {
  const auto lexicon = IndicatingLexicon::Default(CaseMode::kSensitive);
  EXPECT_TRUE(lexicon.Matches("LOL that is funny"));
  EXPECT_FALSE(lexicon.Matches("lol that is funny"));
}

TEST(LexiconTest, ParseTrimsAndDeduplicates) {
  auto lexicon = IndicatingLexicon::Parse(
      "# comment\n[chatgpt]\n  alpha \nalpha\n\n[human]\nbeta\n",
      CaseMode::kSensitive);
  ASSERT_TRUE(lexicon.ok()) << lexicon.status();
  EXPECT_THAT(lexicon->chatgpt_phrases(), ElementsAre("alpha"));
  EXPECT_THAT(lexicon->human_phrases(), ElementsAre("beta"));
}

TEST(LexiconTest, ParseErrors) {
  EXPECT_FALSE(IndicatingLexicon::Parse("orphan\n", CaseMode::kSensitive).ok());
  EXPECT_FALSE(
      IndicatingLexicon::Parse("[robots]\nx\n", CaseMode::kSensitive).ok());
  EXPECT_FALSE(IndicatingLexicon::Create({" "}, {}, CaseMode::kSensitive).ok());
}

TEST(LexiconTest, SerializeRoundTrips) {
  const auto lexicon = IndicatingLexicon::Default(CaseMode::kInsensitive);
  auto again =
      IndicatingLexicon::Parse(lexicon.Serialize(), CaseMode::kInsensitive);
  ASSERT_TRUE(again.ok());
  EXPECT_EQ(again->chatgpt_phrases(), lexicon.chatgpt_phrases());
  EXPECT_EQ(again->human_phrases(), lexicon.human_phrases());
  EXPECT_EQ(again->Serialize(), lexicon.Serialize());
}

TEST(LexiconTest, ChineseDefaultIsCaseSensitive) {
  EXPECT_EQ(DefaultCaseMode(Language::kChinese), CaseMode::kSensitive);
  EXPECT_EQ(DefaultCaseMode(Language::kEnglish), CaseMode::kInsensitive);
}

}  // namespace
}  // namespace hc3detect
