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

#include "hc3detect/features.h"

#include <cmath>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "hc3detect/ngram_model.h"
#include "hc3detect/token_scorer.h"
#include "hc3detect/tokenizer.h"
#include "testing/test_util.h"

namespace hc3detect {
namespace {

using ::testing::ElementsAre;

std::vector<RankedToken> WithRanks(const std::vector<int64_t>& ranks) {
  std::vector<RankedToken> out;
  for (int64_t r : ranks) {
    RankedToken t;
    t.surface = "t";
    t.rank = r;
    out.push_back(t);
  }
  return out;
}

std::vector<RankedToken> WithLogprobs(const std::vector<double>& logprobs) {
  std::vector<RankedToken> out;
  for (double lp : logprobs) {
    RankedToken t;
    t.surface = "t";
    t.logprob = lp;
    out.push_back(t);
  }
  return out;
}

TEST(RankBucketTest, Boundaries) {
  EXPECT_EQ(RankBucket(1), 0);
  EXPECT_EQ(RankBucket(10), 0);
  EXPECT_EQ(RankBucket(11), 1);
  EXPECT_EQ(RankBucket(100), 1);
  EXPECT_EQ(RankBucket(101), 2);
  EXPECT_EQ(RankBucket(1000), 2);
  EXPECT_EQ(RankBucket(1001), 3);
}

TEST(GltrFeaturesTest, AllTopTen) {
  auto f = GltrFeatures(WithRanks({1, 2, 3, 4, 5, 6, 7}));
  ASSERT_TRUE(f.ok());
  EXPECT_THAT(f->counts, ElementsAre(7, 0, 0, 0));
  EXPECT_THAT(f->fractions, ElementsAre(1.0, 0.0, 0.0, 0.0));
  EXPECT_EQ(f->token_count, 7);
}

TEST(GltrFeaturesTest, OnePerBucket) {
  auto f = GltrFeatures(WithRanks({5, 50, 500, 5000}));
  ASSERT_TRUE(f.ok());
  EXPECT_THAT(f->counts, ElementsAre(1, 1, 1, 1));
  EXPECT_THAT(f->fractions, ElementsAre(0.25, 0.25, 0.25, 0.25));
}

TEST(GltrFeaturesTest, EmptyStreamIsAnError) {
  EXPECT_FALSE(GltrFeatures({}).ok());
}

TEST(GltrFeaturesTest, BucketSumInvariant) {
  Rng rng(1000);
  for (int n = 0; n < 1000; ++n) {
    std::vector<int64_t> ranks(1 + rng.Below(300));
    for (auto& r : ranks) r = 1 + static_cast<int64_t>(rng.Below(5000));
    auto f = GltrFeatures(WithRanks(ranks));
    ASSERT_TRUE(f.ok());
    int64_t total = 0;
    double fraction_sum = 0.0;
    for (int b = 0; b < kNumRankBuckets; ++b) {
      total += f->counts[b];
      fraction_sum += f->fractions[b];
    }
    EXPECT_EQ(total, static_cast<int64_t>(ranks.size()));
    EXPECT_EQ(f->token_count, static_cast<int64_t>(ranks.size()));
    EXPECT_NEAR(fraction_sum, 1.0, 1e-12);
  }
}

TEST(PerplexityTest, HandExamples) {
  auto half = Perplexity(WithLogprobs({-std::log(2.0), -std::log(2.0)}), {});
  ASSERT_TRUE(half.ok());
  EXPECT_NEAR(half->text_ppl, 2.0, 1e-12);
  // exp((ln 2 + ln 4 + ln 8) / 3) = exp(2 ln 2) = 4.
  auto mixed = Perplexity(
      WithLogprobs({-std::log(2.0), -std::log(4.0), -std::log(8.0)}), {});
  ASSERT_TRUE(mixed.ok());
  EXPECT_NEAR(mixed->text_ppl, 4.0, 1e-12);
  EXPECT_FALSE(Perplexity({}, {}).ok());
}

TEST(PerplexityTest, UniformModelGivesVocabularySize) {
  UniformModel four(Vocabulary({"x"}));  // three reserved ids plus "x"
  ModelScorer scorer4(four, Language::kEnglish);
  auto r = TextPerplexity(scorer4, "x y z. w", Language::kEnglish);
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r->text_ppl, 4.0, 4.0 * 1e-12);

  Rng rng(50);
  for (int n = 0; n < 50; ++n) {
    std::vector<std::string> words;
    const int v = 1 + static_cast<int>(rng.Below(200));
    for (int i = 0; i < v; ++i) words.push_back("w" + std::to_string(i));
    UniformModel model{Vocabulary(words)};
    ModelScorer scorer(model, Language::kEnglish);
    const std::string text =
        testing::RandomParagraph(rng, 1 + static_cast<int>(rng.Below(4)));
    auto report = TextPerplexity(scorer, text, Language::kEnglish);
    ASSERT_TRUE(report.ok());
    const double size = static_cast<double>(model.vocabulary().size());
    EXPECT_NEAR(report->text_ppl, size, size * 1e-12);
    for (double p : report->sentence_ppls) EXPECT_NEAR(p, size, size * 1e-12);
  }
}

TEST(PerplexityTest, AtLeastOneForProbabilities) {
  Rng rng(51);
  for (int n = 0; n < 500; ++n) {
    std::vector<double> lps(1 + rng.Below(50));
    for (auto& lp : lps) lp = std::log(1e-9 + (1.0 - 1e-9) * rng.Uniform());
    auto r = Perplexity(WithLogprobs(lps), {});
    ASSERT_TRUE(r.ok());
    EXPECT_GE(r->text_ppl, 1.0);
  }
  auto certain = Perplexity(WithLogprobs({0.0, 0.0}), {});
  EXPECT_EQ(certain->text_ppl, 1.0);
}

TEST(PerplexityTest, ConcatenationIsLengthWeighted) {
  Rng rng(52);
  for (int n = 0; n < 100; ++n) {
    std::vector<double> a(1 + rng.Below(20)), b(1 + rng.Below(20));
    for (auto& lp : a) lp = -5.0 * rng.Uniform();
    for (auto& lp : b) lp = -5.0 * rng.Uniform();
    std::vector<double> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    const double pa = Perplexity(WithLogprobs(a), {})->text_ppl;
    const double pb = Perplexity(WithLogprobs(b), {})->text_ppl;
    const double pab = Perplexity(WithLogprobs(ab), {})->text_ppl;
    const double expected = std::exp(
        (a.size() * std::log(pa) + b.size() * std::log(pb)) / ab.size());
    EXPECT_NEAR(pab, expected, expected * 1e-12);
    std::vector<double> aa = a;
    aa.insert(aa.end(), a.begin(), a.end());
    EXPECT_NEAR(Perplexity(WithLogprobs(aa), {})->text_ppl, pa, pa * 1e-12);
  }
}

TEST(PerplexityTest, SentenceRanges) {
  const auto stream =
      WithLogprobs({-std::log(2.0), -std::log(2.0), -std::log(8.0)});
  const std::vector<TokenRange> ranges = {{0, 2}, {2, 2}, {2, 3}};
  auto r = Perplexity(stream, ranges);
  ASSERT_TRUE(r.ok());
  EXPECT_THAT(r->sentence_ppls, ElementsAre(::testing::DoubleNear(2.0, 1e-12),
                                            ::testing::DoubleNear(8.0, 1e-12)));
  EXPECT_EQ(r->skipped_sentences, 1);
  const std::vector<TokenRange> gap = {{0, 1}, {2, 3}};
  EXPECT_FALSE(Perplexity(stream, gap).ok());
  const std::vector<TokenRange> short_cover = {{0, 2}};
  EXPECT_FALSE(Perplexity(stream, short_cover).ok());
}

class QaModeTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::vector<std::string> texts = {
        "Why is water wet ? Water is wet because it is",
        "The bank is open . Money is in the bank",
        "Water and money and time",
    };
    auto model = TrainNGram(texts, 2, 0.1, Language::kEnglish);
    ASSERT_TRUE(model.ok());
    model_ = *std::move(model);
  }
  std::optional<NGramModel> model_;
};

TEST_F(QaModeTest, SameTokenCountDifferentContext) {
  ModelScorer scorer(*model_, Language::kEnglish);
  // "Money" never follows BOS, but is an ordinary unigram.
  auto sample = testing::MakeSample("r", 0, "Money is in the bank");
  sample.question = "Where is money ?";
  auto off = FeaturizeSample(sample, scorer, false);
  auto on = FeaturizeSample(sample, scorer, true);
  ASSERT_TRUE(off.ok() && on.ok());
  EXPECT_EQ(off->token_count, on->token_count);
  auto plain = scorer.Score(sample.text, std::nullopt);
  auto conditioned = scorer.Score(sample.text, *sample.question);
  EXPECT_NE((*plain)[0].rank, (*conditioned)[0].rank);
}

TEST_F(QaModeTest, BlankQuestionMatchesPlainMode) {
  ModelScorer scorer(*model_, Language::kEnglish);
  auto sample = testing::MakeSample("r", 1, "Money is in the bank");
  sample.question = "   ";
  EXPECT_EQ(*FeaturizeSample(sample, scorer, true),
            *FeaturizeSample(sample, scorer, false));
  sample.question.reset();
  EXPECT_FALSE(FeaturizeSample(sample, scorer, true).ok());
}

TEST(ClassifierInputTest, FractionsCountsAndLength) {
  GltrFeatureVector f = *GltrFeatures(WithRanks({1, 20, 20, 2000}));
  FeatureConfig config;
  EXPECT_THAT(ClassifierInput(f, config),
              ElementsAre(0.25, 0.5, 0.0, 0.25, std::log(4.0)));
  config.scale = FeatureScale::kCounts;
  config.length_feature = false;
  EXPECT_THAT(ClassifierInput(f, config), ElementsAre(1.0, 2.0, 0.0, 1.0));
  EXPECT_EQ(config.Dimension(), 4u);
  EXPECT_EQ(config.Descriptor(), "counts");
}

TEST(FeatureConfigTest, JsonRoundTrip) {
  FeatureConfig config{FeatureScale::kCounts, false, true};
  auto back = FeatureConfig::FromJson(nlohmann::json::parse(config.ToJson().dump()));
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(*back, config);
  EXPECT_EQ(config.Descriptor(), "counts+qa");
  EXPECT_FALSE(FeatureConfig::FromJson(nlohmann::json::object()).ok());
}

TEST(FeaturizeSamplesTest, ParallelMatchesSerialAndRoundTrips) {
  Rng rng(60);
  std::vector<std::string> texts;
  std::vector<LabeledSample> samples;
  for (int i = 0; i < 40; ++i) {
    texts.push_back(testing::RandomParagraph(rng, 2));
    samples.push_back(testing::MakeSample("r" + std::to_string(i), i % 2,
                                          testing::RandomParagraph(rng, 1)));
  }
  auto model = TrainNGram(texts, 3, 0.1, Language::kEnglish);
  ASSERT_TRUE(model.ok());
  ModelScorer scorer(*model, Language::kEnglish);
  auto serial = FeaturizeSamples(samples, scorer, false, 1);
  auto parallel = FeaturizeSamples(samples, scorer, false, 4);
  ASSERT_TRUE(serial.ok() && parallel.ok());
  EXPECT_EQ(SerializeFeatures(*serial), SerializeFeatures(*parallel));
  auto parsed = ParseFeatures(SerializeFeatures(*serial));
  ASSERT_TRUE(parsed.ok()) << parsed.status();
  EXPECT_EQ(SerializeFeatures(*parsed), SerializeFeatures(*serial));
}

TEST(ParseFeaturesTest, RejectsInconsistentCounts) {
  EXPECT_FALSE(ParseFeatures(R"({"sample_id":"a","label":0,"counts":[1,1,0,0],"token_count":3})").ok());
  EXPECT_FALSE(ParseFeatures(R"({"sample_id":"a","label":2,"counts":[1,0,0,0],"token_count":1})").ok());
  EXPECT_FALSE(ParseFeatures(R"({"sample_id":"a","label":0,"counts":[1,0,0],"token_count":1})").ok());
  EXPECT_TRUE(ParseFeatures(R"({"sample_id":"a","label":0,"counts":[1,0,0,0],"token_count":1})").ok());
}

}  // namespace
}  // namespace hc3detect
