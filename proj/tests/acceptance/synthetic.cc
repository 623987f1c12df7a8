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


#include "synthetic.h"

#include <algorithm>
#include <array>

#include "absl/strings/str_cat.h"

namespace hc3detect::acceptance {
namespace {

constexpr std::array<double, 4> kSuccessorWeights = {0.55, 0.25, 0.15, 0.05};

int Between(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.Below(static_cast<uint64_t>(hi - lo + 1)));
}

}  // namespace

TwoSourceGenerator::TwoSourceGenerator(int vocab_size) {
  double total = 0.0;
  for (int i = 0; i < vocab_size; ++i) {
    words_.push_back(absl::StrCat("w", i));
    total += 1.0 / (i + 1);
    zipf_cdf_.push_back(total);
  }
  for (double& c : zipf_cdf_) c /= total;
}

int TwoSourceGenerator::ZipfWord(Rng& rng) const {
  const double u = rng.Uniform();
  auto it = std::upper_bound(zipf_cdf_.begin(), zipf_cdf_.end(), u);
  return static_cast<int>(
      std::min<std::ptrdiff_t>(it - zipf_cdf_.begin(), zipf_cdf_.size() - 1));
}

std::string TwoSourceGenerator::Sentence(Rng& rng, bool markov) const {
  const int length = Between(rng, 6, 14);
  const auto n = static_cast<uint64_t>(words_.size());
  int prev2 = static_cast<int>(rng.Below(n));
  int prev1 = static_cast<int>(rng.Below(n));
  std::string out;
  for (int i = 0; i < length; ++i) {
    int next;
    if (markov) {
      const double u = rng.Uniform();
      int pick = 0;
      double acc = kSuccessorWeights[0];
      while (pick + 1 < static_cast<int>(kSuccessorWeights.size()) && u >= acc) {
        acc += kSuccessorWeights[++pick];
      }
      const uint64_t h = Fnv1a64(absl::StrCat(prev2, "|", prev1, "|", pick));
      next = static_cast<int>(h % n);
    } else {
      next = ZipfWord(rng);
    }
    if (i) out += ' ';
    out += words_[next];
    prev2 = prev1;
    prev1 = next;
  }
  out += " .";
  return out;
}

std::string TwoSourceGenerator::HumanText(Rng& rng) const {
  std::string out;
  for (int s = 0; s < 3; ++s) {
    if (s) out += ' ';
    out += Sentence(rng, true);
  }
  return out;
}

std::string TwoSourceGenerator::MachineText(Rng& rng) const {
  std::string out;
  for (int s = 0; s < 3; ++s) {
    if (s) out += ' ';
    out += Sentence(rng, false);
  }
  return out;
}

std::vector<ComparisonRecord> SyntheticRecords(const TwoSourceGenerator& gen,
                                               int n, uint64_t seed) {
  Rng rng(seed);
  const auto open_qa = SourceSplit::Create("open_qa");
  const auto finance = SourceSplit::Create("finance");
  std::vector<ComparisonRecord> records;
  records.reserve(n);
  for (int i = 0; i < n; ++i) {
    ComparisonRecord r;
    r.id = absl::StrCat("syn", i);
    r.question = absl::StrCat("what about ", gen.words()[i % gen.words().size()],
                              " ?");
    r.human_answers.push_back(gen.HumanText(rng));
    r.chatgpt_answers.push_back(gen.MachineText(rng));
    r.source = i % 2 ? *finance : *open_qa;
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace hc3detect::acceptance
