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

#include "hc3detect/language_model.h"

#include <algorithm>
#include <cmath>

#include "hc3detect/tokenizer.h"

namespace hc3detect {

namespace {

const std::vector<std::string>& ReservedSurfaces() {
  static const std::vector<std::string> kReserved = {"<unk>", "<s>", "<sep>"};
  return kReserved;
}

}  // namespace

Vocabulary::Vocabulary() : Vocabulary(std::vector<std::string>{}) {}

Vocabulary::Vocabulary(std::vector<std::string> surfaces) {
  std::sort(surfaces.begin(), surfaces.end());
  surfaces.erase(std::unique(surfaces.begin(), surfaces.end()),
                 surfaces.end());
  surfaces_ = ReservedSurfaces();
  for (std::string& surface : surfaces) {
    if (surface.empty() ||
        std::find(ReservedSurfaces().begin(), ReservedSurfaces().end(),
                  surface) != ReservedSurfaces().end()) {
      continue;
    }
    surfaces_.push_back(std::move(surface));
  }
  for (std::size_t i = 0; i < surfaces_.size(); ++i) {
    ids_.emplace(surfaces_[i], static_cast<TokenId>(i));
  }
}

TokenId Vocabulary::Lookup(std::string_view surface) const {
  auto it = ids_.find(std::string(surface));
  return it == ids_.end() ? kUnkId : it->second;
}

double ProbabilityModel::LogProb(std::span<const TokenId> history,
                                 TokenId next) const {
  return std::log(Distribution(history)[next]);
}

int64_t ProbabilityModel::Rank(std::span<const TokenId> history,
                               TokenId next) const {
  const std::vector<double> dist = Distribution(history);
  const double p = dist[next];
  int64_t rank = 1;
  for (std::size_t id = 0; id < dist.size(); ++id) {
    if (dist[id] > p ||
        (dist[id] == p && static_cast<TokenId>(id) < next)) {
      ++rank;
    }
  }
  return rank;
}

std::vector<double> UniformModel::Distribution(
    std::span<const TokenId> /*history*/) const {
  return std::vector<double>(vocabulary_.size(),
                             1.0 / static_cast<double>(vocabulary_.size()));
}

double UniformModel::LogProb(std::span<const TokenId> /*history*/,
                             TokenId /*next*/) const {
  return -std::log(static_cast<double>(vocabulary_.size()));
}

int64_t UniformModel::Rank(std::span<const TokenId> /*history*/,
                           TokenId next) const {
  return static_cast<int64_t>(next) + 1;
}

absl::StatusOr<std::vector<RankedToken>> RankTokenSequence(
    const ProbabilityModel& model, std::span<const std::string> tokens,
    std::span<const std::string> conditioning) {
  if (tokens.empty()) {
    return absl::InvalidArgumentError("empty token stream");
  }
  const Vocabulary& vocab = model.vocabulary();
  std::vector<TokenId> history;
  history.reserve(conditioning.size() + tokens.size() + 2);
  history.push_back(kBosId);
  if (!conditioning.empty()) {
    for (const std::string& token : conditioning) {
      history.push_back(vocab.Lookup(token));
    }
    history.push_back(kSepId);
  }
  std::vector<RankedToken> ranked;
  ranked.reserve(tokens.size());
  for (const std::string& token : tokens) {
    const TokenId id = vocab.Lookup(token);
    RankedToken r;
    r.surface = token;
    r.token_id = id;
    r.logprob = model.LogProb(history, id);
    r.rank = model.Rank(history, id);
    ranked.push_back(std::move(r));
    history.push_back(id);
  }
  return ranked;
}

absl::StatusOr<std::vector<RankedToken>> RankTokens(
    const ProbabilityModel& model, std::string_view text,
    std::optional<std::string_view> conditioning, Language language) {
  const auto tokens = Tokenize(text, language);
  std::vector<std::string> context;
  if (conditioning.has_value()) context = Tokenize(*conditioning, language);
  return RankTokenSequence(model, tokens, context);
}

}  // namespace hc3detect
