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

#include "hc3detect/ngram_model.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <map>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "hc3detect/tokenizer.h"

namespace hc3detect {

namespace {

constexpr std::string_view kMagic = "hc3detect-ngram";
constexpr int kFormatVersion = 1;

std::string PackIds(std::span<const TokenId> ids) {
  std::string key(ids.size() * sizeof(TokenId), '\0');
  std::memcpy(key.data(), ids.data(), key.size());
  return key;
}

std::vector<TokenId> UnpackIds(const std::string& key) {
  std::vector<TokenId> ids(key.size() / sizeof(TokenId));
  std::memcpy(ids.data(), key.data(), key.size());
  return ids;
}

}  // namespace

int64_t NGramModel::Counts::Get(TokenId id) const {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), id,
      [](const std::pair<TokenId, int64_t>& e, TokenId v) { return e.first < v; });
  return (it != entries.end() && it->first == id) ? it->second : 0;
}

std::string NGramModel::ContextKey(std::span<const TokenId> history) const {
  const std::size_t width = static_cast<std::size_t>(order_ - 1);
  std::vector<TokenId> context(width, kBosId);
  const std::size_t take = std::min(width, history.size());
  std::copy(history.end() - static_cast<std::ptrdiff_t>(take), history.end(),
            context.end() - static_cast<std::ptrdiff_t>(take));
  return PackIds(context);
}

const NGramModel::Counts& NGramModel::CountsFor(
    std::span<const TokenId> history) const {
  if (order_ == 1) return unigram_;
  auto it = contexts_.find(ContextKey(history));
  return it == contexts_.end() ? unigram_ : it->second;
}

bool NGramModel::HasContext(std::span<const TokenId> history) const {
  return order_ > 1 && contexts_.contains(ContextKey(history));
}

std::vector<double> NGramModel::Distribution(
    std::span<const TokenId> history) const {
  const Counts& counts = CountsFor(history);
  const double v = static_cast<double>(vocabulary_.size());
  const double denom = static_cast<double>(counts.total) + k_ * v;
  std::vector<double> dist(vocabulary_.size(), k_ / denom);
  for (const auto& [id, count] : counts.entries) {
    dist[id] = (static_cast<double>(count) + k_) / denom;
  }
  return dist;
}

double NGramModel::LogProb(std::span<const TokenId> history,
                           TokenId next) const {
  const Counts& counts = CountsFor(history);
  const double v = static_cast<double>(vocabulary_.size());
  const double denom = static_cast<double>(counts.total) + k_ * v;
  return std::log((static_cast<double>(counts.Get(next)) + k_) / denom);
}

int64_t NGramModel::Rank(std::span<const TokenId> history,
                         TokenId next) const {
  // Probability is strictly increasing in the count, so ranks follow from
  // the sparse counts without materializing the distribution.
  const Counts& counts = CountsFor(history);
  const int64_t target = counts.Get(next);
  int64_t rank = 1;
  if (target > 0) {
    for (const auto& [id, count] : counts.entries) {
      if (count > target || (count == target && id < next)) ++rank;
    }
    return rank;
  }
  int64_t seen_below = 0;
  for (const auto& [id, count] : counts.entries) {
    if (id < next) ++seen_below;
  }
  return rank + static_cast<int64_t>(counts.entries.size()) +
         (static_cast<int64_t>(next) - seen_below);
}

absl::StatusOr<NGramModel> TrainNGram(std::span<const std::string> texts,
                                      int order, double k, Language language) {
  if (order < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("n-gram order must be >= 1, got ", order));
  }
  if (!(k > 0.0) || !std::isfinite(k)) {
    return absl::InvalidArgumentError(
        absl::StrCat("smoothing constant must be > 0, got ", k));
  }
  std::vector<std::vector<std::string>> tokenized;
  tokenized.reserve(texts.size());
  std::vector<std::string> surfaces;
  for (const std::string& text : texts) {
    tokenized.push_back(Tokenize(text, language));
    surfaces.insert(surfaces.end(), tokenized.back().begin(),
                    tokenized.back().end());
  }
  if (surfaces.empty()) {
    return absl::InvalidArgumentError("cannot train on an empty corpus");
  }

  NGramModel model;
  model.vocabulary_ = Vocabulary(std::move(surfaces));
  model.order_ = order;
  model.k_ = k;
  model.language_ = language;

  std::map<TokenId, int64_t> unigram;
  std::unordered_map<std::string, std::map<TokenId, int64_t>> contexts;
  for (const auto& tokens : tokenized) {
    std::vector<TokenId> history(static_cast<std::size_t>(order - 1), kBosId);
    for (const std::string& token : tokens) {
      const TokenId id = model.vocabulary_.Lookup(token);
      ++unigram[id];
      if (order > 1) ++contexts[model.ContextKey(history)][id];
      history.push_back(id);
    }
  }
  auto freeze = [](const std::map<TokenId, int64_t>& table) {
    NGramModel::Counts counts;
    for (const auto& [id, count] : table) {
      counts.entries.emplace_back(id, count);
      counts.total += count;
    }
    return counts;
  };
  model.unigram_ = freeze(unigram);
  for (const auto& [key, table] : contexts) {
    model.contexts_.emplace(key, freeze(table));
  }
  return model;
}

std::string NGramModel::Serialize() const {
  std::string out;
  absl::StrAppend(&out, std::string(kMagic), " ", kFormatVersion, "\n");
  absl::StrAppend(&out, "order ", order_, "\n");
  absl::StrAppend(&out, absl::StrFormat("k %.17g\n", k_));
  absl::StrAppend(&out, "language ", std::string(LanguageName(language_)), "\n");
  absl::StrAppend(&out, "vocab ", vocabulary_.size(), "\n");
  for (const std::string& surface : vocabulary_.surfaces()) {
    absl::StrAppend(&out, surface, "\n");
  }
  auto append_counts = [&out](const Counts& counts) {
    absl::StrAppend(&out, counts.total, " ", counts.entries.size());
    for (const auto& [id, count] : counts.entries) {
      absl::StrAppend(&out, " ", id, ":", count);
    }
    out += '\n';
  };
  out += "unigram ";
  append_counts(unigram_);
  absl::StrAppend(&out, "contexts ", contexts_.size(), "\n");
  std::map<std::vector<TokenId>, const Counts*> sorted;
  for (const auto& [key, counts] : contexts_) {
    sorted.emplace(UnpackIds(key), &counts);
  }
  for (const auto& [ids, counts] : sorted) {
    for (TokenId id : ids) absl::StrAppend(&out, id, " ");
    append_counts(*counts);
  }
  return out;
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool Next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    std::size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    line = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    ++line_no_;
    return true;
  }
  int line_no() const { return line_no_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_no_ = 0;
};

std::vector<std::string_view> SplitOn(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = s.find(sep, start);
    if (end == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
}

template <typename T>
bool ParseNumber(std::string_view s, T& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

absl::StatusOr<NGramModel> NGramModel::Deserialize(std::string_view dump) {
  LineReader reader(dump);
  std::string_view line;
  auto bad = [&](std::string_view what) {
    return absl::InvalidArgumentError(absl::StrCat(
        "n-gram dump line ", reader.line_no(), ": ", std::string(what)));
  };
  auto expect_field = [&](std::string_view name,
                          std::string_view& value) -> bool {
    if (!reader.Next(line)) return false;
    if (line.size() <= name.size() + 1 || line.substr(0, name.size()) != name ||
        line[name.size()] != ' ') {
      return false;
    }
    value = line.substr(name.size() + 1);
    return true;
  };

  std::string_view value;
  if (!expect_field(kMagic, value)) return bad("not an n-gram model dump");
  int version = 0;
  if (!ParseNumber(value, version) || version != kFormatVersion) {
    return bad(absl::StrCat("unsupported format version '", std::string(value),
                            "'"));
  }
  NGramModel model;
  if (!expect_field("order", value) || !ParseNumber(value, model.order_) ||
      model.order_ < 1) {
    return bad("bad order");
  }
  if (!expect_field("k", value)) return bad("missing k");
  model.k_ = std::strtod(std::string(value).c_str(), nullptr);
  if (!(model.k_ > 0.0)) return bad("bad k");
  if (!expect_field("language", value)) return bad("missing language");
  auto language = ParseLanguage(value);
  if (!language.ok()) return bad(std::string(language.status().message()));
  model.language_ = *language;
  std::size_t vocab_size = 0;
  if (!expect_field("vocab", value) || !ParseNumber(value, vocab_size) ||
      vocab_size < static_cast<std::size_t>(kNumReservedIds)) {
    return bad("bad vocab size");
  }
  std::vector<std::string> surfaces;
  for (std::size_t i = 0; i < vocab_size; ++i) {
    if (!reader.Next(line)) return bad("truncated vocabulary");
    if (i >= static_cast<std::size_t>(kNumReservedIds)) {
      surfaces.emplace_back(line);
    }
  }
  model.vocabulary_ = Vocabulary(surfaces);
  if (model.vocabulary_.size() != vocab_size) {
    return bad("vocabulary is not sorted and unique");
  }

  auto parse_counts = [&](std::vector<std::string_view> fields,
                          Counts& counts) -> absl::Status {
    std::size_t n = 0;
    if (fields.size() < 2 || !ParseNumber(fields[0], counts.total) ||
        !ParseNumber(fields[1], n) || fields.size() != n + 2) {
      return bad("bad count table");
    }
    int64_t sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::vector<std::string_view> kv = SplitOn(fields[i + 2], ':');
      TokenId id = 0;
      int64_t count = 0;
      if (kv.size() != 2 || !ParseNumber(kv[0], id) ||
          !ParseNumber(kv[1], count) ||
          id < 0 || static_cast<std::size_t>(id) >= vocab_size || count <= 0 ||
          (!counts.entries.empty() && counts.entries.back().first >= id)) {
        return bad("bad count entry");
      }
      counts.entries.emplace_back(id, count);
      sum += count;
    }
    if (sum != counts.total) return bad("count total mismatch");
    return absl::OkStatus();
  };

  if (!expect_field("unigram", value)) return bad("missing unigram table");
  if (auto s = parse_counts(SplitOn(value, ' '), model.unigram_);
      !s.ok()) {
    return s;
  }
  std::size_t n_contexts = 0;
  if (!expect_field("contexts", value) || !ParseNumber(value, n_contexts)) {
    return bad("bad context count");
  }
  const std::size_t width = static_cast<std::size_t>(model.order_ - 1);
  for (std::size_t c = 0; c < n_contexts; ++c) {
    if (!reader.Next(line)) return bad("truncated context tables");
    std::vector<std::string_view> fields = SplitOn(line, ' ');
    if (fields.size() < width + 2) return bad("short context line");
    std::vector<TokenId> ids(width);
    for (std::size_t i = 0; i < width; ++i) {
      if (!ParseNumber(fields[i], ids[i]) || ids[i] < 0 ||
          static_cast<std::size_t>(ids[i]) >= vocab_size) {
        return bad("bad context id");
      }
    }
    Counts counts;
    if (auto s = parse_counts(
            std::vector<std::string_view>(fields.begin() + width, fields.end()),
            counts);
        !s.ok()) {
      return s;
    }
    model.contexts_.emplace(PackIds(ids), std::move(counts));
  }
  return model;
}

absl::Status NGramModel::Save(const std::filesystem::path& path) const {
  return WriteFile(path, Serialize());
}

absl::StatusOr<NGramModel> NGramModel::Load(const std::filesystem::path& path) {
  auto content = ReadFile(path);
  if (!content.ok()) return content.status();
  return Deserialize(*content);
}

}  // namespace hc3detect
