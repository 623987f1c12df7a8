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

// Client side of the neural scoring bridge. The bridge is a separate
// process wrapping a pretrained causal LM; it speaks newline-delimited JSON:
//
//   request:  {"id":int,"text":str,"context":str?,"model_hint":str?}
//   response: {"id":int,"tokens":[str],"logprobs":[float],"ranks":[int],
//              "error":str?}
//
// one record per line, one request in flight per connection.

#ifndef HC3DETECT_BRIDGE_CLIENT_H_
#define HC3DETECT_BRIDGE_CLIENT_H_

#include <condition_variable>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "hc3detect/token_scorer.h"

namespace hc3detect {

struct ScoreRequest {
  int64_t id = 0;
  std::string text;
  std::optional<std::string> context;
  std::optional<std::string> model_hint;
};

struct ScoreResponse {
  int64_t id = 0;
  std::vector<std::string> tokens;
  std::vector<double> logprobs;
  std::vector<int64_t> ranks;
  std::optional<std::string> error;
};

std::string EncodeRequest(const ScoreRequest& request);
absl::StatusOr<ScoreRequest> DecodeRequest(std::string_view line);

std::string EncodeResponse(const ScoreResponse& response);
// Also checks the response invariants: aligned lists, ranks >= 1, finite
// log-probabilities, and error present exactly when the lists are empty.
absl::StatusOr<ScoreResponse> DecodeResponse(std::string_view line);

// Bidirectional line transport.
class LineChannel {
 public:
  virtual ~LineChannel() = default;
  virtual absl::Status WriteLine(std::string_view line) = 0;
  // Returns the next line without its terminator.
  virtual absl::StatusOr<std::string> ReadLine() = 0;
};

// Addresses: "host:port" or "tcp://host:port" for a TCP bridge, and
// "exec:<shell command>" to spawn the bridge and talk over its stdin/stdout.
absl::StatusOr<std::unique_ptr<LineChannel>> OpenChannel(
    std::string_view address);

// TokenScorer backed by a pool of bridge connections.
class BridgeScorer : public TokenScorer {
 public:
  static absl::StatusOr<std::unique_ptr<BridgeScorer>> Connect(
      std::string address, int pool_size = 1,
      std::optional<std::string> model_hint = std::nullopt);

  // Takes ownership of already-open channels (used by tests).
  BridgeScorer(std::vector<std::unique_ptr<LineChannel>> channels,
               std::optional<std::string> model_hint);

  absl::StatusOr<std::vector<RankedToken>> Score(
      std::string_view text,
      std::optional<std::string_view> context) const override;

  std::string Describe() const override { return "bridge"; }

 private:
  std::unique_ptr<LineChannel> Acquire() const;
  void Release(std::unique_ptr<LineChannel> channel) const;

  std::optional<std::string> model_hint_;
  mutable std::mutex mu_;
  mutable std::condition_variable available_;
  mutable std::vector<std::unique_ptr<LineChannel>> idle_;
  mutable std::size_t live_ = 0;
  mutable int64_t next_id_ = 0;
};

}  // namespace hc3detect

#endif  // HC3DETECT_BRIDGE_CLIENT_H_
