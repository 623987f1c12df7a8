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

#include "hc3detect/bridge_client.h"

#include <fcntl.h>
#include <netdb.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstring>

#include "absl/strings/str_cat.h"
#include "json.hpp"

namespace hc3detect {

using nlohmann::json;

std::string EncodeRequest(const ScoreRequest& request) {
  nlohmann::ordered_json value;
  value["id"] = request.id;
  value["text"] = request.text;
  if (request.context.has_value()) value["context"] = *request.context;
  if (request.model_hint.has_value()) value["model_hint"] = *request.model_hint;
  return value.dump();
}

absl::StatusOr<ScoreRequest> DecodeRequest(std::string_view line) {
  json value = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (value.is_discarded() || !value.is_object()) {
    return absl::InvalidArgumentError("request is not a JSON object");
  }
  ScoreRequest request;
  auto id = value.find("id");
  if (id == value.end() || !id->is_number_integer() || id->get<int64_t>() < 0) {
    return absl::InvalidArgumentError("request id must be an integer >= 0");
  }
  request.id = id->get<int64_t>();
  auto text = value.find("text");
  if (text == value.end() || !text->is_string()) {
    return absl::InvalidArgumentError("request text must be a string");
  }
  request.text = text->get<std::string>();
  for (const char* key : {"context", "model_hint"}) {
    auto it = value.find(key);
    if (it == value.end() || it->is_null()) continue;
    if (!it->is_string()) {
      return absl::InvalidArgumentError(
          absl::StrCat("request ", key, " must be a string"));
    }
    (std::string_view(key) == "context" ? request.context
                                        : request.model_hint) =
        it->get<std::string>();
  }
  return request;
}

std::string EncodeResponse(const ScoreResponse& response) {
  nlohmann::ordered_json value;
  value["id"] = response.id;
  value["tokens"] = response.tokens;
  value["logprobs"] = response.logprobs;
  value["ranks"] = response.ranks;
  if (response.error.has_value()) value["error"] = *response.error;
  return value.dump();
}

absl::StatusOr<ScoreResponse> DecodeResponse(std::string_view line) {
  json value = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (value.is_discarded() || !value.is_object()) {
    return absl::DataLossError("bridge response is not a JSON object");
  }
  ScoreResponse response;
  auto id = value.find("id");
  if (id == value.end() || !id->is_number_integer()) {
    return absl::DataLossError("bridge response has no integer id");
  }
  response.id = id->get<int64_t>();
  auto tokens = value.find("tokens");
  auto logprobs = value.find("logprobs");
  auto ranks = value.find("ranks");
  if (tokens == value.end() || !tokens->is_array() || logprobs == value.end() ||
      !logprobs->is_array() || ranks == value.end() || !ranks->is_array()) {
    return absl::DataLossError(
        "bridge response needs tokens, logprobs and ranks arrays");
  }
  for (const json& t : *tokens) {
    if (!t.is_string()) return absl::DataLossError("token is not a string");
    response.tokens.push_back(t.get<std::string>());
  }
  for (const json& lp : *logprobs) {
    if (!lp.is_number() || !std::isfinite(lp.get<double>())) {
      return absl::DataLossError("logprob is not a finite number");
    }
    response.logprobs.push_back(lp.get<double>());
  }
  for (const json& r : *ranks) {
    if (!r.is_number_integer() || r.get<int64_t>() < 1) {
      return absl::DataLossError("rank is not an integer >= 1");
    }
    response.ranks.push_back(r.get<int64_t>());
  }
  if (response.tokens.size() != response.logprobs.size() ||
      response.tokens.size() != response.ranks.size()) {
    return absl::DataLossError("bridge response lists are not aligned");
  }
  if (auto error = value.find("error"); error != value.end() && !error->is_null()) {
    if (!error->is_string()) {
      return absl::DataLossError("bridge error field is not a string");
    }
    response.error = error->get<std::string>();
  }
  if (response.error.has_value() != response.tokens.empty()) {
    return absl::DataLossError(
        "bridge response must carry an error exactly when it has no tokens");
  }
  return response;
}

namespace {

// Line I/O over a pair of file descriptors (equal for sockets).
class FdChannel : public LineChannel {
 public:
  FdChannel(int read_fd, int write_fd, bool is_socket, pid_t child = -1)
      : read_fd_(read_fd), write_fd_(write_fd), is_socket_(is_socket),
        child_(child) {}

  ~FdChannel() override {
    if (write_fd_ != read_fd_) ::close(write_fd_);
    ::close(read_fd_);
    if (child_ > 0) {
      int status = 0;
      ::waitpid(child_, &status, 0);
    }
  }

  absl::Status WriteLine(std::string_view line) override {
    std::string data(line);
    data.push_back('\n');
    std::size_t sent = 0;
    while (sent < data.size()) {
      const ssize_t n =
          is_socket_ ? ::send(write_fd_, data.data() + sent, data.size() - sent,
                              MSG_NOSIGNAL)
                     : ::write(write_fd_, data.data() + sent, data.size() - sent);
      if (n < 0) {
        if (errno == EINTR) continue;
        return absl::UnavailableError(
            absl::StrCat("bridge write failed: ", std::strerror(errno)));
      }
      sent += static_cast<std::size_t>(n);
    }
    return absl::OkStatus();
  }

  absl::StatusOr<std::string> ReadLine() override {
    while (true) {
      const std::size_t nl = buffer_.find('\n');
      if (nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
      }
      char chunk[4096];
      const ssize_t n = ::read(read_fd_, chunk, sizeof(chunk));
      if (n < 0) {
        if (errno == EINTR) continue;
        return absl::UnavailableError(
            absl::StrCat("bridge read failed: ", std::strerror(errno)));
      }
      if (n == 0) return absl::UnavailableError("bridge closed the connection");
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

 private:
  int read_fd_;
  int write_fd_;
  bool is_socket_;
  pid_t child_;
  std::string buffer_;
};

absl::StatusOr<std::unique_ptr<LineChannel>> ConnectTcp(std::string_view host,
                                                        std::string_view port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* result = nullptr;
  const std::string host_str(host);
  const std::string port_str(port);
  if (int rc = ::getaddrinfo(host_str.c_str(), port_str.c_str(), &hints, &result);
      rc != 0) {
    return absl::UnavailableError(absl::StrCat(
        "cannot resolve bridge ", host_str, ":", port_str, ": ",
        ::gai_strerror(rc)));
  }
  int fd = -1;
  for (addrinfo* ai = result; ai != nullptr; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC,
                  ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(result);
  if (fd < 0) {
    return absl::UnavailableError(
        absl::StrCat("cannot connect to bridge at ", host_str, ":", port_str));
  }
  return std::unique_ptr<LineChannel>(new FdChannel(fd, fd, /*is_socket=*/true));
}

absl::StatusOr<std::unique_ptr<LineChannel>> SpawnProcess(
    const std::string& command) {
  int to_child[2];
  int from_child[2];
  if (::pipe2(to_child, O_CLOEXEC) != 0) {
    return absl::UnavailableError("pipe() failed");
  }
  if (::pipe2(from_child, O_CLOEXEC) != 0) {
    ::close(to_child[0]);
    ::close(to_child[1]);
    return absl::UnavailableError("pipe() failed");
  }
  const pid_t pid = ::fork();
  if (pid < 0) {
    for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) {
      ::close(fd);
    }
    return absl::UnavailableError("fork() failed");
  }
  if (pid == 0) {
    ::dup2(to_child[0], STDIN_FILENO);
    ::dup2(from_child[1], STDOUT_FILENO);
    for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) {
      ::close(fd);
    }
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(to_child[0]);
  ::close(from_child[1]);
  // EPIPE instead of SIGPIPE.
  ::signal(SIGPIPE, SIG_IGN);
  return std::unique_ptr<LineChannel>(
      new FdChannel(from_child[0], to_child[1], /*is_socket=*/false, pid));
}

}  // namespace

absl::StatusOr<std::unique_ptr<LineChannel>> OpenChannel(
    std::string_view address) {
  if (address.starts_with("exec:")) {
    const std::string command(address.substr(5));
    if (command.empty()) {
      return absl::InvalidArgumentError("empty bridge command");
    }
    return SpawnProcess(command);
  }
  std::string_view hostport = address;
  if (hostport.starts_with("tcp://")) hostport.remove_prefix(6);
  const std::size_t colon = hostport.rfind(':');
  if (colon == std::string_view::npos || colon == 0 ||
      colon + 1 == hostport.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "bridge address must be host:port or exec:<command>, got '",
        std::string(address), "'"));
  }
  return ConnectTcp(hostport.substr(0, colon), hostport.substr(colon + 1));
}

absl::StatusOr<std::unique_ptr<BridgeScorer>> BridgeScorer::Connect(
    std::string address, int pool_size, std::optional<std::string> model_hint) {
  if (pool_size < 1) {
    return absl::InvalidArgumentError("bridge pool size must be >= 1");
  }
  std::vector<std::unique_ptr<LineChannel>> channels;
  for (int i = 0; i < pool_size; ++i) {
    auto channel = OpenChannel(address);
    if (!channel.ok()) return channel.status();
    channels.push_back(*std::move(channel));
  }
  return std::make_unique<BridgeScorer>(std::move(channels),
                                        std::move(model_hint));
}

BridgeScorer::BridgeScorer(std::vector<std::unique_ptr<LineChannel>> channels,
                           std::optional<std::string> model_hint)
    : model_hint_(std::move(model_hint)),
      idle_(std::move(channels)),
      live_(idle_.size()) {}

std::unique_ptr<LineChannel> BridgeScorer::Acquire() const {
  std::unique_lock lock(mu_);
  available_.wait(lock, [&] { return !idle_.empty() || live_ == 0; });
  if (idle_.empty()) return nullptr;
  auto channel = std::move(idle_.back());
  idle_.pop_back();
  return channel;
}

void BridgeScorer::Release(std::unique_ptr<LineChannel> channel) const {
  {
    std::lock_guard lock(mu_);
    if (channel) {
      idle_.push_back(std::move(channel));
    } else {
      --live_;
    }
  }
  available_.notify_one();
}

absl::StatusOr<std::vector<RankedToken>> BridgeScorer::Score(
    std::string_view text, std::optional<std::string_view> context) const {
  if (text.empty()) return absl::InvalidArgumentError("empty text");
  ScoreRequest request;
  {
    std::lock_guard lock(mu_);
    request.id = next_id_++;
  }
  request.text = std::string(text);
  if (context.has_value()) request.context = std::string(*context);
  request.model_hint = model_hint_;

  auto channel = Acquire();
  if (!channel) return absl::UnavailableError("no live bridge connections");
  absl::StatusOr<ScoreResponse> response;
  if (auto s = channel->WriteLine(EncodeRequest(request)); !s.ok()) {
    response = s;
  } else {
    auto line = channel->ReadLine();
    response = line.ok() ? DecodeResponse(*line)
                         : absl::StatusOr<ScoreResponse>(line.status());
  }
  if (response.ok() && response->id != request.id) {
    response = absl::DataLossError(absl::StrCat(
        "bridge answered id ", response->id, " to request ", request.id));
  }
  if (!response.ok()) {
    // The stream is out of sync or dead; drop the connection.
    channel.reset();
    Release(nullptr);
    return absl::UnavailableError(
        absl::StrCat("bridge failure: ", response.status().message()));
  }
  Release(std::move(channel));
  if (response->error.has_value()) {
    return absl::UnavailableError(
        absl::StrCat("bridge error: ", *response->error));
  }
  if (response->tokens.empty()) {
    return absl::InvalidArgumentError("empty token stream");
  }
  std::vector<RankedToken> ranked;
  ranked.reserve(response->tokens.size());
  for (std::size_t i = 0; i < response->tokens.size(); ++i) {
    ranked.push_back({std::move(response->tokens[i]), kNoTokenId,
                      response->logprobs[i], response->ranks[i]});
  }
  return ranked;
}

}  // namespace hc3detect
