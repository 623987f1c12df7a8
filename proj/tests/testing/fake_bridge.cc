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

// Test double for the scoring bridge. Serves the JSON-lines protocol on
// stdin/stdout, or on a loopback TCP port with --listen (the port is
// printed on the first stdout line).
//
//   --model PATH    score with an n-gram model file; otherwise every
//                   whitespace token gets rank = its byte length and
//                   logprob = -length
//   --fail-on TEXT  answer requests for TEXT with an error record
//   --wrong-id      echo id + 1
//   --exit-after N  exit after N responses

#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "hc3detect/bridge_client.h"
#include "hc3detect/ngram_model.h"
#include "hc3detect/token_scorer.h"

namespace {

struct Options {
  std::optional<std::string> model_path;
  std::optional<std::string> fail_on;
  bool wrong_id = false;
  long exit_after = -1;
  bool listen = false;
};

std::optional<hc3detect::NGramModel> g_model;
std::optional<hc3detect::ModelScorer> g_scorer;

std::string Answer(const Options& options, const std::string& line) {
  hc3detect::ScoreResponse response;
  auto request = hc3detect::DecodeRequest(line);
  if (!request.ok()) {
    response.id = -1;
    response.error = std::string(request.status().message());
    return hc3detect::EncodeResponse(response);
  }
  response.id = request->id + (options.wrong_id ? 1 : 0);
  if (options.fail_on.has_value() && request->text == *options.fail_on) {
    response.error = "forced failure";
    return hc3detect::EncodeResponse(response);
  }
  if (g_scorer.has_value()) {
    std::optional<std::string_view> context;
    if (request->context.has_value()) context = *request->context;
    auto ranked = g_scorer->Score(request->text, context);
    if (!ranked.ok()) {
      response.error = std::string(ranked.status().message());
      return hc3detect::EncodeResponse(response);
    }
    for (const auto& t : *ranked) {
      response.tokens.push_back(t.surface);
      response.logprobs.push_back(t.logprob);
      response.ranks.push_back(t.rank);
    }
    return hc3detect::EncodeResponse(response);
  }
  std::size_t i = 0;
  const std::string& text = request->text;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ') ++j;
    if (j > i) {
      response.tokens.push_back(text.substr(i, j - i));
      response.logprobs.push_back(-static_cast<double>(j - i));
      response.ranks.push_back(static_cast<int64_t>(j - i));
    }
    i = j;
  }
  if (response.tokens.empty()) response.error = "empty text";
  return hc3detect::EncodeResponse(response);
}

void ServeFd(const Options& options, int in_fd, int out_fd) {
  std::string buffer;
  long served = 0;
  char chunk[4096];
  while (true) {
    std::size_t newline;
    while ((newline = buffer.find('\n')) == std::string::npos) {
      const ssize_t n = ::read(in_fd, chunk, sizeof(chunk));
      if (n <= 0) return;
      buffer.append(chunk, static_cast<std::size_t>(n));
    }
    const std::string line = buffer.substr(0, newline);
    buffer.erase(0, newline + 1);
    const std::string reply = Answer(options, line) + "\n";
    std::size_t off = 0;
    while (off < reply.size()) {
      const ssize_t n = ::write(out_fd, reply.data() + off, reply.size() - off);
      if (n <= 0) return;
      off += static_cast<std::size_t>(n);
    }
    if (options.exit_after >= 0 && ++served >= options.exit_after) {
      std::exit(0);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  Options options;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--model" && i + 1 < argc) {
      options.model_path = argv[++i];
    } else if (arg == "--fail-on" && i + 1 < argc) {
      options.fail_on = argv[++i];
    } else if (arg == "--wrong-id") {
      options.wrong_id = true;
    } else if (arg == "--exit-after" && i + 1 < argc) {
      options.exit_after = std::strtol(argv[++i], nullptr, 10);
    } else if (arg == "--listen") {
      options.listen = true;
    } else {
      std::cerr << "fake_bridge: unknown argument " << arg << "\n";
      return 1;
    }
  }
  if (options.model_path.has_value()) {
    auto model = hc3detect::NGramModel::Load(*options.model_path);
    if (!model.ok()) {
      std::cerr << "fake_bridge: " << model.status().message() << "\n";
      return 1;
    }
    g_model = *std::move(model);
    g_scorer.emplace(*g_model, g_model->language());
  }
  if (!options.listen) {
    ServeFd(options, 0, 1);
    return 0;
  }
  const int server = ::socket(AF_INET, SOCK_STREAM, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = 0;
  if (::bind(server, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
      ::listen(server, 16) != 0) {
    std::perror("fake_bridge");
    return 1;
  }
  socklen_t len = sizeof(addr);
  ::getsockname(server, reinterpret_cast<sockaddr*>(&addr), &len);
  std::printf("%d\n", ntohs(addr.sin_port));
  std::fflush(stdout);
  while (true) {
    const int client = ::accept(server, nullptr, nullptr);
    if (client < 0) continue;
    std::thread([options, client] {
      ServeFd(options, client, client);
      ::close(client);
    }).detach();
  }
}
