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

#ifndef HC3DETECT_TOOLS_CLI_H_
#define HC3DETECT_TOOLS_CLI_H_

#include <string>
#include <vector>

#include "absl/status/status.h"

namespace hc3detect::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitBackend = 3,
};

int ExitCodeFor(const absl::Status& status);

// Runs one invocation; `args` excludes the program name.
int Run(const std::vector<std::string>& args);

}  // namespace hc3detect::cli

#endif  // HC3DETECT_TOOLS_CLI_H_
