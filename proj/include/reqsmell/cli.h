// Copyright 2026 The reqsmell Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: analyze, eval and serve.

#ifndef REQSMELL_CLI_H_
#define REQSMELL_CLI_H_

#include <functional>
#include <ostream>

#include "reqsmell/reviewsvc.h"

namespace reqsmell::cli {

enum ExitCode {
  kExitOk = 0,
  kExitFileError = 1,
  kExitUsage = 2,
  kExitDensityGate = 3,
};

struct CliHooks {
  // Called by `serve` after the port is bound and before serving starts.
  std::function<void(review::ApiServer &server, int port)> on_serving;
};

// Runs one command line. Reports go to `out`, diagnostics to `err`.
int RunCli(int argc, const char *const *argv, std::ostream &out,
           std::ostream &err, const CliHooks &hooks = {});

}  // namespace reqsmell::cli

#endif  // REQSMELL_CLI_H_
