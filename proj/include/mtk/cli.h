// Copyright 2026 The Model Transparency Kit Authors.
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

#ifndef MTK_CLI_H_
#define MTK_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace mtk {

// Process exit codes of the mtk tool.
enum ExitCode : int {
  kExitOk = 0,      // success or accept
  kExitReject = 1,  // verification rejected / audit failed
  kExitUsage = 2,   // bad command line
  kExitError = 3,   // I/O or other runtime failure
};

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mtk

#endif  // MTK_CLI_H_
