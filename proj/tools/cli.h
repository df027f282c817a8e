// Copyright 2026 The teamcorr Authors
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

#ifndef TEAMCORR_TOOLS_CLI_H_
#define TEAMCORR_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace teamcorr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitVerificationFailed = 2;

// Runs one command line (without the program name). Human-readable output
// goes to `out`, diagnostics to `err`; artifacts are written to the output
// directory (--out, else $TEAMCORR_OUT, else ./teamcorr_out).
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace teamcorr::cli

#endif  // TEAMCORR_TOOLS_CLI_H_
