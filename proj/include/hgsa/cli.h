// Copyright 2026 The hgsa Authors
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

// Command-line front end.
//
//     hgsa analyze --photons 3 --state P+001,T-010 --seed 7
//     hgsa verify --photons 3 --shots 100 --seed 42 --format json
//     hgsa tables --photons 4 --format csv
//     hgsa search-tesa --max-candidates 1000
//
// Exit codes: 0 pass, 1 verification failure, 2 usage or parse error,
// 3 internal error.

#ifndef HGSA_CLI_H
#define HGSA_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace hgsa {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2, kExitInternal = 3 };

/// `args` excludes the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace hgsa

#endif
