// Copyright 2026 The PEG Toolkit Authors.
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

#ifndef PEG_CLI_HPP_
#define PEG_CLI_HPP_

#include <iostream>

namespace peg {

// Entry point of the pegtool command line. Returns the process exit code:
// 0 success, 1 a check failed (validation errors, holes under --strict,
// non-finalizable session), 2 bad usage or unreadable input.
int run_cli(int argc, const char* const* argv, std::istream& in = std::cin,
            std::ostream& out = std::cout, std::ostream& err = std::cerr);

}  // namespace peg

#endif  // PEG_CLI_HPP_
