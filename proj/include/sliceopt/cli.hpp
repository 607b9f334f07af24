/*
 * Copyright 2026 The sliceopt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SLICEOPT_CLI_HPP
#define SLICEOPT_CLI_HPP

#include <iosfwd>

namespace sliceopt {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config_error = 2;
inline constexpr int search_space = 3;
inline constexpr int validation_failed = 4;
} // namespace exit_code

/// Entry point of the `sliceopt` tool: subcommands solve, sweep-gain,
/// sweep-offloaders and validate. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace sliceopt

#endif // SLICEOPT_CLI_HPP
