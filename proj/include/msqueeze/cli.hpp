// Copyright 2026 The msqueeze developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Scenario runner: reproduces the library's headline comparisons as CSV or
// JSON payloads and exposes the self-verification suite. All outputs are
// byte-deterministic for a fixed (configuration, seed) pair.

#ifndef MSQUEEZE_CLI_HPP
#define MSQUEEZE_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

namespace msq {

/// Parsed invocation of the scenario runner.
struct RunConfig {
    /// One of: fig2, fig3, nonlocal-encoding, twin-fock, cv-demo, verify.
    std::string command;
    /// Command-specific keys (flag names without the leading dashes);
    /// missing keys take documented defaults.
    std::map<std::string, std::string> parameters;
    /// Output file; empty writes to stdout.
    std::string output_path;
    std::uint64_t seed = 20260814;
    /// "csv" or "json"; empty picks the command's native format.
    std::string format;
};

/// Rendered payload of one command. `verify_failed` is set only by the
/// verify command when at least one check missed its tolerance.
struct CommandOutput {
    std::string payload;
    bool verify_failed = false;
};

/// Executes one command. Invalid configurations raise Error subclasses
/// with explicit messages naming the offending parameter.
CommandOutput render_command(const RunConfig& config);

/// Command-line entry point: parses flags, runs the command, writes the
/// payload to the requested destination. Exit codes: 0 success,
/// 1 verification failure, 2 configuration error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace msq

#endif
