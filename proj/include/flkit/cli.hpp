// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Subcommands: extract, sbfl, blues, rafl, sbir, eval.
// Exit codes: 0 success, 1 usage error, 2 data error, 3 bundle not runnable.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "flkit/ranked_list.hpp"

namespace flkit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitNotRunnable = 3;

/// argv[0] is the program name. Results go to files, or to `out` when the
/// output path is "-" or omitted; diagnostics go to `err`.
int run_command(std::span<const std::string> argv, std::ostream& out, std::ostream& err);

/// Writes dump_ranked_list(list). Throws Error(IoError).
void emit_ranked_list(const RankedList& list, const std::filesystem::path& path);

std::string version_string();

}  // namespace flkit
