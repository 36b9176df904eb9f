// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namerec Authors

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace namerec::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,          // unknown flag, bad flag value
  kMissingInput = 3,   // input file or directory does not exist
  kFormatMismatch = 4, // malformed input or artifact from the wrong stage
  kTrainingFailed = 5,
};

/// Runs one subcommand (extract | graph | train | recommend | evaluate |
/// synth). `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace namerec::cli
