// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#pragma once

#include <string>
#include <vector>

#include "blue/parser.hpp"

namespace blue::cli {

enum ExitCode : int { kSuccess = 0, kFails = 1, kUnknown = 2, kInvalid = 3 };

struct Outcome {
  int code = kSuccess;
  std::string out;  // report (empty when written to --out)
  std::string err;  // diagnostics
};

// Runs one command; args exclude the program name.
Outcome run(const std::vector<std::string>& args);

// A blueprint as a declaration of the file format. Kinds without
// generating relations go through their presented form.
Declaration declaration_of(const BlueprintPtr& b);

}  // namespace blue::cli
