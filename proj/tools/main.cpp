// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  auto outcome = blue::cli::run({argv + 1, argv + argc});
  std::cout << outcome.out;
  std::cerr << outcome.err;
  return outcome.code;
}
