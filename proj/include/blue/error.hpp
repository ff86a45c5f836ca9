// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#pragma once

#include <stdexcept>
#include <string>

namespace blue {

enum class ErrorCode {
  UndeclaredGenerator,
  MalformedTable,
  UnmappedTerm,
  NotMultiplicativelyClosed,
  MissingUnitOrZero,
  ZeroPresent,
  NoZero,
  AxiomViolation,
  NameClash,
  NotMultiplicative,
  SourceMismatch,
  NotParallel,
  TypeMismatch,
  InvalidMorphism,
  NotProper,
  InfiniteCarrierWithoutGenerators,
  NotAnIdeal,
  StalkNotFinite,
  IncompleteEnumeration,
  ParseError,
  UnsupportedFormat,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace blue
