// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#include "blue/error.hpp"

namespace blue {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UndeclaredGenerator: return "UndeclaredGenerator";
    case ErrorCode::MalformedTable: return "MalformedTable";
    case ErrorCode::UnmappedTerm: return "UnmappedTerm";
    case ErrorCode::NotMultiplicativelyClosed: return "NotMultiplicativelyClosed";
    case ErrorCode::MissingUnitOrZero: return "MissingUnitOrZero";
    case ErrorCode::ZeroPresent: return "ZeroPresent";
    case ErrorCode::NoZero: return "NoZero";
    case ErrorCode::AxiomViolation: return "AxiomViolation";
    case ErrorCode::NameClash: return "NameClash";
    case ErrorCode::NotMultiplicative: return "NotMultiplicative";
    case ErrorCode::SourceMismatch: return "SourceMismatch";
    case ErrorCode::NotParallel: return "NotParallel";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::InvalidMorphism: return "InvalidMorphism";
    case ErrorCode::NotProper: return "NotProper";
    case ErrorCode::InfiniteCarrierWithoutGenerators: return "InfiniteCarrierWithoutGenerators";
    case ErrorCode::NotAnIdeal: return "NotAnIdeal";
    case ErrorCode::StalkNotFinite: return "StalkNotFinite";
    case ErrorCode::IncompleteEnumeration: return "IncompleteEnumeration";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
  }
  return "Error";
}

}  // namespace blue
