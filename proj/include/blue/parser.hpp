// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#pragma once

#include <map>
#include <string>
#include <vector>

#include "blue/blueprint.hpp"
#include "blue/constructions.hpp"

namespace blue {

struct Declaration {
  std::string name;
  MonoidPresentation presentation;
  std::vector<SumPair> addition;

  friend bool operator==(const Declaration&, const Declaration&) = default;
};

// morphism NAME : SOURCE -> TARGET { gen -> term, ... ; }
struct MorphismDeclaration {
  std::string name;
  std::string source;
  std::string target;
  std::vector<std::pair<std::string, std::string>> assignment;  // generator, term text

  friend bool operator==(const MorphismDeclaration&, const MorphismDeclaration&) = default;
};

struct BlueFile {
  std::vector<Declaration> blueprints;
  std::vector<MorphismDeclaration> morphisms;

  const Declaration& blueprint(const std::string& name) const;
  friend bool operator==(const BlueFile&, const BlueFile&) = default;
};

// Throws Error(ParseError) with "line:column: expected ..., found ...".
BlueFile parse(const std::string& text);
std::string print(const BlueFile& file);
std::string print(const Declaration& d);

Monomial parse_monomial(const std::string& text, const std::vector<std::string>& names, bool has_zero);
FormalSum parse_sum(const std::string& text, const std::vector<std::string>& names, bool has_zero);
FormalSum parse_sum(const Blueprint& b, const std::string& text);
Monomial parse_monomial(const Blueprint& b, const std::string& text);

BlueprintPtr build(const Declaration& d, const Budget& budget = {});
Morphism build(const MorphismDeclaration& m, const std::map<std::string, BlueprintPtr>& blueprints);

}  // namespace blue
