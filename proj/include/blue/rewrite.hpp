// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "blue/monomial.hpp"

namespace blue {

struct Rule {
  Monomial lhs;
  Monomial rhs;  // strictly smaller than lhs; may be zero
};

// Commutative rewriting with critical-pair completion. Each relation is
// oriented larger -> smaller; overlaps are resolved at the lcm of left-hand
// sides up to a degree bound. Past the bound the system is marked incomplete
// and normal forms are only a sufficient test for equality.
struct RewriteLimits {
  std::size_t max_degree = 48;
  std::size_t max_rules = 4000;
};

class RewriteSystem {
 public:
  using Limits = RewriteLimits;

  RewriteSystem() = default;
  RewriteSystem(std::size_t arity, const std::vector<std::pair<Monomial, Monomial>>& relations,
                Limits limits = {});

  Monomial reduce(Monomial m) const;
  bool irreducible(const Monomial& m) const;
  bool complete() const { return complete_; }
  std::size_t arity() const { return arity_; }
  const std::vector<Rule>& rules() const { return rules_; }

 private:
  std::size_t arity_ = 0;
  std::vector<Rule> rules_;
  bool complete_ = true;
};

}  // namespace blue
