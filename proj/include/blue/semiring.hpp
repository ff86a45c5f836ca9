// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "blue/formal_sum.hpp"

namespace blue {

using Element = std::size_t;  // index into a semiring carrier

struct FiniteSemiring {
  std::vector<std::string> carrier;
  std::vector<std::vector<Element>> add;
  std::vector<std::vector<Element>> mul;
  Element zero = 0;
  Element one = 0;

  std::size_t size() const { return carrier.size(); }
  Element plus(Element a, Element b) const { return add[a][b]; }
  Element times(Element a, Element b) const { return mul[a][b]; }
  std::optional<Element> find(const std::string& label) const;
};

struct Violation {
  std::string axiom;
  std::vector<std::string> witness;
};

// Exhaustive check of the commutative semiring axioms; throws MalformedTable
// when a table is not total over the carrier.
std::vector<Violation> check_semiring_axioms(const FiniteSemiring& r);

using Embedding = std::function<std::optional<Element>(const Monomial&)>;

// Sum of the images of the terms; the empty sum evaluates to zero.
Element eval_in_semiring(const FormalSum& s, const Embedding& embed, const FiniteSemiring& r);

// Closure of the subset under addition and multiplication is everything.
bool subset_generates(const FiniteSemiring& r, const std::vector<Element>& subset);

// Built-in tables.
FiniteSemiring boolean_semiring();        // B1: {0,1}, 1+1=1
FiniteSemiring residue_ring(unsigned n);  // Z/n
FiniteSemiring trivial_semiring();        // {0 = 1}

}  // namespace blue
