// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#include "blue/catalog.hpp"

#include "blue/constructions.hpp"

namespace blue::catalog {

BlueprintPtr f1() { return field_with_one_element(); }

BlueprintPtr polynomial(const std::vector<std::string>& vars) { return free_extension(f1(), vars); }

BlueprintPtr boolean() { return from_semiring(boolean_semiring(), "B1"); }

BlueprintPtr field_two() { return from_semiring(residue_ring(2), "F2"); }

BlueprintPtr idempotent_with_zero() {
  MonoidPresentation p;
  p.generators = {"e"};
  p.has_zero = true;
  p.relations.emplace_back(Monomial::generator(1, 0, 2), Monomial::generator(1, 0));
  return from_monoid_with_zero(p, "E0");
}

BlueprintPtr idempotent() {
  MonoidPresentation p;
  p.generators = {"e"};
  p.relations.emplace_back(Monomial::generator(1, 0, 2), Monomial::generator(1, 0));
  return from_monoid(p, "E");
}

BlueprintPtr two_chart_line() {
  MonoidPresentation p;
  p.generators = {"h1", "h2", "a1", "a2"};
  p.has_zero = true;
  p.relations.emplace_back(Monomial({0, 1, 1, 0}), Monomial({1, 0, 0, 1}));
  FormalSum hs({Monomial::generator(4, 0), Monomial::generator(4, 1)});
  return Blueprint::generated("B", p, {{hs, FormalSum::of(Monomial(4))}});
}

std::vector<BlueprintPtr> standard() {
  std::vector<BlueprintPtr> out{f1(), polynomial({"x"}), polynomial({"x", "y"})};
  for (unsigned n = 2; n <= 6; ++n) out.push_back(cyclotomic(n));
  out.push_back(boolean());
  out.push_back(field_two());
  out.push_back(idempotent_with_zero());
  out.push_back(two_chart_line());
  return out;
}

}  // namespace blue::catalog
