// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "blue/blueprint.hpp"

namespace blue::catalog {

BlueprintPtr f1();
BlueprintPtr polynomial(const std::vector<std::string>& vars);  // F1[vars]
BlueprintPtr boolean();                                        // B1 as a semiring
BlueprintPtr field_two();                                      // Z/2 as a semiring
BlueprintPtr idempotent_with_zero();                           // {0, e, 1}, e^2 = e
BlueprintPtr idempotent();                                     // {1, e}, e^2 = e
// Generators h1, h2, a1, a2; zero; a1*h2 = a2*h1; h1 + h2 = 1.
BlueprintPtr two_chart_line();

// F1, F1[x], F1[x,y], F1^n for n <= 6, B1, F2, {0,e,1} and the two-chart line.
std::vector<BlueprintPtr> standard();

}  // namespace blue::catalog
