// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace blue {

using Integer = boost::multiprecision::cpp_int;
using IntVector = std::vector<Integer>;

// Echelon basis of the row lattice spanned by `rows` (Hermite form: positive
// pivots, entries above each pivot reduced modulo it).
std::vector<IntVector> hermite_basis(std::vector<IntVector> rows, std::size_t cols);

// Membership of v in the lattice with the given Hermite basis.
bool in_lattice(const std::vector<IntVector>& basis, IntVector v);

// Nonzero Smith invariants d1 | d2 | ... of the matrix with the given rows.
std::vector<Integer> smith_invariants(std::vector<IntVector> rows, std::size_t cols);

// Abelian group Z^cols / rowspan: free rank and torsion invariants (> 1).
struct CokernelShape {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;
  std::string describe() const;
  friend bool operator==(const CokernelShape&, const CokernelShape&) = default;
};
CokernelShape cokernel(const std::vector<IntVector>& rows, std::size_t cols);

}  // namespace blue
