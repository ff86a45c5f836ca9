// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#include "blue/lattice.hpp"

#include <algorithm>
#include <utility>

namespace blue {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

std::vector<IntVector> hermite_basis(std::vector<IntVector> rows, std::size_t cols) {
  std::vector<IntVector> basis;
  std::size_t next = 0;
  for (std::size_t c = 0; c < cols && next < rows.size(); ++c) {
    // Euclid on column c over rows [next, end).
    while (true) {
      std::size_t pivot = rows.size();
      for (std::size_t r = next; r < rows.size(); ++r)
        if (rows[r][c] != 0 && (pivot == rows.size() || abs(rows[r][c]) < abs(rows[pivot][c]))) pivot = r;
      if (pivot == rows.size()) break;
      std::swap(rows[next], rows[pivot]);
      bool clean = true;
      for (std::size_t r = next + 1; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        Integer q = rows[r][c] / rows[next][c];
        for (std::size_t k = c; k < cols; ++k) rows[r][k] -= q * rows[next][k];
        if (rows[r][c] != 0) clean = false;
      }
      if (clean) {
        if (rows[next][c] < 0)
          for (std::size_t k = c; k < cols; ++k) rows[next][k] = -rows[next][k];
        ++next;
        break;
      }
    }
  }
  rows.resize(next);
  // Reduce entries above pivots.
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::size_t c = 0;
    while (rows[i][c] == 0) ++c;
    for (std::size_t j = 0; j < i; ++j) {
      Integer q = floor_div(rows[j][c], rows[i][c]);
      if (q == 0) continue;
      for (std::size_t k = c; k < cols; ++k) rows[j][k] -= q * rows[i][k];
    }
  }
  basis = std::move(rows);
  return basis;
}

bool in_lattice(const std::vector<IntVector>& basis, IntVector v) {
  for (const auto& row : basis) {
    std::size_t c = 0;
    while (row[c] == 0) ++c;
    for (std::size_t k = 0; k < c; ++k)
      if (v[k] != 0) return false;
    if (v[c] % row[c] != 0) return false;
    Integer q = v[c] / row[c];
    for (std::size_t k = c; k < v.size(); ++k) v[k] -= q * row[k];
  }
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

std::vector<Integer> smith_invariants(std::vector<IntVector> m, std::size_t cols) {
  std::vector<Integer> diag;
  std::size_t rows = m.size();
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Smallest nonzero entry of the remaining block as pivot.
    std::size_t pr = rows, pc = cols;
    for (std::size_t r = t; r < rows; ++r)
      for (std::size_t c = t; c < cols; ++c)
        if (m[r][c] != 0 && (pr == rows || abs(m[r][c]) < abs(m[pr][pc]))) pr = r, pc = c;
    if (pr == rows) break;
    std::swap(m[t], m[pr]);
    for (auto& row : m) std::swap(row[t], row[pc]);
    bool done = false;
    while (!done) {
      done = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (m[r][t] == 0) continue;
        Integer q = m[r][t] / m[t][t];
        for (std::size_t c = t; c < cols; ++c) m[r][c] -= q * m[t][c];
        if (m[r][t] != 0) {
          std::swap(m[t], m[r]);
          done = false;
        }
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (m[t][c] == 0) continue;
        Integer q = m[t][c] / m[t][t];
        for (std::size_t r = t; r < rows; ++r) m[r][c] -= q * m[r][t];
        if (m[t][c] != 0) {
          for (auto& row : m) std::swap(row[t], row[c]);
          done = false;
        }
      }
      if (!done) continue;
      // Divisibility: pivot must divide the rest of the block.
      for (std::size_t r = t + 1; r < rows && done; ++r)
        for (std::size_t c = t + 1; c < cols; ++c)
          if (m[r][c] % m[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) m[t][k] += m[r][k];
            done = false;
            break;
          }
    }
    diag.push_back(abs(m[t][t]));
    ++t;
  }
  return diag;
}

CokernelShape cokernel(const std::vector<IntVector>& rows, std::size_t cols) {
  auto inv = smith_invariants(rows, cols);
  CokernelShape s;
  s.free_rank = cols - inv.size();
  for (const auto& d : inv)
    if (d > 1) s.torsion.push_back(d);
  return s;
}

std::string CokernelShape::describe() const {
  std::vector<std::string> parts;
  if (free_rank == 1) parts.push_back("Z");
  if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  for (const auto& d : torsion) parts.push_back("Z/" + d.str());
  if (parts.empty()) return "0";
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

}  // namespace blue
