// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#pragma once

#include <compare>
#include <string>
#include <vector>

#include "blue/monomial.hpp"

namespace blue {

class Monoid;

// Finite multiset of monomials kept sorted; the empty sum is a value.
class FormalSum {
 public:
  FormalSum() = default;
  explicit FormalSum(std::vector<Monomial> terms);
  static FormalSum of(const Monomial& m) { return FormalSum({m}); }

  const std::vector<Monomial>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  std::size_t max_degree() const;

  FormalSum operator+(const FormalSum& other) const;
  // Multiplies every term by m without normalizing.
  FormalSum times(const Monomial& m) const;
  // Pairwise products of terms without normalizing.
  FormalSum times(const FormalSum& other) const;
  bool contains(const FormalSum& part) const;
  FormalSum minus(const FormalSum& part) const;
  FormalSum without_zero() const;

  std::size_t hash() const;
  friend bool operator==(const FormalSum&, const FormalSum&) = default;
  friend auto operator<=>(const FormalSum& a, const FormalSum& b) { return a.terms_ <=> b.terms_; }

 private:
  std::vector<Monomial> terms_;
};

struct FormalSumHash {
  std::size_t operator()(const FormalSum& s) const { return s.hash(); }
};

using SumPair = std::pair<FormalSum, FormalSum>;

// Normal form of every term, zero terms dropped when zero is the empty sum.
FormalSum normalize(const FormalSum& s, const Monoid& monoid, bool erase_zero);

// "empty" or terms joined by " + ".
std::string render(const FormalSum& s, const std::vector<std::string>& names);

}  // namespace blue
