// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace blue {

// Exponent vector over an ordered generator list, or the absorbing zero.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t arity) : exp_(arity, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exponents) : exp_(std::move(exponents)) {}

  static Monomial zero(std::size_t arity) {
    Monomial m(arity);
    m.zero_ = true;
    return m;
  }
  static Monomial generator(std::size_t arity, std::size_t index, std::uint32_t power = 1) {
    Monomial m(arity);
    m.exp_[index] = power;
    return m;
  }

  std::size_t arity() const { return exp_.size(); }
  const std::vector<std::uint32_t>& exponents() const { return exp_; }
  std::uint32_t operator[](std::size_t i) const { return exp_[i]; }
  bool is_zero() const { return zero_; }
  bool is_unit() const;
  std::size_t degree() const;

  // this divides other (zero divides nothing and is divided by everything).
  bool divides(const Monomial& other) const;
  Monomial over(const Monomial& divisor) const;
  Monomial lcm(const Monomial& other) const;
  bool coprime(const Monomial& other) const;
  bool meets(const std::vector<bool>& mask) const;

  Monomial operator*(const Monomial& other) const;
  Monomial pow(std::uint32_t n) const;
  Monomial widened(std::size_t arity) const;

  std::size_t hash() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

 private:
  std::vector<std::uint32_t> exp_;
  bool zero_ = false;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

// "1", "0", or factors joined by '*' with '^' powers, in generator order.
std::string render(const Monomial& m, const std::vector<std::string>& names);

}  // namespace blue
