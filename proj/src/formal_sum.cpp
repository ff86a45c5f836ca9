// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#include "blue/formal_sum.hpp"

#include <algorithm>

#include "blue/monoid.hpp"

namespace blue {

FormalSum::FormalSum(std::vector<Monomial> terms) : terms_(std::move(terms)) {
  std::sort(terms_.begin(), terms_.end());
}

std::size_t FormalSum::max_degree() const {
  std::size_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.degree());
  return d;
}

FormalSum FormalSum::operator+(const FormalSum& other) const {
  std::vector<Monomial> out;
  out.reserve(terms_.size() + other.terms_.size());
  std::merge(terms_.begin(), terms_.end(), other.terms_.begin(), other.terms_.end(),
             std::back_inserter(out));
  FormalSum s;
  s.terms_ = std::move(out);
  return s;
}

FormalSum FormalSum::times(const Monomial& m) const {
  std::vector<Monomial> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(t * m);
  return FormalSum(std::move(out));
}

FormalSum FormalSum::times(const FormalSum& other) const {
  std::vector<Monomial> out;
  for (const auto& a : terms_)
    for (const auto& b : other.terms_) out.push_back(a * b);
  return FormalSum(std::move(out));
}

bool FormalSum::contains(const FormalSum& part) const {
  return std::includes(terms_.begin(), terms_.end(), part.terms_.begin(), part.terms_.end());
}

FormalSum FormalSum::minus(const FormalSum& part) const {
  FormalSum s;
  std::set_difference(terms_.begin(), terms_.end(), part.terms_.begin(), part.terms_.end(),
                      std::back_inserter(s.terms_));
  return s;
}

FormalSum FormalSum::without_zero() const {
  FormalSum s;
  for (const auto& t : terms_)
    if (!t.is_zero()) s.terms_.push_back(t);
  return s;
}

std::size_t FormalSum::hash() const {
  std::size_t h = terms_.size();
  for (const auto& t : terms_) h = h * 0x9e3779b97f4a7c15ULL + t.hash();
  return h;
}

FormalSum normalize(const FormalSum& s, const Monoid& monoid, bool erase_zero) {
  std::vector<Monomial> out;
  out.reserve(s.size());
  for (const auto& t : s.terms()) {
    Monomial n = monoid.normalize(t);
    if (erase_zero && n.is_zero()) continue;
    out.push_back(std::move(n));
  }
  return FormalSum(std::move(out));
}

std::string render(const FormalSum& s, const std::vector<std::string>& names) {
  if (s.empty()) return "empty";
  std::string out;
  for (const auto& t : s.terms()) {
    if (!out.empty()) out += " + ";
    out += render(t, names);
  }
  return out;
}

}  // namespace blue
