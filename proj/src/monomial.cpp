// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#include "blue/monomial.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace blue {

bool Monomial::is_unit() const {
  return !zero_ && std::all_of(exp_.begin(), exp_.end(), [](auto e) { return e == 0; });
}

std::size_t Monomial::degree() const {
  return std::accumulate(exp_.begin(), exp_.end(), std::size_t{0});
}

bool Monomial::divides(const Monomial& other) const {
  if (other.zero_) return true;
  if (zero_) return false;
  for (std::size_t i = 0; i < exp_.size(); ++i)
    if (exp_[i] > other.exp_[i]) return false;
  return true;
}

Monomial Monomial::over(const Monomial& divisor) const {
  assert(divisor.divides(*this) && !zero_);
  Monomial q(arity());
  for (std::size_t i = 0; i < exp_.size(); ++i) q.exp_[i] = exp_[i] - divisor.exp_[i];
  return q;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial l(arity());
  for (std::size_t i = 0; i < exp_.size(); ++i) l.exp_[i] = std::max(exp_[i], other.exp_[i]);
  return l;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exp_.size(); ++i)
    if (exp_[i] && other.exp_[i]) return false;
  return true;
}

bool Monomial::meets(const std::vector<bool>& mask) const {
  if (zero_) return true;
  for (std::size_t i = 0; i < exp_.size(); ++i)
    if (exp_[i] && mask[i]) return true;
  return false;
}

Monomial Monomial::operator*(const Monomial& other) const {
  assert(arity() == other.arity());
  if (zero_ || other.zero_) return zero(arity());
  Monomial p(arity());
  for (std::size_t i = 0; i < exp_.size(); ++i) p.exp_[i] = exp_[i] + other.exp_[i];
  return p;
}

Monomial Monomial::pow(std::uint32_t n) const {
  if (n == 0) return Monomial(arity());
  if (zero_) return *this;
  Monomial p(arity());
  for (std::size_t i = 0; i < exp_.size(); ++i) p.exp_[i] = exp_[i] * n;
  return p;
}

Monomial Monomial::widened(std::size_t n) const {
  assert(n >= arity());
  Monomial w(n);
  std::copy(exp_.begin(), exp_.end(), w.exp_.begin());
  w.zero_ = zero_;
  return w;
}

std::size_t Monomial::hash() const {
  std::size_t h = zero_ ? 0x9e3779b97f4a7c15ULL : 0;
  for (auto e : exp_) h = (h ^ e) * 0x100000001b3ULL + 0x7f4a7c15;
  return h;
}

// Graded reverse lexicographic; zero below everything.
std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (a.zero_ || b.zero_) {
    if (a.zero_ == b.zero_) return std::strong_ordering::equal;
    return a.zero_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  auto da = a.degree(), db = b.degree();
  if (da != db) return da <=> db;
  for (std::size_t i = a.exp_.size(); i-- > 0;) {
    if (a.exp_[i] != b.exp_[i])
      return a.exp_[i] < b.exp_[i] ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

std::string render(const Monomial& m, const std::vector<std::string>& names) {
  if (m.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < m.arity(); ++i) {
    if (!m[i]) continue;
    if (!out.empty()) out += '*';
    out += names[i];
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

}  // namespace blue
