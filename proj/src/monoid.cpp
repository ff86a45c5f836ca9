// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#include "blue/monoid.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "blue/error.hpp"

namespace blue {

std::optional<std::size_t> MonoidPresentation::find(const std::string& name) const {
  auto it = std::find(generators.begin(), generators.end(), name);
  if (it == generators.end()) return std::nullopt;
  return static_cast<std::size_t>(it - generators.begin());
}

std::size_t MonoidPresentation::index_of(const std::string& name) const {
  if (auto i = find(name)) return *i;
  throw Error(ErrorCode::UndeclaredGenerator, name);
}

void MonoidPresentation::validate() const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i + 1; j < generators.size(); ++j)
      if (generators[i] == generators[j]) throw Error(ErrorCode::NameClash, generators[i]);
  for (const auto& [a, b] : relations) {
    if (a.arity() != arity() || b.arity() != arity())
      throw Error(ErrorCode::UndeclaredGenerator, "relation over a different generator list");
    if ((a.is_zero() || b.is_zero()) && !has_zero)
      throw Error(ErrorCode::NoZero, "relation mentions 0 but the presentation has no zero");
  }
}

Monoid::Monoid(MonoidPresentation p, RewriteSystem::Limits limits) : pres_(std::move(p)) {
  pres_.validate();
  rs_ = RewriteSystem(pres_.arity(), pres_.relations, limits);
  for (const auto& r : rs_.rules())
    if (!r.rhs.is_zero() && r.rhs.degree() != r.lhs.degree()) homogeneous_ = false;
  if (rs_.complete()) {
    std::vector<std::uint32_t> bound(arity(), 0);
    for (const auto& r : rs_.rules()) {
      std::size_t support = 0, which = 0;
      for (std::size_t i = 0; i < arity(); ++i)
        if (r.lhs[i]) ++support, which = i;
      if (support == 1 && (!bound[which] || r.lhs[which] < bound[which])) bound[which] = r.lhs[which];
    }
    bool collapsed = !rs_.irreducible(one());
    finite_ = collapsed || std::all_of(bound.begin(), bound.end(), [](auto b) { return b > 0; });
    if (finite_) {
      std::size_t max_degree = 0;
      for (auto b : bound) max_degree += b ? b - 1 : 0;
      elements_ = elements_up_to(max_degree);
    }
  }
}

Monomial Monoid::normalize(const Monomial& m) const {
  if (m.arity() != arity())
    throw Error(ErrorCode::UndeclaredGenerator, "monomial over a different generator list");
  if (m.is_zero() && !has_zero()) throw Error(ErrorCode::NoZero, "zero in a monoid without zero");
  return rs_.reduce(m);
}

const std::vector<Monomial>& Monoid::elements() const {
  if (!finite_) throw Error(ErrorCode::StalkNotFinite, "carrier is not known to be finite");
  return elements_;
}

std::vector<Monomial> Monoid::elements_up_to(std::size_t degree) const {
  // Divisors of irreducible monomials are irreducible, so growing
  // irreducible words one generator at a time reaches every normal form.
  std::vector<Monomial> out;
  std::unordered_set<Monomial, MonomialHash> seen{one()};
  if (rs_.irreducible(one())) out.push_back(one());
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (out[k].degree() >= degree) continue;
    for (std::size_t i = 0; i < arity(); ++i) {
      Monomial next = out[k] * Monomial::generator(arity(), i);
      if (!rs_.irreducible(next) || !seen.insert(next).second) continue;
      out.push_back(std::move(next));
    }
  }
  if (has_zero()) out.push_back(zero());
  std::sort(out.begin(), out.end());
  return out;
}

Monomial normalize(const Monomial& m, const MonoidPresentation& p) { return Monoid(p).normalize(m); }

Decision monoid_equal(const Monomial& x, const Monomial& y, const Monoid& monoid,
                      const Budget& budget) {
  Monomial a = monoid.normalize(x), b = monoid.normalize(y);
  if (a == b) return Decision::holds();
  if (monoid.confluent()) return Decision::fails("distinct normal forms");
  // Incomplete system: search single relation steps in both directions.
  const auto& rels = monoid.presentation().relations;
  std::unordered_map<Monomial, int, MonomialHash> side;
  std::deque<Monomial> queue{a, b};
  side[a] = 1;
  side[b] = 2;
  bool escaped = false;
  while (!queue.empty()) {
    if (side.size() > budget.max_pairs) {
      return Decision::unknown("search budget exhausted after " + std::to_string(side.size()) + " words");
    }
    Monomial m = queue.front();
    queue.pop_front();
    int s = side[m];
    for (const auto& [u, v] : rels) {
      for (int dir = 0; dir < 2; ++dir) {
        const Monomial& from = dir ? v : u;
        const Monomial& to = dir ? u : v;
        if (!from.divides(m) || m.is_zero()) continue;
        Monomial next = monoid.normalize(to * m.over(from));
        if (next.degree() > budget.max_degree) {
          escaped = true;
          continue;
        }
        auto it = side.find(next);
        if (it == side.end()) {
          side[next] = s;
          queue.push_back(next);
        } else if (it->second != s) {
          return Decision::holds("joined by search");
        }
      }
    }
  }
  if (escaped) return Decision::unknown("search left the degree bound");
  return Decision::fails("both classes closed within bounds");
}

}  // namespace blue
