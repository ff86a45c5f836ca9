// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#include "blue/rewrite.hpp"

#include <algorithm>
#include <deque>

namespace blue {

namespace {

struct Work {
  std::vector<Rule> rules;
  std::vector<bool> alive;
  std::deque<std::pair<Monomial, Monomial>> pending;
  std::deque<std::pair<std::size_t, std::size_t>> overlaps;

  Monomial reduce(Monomial m) const {
    bool changed = true;
    while (changed && !m.is_zero()) {
      changed = false;
      for (std::size_t i = 0; i < rules.size(); ++i) {
        if (!alive[i] || !rules[i].lhs.divides(m)) continue;
        m = rules[i].rhs * m.over(rules[i].lhs);
        changed = true;
        break;
      }
    }
    return m;
  }

  void insert(Monomial a, Monomial b) {
    a = reduce(std::move(a));
    b = reduce(std::move(b));
    if (a == b) return;
    if (a < b) std::swap(a, b);
    for (std::size_t i = 0; i < rules.size(); ++i) {
      if (alive[i] && a.divides(rules[i].lhs)) {
        alive[i] = false;
        pending.emplace_back(rules[i].lhs, rules[i].rhs);
      }
    }
    rules.push_back({a, b});
    alive.push_back(true);
    std::size_t fresh = rules.size() - 1;
    for (std::size_t i = 0; i < fresh; ++i)
      if (alive[i]) overlaps.emplace_back(i, fresh);
  }
};

}  // namespace

RewriteSystem::RewriteSystem(std::size_t arity,
                             const std::vector<std::pair<Monomial, Monomial>>& relations,
                             Limits limits)
    : arity_(arity) {
  Work w;
  for (const auto& r : relations) w.pending.push_back(r);
  while (!w.pending.empty() || !w.overlaps.empty()) {
    if (w.rules.size() > limits.max_rules) {
      complete_ = false;
      break;
    }
    if (!w.pending.empty()) {
      auto [a, b] = w.pending.front();
      w.pending.pop_front();
      w.insert(std::move(a), std::move(b));
      continue;
    }
    auto [i, j] = w.overlaps.front();
    w.overlaps.pop_front();
    if (!w.alive[i] || !w.alive[j]) continue;
    const Rule& r = w.rules[i];
    const Rule& s = w.rules[j];
    if (r.lhs.coprime(s.lhs)) continue;
    Monomial top = r.lhs.lcm(s.lhs);
    if (top.degree() > limits.max_degree) {
      complete_ = false;
      continue;
    }
    w.insert(r.rhs * top.over(r.lhs), s.rhs * top.over(s.lhs));
  }
  for (std::size_t i = 0; i < w.rules.size(); ++i)
    if (w.alive[i]) rules_.push_back(w.rules[i]);
  // Right-hand sides in normal form, rules sorted for deterministic output.
  for (auto& rule : rules_) rule.rhs = reduce(rule.rhs);
  std::sort(rules_.begin(), rules_.end(),
            [](const Rule& a, const Rule& b) { return a.lhs < b.lhs; });
}

Monomial RewriteSystem::reduce(Monomial m) const {
  bool changed = true;
  while (changed && !m.is_zero()) {
    changed = false;
    for (const auto& rule : rules_) {
      if (!rule.lhs.divides(m)) continue;
      m = rule.rhs * m.over(rule.lhs);
      changed = true;
      break;
    }
  }
  return m;
}

bool RewriteSystem::irreducible(const Monomial& m) const {
  if (m.is_zero()) return true;
  return std::none_of(rules_.begin(), rules_.end(),
                      [&](const Rule& r) { return r.lhs.divides(m); });
}

}  // namespace blue
