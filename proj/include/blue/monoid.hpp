// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blue/decision.hpp"
#include "blue/monomial.hpp"
#include "blue/rewrite.hpp"

namespace blue {

struct MonoidPresentation {
  std::vector<std::string> generators;
  std::vector<std::pair<Monomial, Monomial>> relations;
  bool has_zero = false;

  std::size_t arity() const { return generators.size(); }
  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;  // throws UndeclaredGenerator
  void validate() const;

  friend bool operator==(const MonoidPresentation&, const MonoidPresentation&) = default;
};

// A presentation together with its completed rewrite system.
class Monoid {
 public:
  explicit Monoid(MonoidPresentation p, RewriteSystem::Limits limits = {});

  const MonoidPresentation& presentation() const { return pres_; }
  const std::vector<std::string>& names() const { return pres_.generators; }
  const RewriteSystem& rewriting() const { return rs_; }
  std::size_t arity() const { return pres_.arity(); }
  bool has_zero() const { return pres_.has_zero; }
  bool confluent() const { return rs_.complete(); }

  Monomial one() const { return Monomial(arity()); }
  Monomial zero() const { return Monomial::zero(arity()); }
  Monomial generator(std::size_t i) const { return normalize(Monomial::generator(arity(), i)); }

  Monomial normalize(const Monomial& m) const;
  Monomial multiply(const Monomial& a, const Monomial& b) const { return normalize(a * b); }

  // Exact when confluent: every generator has a pure power as a rule head.
  bool finite() const { return finite_; }
  // All normal forms (finite carriers only), ascending, zero first.
  const std::vector<Monomial>& elements() const;
  // Normal forms of degree <= d, ascending, zero first.
  std::vector<Monomial> elements_up_to(std::size_t degree) const;
  // Every rule preserves degree (zero rules excepted).
  bool homogeneous() const { return homogeneous_; }

  std::string render(const Monomial& m) const { return blue::render(m, pres_.generators); }

 private:
  MonoidPresentation pres_;
  RewriteSystem rs_;
  bool finite_ = false;
  bool homogeneous_ = true;
  std::vector<Monomial> elements_;
};

Monomial normalize(const Monomial& m, const MonoidPresentation& p);

// Word problem: normal forms when the rewrite system is complete, otherwise
// a bounded bidirectional search over single rewrite steps.
Decision monoid_equal(const Monomial& x, const Monomial& y, const Monoid& monoid,
                      const Budget& budget = {});

}  // namespace blue
