// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "blue/decision.hpp"
#include "blue/formal_sum.hpp"
#include "blue/monoid.hpp"
#include "blue/semiring.hpp"

namespace blue {

class Blueprint;
using BlueprintPtr = std::shared_ptr<const Blueprint>;

// How the pre-addition is given.
//   Generated: smallest pre-addition containing a finite set of relations.
//   Semiring:  relations are the pairs with equal value in a finite semiring.
//   Pullback:  relations are the pairs holding after every leg map.
//   Lattice:   smallest cancellative pre-addition containing the relations.
enum class AdditionKind { Generated, Semiring, Pullback, Lattice };

const char* to_string(AdditionKind kind);

// A multiplicative map given by the images of the source generators.
struct Leg {
  BlueprintPtr target;
  std::vector<Monomial> images;
};

struct SemiringData {
  std::shared_ptr<const FiniteSemiring> ring;
  std::vector<Element> images;  // value of each generator
  std::vector<Element> subset;  // multiplicative subset, zero and one included
};

// Multiplicative map into a finite semiring compatible with the relations.
struct Character {
  std::shared_ptr<const FiniteSemiring> ring;
  std::vector<Element> values;
};

struct AdditionCache;

struct BlueprintOptions {
  Budget budget{};
  bool zero_is_empty = true;  // 0 == empty whenever the monoid has a zero
  bool approximate = false;   // presentation found by bounded search
  std::string note;
};

class Blueprint {
 public:
  using Options = BlueprintOptions;

  static BlueprintPtr generated(std::string name, MonoidPresentation p, std::vector<SumPair> relations,
                                Options options);
  static BlueprintPtr generated(std::string name, MonoidPresentation p, std::vector<SumPair> relations = {});
  static BlueprintPtr embedded(std::string name, FiniteSemiring r, std::vector<Element> subset,
                               Options options = {});
  static BlueprintPtr pullback(std::string name, MonoidPresentation p, std::vector<Leg> legs,
                               std::vector<SumPair> known, Options options = {});
  static BlueprintPtr lattice(std::string name, MonoidPresentation p, std::vector<SumPair> relations,
                              Options options = {});

  const std::string& name() const { return name_; }
  AdditionKind kind() const { return kind_; }
  const Monoid& monoid() const { return *monoid_; }
  const std::vector<std::string>& names() const { return monoid_->names(); }
  std::size_t arity() const { return monoid_->arity(); }
  // The monoid has an element 0 with 0 == empty.
  bool has_zero() const { return monoid_->has_zero() && options_.zero_is_empty; }
  bool finite() const { return monoid_->finite(); }
  const Budget& budget() const { return options_.budget; }
  const Options& options() const { return options_; }
  bool approximate() const { return options_.approximate; }

  // Generating relations (Generated, Lattice) or known relations (Pullback).
  const std::vector<SumPair>& relations() const { return relations_; }
  const SemiringData& semiring() const { return semiring_; }
  const std::vector<Leg>& legs() const { return legs_; }

  Monomial one() const { return monoid_->one(); }
  Monomial zero() const { return monoid_->zero(); }
  Monomial generator(std::size_t i) const { return monoid_->generator(i); }
  Monomial normalize(const Monomial& m) const { return monoid_->normalize(m); }
  FormalSum normalize(const FormalSum& s) const;
  std::string render(const Monomial& m) const { return monoid_->render(m); }
  std::string render(const FormalSum& s) const { return blue::render(s, names()); }
  std::vector<Monomial> elements_up_to(std::size_t degree) const { return monoid_->elements_up_to(degree); }

  // Value of a monomial in the semiring (Semiring kind only).
  Element evaluate(const Monomial& m) const;

  // Membership of (lhs, rhs) in the pre-addition.
  Decision holds(const FormalSum& lhs, const FormalSum& rhs) const;
  // Connectivity inside the grade of sums with <= max_terms terms of degree
  // <= max_degree (Generated kind); Fails means "not connected in the grade".
  Decision holds_within(const FormalSum& lhs, const FormalSum& rhs, std::size_t max_terms,
                        std::size_t max_degree) const;

  // Characters into B1, F2, F3, F5, F7 found within the search budget
  // (Generated kind).
  const std::vector<Character>& characters() const;
  // A character into B1 or a prime field with kernel exactly the generators
  // flagged in zero_mask; every other generator gets a nonzero value.
  std::optional<Character> find_character(const std::vector<bool>& zero_mask) const;
  Element character_value(const Character& c, const Monomial& m) const;

  // Semiring-kind blueprints rewritten with an explicit generating set.
  BlueprintPtr as_generated() const;

  std::string describe() const;

 private:
  Blueprint() = default;

  std::string name_;
  AdditionKind kind_ = AdditionKind::Generated;
  std::shared_ptr<const Monoid> monoid_;
  std::vector<SumPair> relations_;
  SemiringData semiring_;
  std::vector<Leg> legs_;
  Options options_;
  std::shared_ptr<AdditionCache> cache_;
};

// Image of a monomial under generator images, normalized in the target.
Monomial map_monomial(const Monomial& m, const std::vector<Monomial>& images, const Blueprint& target);
FormalSum map_sum(const FormalSum& s, const std::vector<Monomial>& images, const Blueprint& target);

// Monoid presentation of a finite multiplicative table: one generator per
// element other than 0 and 1, relations g*h = table(g, h).
struct TablePresentation {
  MonoidPresentation presentation;
  std::vector<Monomial> element_monomials;  // per table element
};
TablePresentation present_table(const std::vector<std::string>& labels,
                                const std::vector<std::vector<std::size_t>>& product, std::size_t one,
                                std::optional<std::size_t> zero);

}  // namespace blue
