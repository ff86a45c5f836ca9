// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "blue/blueprint.hpp"
#include "blue/constructions.hpp"
#include "blue/lattice.hpp"

namespace blue {

using MonomialPair = std::pair<Monomial, Monomial>;

enum class CongruenceMode { Pairs, Kernel, Partition };
const char* to_string(CongruenceMode mode);

// a ~ b iff map(a) == map(b) in map.target. Pairs and Partition congruences
// map onto the proper quotient generated by their pairs.
struct Congruence {
  BlueprintPtr base;
  CongruenceMode mode = CongruenceMode::Pairs;
  Morphism map;
  std::vector<MonomialPair> pairs;  // generating pairs (Pairs, Partition)
  Decision status;                  // Unknown when the quotient is approximate

  Decision related(const Monomial& a, const Monomial& b) const;
  // Classes of the carrier, or of the elements of degree <= cap when the
  // carrier is infinite; each class ascending, classes by first element.
  std::vector<std::vector<Monomial>> classes(std::size_t cap = 4) const;
  // Sorted class list (finite) or sorted pair list.
  std::string describe() const;
};

Congruence minimal_congruence(const BlueprintPtr& b);
Congruence maximal_congruence(const BlueprintPtr& b);
Congruence kernel_of(const Morphism& f);
Congruence congruence_generated(const BlueprintPtr& b, std::vector<MonomialPair> pairs);
Congruence congruence_from_partition(const BlueprintPtr& b, const std::vector<std::vector<Monomial>>& classes);
Congruence inverse_image_congruence(const Morphism& f, const Congruence& c);

// Pairs generating c: its own pairs, or class members against the class
// minimum over the sample.
std::vector<MonomialPair> generating_pairs(const Congruence& c, std::size_t cap = 4);
// Same classes over the sample; exact on finite carriers.
Decision same_congruence(const Congruence& a, const Congruence& b, std::size_t cap = 4);

// B/~ with its projection; status checks kernel_of(projection) == c.
Closure quotient_by(const Congruence& c);

// (C1)* and (C2)* over the sample.
Decision is_congruence(const Congruence& c);
// More than one class; exact on finite carriers.
Decision is_proper(const Congruence& c);
Decision is_prime_congruence(const Congruence& c);
Decision is_maximal_congruence(const Congruence& c);

enum class IdealMode { Support, Generated, Radical, Preimage, Explicit };
const char* to_string(IdealMode mode);

struct Ideal {
  BlueprintPtr base;
  IdealMode mode = IdealMode::Generated;
  std::vector<Monomial> generators;  // sorted normal forms
  // Support ideals: a monomial belongs iff one of its factors is flagged,
  // and the zero belongs iff zero_in.
  std::vector<bool> mask;
  bool zero_in = false;
  std::string tag;  // label override for derived ideals
  std::function<Decision(const Monomial&)> member;

  Decision contains(const Monomial& a) const { return member(base->normalize(a)); }
  // Elements of the sample that are certainly members.
  std::vector<Monomial> elements(std::size_t cap = 4) const;
  // "(g1,g2)" over sorted generators; "()" for the empty ideal.
  std::string label() const;
};

Ideal support_ideal(const BlueprintPtr& b, std::vector<bool> mask, bool zero_in);
Ideal ideal_generated(const BlueprintPtr& b, std::vector<Monomial> j);
Ideal explicit_ideal(const BlueprintPtr& b, std::vector<Monomial> elements);
Ideal whole_ideal(const BlueprintPtr& b);
Ideal absorbing_ideal(const Congruence& c);
Ideal radical(const Ideal& i);
Ideal inverse_image_ideal(const Morphism& f, const Ideal& i);
// The congruence ~_I generated by identifying the members of I.
Congruence congruence_of_ideal(const Ideal& i, std::size_t cap = 4);

Decision same_ideal(const Ideal& a, const Ideal& b, std::size_t cap = 4);

struct IdealCheck {
  Decision absorbs;      // (I1)
  Decision has_zero;     // (I2)
  Decision closed;       // (I3) through ~_I
  Decision zero_rule;    // closure rule for blueprints with zero; Holds when not applicable
  Decision verdict() const { return both(both(absorbs, has_zero), both(closed, zero_rule)); }
};
IdealCheck check_ideal(const Ideal& i);
Decision is_ideal(const Ideal& i);

// Throws NotProper when 1 is in the ideal.
Decision is_prime_ideal(const Ideal& i);
Decision is_maximal_ideal(const Ideal& i);

struct PrimeList {
  std::vector<Ideal> primes;  // Support ideals, by size then mask
  Decision complete;
  std::vector<std::string> undecided;  // candidate labels left Unknown
};
PrimeList enumerate_prime_ideals(const BlueprintPtr& b);

// I_Z(~): differences a - b of related elements inside B_Z.
struct IzIdeal {
  RingPresentation ring;
  std::vector<MonomialPair> pairs;
  std::string text() const;
};
IzIdeal iz_ideal(const Congruence& c, std::size_t cap = 4);

// (B/~)_Z against B_Z / I_Z(~) over the carrier elements of degree <= degree.
struct IzCheck {
  std::size_t spanning = 0;
  std::vector<Integer> quotient_invariants;
  std::vector<Integer> ideal_invariants;
  CokernelShape quotient_shape;
  CokernelShape ideal_shape;
  Decision agree;
};
IzCheck check_iz(const Congruence& c, std::size_t degree = 4);

}  // namespace blue
