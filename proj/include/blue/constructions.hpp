// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "blue/blueprint.hpp"
#include "blue/lattice.hpp"

namespace blue {

// A blueprint morphism given by the images of the source generators.
struct Morphism {
  BlueprintPtr source;
  BlueprintPtr target;
  std::vector<Monomial> images;
  // Image of the source zero when the target has no zero of its own.
  std::optional<Monomial> zero_image;

  Monomial apply(const Monomial& m) const;
  FormalSum apply(const FormalSum& s) const;
};

Morphism identity(const BlueprintPtr& b);
// Composite `second` after `first`.
Morphism compose(const Morphism& first, const Morphism& second);
Decision validate_morphism(const Morphism& f);

BlueprintPtr from_monoid(const MonoidPresentation& p, std::string name = "M");
BlueprintPtr from_monoid_with_zero(const MonoidPresentation& p, std::string name = "M0");
BlueprintPtr from_semiring(const FiniteSemiring& r, std::string name = "R");
BlueprintPtr field_with_one_element();
BlueprintPtr terminal_blueprint();
BlueprintPtr cyclotomic(unsigned n);
BlueprintPtr free_extension(const BlueprintPtr& b, const std::vector<std::string>& vars);

// The same blueprint with an explicit finite set of generating relations.
// Semiring kinds are exact; pullbacks over finite carriers use every
// relation among sums of at most max_terms - 1 terms and are flagged
// approximate.
BlueprintPtr presented_form(const BlueprintPtr& b);

// Carrier elements: all of them when finite, else those of degree <= cap.
std::vector<Monomial> carrier_sample(const Blueprint& b, std::size_t cap = 4);

struct Closure {
  BlueprintPtr result;
  Morphism map;
  Decision status;  // Unknown when a needed relation could not be decided
};

Closure proper_closure(const BlueprintPtr& b);
Closure inverse_closure(const BlueprintPtr& b);
Closure zero_closure(const BlueprintPtr& b);
Closure cancellative_closure(const BlueprintPtr& b);

// Localization at the submonoid generated by `elements`; each element gets
// an adjoined inverse.
Closure localize(const BlueprintPtr& b, const std::vector<Monomial>& elements);

// Fractions a/s with s in the submonoid generated by `denominators`.
struct Fraction {
  Monomial numerator;
  Monomial denominator;
};
// a/s == a'/s' iff t*s*a' == t*s'*a for some t in S; t is searched up to
// the degree bound.
Decision fractions_equal(const Blueprint& b, const std::vector<Monomial>& denominators, const Fraction& x,
                         const Fraction& y);

struct Classification {
  Decision proper;
  Decision with_zero;
  Decision with_inverses;
  Decision cancellative;
  Decision is_blue_field;
  Decision monoid_with_zero;  // pre-addition generated by 0 == empty alone
  std::vector<Monomial> units;
  std::vector<Monomial> integral_elements;
  bool exact = false;  // quantifiers ranged over the whole carrier
};
Classification classify(const BlueprintPtr& b);

// Semiring or ring presentation: generators, monoid relations and the
// additive relations as equalities of sums.
struct RingPresentation {
  bool integral = true;  // Z-algebra when true, N-algebra otherwise
  BlueprintPtr source;
  std::vector<std::string> generators;
  std::vector<std::pair<Monomial, Monomial>> monoid_relations;
  std::vector<SumPair> relations;

  std::string text() const;
  std::string json() const;
};

RingPresentation base_extend_N(const BlueprintPtr& b);
RingPresentation base_extend_Z(const BlueprintPtr& b);
// For semiring-backed blueprints: the reconstructed semiring equals the
// original (every value is reached and equality is value equality).
Decision semiring_reconstructs(const BlueprintPtr& b);

// Additive group of a presented ring over the finite carrier.
struct ZModule {
  std::vector<Monomial> spanning;  // nonzero carrier elements
  std::vector<IntVector> rows;     // relation vectors
};
std::optional<ZModule> additive_group(const RingPresentation& r);
std::optional<std::size_t> z_rank(const RingPresentation& r);

struct Tensor {
  BlueprintPtr result;
  Morphism left;   // C -> C (x)_B D
  Morphism right;  // D -> C (x)_B D
};
Tensor tensor(const Morphism& f, const Morphism& g);

struct Product {
  BlueprintPtr result;
  std::vector<Morphism> projections;
};
Product product(const std::vector<BlueprintPtr>& factors);

struct Equalizer {
  BlueprintPtr result;
  Morphism inclusion;
};
Equalizer equalizer(const Morphism& f, const Morphism& g);

// Presentation of a monoid generated by `names` inside some ambient monoid.
// key_of(m) identifies the value of a monomial in the generators; relations
// are found among monomials of degree <= max_degree. Exact when no normal
// form reaches the degree bound.
struct DiscoveredMonoid {
  MonoidPresentation presentation;
  bool exact = false;
};
DiscoveredMonoid discover_monoid(std::vector<std::string> names,
                                 const std::function<std::string(const Monomial&)>& key_of,
                                 std::optional<std::string> zero_key, std::size_t max_degree);

}  // namespace blue
