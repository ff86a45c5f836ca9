// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "blue/blueprint.hpp"
#include "blue/congruence.hpp"
#include "blue/constructions.hpp"

namespace blue {

using PointSet = std::vector<std::size_t>;  // ascending point indices

struct Point {
  std::string id;  // "(g1,g2)" in generator order, "(0)" or "()"
  Ideal prime;     // a support ideal
};

// Prime spectrum with the Zariski topology. Points are ordered as the
// enumeration returns them: by size, then by generator mask.
struct SpecSpace {
  BlueprintPtr base;
  std::vector<Point> points;
  Decision complete;
  std::vector<std::string> undecided;

  std::size_t size() const { return points.size(); }
  // U_h = { p | h not in p }.
  PointSet basis_open(const Monomial& h) const;
  // p_i is contained in p_j: p_i specializes to p_j.
  bool specializes(std::size_t i, std::size_t j) const;
  PointSet closed_points() const;
  // Points contained in p_i (its smallest open neighbourhood).
  PointSet generizations(std::size_t i) const;
  std::optional<std::size_t> find(const std::vector<bool>& mask, bool zero_in) const;
  std::optional<std::size_t> find(const std::string& id) const;

  std::string text() const;
  std::string json() const;
  std::string dot() const;
};

// Throws InfiniteCarrierWithoutGenerators when there is nothing to enumerate.
SpecSpace spec(const BlueprintPtr& b);

// V(I) = { p | I inside p }; throws NotAnIdeal when I fails the ideal test.
PointSet v_closed(const SpecSpace& x, const Ideal& i);
PointSet closure_of(const SpecSpace& x, std::size_t point);

// B_p: the localization at the generators outside p.
Closure stalk(const SpecSpace& x, std::size_t point);
// B_p / p B_p.
BlueprintPtr residue_field(const SpecSpace& x, std::size_t point);

// Inverse of a unit in a localized blueprint, factor by factor.
std::optional<Monomial> inverse_in(const Blueprint& b, const Monomial& m);

// Compatible families of stalk values over an open set, as a blueprint.
// The first generators restrict the base generators; "s1", "s2", ... are
// sections outside their span. Values come from the stalks at the closed
// points of the open set.
struct Sections {
  BlueprintPtr result;
  Morphism restriction;           // base -> result
  std::vector<std::size_t> closed;  // closed points of the open set
  std::vector<BlueprintPtr> stalks;  // one per closed point
  std::vector<std::vector<Monomial>> values;  // per closed point, value of each result generator
  std::vector<std::string> new_sections;
  Decision exact;  // Holds when every stalk value was enumerated
  // Value of a result monomial at a point of the open set, in that point's stalk.
  Monomial value_at(const SpecSpace& x, const Monomial& m, std::size_t point) const;
};

Sections sections(const SpecSpace& x, const PointSet& open);
// Global sections with the globalization sigma: B -> Gamma B.
Sections globalization(const BlueprintPtr& b);

struct SpecIsoReport {
  SpecSpace base_space;
  SpecSpace gamma_space;
  std::vector<std::size_t> pullback;  // gamma point -> base point (sigma^*)
  std::vector<std::size_t> pushforward;  // base point -> gamma point (sigma_*)
  Decision bijection;
  Decision opens;
  Decision stalks;
  std::vector<std::string> notes;
  Decision verdict() const { return both(bijection, both(opens, stalks)); }
  std::string text() const;
};
// Throws IncompleteEnumeration when either spectrum is incomplete.
SpecIsoReport verify_spec_iso(const BlueprintPtr& b);

// sigma is bijective and reflects the pre-addition.
Decision is_global(const BlueprintPtr& b);

// Mutually inverse morphisms between two localized blueprints, checked on
// generators and validated as blueprint morphisms. Validation of forward is
// skipped when it is known to be a morphism.
Decision stalks_isomorphic(const Morphism& forward, const Morphism& backward, bool forward_is_morphism = false);

struct InducedMorphism {
  Morphism map;
  SpecSpace source_space;
  SpecSpace target_space;
  std::vector<std::size_t> point_map;  // target point -> source point
  std::vector<Morphism> stalk_maps;     // B_{f^*(q)} -> C_q per target point q
  Decision local;
};
InducedMorphism induced_morphism(const Morphism& f);

struct LocalizationReport {
  SpecSpace local_space;
  PointSet open;                      // U_h in the base spectrum
  std::vector<std::size_t> point_map;  // local point -> base point
  Decision bijection;
  Decision stalks;
  Decision verdict() const { return both(bijection, stalks); }
};
LocalizationReport localization_iso_check(const BlueprintPtr& b, const Monomial& h);

// Finite disjoint union of affine pieces; empty pieces are dropped.
struct DisjointUnion {
  std::vector<SpecSpace> parts;
  BlueprintPtr gamma;  // product of the pieces' global sections
  std::size_t size() const;
  std::string text() const;
};
DisjointUnion disjoint_union(const std::vector<BlueprintPtr>& pieces);

struct FibreProduct {
  Tensor tensor;
  SpecSpace space;
  InducedMorphism left;   // to Spec C
  InducedMorphism right;  // to Spec D
};
FibreProduct affine_fibre_product(const Morphism& f, const Morphism& g);

}  // namespace blue
