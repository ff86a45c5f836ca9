// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#pragma once

#include <cstddef>
#include <string>

namespace blue {

enum class Verdict { Holds, Fails, Unknown };

// Outcome of a semi-decision. Fails is only produced from a closed search
// or an exact method; budget exhaustion yields Unknown with a note.
struct Decision {
  Verdict verdict = Verdict::Unknown;
  std::string note;

  static Decision holds(std::string why = {}) { return {Verdict::Holds, std::move(why)}; }
  static Decision fails(std::string why = {}) { return {Verdict::Fails, std::move(why)}; }
  static Decision unknown(std::string why = {}) { return {Verdict::Unknown, std::move(why)}; }
  static Decision from(bool b, std::string why = {}) { return b ? holds(std::move(why)) : fails(std::move(why)); }

  bool is_holds() const { return verdict == Verdict::Holds; }
  bool is_fails() const { return verdict == Verdict::Fails; }
  bool is_unknown() const { return verdict == Verdict::Unknown; }
};

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::Fails: return "Fails";
    default: return "Unknown";
  }
}

// Conjunction: one Fails decides, all Holds needed for Holds.
inline Decision both(const Decision& a, const Decision& b) {
  if (a.is_fails()) return a;
  if (b.is_fails()) return b;
  if (a.is_unknown()) return a;
  if (b.is_unknown()) return b;
  return Decision::holds();
}

// Disjunction: one Holds decides, all Fails needed for Fails.
inline Decision either(const Decision& a, const Decision& b) {
  if (a.is_holds()) return a;
  if (b.is_holds()) return b;
  if (a.is_unknown()) return a;
  if (b.is_unknown()) return b;
  return Decision::fails();
}

inline Decision negate(const Decision& d) {
  if (d.is_holds()) return Decision::fails(d.note);
  if (d.is_fails()) return Decision::holds(d.note);
  return d;
}

struct Budget {
  std::size_t max_pairs = 100000;  // sums visited by one search
  std::size_t max_terms = 4;       // L: terms per formal sum
  std::size_t max_degree = 6;      // d: total degree of a monomial
  std::size_t max_exponent = 3;    // n_max: denominator exponent for sections
  std::size_t max_cover = 6;       // basis opens per cover
};

}  // namespace blue
