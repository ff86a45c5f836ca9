// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#include "blue/semiring.hpp"

#include <algorithm>

#include "blue/error.hpp"

namespace blue {

std::optional<Element> FiniteSemiring::find(const std::string& label) const {
  auto it = std::find(carrier.begin(), carrier.end(), label);
  if (it == carrier.end()) return std::nullopt;
  return static_cast<Element>(it - carrier.begin());
}

std::vector<Violation> check_semiring_axioms(const FiniteSemiring& r) {
  const std::size_t n = r.size();
  auto total = [n](const std::vector<std::vector<Element>>& t) {
    if (t.size() != n) return false;
    for (const auto& row : t) {
      if (row.size() != n) return false;
      for (auto v : row)
        if (v >= n) return false;
    }
    return true;
  };
  if (n == 0 || !total(r.add) || !total(r.mul) || r.zero >= n || r.one >= n)
    throw Error(ErrorCode::MalformedTable, "table entry outside the carrier");

  std::vector<Violation> out;
  auto note = [&](const char* axiom, std::initializer_list<Element> w) {
    Violation v{axiom, {}};
    for (auto e : w) v.witness.push_back(r.carrier[e]);
    out.push_back(std::move(v));
  };
  for (Element a = 0; a < n; ++a) {
    if (r.plus(a, r.zero) != a) note("AdditiveIdentity", {a});
    if (r.times(a, r.one) != a) note("MultiplicativeIdentity", {a});
    if (r.times(a, r.zero) != r.zero) note("ZeroAbsorbing", {a});
    for (Element b = 0; b < n; ++b) {
      if (r.plus(a, b) != r.plus(b, a)) note("AdditiveCommutativity", {a, b});
      if (r.times(a, b) != r.times(b, a)) note("MultiplicativeCommutativity", {a, b});
      for (Element c = 0; c < n; ++c) {
        if (r.plus(r.plus(a, b), c) != r.plus(a, r.plus(b, c))) note("AdditiveAssociativity", {a, b, c});
        if (r.times(r.times(a, b), c) != r.times(a, r.times(b, c)))
          note("MultiplicativeAssociativity", {a, b, c});
        if (r.times(a, r.plus(b, c)) != r.plus(r.times(a, b), r.times(a, c)))
          note("Distributivity", {a, b, c});
      }
    }
  }
  return out;
}

Element eval_in_semiring(const FormalSum& s, const Embedding& embed, const FiniteSemiring& r) {
  Element acc = r.zero;
  for (const auto& t : s.terms()) {
    auto image = embed(t);
    if (!image || *image >= r.size()) throw Error(ErrorCode::UnmappedTerm, "term without image");
    acc = r.plus(acc, *image);
  }
  return acc;
}

bool subset_generates(const FiniteSemiring& r, const std::vector<Element>& subset) {
  std::vector<bool> in(r.size(), false);
  for (auto a : subset) {
    if (a >= r.size()) throw Error(ErrorCode::MalformedTable, "subset element outside the carrier");
    in[a] = true;
  }
  if (!in[r.zero] || !in[r.one]) throw Error(ErrorCode::MissingUnitOrZero, "subset must contain 0 and 1");
  for (auto a : subset)
    for (auto b : subset)
      if (!in[r.times(a, b)])
        throw Error(ErrorCode::NotMultiplicativelyClosed, r.carrier[a] + "*" + r.carrier[b]);
  bool grew = true;
  while (grew) {
    grew = false;
    for (Element a = 0; a < r.size(); ++a) {
      if (!in[a]) continue;
      for (Element b = 0; b < r.size(); ++b) {
        if (!in[b]) continue;
        for (Element c : {r.plus(a, b), r.times(a, b)})
          if (!in[c]) in[c] = grew = true;
      }
    }
  }
  return std::all_of(in.begin(), in.end(), [](bool b) { return b; });
}

FiniteSemiring boolean_semiring() {
  return {{"0", "1"}, {{0, 1}, {1, 1}}, {{0, 0}, {0, 1}}, 0, 1};
}

FiniteSemiring residue_ring(unsigned n) {
  FiniteSemiring r;
  for (unsigned i = 0; i < n; ++i) r.carrier.push_back(std::to_string(i));
  r.add.assign(n, std::vector<Element>(n));
  r.mul.assign(n, std::vector<Element>(n));
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b) {
      r.add[a][b] = (a + b) % n;
      r.mul[a][b] = (a * b) % n;
    }
  r.zero = 0;
  r.one = 1 % n;
  return r;
}

FiniteSemiring trivial_semiring() { return {{"0"}, {{0}}, {{0}}, 0, 0}; }

}  // namespace blue
