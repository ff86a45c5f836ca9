// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "blue/error.hpp"
#include "blue/formal_sum.hpp"
#include "blue/lattice.hpp"
#include "blue/monoid.hpp"
#include "blue/semiring.hpp"

using namespace blue;

namespace {

Monomial mono(std::vector<std::uint32_t> e) { return Monomial(std::move(e)); }

MonoidPresentation hilbert_pair() {
  // generators h1, h2, a1, a2 with a1*h2 = a2*h1 and a zero
  MonoidPresentation p;
  p.generators = {"h1", "h2", "a1", "a2"};
  p.has_zero = true;
  p.relations.emplace_back(mono({0, 1, 1, 0}), mono({1, 0, 0, 1}));
  return p;
}

MonoidPresentation free_on(std::size_t n) {
  MonoidPresentation p;
  for (std::size_t i = 0; i < n; ++i) p.generators.push_back("x" + std::to_string(i));
  return p;
}

// Brute-force semiring check written independently of check_semiring_axioms.
bool brute_force_semiring(const FiniteSemiring& r) {
  const std::size_t n = r.size();
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      for (Element c = 0; c < n; ++c) {
        auto& A = r.add;
        auto& M = r.mul;
        if (A[A[a][b]][c] != A[a][A[b][c]] || M[M[a][b]][c] != M[a][M[b][c]]) return false;
        if (A[a][b] != A[b][a] || M[a][b] != M[b][a]) return false;
        if (M[a][A[b][c]] != A[M[a][b]][M[a][c]]) return false;
        if (A[a][r.zero] != a || M[a][r.one] != a || M[a][r.zero] != r.zero) return false;
      }
  return true;
}

}  // namespace

TEST_CASE("monomial order is graded reverse lexicographic with zero smallest") {
  Monomial one(3), x = Monomial::generator(3, 0), y = Monomial::generator(3, 1), z = Monomial::generator(3, 2);
  CHECK(Monomial::zero(3) < one);
  CHECK(one < z);
  CHECK(z < y);
  CHECK(y < x);
  CHECK(x < z * z);
  CHECK((x * z) < (y * y));
}

TEST_CASE("normalize applies unit and zero laws") {
  MonoidPresentation p = free_on(1);
  Monoid m(p);
  CHECK(m.normalize(Monomial::generator(1, 0) * Monomial(1)) == Monomial::generator(1, 0));
  Monoid mz(hilbert_pair());
  CHECK(mz.normalize(Monomial::zero(4) * Monomial::generator(4, 0)).is_zero());
}

TEST_CASE("normalize picks the order-smaller side of a1*h2 = a2*h1") {
  Monoid m(hilbert_pair());
  Monomial a1h2 = mono({0, 1, 1, 0}), a2h1 = mono({1, 0, 0, 1});
  Monomial smaller = std::min(a1h2, a2h1);
  CHECK(m.normalize(a1h2) == smaller);
  CHECK(m.normalize(a2h1) == smaller);
  CHECK(smaller == a2h1);
  CHECK(monoid_equal(a1h2, a2h1, m).is_holds());
}

TEST_CASE("normalize is idempotent up to degree 6") {
  Monoid m(hilbert_pair());
  for (const auto& w : m.elements_up_to(6)) CHECK(m.normalize(m.normalize(w)) == m.normalize(w));
  MonoidPresentation p = free_on(2);
  p.relations.emplace_back(mono({2, 0}), mono({0, 1}));
  p.relations.emplace_back(mono({0, 3}), mono({0, 0}));
  Monoid q(p);
  for (std::uint32_t a = 0; a < 7; ++a)
    for (std::uint32_t b = 0; b < 7; ++b) {
      Monomial w = mono({a, b});
      CHECK(q.normalize(q.normalize(w)) == q.normalize(w));
    }
}

TEST_CASE("distinct powers in a free monoid are unequal") {
  Monoid m(free_on(1));
  auto x = Monomial::generator(1, 0);
  CHECK(monoid_equal(x, x, m).is_holds());
  CHECK(monoid_equal(x, x * x, m).is_fails());
}

TEST_CASE("undeclared generators are rejected") {
  Monoid m(free_on(1));
  CHECK_THROWS_AS(m.normalize(Monomial::generator(2, 1)), Error);
  CHECK_THROWS_AS(free_on(1).index_of("y"), Error);
}

TEST_CASE("monoid_equal is an equivalence on a finite quotient") {
  // x^3 = x, y^2 = 1, x*y = x: compare with an explicit union-find over exponent pairs.
  MonoidPresentation p = free_on(2);
  p.relations.emplace_back(mono({3, 0}), mono({1, 0}));
  p.relations.emplace_back(mono({0, 2}), mono({0, 0}));
  p.relations.emplace_back(mono({1, 1}), mono({1, 0}));
  Monoid m(p);
  CHECK(m.finite());
  std::vector<Monomial> words;
  for (std::uint32_t a = 0; a < 5; ++a)
    for (std::uint32_t b = 0; b < 4; ++b) words.push_back(mono({a, b}));
  // Oracle: closure of the relation set under multiplication, restricted to the words.
  std::map<Monomial, Monomial> parent;
  std::function<Monomial(const Monomial&)> find = [&](const Monomial& w) -> Monomial {
    auto it = parent.find(w);
    if (it == parent.end() || it->second == w) return w;
    return parent[w] = find(it->second);
  };
  auto unite = [&](const Monomial& a, const Monomial& b) { parent[find(a)] = find(b); };
  for (int round = 0; round < 3; ++round)
    for (const auto& w : words)
      for (const auto& [l, r] : p.relations)
        if (l.divides(w)) {
          Monomial t = r * w.over(l);
          if (t[0] < 5 && t[1] < 4) unite(w, t);
        }
  for (const auto& a : words)
    for (const auto& b : words) CHECK(monoid_equal(a, b, m).is_holds() == (find(a) == find(b)));
}

TEST_CASE("check_semiring_axioms") {
  CHECK(check_semiring_axioms(boolean_semiring()).empty());
  CHECK(check_semiring_axioms(residue_ring(2)).empty());
  CHECK(check_semiring_axioms(trivial_semiring()).empty());

  FiniteSemiring bad = residue_ring(2);
  bad.mul[1][1] = 0;  // 1*1 = 0 breaks the unit and distributivity
  auto v = check_semiring_axioms(bad);
  CHECK_FALSE(v.empty());
  std::set<std::string> names;
  for (const auto& x : v) names.insert(x.axiom);
  CHECK(names.count("MultiplicativeIdentity"));

  FiniteSemiring planted = boolean_semiring();
  planted.add[1][1] = 0;
  planted.mul[1][1] = 1;
  CHECK(check_semiring_axioms(planted).empty());  // this is the field with two elements

  FiniteSemiring broken = residue_ring(3);
  broken.add[1][1] = 0;  // 1+1 = 0 in Z/3 tables breaks associativity and distributivity
  names.clear();
  for (const auto& x : check_semiring_axioms(broken)) names.insert(x.axiom);
  CHECK(names.count("Distributivity"));

  FiniteSemiring malformed = boolean_semiring();
  malformed.add[0][1] = 7;
  CHECK_THROWS_AS(check_semiring_axioms(malformed), Error);
}

TEST_CASE("check_semiring_axioms agrees with a brute-force loop on random tables") {
  std::mt19937 rng(7);
  int agreements = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    FiniteSemiring r = (trial % 2) ? residue_ring(3) : boolean_semiring();
    std::uniform_int_distribution<std::size_t> pick(0, r.size() - 1);
    int mutations = trial % 3;
    for (int k = 0; k < mutations; ++k) {
      Element a = pick(rng), b = pick(rng), c = pick(rng);
      if (rng() % 2) {
        r.add[a][b] = c;
        r.add[b][a] = c;
      } else {
        r.mul[a][b] = c;
        r.mul[b][a] = c;
      }
    }
    CHECK(check_semiring_axioms(r).empty() == brute_force_semiring(r));
    ++agreements;
  }
  CHECK(agreements == 3000);
}

TEST_CASE("eval_in_semiring") {
  FiniteSemiring b1 = boolean_semiring();
  auto embed = [](const Monomial& m) -> std::optional<Element> { return m.is_zero() ? 0 : 1; };
  CHECK(eval_in_semiring(FormalSum(), embed, b1) == b1.zero);
  Monomial one(0);
  CHECK(eval_in_semiring(FormalSum({one, one}), embed, b1) == b1.one);

  // {1, -1} inside Z/7 as a stand-in for Z: 1 + (-1) = 0.
  FiniteSemiring z7 = residue_ring(7);
  auto signs = [](const Monomial& m) -> std::optional<Element> { return (m[0] % 2) ? 6 : 1; };
  CHECK(eval_in_semiring(FormalSum({Monomial(1), Monomial::generator(1, 0)}), signs, z7) == 0);

  auto nothing = [](const Monomial&) -> std::optional<Element> { return std::nullopt; };
  CHECK_THROWS_AS(eval_in_semiring(FormalSum({one}), nothing, b1), Error);
}

TEST_CASE("eval_in_semiring is additive and multiplicative") {
  FiniteSemiring r = residue_ring(5);
  // x -> 2 in Z/5 on the free monoid on x.
  auto embed = [&](const Monomial& m) -> std::optional<Element> {
    Element v = r.one;
    for (std::uint32_t k = 0; k < m[0]; ++k) v = r.times(v, 2);
    return v;
  };
  std::vector<FormalSum> sums;
  for (std::uint32_t a = 0; a < 3; ++a)
    for (std::uint32_t b = a; b < 3; ++b) sums.push_back(FormalSum({Monomial::generator(1, 0, a), Monomial::generator(1, 0, b)}));
  sums.push_back(FormalSum());
  for (const auto& s : sums)
    for (const auto& t : sums) {
      CHECK(eval_in_semiring(s + t, embed, r) == r.plus(eval_in_semiring(s, embed, r), eval_in_semiring(t, embed, r)));
      CHECK(eval_in_semiring(s.times(t), embed, r) ==
            r.times(eval_in_semiring(s, embed, r), eval_in_semiring(t, embed, r)));
    }
}

TEST_CASE("subset_generates") {
  CHECK(subset_generates(boolean_semiring(), {0, 1}));
  CHECK(subset_generates(residue_ring(2), {0, 1}));
  // {0, 1, t}: 1+1 = 1, t+t = t, 1+t = t, t*t = t. {0,1} is closed, t is missed.
  FiniteSemiring r;
  r.carrier = {"0", "1", "t"};
  r.zero = 0;
  r.one = 1;
  r.add = {{0, 1, 2}, {1, 1, 2}, {2, 2, 2}};
  r.mul = {{0, 0, 0}, {0, 1, 2}, {0, 2, 2}};
  REQUIRE(check_semiring_axioms(r).empty());
  CHECK_FALSE(subset_generates(r, {0, 1}));
  CHECK(subset_generates(r, {0, 1, 2}));
  CHECK_THROWS_AS(subset_generates(r, {1, 2}), Error);
}

TEST_CASE("formal sums keep the empty sum apart from zero") {
  Monoid m(hilbert_pair());
  FormalSum zero_sum = FormalSum::of(m.zero());
  CHECK_FALSE(zero_sum.empty());
  CHECK(normalize(zero_sum, m, true).empty());
  CHECK(normalize(zero_sum, m, false) == zero_sum);
  CHECK(render(FormalSum(), m.names()) == "empty");
}

TEST_CASE("smith invariants and lattice membership") {
  // rows (1,1) over basis {1,-1}: cokernel Z
  auto c = cokernel({{1, 1}}, 2);
  CHECK(c.free_rank == 1);
  CHECK(c.torsion.empty());
  auto d = cokernel({{2, 0}, {0, 3}}, 2);
  CHECK(d.free_rank == 0);
  CHECK(d.describe() == "Z/6");
  auto basis = hermite_basis({{2, 4}, {0, 6}}, 2);
  CHECK(in_lattice(basis, {2, -2}));
  CHECK_FALSE(in_lattice(basis, {1, 0}));
}
