// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "blue/catalog.hpp"
#include "blue/congruence.hpp"
#include "blue/constructions.hpp"
#include "blue/error.hpp"
#include "blue/parser.hpp"

using namespace blue;

namespace {

Monomial M(const BlueprintPtr& b, const std::string& text) { return parse_monomial(*b, text); }
BlueprintPtr from_text(const std::string& text) { return build(parse(text).blueprints.front()); }

std::vector<std::string> labels(const PrimeList& list) {
  std::vector<std::string> out;
  for (const auto& p : list.primes) out.push_back(p.label());
  return out;
}

// Oracle: every subset of a finite carrier that is closed under
// multiplication by the carrier, with a multiplicative complement, and
// closed under the zero rule over sums of at most two terms.
std::set<std::vector<Monomial>> brute_primes(const BlueprintPtr& b) {
  const auto& elems = b->monoid().elements();
  std::set<std::vector<Monomial>> out;
  const std::size_t n = elems.size();
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    std::vector<Monomial> in;
    auto member = [&](const Monomial& m) {
      auto k = std::find(elems.begin(), elems.end(), b->normalize(m)) - elems.begin();
      return (bits >> k) & 1;
    };
    for (std::size_t k = 0; k < n; ++k)
      if ((bits >> k) & 1) in.push_back(elems[k]);
    if (member(b->one())) continue;
    if (b->has_zero() && !member(b->zero())) continue;
    bool ok = true;
    for (const auto& x : elems)
      for (const auto& y : elems) {
        if (member(x) && !member(x * y)) ok = false;
        if (!member(x) && !member(y) && member(x * y)) ok = false;
      }
    // a + sum(I) == sum(I) forces a into I.
    if (ok && b->has_zero()) {
      std::vector<FormalSum> isums{FormalSum()};
      for (const auto& x : in)
        if (!x.is_zero()) isums.push_back(FormalSum::of(x));
      for (const auto& x : in)
        for (const auto& y : in)
          if (!x.is_zero() && !y.is_zero()) isums.emplace_back(std::vector<Monomial>{x, y});
      for (const auto& a : elems) {
        if (member(a)) continue;
        for (const auto& l : isums)
          for (const auto& r : isums)
            if (b->holds(FormalSum::of(a) + l, r).is_holds()) ok = false;
      }
    }
    if (ok) out.insert(in);
  }
  return out;
}

}  // namespace

TEST_CASE("generated ideals") {
  auto b = catalog::two_chart_line();
  auto whole = ideal_generated(b, {M(b, "h1"), M(b, "h2")});
  CHECK(whole.contains(b->one()).is_holds());

  auto fx = catalog::polynomial({"x"});
  auto i = ideal_generated(fx, {M(fx, "x")});
  CHECK(i.contains(fx->zero()).is_holds());
  CHECK(i.contains(M(fx, "x^3")).is_holds());
  CHECK(i.contains(fx->one()).is_fails());
  CHECK(is_ideal(i).verdict != Verdict::Fails);

  auto a = ideal_generated(b, {M(b, "a1")});
  CHECK(a.contains(M(b, "a1*h2")).is_holds());
  CHECK(a.contains(M(b, "a2*h1")).is_holds());
  CHECK(a.contains(M(b, "h1")).is_fails());
}

TEST_CASE("minimal and maximal congruences") {
  auto f1 = field_with_one_element();
  auto minc = minimal_congruence(f1);
  CHECK(minc.classes().size() == 2);
  CHECK(maximal_congruence(f1).classes().size() == 1);
  CHECK(is_proper(minc).is_holds());
  CHECK(is_proper(maximal_congruence(f1)).is_fails());

  auto e0 = catalog::idempotent_with_zero();
  auto q = quotient_by(maximal_congruence(e0));
  CHECK(q.result->finite());
  CHECK(q.result->monoid().elements().size() == 1);

  // Generated from no pairs: the proper closure.
  auto pc = proper_closure(e0);
  CHECK(quotient_by(minimal_congruence(e0)).result->monoid().elements().size() ==
        pc.result->monoid().elements().size());
}

TEST_CASE("kernels") {
  auto fx = catalog::polynomial({"x"});
  auto f1 = field_with_one_element();
  Morphism to_zero{fx, f1, {f1->zero()}, std::nullopt};
  auto k = kernel_of(to_zero);
  CHECK(k.related(M(fx, "x"), fx->zero()).is_holds());
  CHECK(k.related(M(fx, "x^2"), M(fx, "x")).is_holds());
  CHECK(k.related(fx->one(), M(fx, "x")).is_fails());
  CHECK(k.classes(3).size() == 2);

  auto id = kernel_of(identity(fx));
  CHECK(same_congruence(id, minimal_congruence(fx)).verdict != Verdict::Fails);

  Morphism bad{fx, catalog::polynomial({"y"}), {}, std::nullopt};
  CHECK_THROWS_AS(kernel_of(bad), Error);
}

TEST_CASE("quotient by an ideal congruence") {
  auto fx = catalog::polynomial({"x"});
  auto c = congruence_of_ideal(ideal_generated(fx, {M(fx, "x")}));
  auto q = quotient_by(c);
  CHECK(q.result->finite());
  CHECK(q.result->monoid().elements().size() == 2);  // {0, 1}
  CHECK(q.map.apply(M(fx, "x^2")).is_zero());
}

TEST_CASE("partitions") {
  auto e0 = catalog::idempotent_with_zero();
  auto good = congruence_from_partition(e0, {{e0->zero(), M(e0, "e")}});
  CHECK(good.status.verdict != Verdict::Fails);
  CHECK(good.classes().size() == 2);
  // Merging 1 with e forces nothing else, so it is a congruence.
  auto c = congruence_from_partition(e0, {{e0->one(), M(e0, "e")}});
  CHECK(c.classes().size() == 2);

  auto fxy = from_text("blueprint T { generators: x; zero; monoid: x^3 = 0; }");
  auto bad = congruence_from_partition(fxy, {{fxy->one(), M(fxy, "x")}});
  CHECK(bad.status.is_fails());
}

TEST_CASE("absorbing ideals") {
  auto f1 = field_with_one_element();
  auto whole = absorbing_ideal(maximal_congruence(f1));
  CHECK(whole.contains(f1->one()).is_holds());
  auto zero = absorbing_ideal(minimal_congruence(f1));
  CHECK(zero.generators == std::vector<Monomial>{f1->zero()});
  MonoidPresentation free;
  free.generators = {"t"};
  auto m = from_monoid(free);
  CHECK(absorbing_ideal(minimal_congruence(m)).elements(3).empty());
  // In {1, e} the idempotent absorbs.
  auto e = catalog::idempotent();
  CHECK(absorbing_ideal(minimal_congruence(e)).generators == std::vector<Monomial>{M(e, "e")});
}

TEST_CASE("prime ideals") {
  auto fx = catalog::polynomial({"x"});
  CHECK(is_prime_ideal(ideal_generated(fx, {M(fx, "x")})).verdict != Verdict::Fails);
  CHECK(is_prime_ideal(support_ideal(fx, {true}, true)).is_holds());
  auto fxy = catalog::polynomial({"x", "y"});
  CHECK(is_prime_ideal(ideal_generated(fxy, {M(fxy, "x*y")})).is_fails());
  CHECK_THROWS_AS(is_prime_ideal(whole_ideal(fxy)), Error);

  // {0, e, 1}: (0) is prime while ~_(0) identifies nothing new and the
  // quotient keeps the zero divisor e.
  auto e0 = catalog::idempotent_with_zero();
  auto zero = support_ideal(e0, {false}, true);
  CHECK(is_prime_ideal(zero).is_holds());
  CHECK(is_prime_congruence(congruence_of_ideal(zero)).is_fails());
}

TEST_CASE("maximal ideals") {
  auto fx = catalog::polynomial({"x"});
  CHECK(is_maximal_ideal(support_ideal(fx, {true}, true)).is_holds());
  CHECK(is_maximal_ideal(support_ideal(fx, {false}, true)).is_fails());
  CHECK(is_maximal_ideal(ideal_generated(fx, {M(fx, "x")})).verdict != Verdict::Fails);
  auto f1 = field_with_one_element();
  auto minc = minimal_congruence(f1);
  CHECK(is_maximal_congruence(minc).is_holds());
  CHECK_THROWS_AS(is_maximal_congruence(maximal_congruence(f1)), Error);
}

TEST_CASE("prime enumeration on the two-chart line") {
  auto b = catalog::two_chart_line();
  auto primes = enumerate_prime_ideals(b);
  CHECK(primes.complete.is_holds());
  CHECK(labels(primes) == std::vector<std::string>{"(0)", "(h1,a1)", "(h2,a2)", "(a1,a2)", "(h1,a1,a2)",
                                                    "(h2,a1,a2)"});
  // The pair (h1, h2) generates the whole blueprint.
  for (const auto& p : primes.primes) CHECK(!(p.mask[0] && p.mask[1]));
}

TEST_CASE("prime enumeration on small blueprints") {
  CHECK(labels(enumerate_prime_ideals(catalog::polynomial({"x"}))) == std::vector<std::string>{"(0)", "(x)"});
  CHECK(enumerate_prime_ideals(terminal_blueprint()).primes.empty());
  CHECK(enumerate_prime_ideals(field_with_one_element()).primes.size() == 1);
  auto fxy = enumerate_prime_ideals(catalog::polynomial({"x", "y"}));
  CHECK(fxy.primes.size() == 4);
  CHECK(fxy.complete.is_holds());
  // A monoid without zero has the empty ideal as a prime.
  MonoidPresentation free;
  free.generators = {"t"};
  auto m = enumerate_prime_ideals(from_monoid(free));
  CHECK(m.primes.size() == 2);
  CHECK(m.primes.front().generators.empty());
}

TEST_CASE("prime enumeration matches subset search on finite carriers") {
  for (const auto& b : catalog::standard()) {
    if (!b->finite() || b->monoid().elements().size() > 10) continue;
    CAPTURE(b->name());
    auto list = enumerate_prime_ideals(b);
    CHECK(list.complete.is_holds());
    std::set<std::vector<Monomial>> found;
    for (const auto& p : list.primes) found.insert(p.elements());
    CHECK(found == brute_primes(b));
  }
}

TEST_CASE("radicals") {
  auto fx = catalog::polynomial({"x"});
  auto r = radical(ideal_generated(fx, {M(fx, "x^2")}));
  CHECK(r.contains(M(fx, "x")).is_holds());
  CHECK(r.contains(fx->one()).is_fails());
  CHECK(same_ideal(r, ideal_generated(fx, {M(fx, "x")}), 4).verdict != Verdict::Fails);
  auto p = support_ideal(fx, {true}, true);
  CHECK(same_ideal(radical(p), p).is_holds());
  CHECK(radical(whole_ideal(fx)).contains(fx->one()).is_holds());
}

TEST_CASE("inverse images") {
  auto fx = catalog::polynomial({"x"});
  auto f1 = field_with_one_element();
  Morphism to_zero{fx, f1, {f1->zero()}, std::nullopt};
  auto pre = inverse_image_ideal(to_zero, support_ideal(f1, {}, true));
  CHECK(pre.mask == std::vector<bool>{true});
  CHECK(is_prime_ideal(pre).is_holds());
  auto whole = inverse_image_ideal(to_zero, whole_ideal(f1));
  CHECK(whole.contains(fx->one()).is_holds());
}

TEST_CASE("preimage of a prime congruence need not be prime") {
  // o^2 = o without a zero, sent to the zero of F1.
  MonoidPresentation p;
  p.generators = {"o"};
  p.relations = {{Monomial::generator(1, 0, 2), Monomial::generator(1, 0)}};
  auto b = from_monoid(p, "O");
  auto f1 = field_with_one_element();
  Morphism f{b, f1, {f1->zero()}, std::nullopt};
  CHECK(validate_morphism(f).is_holds());
  auto minc = minimal_congruence(f1);
  CHECK(is_prime_congruence(minc).is_holds());
  auto pulled = inverse_image_congruence(f, minc);
  CHECK(pulled.classes().size() == 2);
  CHECK(is_prime_congruence(pulled).is_fails());
}

TEST_CASE("the ideal I_Z") {
  auto fx = catalog::polynomial({"x"});
  auto c = congruence_generated(fx, {{M(fx, "x"), fx->one()}});
  auto iz = iz_ideal(c);
  CHECK(iz.text() == "I_Z = (x - 1)");
  auto check = check_iz(c, 4);
  CHECK(check.agree.is_holds());
  CHECK(check.quotient_shape.free_rank == 1);
  CHECK(check.quotient_shape.torsion.empty());

  auto minimal = iz_ideal(minimal_congruence(fx));
  CHECK(minimal.pairs.empty());
  auto top = check_iz(maximal_congruence(fx), 3);
  CHECK(top.agree.is_holds());
  CHECK(top.quotient_shape.free_rank == 0);
}

TEST_CASE("invariants across the catalog") {
  for (const auto& b : catalog::standard()) {
    CAPTURE(b->name());
    std::vector<Congruence> pool{minimal_congruence(b), maximal_congruence(b)};
    for (const auto& p : enumerate_prime_ideals(b).primes) pool.push_back(congruence_of_ideal(p));
    for (const auto& c : pool) {
      CHECK(is_ideal(absorbing_ideal(c)).verdict != Verdict::Fails);
      CHECK(is_congruence(c).verdict != Verdict::Fails);
      if (b->finite()) {
        CHECK(quotient_by(c).status.verdict != Verdict::Fails);
        auto again = congruence_generated(b, generating_pairs(c));
        CHECK(same_congruence(again, c).is_holds());
      }
      if (is_proper(c).is_holds() && is_prime_congruence(c).is_holds()) {
        auto ab = absorbing_ideal(c);
        if (!ab.contains(b->one()).is_holds()) CHECK(is_prime_ideal(ab).verdict != Verdict::Fails);
      }
    }
    for (const auto& p : enumerate_prime_ideals(b).primes) {
      CHECK(is_prime_ideal(p).is_holds());
      if (is_maximal_ideal(p).is_holds()) CHECK(is_prime_ideal(p).is_holds());
    }
  }
}
