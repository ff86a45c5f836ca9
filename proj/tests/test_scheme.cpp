// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include <json.hpp>

#include "blue/catalog.hpp"
#include "blue/error.hpp"
#include "blue/parser.hpp"
#include "blue/scheme.hpp"

using namespace blue;

namespace {

Monomial M(const BlueprintPtr& b, const std::string& text) { return parse_monomial(*b, text); }

std::vector<std::string> ids(const SpecSpace& x, const PointSet& s) {
  std::vector<std::string> out;
  for (auto i : s) out.push_back(x.points[i].id);
  return out;
}

PointSet everything(const SpecSpace& x) {
  PointSet all(x.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return all;
}

PointSet meet(const PointSet& a, const PointSet& b) {
  PointSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

TEST_CASE("spectra of small blueprints") {
  CHECK(spec(field_with_one_element()).size() == 1);
  CHECK(spec(terminal_blueprint()).size() == 0);
  auto fx = spec(catalog::polynomial({"x"}));
  CHECK(ids(fx, everything(fx)) == std::vector<std::string>{"(0)", "(x)"});
  CHECK(fx.specializes(0, 1));
  CHECK(!fx.specializes(1, 0));
  CHECK(fx.closed_points() == PointSet{1});
}

TEST_CASE("spectrum of the two-chart line") {
  auto b = catalog::two_chart_line();
  auto x = spec(b);
  CHECK(x.complete.is_holds());
  CHECK(x.size() == 6);
  CHECK(ids(x, x.basis_open(M(b, "h1"))) == std::vector<std::string>{"(0)", "(h2,a2)", "(a1,a2)", "(h2,a1,a2)"});
  CHECK(ids(x, x.closed_points()) == std::vector<std::string>{"(h1,a1,a2)", "(h2,a1,a2)"});
  CHECK(ids(x, v_closed(x, ideal_generated(b, {M(b, "h1")}))) == std::vector<std::string>{"(h1,a1)", "(h1,a1,a2)"});
  CHECK(v_closed(x, whole_ideal(b)).empty());
}

TEST_CASE("topology laws") {
  for (const auto& b : catalog::standard()) {
    CAPTURE(b->name());
    auto x = spec(b);
    CHECK(x.basis_open(b->one()) == everything(x));
    if (b->monoid().has_zero()) CHECK(x.basis_open(b->zero()).empty());
    auto sample = carrier_sample(*b, 2);
    for (const auto& g : sample)
      for (const auto& h : sample) CHECK(meet(x.basis_open(g), x.basis_open(h)) == x.basis_open(g * h));
    for (const auto& h : carrier_sample(*b, 1)) {
      if (h.is_zero()) continue;
      auto i = ideal_generated(b, {h});
      if (i.contains(b->one()).is_holds()) continue;
      CHECK(v_closed(x, i) == v_closed(x, radical(i)));
    }
    for (std::size_t p = 0; p < x.size(); ++p) CHECK(closure_of(x, p) == v_closed(x, x.points[p].prime));
  }
}

TEST_CASE("stalks and residue fields") {
  auto fxb = catalog::polynomial({"x"});
  auto fx = spec(fxb);
  auto at_x = stalk(fx, 1);
  CHECK(at_x.result == fxb);
  auto k_x = residue_field(fx, 1);
  CHECK(k_x->finite());
  CHECK(k_x->monoid().elements().size() == 2);
  auto k_0 = residue_field(fx, 0);
  CHECK(!k_0->finite());
  CHECK(classify(k_0).is_blue_field.verdict != Verdict::Fails);
  for (const auto& b : catalog::standard()) {
    CAPTURE(b->name());
    auto x = spec(b);
    for (std::size_t p = 0; p < x.size(); ++p) CHECK(classify(residue_field(x, p)).is_blue_field.verdict != Verdict::Fails);
  }
}

TEST_CASE("global sections of the two-chart line") {
  auto b = catalog::two_chart_line();
  auto g = globalization(b);
  REQUIRE(g.new_sections.size() == 1);
  auto gamma = g.result;
  auto s = M(gamma, g.new_sections[0]);
  auto sigma = [&](const char* name) { return g.restriction.apply(M(b, name)); };
  CHECK(gamma->normalize(s * sigma("h1")) == sigma("a1"));
  CHECK(gamma->normalize(s * sigma("h2")) == sigma("a2"));
  // No element of B does the same job.
  for (const auto& c : carrier_sample(*b, 4))
    CHECK(!(b->normalize(c * M(b, "h1")) == M(b, "a1") && b->normalize(c * M(b, "h2")) == M(b, "a2")));
  CHECK(is_global(b).is_fails());
  CHECK(gamma->holds(FormalSum({sigma("h1"), sigma("h2")}), FormalSum::of(gamma->one())).is_holds());
}

TEST_CASE("sections over small open sets") {
  auto b = catalog::two_chart_line();
  auto x = spec(b);
  CHECK(sections(x, {}).result->monoid().elements().size() == 1);
  auto u = sections(x, x.basis_open(M(b, "h1")));
  CHECK(u.closed.size() == 1);
  CHECK(u.exact.is_holds());
}

TEST_CASE("globalization theorem") {
  for (const auto& b : catalog::standard()) {
    CAPTURE(b->name());
    auto r = verify_spec_iso(b);
    CAPTURE(r.text());
    CHECK(r.bijection.is_holds());
    CHECK(r.opens.is_holds());
    CHECK(r.stalks.is_holds());
  }
}

TEST_CASE("global blueprints") {
  CHECK(is_global(field_with_one_element()).is_holds());
  CHECK(is_global(catalog::polynomial({"x"})).is_holds());
  CHECK(is_global(catalog::idempotent_with_zero()).is_holds());
  CHECK(is_global(catalog::field_two()).is_holds());
  auto g = globalization(catalog::two_chart_line()).result;
  CHECK(is_global(g).verdict != Verdict::Fails);
}

TEST_CASE("localization theorem") {
  for (const auto& b : catalog::standard()) {
    CAPTURE(b->name());
    std::vector<Monomial> hs{b->one()};
    if (b->monoid().has_zero()) hs.push_back(b->zero());
    for (std::size_t g = 0; g < b->arity(); ++g) hs.push_back(b->generator(g));
    for (const auto& h : hs) {
      CAPTURE(b->render(h));
      auto r = localization_iso_check(b, h);
      CHECK(r.bijection.is_holds());
      CHECK(r.stalks.is_holds());
    }
  }
  auto b = catalog::two_chart_line();
  CHECK(localization_iso_check(b, M(b, "h1")).local_space.size() == 4);
}

TEST_CASE("induced morphisms") {
  auto f1 = field_with_one_element();
  auto fx = catalog::polynomial({"x"});
  Morphism inc{f1, fx, {}, std::nullopt};
  auto i = induced_morphism(inc);
  CHECK(i.point_map == std::vector<std::size_t>{0, 0});
  CHECK(i.local.is_holds());
  auto id = induced_morphism(identity(fx));
  CHECK(id.point_map == std::vector<std::size_t>{0, 1});
  CHECK(id.local.is_holds());
  auto b = catalog::two_chart_line();
  auto loc = localize(b, {M(b, "h1")});
  auto li = induced_morphism(loc.map);
  auto x = spec(b);
  PointSet image(li.point_map.begin(), li.point_map.end());
  std::sort(image.begin(), image.end());
  CHECK(image == x.basis_open(M(b, "h1")));
  CHECK(li.local.is_holds());
}

TEST_CASE("disjoint unions") {
  auto f1 = field_with_one_element();
  auto u = disjoint_union({f1, f1});
  CHECK(u.size() == 2);
  auto g = u.gamma;
  CHECK(g->monoid().elements().size() == 4);
  auto e = [&](const char* label) { return M(g, label); };
  (void)e;
  CHECK(classify(g).monoid_with_zero.is_fails());
  auto alone = disjoint_union({f1, terminal_blueprint()});
  CHECK(alone.size() == 1);
  CHECK(alone.gamma->monoid().elements().size() == 2);
}

TEST_CASE("affine fibre products") {
  auto f1 = field_with_one_element();
  auto fx = catalog::polynomial({"x"});
  auto fy = catalog::polynomial({"y"});
  auto fp = affine_fibre_product(Morphism{f1, fx, {}, std::nullopt}, Morphism{f1, fy, {}, std::nullopt});
  CHECK(fp.space.size() == spec(catalog::polynomial({"x", "y"})).size());
  CHECK(fp.left.local.is_holds());
  CHECK(fp.right.local.is_holds());
  auto same = affine_fibre_product(identity(fx), identity(fx));
  CHECK(same.space.size() == 2);
}

TEST_CASE("exports are well formed and stable") {
  auto b = catalog::two_chart_line();
  auto x = spec(b);
  auto j = nlohmann::json::parse(x.json());
  CHECK(j["points"].size() == 6);
  CHECK(j["complete"] == true);
  CHECK(j["basis_opens"]["h1"].size() == 4);
  CHECK(x.json() == spec(b).json());
  CHECK(x.dot().find("digraph") == 0);
  CHECK(x.text() == spec(b).text());
}
