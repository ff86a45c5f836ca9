// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#include "blue/scheme.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "blue/error.hpp"

namespace blue {

namespace {

constexpr std::size_t kCandidateDegree = 3;
constexpr std::size_t kReachDegree = 4;
constexpr std::size_t kMaxNewSections = 6;

std::string sanitized(std::string s) {
  for (auto& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') c = '_';
  return s;
}

std::optional<std::size_t> index_of(const Blueprint& b, const std::string& name) {
  auto it = std::find(b.names().begin(), b.names().end(), name);
  if (it == b.names().end()) return std::nullopt;
  return static_cast<std::size_t>(it - b.names().begin());
}

// Product of images under a generator substitution, unnormalized.
Monomial substitute(const Monomial& m, const std::vector<Monomial>& images, std::size_t arity) {
  if (m.is_zero()) return Monomial::zero(arity);
  Monomial out(arity);
  for (std::size_t i = 0; i < m.arity(); ++i)
    if (m[i]) out = out * images[i].pow(m[i]);
  return out;
}

FormalSum substitute(const FormalSum& s, const std::vector<Monomial>& images, std::size_t arity) {
  std::vector<Monomial> terms;
  for (const auto& t : s.terms()) terms.push_back(substitute(t, images, arity));
  return FormalSum(std::move(terms));
}

// Generators of the base outside the prime.
std::vector<Monomial> outside(const SpecSpace& x, std::size_t point) {
  const auto& p = x.points[point].prime;
  std::vector<Monomial> out;
  for (std::size_t g = 0; g < x.base->arity(); ++g)
    if (!p.mask[g]) out.push_back(x.base->generator(g));
  return out;
}

// The morphism parent[S^-1] -> target extending the images of the parent
// generators; the adjoined inverses go to inverses in the target.
std::optional<Morphism> local_map(const BlueprintPtr& parent, const BlueprintPtr& local,
                                  const std::vector<Monomial>& inverted, const std::vector<Monomial>& images,
                                  const BlueprintPtr& target) {
  Morphism m{local, target, {}, std::nullopt};
  if (local == parent) {
    for (const auto& img : images) m.images.push_back(target->normalize(img));
    return m;
  }
  for (std::size_t j = 0; j < local->arity(); ++j) {
    if (j < parent->arity()) {
      m.images.push_back(target->normalize(images[j]));
      continue;
    }
    const std::string& name = local->names()[j];
    std::optional<Monomial> found;
    for (const auto& e : inverted) {
      std::string stem = sanitized("inv_" + parent->render(parent->normalize(e)));
      if (name == stem || name.rfind(stem + "_", 0) == 0) {
        found = inverse_in(*target, map_monomial(parent->normalize(e), images, *target));
        break;
      }
    }
    if (!found) return std::nullopt;
    m.images.push_back(*found);
  }
  if (parent->monoid().has_zero() && !target->monoid().has_zero()) return std::nullopt;
  return m;
}

// Flags over the stalk generators: the base generators of the prime.
std::vector<bool> stalk_mask(const Blueprint& base, const Ideal& prime, const Blueprint& local) {
  std::vector<bool> mask(local.arity(), false);
  for (std::size_t g = 0; g < base.arity(); ++g)
    if (prime.mask[g])
      if (auto k = index_of(local, base.names()[g])) mask[*k] = true;
  return mask;
}

bool in_local_prime(const Blueprint& base, const Ideal& prime, const Blueprint& local, const Monomial& v) {
  if (v.is_zero()) return prime.zero_in;
  return v.meets(stalk_mask(base, prime, local));
}

std::vector<bool> point_mask_from(const std::function<bool(std::size_t)>& flagged, std::size_t n) {
  std::vector<bool> mask(n);
  for (std::size_t g = 0; g < n; ++g) mask[g] = flagged(g);
  return mask;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t k = 0; k < parts.size(); ++k) s += (k ? sep : "") + parts[k];
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Spectra

PointSet SpecSpace::basis_open(const Monomial& h) const {
  PointSet out;
  Monomial n = base->normalize(h);
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i].prime.contains(n).is_fails()) out.push_back(i);
  return out;
}

bool SpecSpace::specializes(std::size_t i, std::size_t j) const {
  const auto& a = points[i].prime;
  const auto& b = points[j].prime;
  if (a.zero_in && !b.zero_in) return false;
  for (std::size_t g = 0; g < a.mask.size(); ++g)
    if (a.mask[g] && !b.mask[g]) return false;
  return true;
}

PointSet SpecSpace::closed_points() const {
  PointSet out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < points.size() && maximal; ++j)
      if (j != i && specializes(i, j)) maximal = false;
    if (maximal) out.push_back(i);
  }
  return out;
}

PointSet SpecSpace::generizations(std::size_t i) const {
  PointSet out;
  for (std::size_t j = 0; j < points.size(); ++j)
    if (specializes(j, i)) out.push_back(j);
  return out;
}

std::optional<std::size_t> SpecSpace::find(const std::vector<bool>& mask, bool zero_in) const {
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i].prime.mask == mask && points[i].prime.zero_in == zero_in) return i;
  return std::nullopt;
}

std::optional<std::size_t> SpecSpace::find(const std::string& id) const {
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i].id == id) return i;
  return std::nullopt;
}

std::string SpecSpace::text() const {
  std::ostringstream out;
  out << "Spec " << base->name() << ": " << points.size() << " point" << (points.size() == 1 ? "" : "s")
      << ", enumeration " << to_string(complete.verdict) << "\n";
  auto closed = closed_points();
  for (std::size_t i = 0; i < points.size(); ++i) {
    out << "  " << points[i].id;
    if (std::find(closed.begin(), closed.end(), i) != closed.end()) out << "  closed";
    out << "\n";
  }
  for (std::size_t g = 0; g < base->arity(); ++g) {
    std::vector<std::string> ids;
    for (auto i : basis_open(base->generator(g))) ids.push_back(points[i].id);
    out << "  U_" << base->names()[g] << " = {" << join(ids, ", ") << "}\n";
  }
  for (const auto& u : undecided) out << "  undecided candidate " << u << "\n";
  return out.str();
}

std::string SpecSpace::json() const {
  nlohmann::json j;
  j["points"] = nlohmann::json::array();
  for (const auto& p : points) {
    nlohmann::json gens = nlohmann::json::array();
    for (std::size_t g = 0; g < base->arity(); ++g)
      if (p.prime.mask[g]) gens.push_back(base->names()[g]);
    if (p.prime.zero_in) gens.push_back("0");
    j["points"].push_back({{"id", p.id}, {"generators", gens}});
  }
  nlohmann::json opens = nlohmann::json::object();
  auto add_open = [&](const std::string& name, const Monomial& h) {
    nlohmann::json ids = nlohmann::json::array();
    for (auto i : basis_open(h)) ids.push_back(points[i].id);
    opens[name] = ids;
  };
  add_open("1", base->one());
  if (base->monoid().has_zero()) add_open("0", base->zero());
  for (std::size_t g = 0; g < base->arity(); ++g) add_open(base->names()[g], base->generator(g));
  j["basis_opens"] = opens;
  j["specialization"] = nlohmann::json::array();
  for (std::size_t a = 0; a < points.size(); ++a)
    for (std::size_t b = 0; b < points.size(); ++b)
      if (a != b && specializes(a, b)) j["specialization"].push_back({points[a].id, points[b].id});
  j["complete"] = complete.is_holds();
  return j.dump(2) + "\n";
}

std::string SpecSpace::dot() const {
  std::ostringstream out;
  out << "digraph spec {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < points.size(); ++i) out << "  p" << i << " [label=\"" << points[i].id << "\"];\n";
  // Cover relations only.
  for (std::size_t a = 0; a < points.size(); ++a)
    for (std::size_t b = 0; b < points.size(); ++b) {
      if (a == b || !specializes(a, b)) continue;
      bool cover = true;
      for (std::size_t c = 0; c < points.size() && cover; ++c)
        if (c != a && c != b && specializes(a, c) && specializes(c, b)) cover = false;
      if (cover) out << "  p" << a << " -> p" << b << ";\n";
    }
  out << "}\n";
  return out.str();
}

SpecSpace spec(const BlueprintPtr& b) {
  if (!b->finite() && b->arity() == 0)
    throw Error(ErrorCode::InfiniteCarrierWithoutGenerators, "nothing to enumerate in " + b->name());
  auto list = enumerate_prime_ideals(b);
  SpecSpace x;
  x.base = b;
  x.complete = list.complete;
  x.undecided = list.undecided;
  for (auto& p : list.primes) {
    std::string id = p.label();
    x.points.push_back({id, std::move(p)});
  }
  return x;
}

PointSet v_closed(const SpecSpace& x, const Ideal& i) {
  if (is_ideal(i).is_fails()) throw Error(ErrorCode::NotAnIdeal, i.label() + " is not an ideal");
  PointSet out;
  for (std::size_t k = 0; k < x.points.size(); ++k) {
    const auto& p = x.points[k].prime;
    bool inside = true;
    if (i.mode == IdealMode::Support) {
      inside = !i.zero_in || p.zero_in;
      for (std::size_t g = 0; g < i.mask.size(); ++g) inside = inside && (!i.mask[g] || p.mask[g]);
    } else {
      for (const auto& a : i.generators) inside = inside && p.contains(a).is_holds();
    }
    if (inside) out.push_back(k);
  }
  return out;
}

PointSet closure_of(const SpecSpace& x, std::size_t point) {
  PointSet out;
  for (std::size_t j = 0; j < x.points.size(); ++j)
    if (x.specializes(point, j)) out.push_back(j);
  return out;
}

Closure stalk(const SpecSpace& x, std::size_t point) { return localize(x.base, outside(x, point)); }

BlueprintPtr residue_field(const SpecSpace& x, std::size_t point) {
  auto st = stalk(x, point);
  const auto& prime = x.points[point].prime;
  BlueprintPtr base = presented_form(st.result);
  MonoidPresentation p = base->monoid().presentation();
  auto options = base->options();
  if (!p.has_zero) {
    if (!any_of(prime.mask.begin(), prime.mask.end(), [](bool f) { return f; })) return proper_closure(st.result).result;
    p.has_zero = true;
    options.zero_is_empty = true;
  }
  for (std::size_t g = 0; g < x.base->arity(); ++g)
    if (prime.mask[g]) p.relations.emplace_back(st.map.images[g], Monomial::zero(p.arity()));
  auto quotient = base->kind() == AdditionKind::Lattice
                      ? Blueprint::lattice(x.base->name() + "/" + x.points[point].id, p, base->relations(), options)
                      : Blueprint::generated(x.base->name() + "/" + x.points[point].id, p, base->relations(), options);
  return proper_closure(quotient).result;
}

std::optional<Monomial> inverse_in(const Blueprint& b, const Monomial& m) {
  Monomial n = b.normalize(m);
  if (n.is_zero()) return std::nullopt;
  Monomial out(b.arity());
  for (std::size_t i = 0; i < b.arity(); ++i) {
    if (!n[i]) continue;
    const std::string& name = b.names()[i];
    std::optional<Monomial> inv;
    if (auto k = index_of(b, sanitized("inv_" + name))) inv = b.generator(*k);
    else if (name.rfind("inv_", 0) == 0)
      if (auto k = index_of(b, name.substr(4))) inv = b.generator(*k);
    if (!inv) {
      Monomial g = b.generator(i);
      for (const auto& y : b.elements_up_to(std::min<std::size_t>(b.budget().max_degree, 4)))
        if (b.normalize(g * y) == b.one()) {
          inv = y;
          break;
        }
    }
    if (!inv) return std::nullopt;
    out = out * inv->pow(n[i]);
  }
  out = b.normalize(out);
  if (b.normalize(out * n) != b.one()) return std::nullopt;
  return out;
}

// ---------------------------------------------------------------------------
// Sections

Monomial Sections::value_at(const SpecSpace& x, const Monomial& m, std::size_t point) const {
  for (std::size_t k = 0; k < closed.size(); ++k) {
    if (!x.specializes(point, closed[k])) continue;
    Monomial v = map_monomial(m, values[k], *stalks[k]);
    if (point == closed[k]) return v;
    auto here = stalk(x, point);
    auto back = local_map(x.base, stalks[k], outside(x, closed[k]), here.map.images, here.result);
    if (!back) throw Error(ErrorCode::TypeMismatch, "no restriction map to " + x.points[point].id);
    return back->apply(v);
  }
  throw Error(ErrorCode::TypeMismatch, "point outside the open set");
}

Sections sections(const SpecSpace& x, const PointSet& open) {
  const BlueprintPtr& b = x.base;
  Sections out;
  if (open.empty()) {
    auto t = terminal_blueprint();
    out.result = t;
    out.restriction = Morphism{b, t, std::vector<Monomial>(b->arity(), t->one()), std::nullopt};
    out.exact = Decision::holds("empty open set");
    return out;
  }
  for (auto i : open) {
    bool maximal = true;
    for (auto j : open)
      if (j != i && x.specializes(i, j)) maximal = false;
    if (maximal) out.closed.push_back(i);
  }
  std::vector<Closure> local;
  for (auto k : out.closed) {
    local.push_back(stalk(x, k));
    out.stalks.push_back(local.back().result);
  }

  if (out.closed.size() == 1) {
    out.result = local[0].result;
    out.restriction = local[0].map;
    out.values.push_back({});
    for (std::size_t j = 0; j < out.result->arity(); ++j) {
      out.values[0].push_back(out.result->generator(j));
      if (j >= b->arity()) out.new_sections.push_back(out.result->names()[j]);
    }
    out.exact = Decision::holds("a single closed point");
    return out;
  }

  // Restriction maps from each closed stalk to its generizations in the open set.
  const std::size_t nc = out.closed.size();
  std::map<std::size_t, Closure> at;
  std::vector<std::vector<std::pair<std::size_t, Morphism>>> restrict(nc);
  for (std::size_t k = 0; k < nc; ++k)
    for (auto q : x.generizations(out.closed[k])) {
      if (std::find(open.begin(), open.end(), q) == open.end()) continue;
      if (!at.count(q)) at.emplace(q, stalk(x, q));
      auto m = local_map(b, local[k].result, outside(x, out.closed[k]), at.at(q).map.images, at.at(q).result);
      if (!m) throw Error(ErrorCode::TypeMismatch, "no restriction map to " + x.points[q].id);
      restrict[k].emplace_back(q, *m);
    }

  bool exhaustive = true;
  std::vector<std::vector<Monomial>> candidates(nc);
  for (std::size_t k = 0; k < nc; ++k) {
    if (out.stalks[k]->finite()) {
      candidates[k] = out.stalks[k]->monoid().elements();
    } else {
      candidates[k] = out.stalks[k]->elements_up_to(kCandidateDegree);
      exhaustive = false;
    }
  }
  // Image keys of every candidate at every generization.
  std::vector<std::vector<std::map<std::size_t, std::string>>> keys(nc);
  for (std::size_t k = 0; k < nc; ++k)
    for (const auto& v : candidates[k]) {
      std::map<std::size_t, std::string> row;
      for (const auto& [q, m] : restrict[k]) row[q] = at.at(q).result->render(m.apply(v));
      keys[k].push_back(std::move(row));
    }

  // Compatible families by backtracking over the closed points.
  std::vector<std::vector<Monomial>> families;
  std::vector<std::size_t> choice(nc);
  std::function<void(std::size_t)> extend = [&](std::size_t k) {
    if (k == nc) {
      std::vector<Monomial> f;
      for (std::size_t l = 0; l < nc; ++l) f.push_back(candidates[l][choice[l]]);
      families.push_back(std::move(f));
      return;
    }
    for (std::size_t c = 0; c < candidates[k].size(); ++c) {
      bool ok = true;
      for (std::size_t l = 0; l < k && ok; ++l)
        for (const auto& [q, key] : keys[k][c]) {
          auto it = keys[l][choice[l]].find(q);
          if (it != keys[l][choice[l]].end() && it->second != key) {
            ok = false;
            break;
          }
        }
      if (!ok) continue;
      choice[k] = c;
      extend(k + 1);
    }
  };
  extend(0);

  auto family_key = [&](const std::vector<Monomial>& f) {
    std::string s;
    for (std::size_t k = 0; k < nc; ++k) s += (k ? " | " : "") + out.stalks[k]->render(out.stalks[k]->normalize(f[k]));
    return s;
  };

  // Generators: restrictions of the base generators, then new sections.
  std::vector<std::string> names = b->names();
  std::vector<std::vector<Monomial>> gen_values;  // per generator, per closed point
  for (std::size_t g = 0; g < b->arity(); ++g) {
    std::vector<Monomial> f;
    for (std::size_t k = 0; k < nc; ++k) f.push_back(local[k].map.images[g]);
    gen_values.push_back(std::move(f));
  }
  auto value_of = [&](const Monomial& m) {
    std::vector<Monomial> f;
    for (std::size_t k = 0; k < nc; ++k) {
      std::vector<Monomial> imgs;
      for (const auto& gv : gen_values) imgs.push_back(gv[k]);
      f.push_back(out.stalks[k]->normalize(substitute(m, imgs, out.stalks[k]->arity())));
    }
    return f;
  };
  auto reachable = [&]() {
    std::unordered_set<std::string> seen;
    const std::size_t n = gen_values.size();
    std::vector<Monomial> layer{Monomial(n)};
    seen.insert(family_key(value_of(Monomial(n))));
    std::set<Monomial> visited{Monomial(n)};
    for (std::size_t d = 0; d < kReachDegree; ++d) {
      std::vector<Monomial> next;
      for (const auto& m : layer)
        for (std::size_t i = 0; i < n; ++i) {
          Monomial c = m * Monomial::generator(n, i);
          if (!visited.insert(c).second) continue;
          seen.insert(family_key(value_of(c)));
          next.push_back(c);
        }
      layer = std::move(next);
    }
    if (b->monoid().has_zero()) seen.insert(family_key(value_of(Monomial::zero(n))));
    return seen;
  };

  std::vector<std::pair<std::size_t, std::size_t>> order;  // (degree, index)
  for (std::size_t i = 0; i < families.size(); ++i) {
    std::size_t deg = 0;
    for (const auto& v : families[i]) deg = std::max(deg, v.is_zero() ? 0 : v.degree());
    order.emplace_back(deg, i);
  }
  std::sort(order.begin(), order.end(), [&](const auto& a, const auto& c) {
    if (a.first != c.first) return a.first < c.first;
    return family_key(families[a.second]) < family_key(families[c.second]);
  });
  auto seen = reachable();
  bool capped = false;
  for (const auto& [deg, i] : order) {
    if (seen.count(family_key(families[i]))) continue;
    if (out.new_sections.size() == kMaxNewSections) {
      capped = true;
      break;
    }
    std::string name = "s" + std::to_string(out.new_sections.size() + 1);
    while (std::find(names.begin(), names.end(), name) != names.end()) name += "_";
    names.push_back(name);
    out.new_sections.push_back(name);
    gen_values.push_back(families[i]);
    seen = reachable();
  }

  std::optional<std::string> zero_key;
  const std::size_t n = names.size();
  if (b->monoid().has_zero()) zero_key = family_key(value_of(Monomial::zero(n)));
  auto found = discover_monoid(names, [&](const Monomial& m) { return family_key(value_of(m)); }, zero_key,
                               b->budget().max_degree - 1);

  std::vector<Leg> legs;
  for (std::size_t k = 0; k < nc; ++k) {
    Leg leg{out.stalks[k], {}};
    for (const auto& gv : gen_values) leg.images.push_back(gv[k]);
    out.values.push_back(leg.images);
    legs.push_back(std::move(leg));
  }
  std::vector<Monomial> sigma_images;
  for (std::size_t g = 0; g < b->arity(); ++g) sigma_images.push_back(Monomial::generator(n, g));
  std::vector<SumPair> known;
  BlueprintPtr presented = presented_form(b);
  for (const auto& [l, r] : presented->relations())
    known.emplace_back(substitute(l, sigma_images, n), substitute(r, sigma_images, n));

  const bool exact = exhaustive && found.exact && !capped;
  BlueprintOptions options = b->options();
  options.approximate = !exact;
  options.note = exact ? "all compatible families enumerated" : "families of stalk degree <= 3";
  std::string name = open.size() == x.size() ? "Gamma(" + b->name() + ")" : "O(" + b->name() + ")";
  out.result = Blueprint::pullback(name, found.presentation, std::move(legs), std::move(known), options);
  out.restriction = Morphism{b, out.result, {}, std::nullopt};
  for (const auto& img : sigma_images) out.restriction.images.push_back(out.result->normalize(img));
  out.exact = exact ? Decision::holds("every compatible family enumerated")
                    : Decision::unknown("stalk values enumerated up to degree " + std::to_string(kCandidateDegree));
  return out;
}

Sections globalization(const BlueprintPtr& b) {
  auto x = spec(b);
  PointSet all(x.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return sections(x, all);
}

// ---------------------------------------------------------------------------
// Globalization checks

Decision stalks_isomorphic(const Morphism& forward, const Morphism& backward, bool forward_is_morphism) {
  const Blueprint& a = *forward.source;
  const Blueprint& b = *backward.source;
  for (std::size_t j = 0; j < a.arity(); ++j) {
    Monomial g = a.generator(j);
    if (a.normalize(backward.apply(forward.apply(g))) != g)
      return Decision::fails("round trip moves " + a.render(g));
  }
  for (std::size_t j = 0; j < b.arity(); ++j) {
    Monomial g = b.generator(j);
    if (b.normalize(forward.apply(backward.apply(g))) != g)
      return Decision::fails("round trip moves " + b.render(g));
  }
  Decision fwd = forward_is_morphism ? Decision::holds("morphism by construction") : validate_morphism(forward);
  return both(fwd, validate_morphism(backward));
}

std::string SpecIsoReport::text() const {
  std::ostringstream out;
  out << "Spec " << gamma_space.base->name() << " -> Spec " << base_space.base->name() << "\n";
  for (std::size_t q = 0; q < pullback.size(); ++q)
    out << "  " << gamma_space.points[q].id << " -> " << base_space.points[pullback[q]].id << "\n";
  out << "  bijection: " << to_string(bijection.verdict) << "\n";
  out << "  basis opens: " << to_string(opens.verdict) << "\n";
  out << "  stalks: " << to_string(stalks.verdict) << "\n";
  for (const auto& n : notes) out << "  note: " << n << "\n";
  out << "verdict: " << to_string(verdict().verdict) << "\n";
  return out.str();
}

SpecIsoReport verify_spec_iso(const BlueprintPtr& b) {
  SpecIsoReport r;
  r.base_space = spec(b);
  if (!r.base_space.complete.is_holds())
    throw Error(ErrorCode::IncompleteEnumeration, "prime list of " + b->name() + " is incomplete");
  PointSet all(r.base_space.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  auto g = sections(r.base_space, all);
  r.gamma_space = spec(g.result);
  if (!r.gamma_space.complete.is_holds())
    throw Error(ErrorCode::IncompleteEnumeration, "prime list of " + g.result->name() + " is incomplete");
  if (!g.exact.is_holds()) r.notes.push_back(g.exact.note);
  const auto& X = r.base_space;
  const auto& Y = r.gamma_space;
  const BlueprintPtr& gamma = g.result;

  r.bijection = Decision::holds("sigma^* and sigma_* are mutually inverse");
  for (std::size_t q = 0; q < Y.size(); ++q) {
    const auto& prime = Y.points[q].prime;
    auto mask = point_mask_from([&](std::size_t i) { return prime.contains(g.restriction.images[i]).is_holds(); },
                                b->arity());
    bool zero_in = b->monoid().has_zero() && prime.zero_in;
    auto p = X.find(mask, zero_in);
    if (!p) {
      r.bijection = Decision::fails("sigma^*" + Y.points[q].id + " is not a point");
      r.pullback.push_back(0);
    } else {
      r.pullback.push_back(*p);
    }
  }
  std::vector<Closure> base_stalks;
  for (std::size_t p = 0; p < X.size(); ++p) base_stalks.push_back(stalk(X, p));
  for (std::size_t p = 0; p < X.size(); ++p) {
    const auto& st = base_stalks[p];
    auto mask = point_mask_from(
        [&](std::size_t t) {
          return in_local_prime(*b, X.points[p].prime, *st.result, g.value_at(X, gamma->generator(t), p));
        },
        gamma->arity());
    bool zero_in = gamma->monoid().has_zero() && X.points[p].prime.zero_in;
    auto q = Y.find(mask, zero_in);
    if (!q) {
      r.bijection = Decision::fails("sigma_*" + X.points[p].id + " is not a point");
      r.pushforward.push_back(0);
    } else {
      r.pushforward.push_back(*q);
    }
  }
  if (r.bijection.is_holds()) {
    if (X.size() != Y.size()) r.bijection = Decision::fails("different numbers of points");
    for (std::size_t p = 0; p < X.size(); ++p)
      if (r.pullback[r.pushforward[p]] != p) r.bijection = Decision::fails("sigma^* sigma_* moves " + X.points[p].id);
    for (std::size_t q = 0; q < Y.size(); ++q)
      if (r.pushforward[r.pullback[q]] != q) r.bijection = Decision::fails("sigma_* sigma^* moves " + Y.points[q].id);
  }

  r.opens = Decision::holds("phi^-1(U_h) = U_{s_h}");
  if (r.bijection.is_holds())
    for (const auto& h : carrier_sample(*b, 2)) {
      auto base_open = X.basis_open(h);
      PointSet pre;
      for (std::size_t q = 0; q < Y.size(); ++q)
        if (std::binary_search(base_open.begin(), base_open.end(), r.pullback[q])) pre.push_back(q);
      if (pre != Y.basis_open(g.restriction.apply(h))) {
        r.opens = Decision::fails("phi^-1(U_" + b->render(h) + ") differs from U_s");
        break;
      }
    }
  else
    r.opens = Decision::unknown("no point bijection");

  r.stalks = Decision::holds("every stalk map is an isomorphism");
  if (!r.bijection.is_holds()) r.stalks = Decision::unknown("no point bijection");
  for (std::size_t q = 0; q < Y.size() && r.bijection.is_holds(); ++q) {
    std::size_t p = r.pullback[q];
    auto gq = stalk(Y, q);
    const auto& bp = base_stalks[p];
    std::vector<Monomial> values;
    for (std::size_t t = 0; t < gamma->arity(); ++t) values.push_back(g.value_at(X, gamma->generator(t), p));
    auto down = local_map(gamma, gq.result, outside(Y, q), values, bp.result);
    std::vector<Monomial> up_images;
    for (std::size_t i = 0; i < b->arity(); ++i) up_images.push_back(gq.map.apply(g.restriction.images[i]));
    auto up = local_map(b, bp.result, outside(X, p), up_images, gq.result);
    // Values at p restrict a leg of Gamma, so the map down is a leg followed
    // by localizations.
    const bool by_legs = gamma->kind() == AdditionKind::Pullback && g.closed.size() > 1;
    Decision d = down && up ? stalks_isomorphic(*down, *up, by_legs) : Decision::fails("a unit has no inverse image");
    if (!d.is_holds()) r.notes.push_back("stalk at " + Y.points[q].id + ": " + d.note);
    r.stalks = both(r.stalks, d);
    if (r.stalks.is_fails()) break;
  }
  return r;
}

Decision is_global(const BlueprintPtr& b) {
  auto g = globalization(b);
  const BlueprintPtr& gamma = g.result;
  if (!g.new_sections.empty() && gamma->kind() == AdditionKind::Pullback && g.closed.size() > 1)
    return Decision::fails("section " + g.new_sections.front() + " is not in the image of sigma");
  auto sample = carrier_sample(*b, 3);
  std::map<Monomial, Monomial> image_of;
  for (const auto& a : sample) {
    Monomial s = gamma->normalize(g.restriction.apply(a));
    auto [it, fresh] = image_of.emplace(s, a);
    if (!fresh) return Decision::fails(b->render(a) + " and " + b->render(it->second) + " have the same image");
  }
  Morphism back{gamma, b, {}, std::nullopt};
  for (std::size_t t = 0; t < gamma->arity(); ++t) {
    Monomial gt = gamma->generator(t);
    auto it = image_of.find(gt);
    if (it == image_of.end()) {
      if (b->finite() || b->monoid().homogeneous())
        return Decision::fails(gamma->names()[t] + " is not in the image of sigma");
      return Decision::unknown("no preimage found for " + gamma->names()[t]);
    }
    back.images.push_back(it->second);
  }
  if (gamma->monoid().has_zero() && !b->monoid().has_zero()) return Decision::fails("sigma misses the zero");
  Decision d = stalks_isomorphic(g.restriction, back);
  if (d.is_holds()) return Decision::holds("sigma is an isomorphism");
  return d;
}

// ---------------------------------------------------------------------------
// Morphisms and localizations

InducedMorphism induced_morphism(const Morphism& f) {
  Decision valid = validate_morphism(f);
  if (valid.is_fails()) throw Error(ErrorCode::InvalidMorphism, valid.note);
  InducedMorphism out{f, spec(f.source), spec(f.target), {}, {}, Decision::holds("every stalk map is local")};
  const auto& X = out.source_space;
  const auto& Y = out.target_space;
  for (std::size_t q = 0; q < Y.size(); ++q) {
    Ideal pre = inverse_image_ideal(f, Y.points[q].prime);
    auto p = X.find(pre.mask, pre.zero_in);
    if (!p) {
      out.local = X.complete.is_holds() ? Decision::fails("preimage of " + Y.points[q].id + " is not a point")
                                        : Decision::unknown("preimage of " + Y.points[q].id + " not enumerated");
      out.point_map.push_back(0);
      continue;
    }
    out.point_map.push_back(*p);
    auto bp = stalk(X, *p);
    auto cq = stalk(Y, q);
    std::vector<Monomial> images;
    for (const auto& img : f.images) images.push_back(cq.map.apply(img));
    auto m = local_map(f.source, bp.result, outside(X, *p), images, cq.result);
    if (!m) {
      out.local = Decision::fails("a unit of the stalk at " + X.points[*p].id + " maps to a non-unit");
      continue;
    }
    for (std::size_t g = 0; g < f.source->arity(); ++g)
      if (X.points[*p].prime.mask[g] &&
          !in_local_prime(*f.target, Y.points[q].prime, *cq.result, m->apply(bp.map.images[g])))
        out.local = Decision::fails("stalk map at " + Y.points[q].id + " is not local");
    out.stalk_maps.push_back(std::move(*m));
  }
  return out;
}

LocalizationReport localization_iso_check(const BlueprintPtr& b, const Monomial& h) {
  LocalizationReport r;
  auto X = spec(b);
  auto loc = localize(b, {h});
  r.local_space = spec(loc.result);
  r.open = X.basis_open(h);
  const auto& Y = r.local_space;
  if (!X.complete.is_holds() || !Y.complete.is_holds())
    throw Error(ErrorCode::IncompleteEnumeration, "prime list incomplete");
  r.bijection = Decision::holds("Spec B[h^-1] -> U_h is a bijection");
  for (std::size_t q = 0; q < Y.size(); ++q) {
    const auto& prime = Y.points[q].prime;
    auto mask = point_mask_from([&](std::size_t g) { return prime.contains(loc.map.images[g]).is_holds(); },
                                b->arity());
    auto p = X.find(mask, b->monoid().has_zero() && prime.zero_in);
    if (!p || !std::binary_search(r.open.begin(), r.open.end(), *p)) {
      r.bijection = Decision::fails(Y.points[q].id + " does not land in U_h");
      r.point_map.push_back(0);
    } else {
      r.point_map.push_back(*p);
    }
  }
  std::set<std::size_t> hit(r.point_map.begin(), r.point_map.end());
  if (r.bijection.is_holds() && (hit.size() != Y.size() || hit.size() != r.open.size()))
    r.bijection = Decision::fails("not a bijection onto U_h");

  r.stalks = r.bijection.is_holds() ? Decision::holds("stalks agree") : Decision::unknown("no point bijection");
  for (std::size_t q = 0; q < Y.size() && r.bijection.is_holds(); ++q) {
    std::size_t p = r.point_map[q];
    auto lq = stalk(Y, q);
    auto bp = stalk(X, p);
    auto to_bp = local_map(b, loc.result, {h}, bp.map.images, bp.result);
    std::optional<Morphism> down, up;
    if (to_bp) down = local_map(loc.result, lq.result, outside(Y, q), to_bp->images, bp.result);
    std::vector<Monomial> up_images;
    for (const auto& img : loc.map.images) up_images.push_back(lq.map.apply(img));
    up = local_map(b, bp.result, outside(X, p), up_images, lq.result);
    Decision d = down && up ? stalks_isomorphic(*down, *up) : Decision::fails("a unit has no inverse image");
    r.stalks = both(r.stalks, d);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Disjoint unions and fibre products

std::size_t DisjointUnion::size() const {
  std::size_t n = 0;
  for (const auto& p : parts) n += p.size();
  return n;
}

std::string DisjointUnion::text() const {
  std::ostringstream out;
  out << "disjoint union of " << parts.size() << " affine piece" << (parts.size() == 1 ? "" : "s") << ", " << size()
      << " point" << (size() == 1 ? "" : "s") << "\n";
  for (std::size_t k = 0; k < parts.size(); ++k)
    for (const auto& p : parts[k].points) out << "  " << k + 1 << ":" << p.id << "\n";
  out << "global sections: " << gamma->describe() << "\n";
  return out.str();
}

DisjointUnion disjoint_union(const std::vector<BlueprintPtr>& pieces) {
  DisjointUnion u;
  std::vector<BlueprintPtr> gammas;
  for (const auto& b : pieces) {
    auto x = spec(b);
    if (x.size() == 0) continue;
    gammas.push_back(globalization(b).result);
    u.parts.push_back(std::move(x));
  }
  u.gamma = product(gammas).result;
  return u;
}

FibreProduct affine_fibre_product(const Morphism& f, const Morphism& g) {
  auto t = tensor(f, g);
  auto x = spec(t.result);
  return {t, x, induced_morphism(t.left), induced_morphism(t.right)};
}

}  // namespace blue
