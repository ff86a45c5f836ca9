// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#include "blue/constructions.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "blue/error.hpp"
#include "blue/rewrite.hpp"

namespace blue {

namespace {

Monomial shifted(const Monomial& m, std::size_t offset, std::size_t total) {
  if (m.is_zero()) return Monomial::zero(total);
  std::vector<std::uint32_t> e(total, 0);
  for (std::size_t i = 0; i < m.arity(); ++i) e[offset + i] = m[i];
  return Monomial(std::move(e));
}

FormalSum shifted(const FormalSum& s, std::size_t offset, std::size_t total) {
  std::vector<Monomial> terms;
  for (const auto& t : s.terms()) terms.push_back(shifted(t, offset, total));
  return FormalSum(std::move(terms));
}

std::vector<SumPair> shifted(const std::vector<SumPair>& rels, std::size_t offset, std::size_t total) {
  std::vector<SumPair> out;
  for (const auto& [l, r] : rels) out.emplace_back(shifted(l, offset, total), shifted(r, offset, total));
  return out;
}

std::string fresh_name(const std::vector<std::string>& taken, std::string base) {
  for (auto& c : base)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') c = '_';
  std::string name = base;
  for (int k = 2; std::find(taken.begin(), taken.end(), name) != taken.end(); ++k) name = base + "_" + std::to_string(k);
  return name;
}

// Rebuilds a blueprint of the same kind over a new presentation.
BlueprintPtr rebuild(const Blueprint& like, std::string name, MonoidPresentation p, std::vector<SumPair> rels,
                     Blueprint::Options options) {
  if (like.kind() == AdditionKind::Lattice) return Blueprint::lattice(std::move(name), std::move(p), std::move(rels), options);
  return Blueprint::generated(std::move(name), std::move(p), std::move(rels), options);
}

Morphism projection(const BlueprintPtr& from, const BlueprintPtr& to) {
  Morphism m{from, to, {}, std::nullopt};
  for (std::size_t i = 0; i < from->arity(); ++i) m.images.push_back(to->normalize(Monomial::generator(to->arity(), i)));
  if (from->monoid().has_zero() && !to->monoid().has_zero()) m.zero_image = to->one();
  return m;
}

bool same_blueprint(const BlueprintPtr& a, const BlueprintPtr& b) {
  return a == b || (a->name() == b->name() && a->arity() == b->arity() && a->names() == b->names() &&
                    a->kind() == b->kind() && a->relations() == b->relations());
}

// Multisets of up to `terms` elements of `pool`.
std::vector<FormalSum> sums_over(const std::vector<Monomial>& pool, std::size_t terms) {
  std::vector<FormalSum> out{FormalSum()};
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    if (pick.size() == terms) return;
    for (std::size_t i = from; i < pool.size(); ++i) {
      pick.push_back(i);
      std::vector<Monomial> t;
      for (auto k : pick) t.push_back(pool[k]);
      out.emplace_back(std::move(t));
      grow(i);
      pick.pop_back();
    }
  };
  grow(0);
  return out;
}

std::vector<Monomial> nonzero(std::vector<Monomial> v, bool drop_zero) {
  if (drop_zero) std::erase_if(v, [](const Monomial& m) { return m.is_zero(); });
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Morphisms

Monomial Morphism::apply(const Monomial& m) const {
  if (m.arity() != source->arity()) throw Error(ErrorCode::TypeMismatch, "monomial over a different source");
  if (m.is_zero()) {
    if (target->monoid().has_zero()) return target->zero();
    if (zero_image) return *zero_image;
    throw Error(ErrorCode::InvalidMorphism, "source zero has no image");
  }
  return map_monomial(m, images, *target);
}

FormalSum Morphism::apply(const FormalSum& s) const {
  std::vector<Monomial> terms;
  for (const auto& t : s.terms()) terms.push_back(apply(t));
  return target->normalize(FormalSum(std::move(terms)));
}

Morphism identity(const BlueprintPtr& b) { return projection(b, b); }

Morphism compose(const Morphism& first, const Morphism& second) {
  if (!same_blueprint(first.target, second.source)) throw Error(ErrorCode::TypeMismatch, "morphisms do not compose");
  Morphism out{first.source, second.target, {}, std::nullopt};
  for (const auto& img : first.images) out.images.push_back(second.apply(img));
  if (first.source->monoid().has_zero() && !second.target->monoid().has_zero())
    out.zero_image = second.apply(first.apply(first.source->zero()));
  return out;
}

Decision validate_morphism(const Morphism& f) {
  const Blueprint& src = *f.source;
  const Blueprint& dst = *f.target;
  if (f.images.size() != src.arity()) throw Error(ErrorCode::TypeMismatch, "one image per source generator");
  for (const auto& img : f.images)
    if (img.arity() != dst.arity()) throw Error(ErrorCode::TypeMismatch, "image over a different target");

  Decision acc = Decision::holds("every generating relation is preserved");
  for (const auto& [l, r] : src.monoid().presentation().relations) {
    Monomial x = f.apply(l), y = f.apply(r);
    if (x == y) continue;
    Decision d = monoid_equal(x, y, dst.monoid(), dst.budget());
    if (d.is_fails()) return Decision::fails("monoid relation " + src.render(l) + " = " + src.render(r) + " is not preserved");
    if (d.is_unknown()) acc = d;
  }
  if (src.has_zero() && !dst.monoid().has_zero()) {
    Monomial z = f.apply(src.zero());
    Decision d = dst.holds(FormalSum::of(z), FormalSum());
    if (d.is_fails()) return Decision::fails("image of 0 is not the empty sum");
    for (const auto& img : f.images)
      if (dst.normalize(z * img) != z) return Decision::fails("image of 0 is not absorbing");
  }
  BlueprintPtr presented = presented_form(f.source);
  for (const auto& [l, r] : presented->relations()) {
    Decision d = dst.holds(f.apply(l), f.apply(r));
    if (d.is_fails())
      return Decision::fails("relation " + src.render(l) + " = " + src.render(r) + " is not preserved");
    if (d.is_unknown()) acc = d;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Basic blueprints

BlueprintPtr from_monoid(const MonoidPresentation& p, std::string name) {
  if (p.has_zero) throw Error(ErrorCode::ZeroPresent, "use from_monoid_with_zero");
  return Blueprint::generated(std::move(name), p);
}

BlueprintPtr from_monoid_with_zero(const MonoidPresentation& p, std::string name) {
  if (!p.has_zero) throw Error(ErrorCode::NoZero, "presentation has no zero");
  return Blueprint::generated(std::move(name), p);
}

BlueprintPtr from_semiring(const FiniteSemiring& r, std::string name) {
  std::vector<Element> all(r.size());
  std::iota(all.begin(), all.end(), 0);
  return Blueprint::embedded(std::move(name), r, all);
}

BlueprintPtr field_with_one_element() {
  MonoidPresentation p;
  p.has_zero = true;
  return Blueprint::generated("F1", p);
}

BlueprintPtr terminal_blueprint() {
  MonoidPresentation p;
  p.has_zero = true;
  p.relations.emplace_back(Monomial(0), Monomial::zero(0));
  return Blueprint::generated("T", p);
}

BlueprintPtr cyclotomic(unsigned n) {
  if (n == 0) throw Error(ErrorCode::TypeMismatch, "n must be positive");
  if (n == 1) return field_with_one_element();
  MonoidPresentation p;
  p.generators = {"zeta"};
  p.has_zero = true;
  p.relations.emplace_back(Monomial::generator(1, 0, n), Monomial(1));
  std::vector<SumPair> rels;
  for (unsigned order = 2; order <= n; ++order) {
    if (n % order) continue;
    std::vector<Monomial> terms;
    for (unsigned k = 0; k < order; ++k) terms.push_back(Monomial::generator(1, 0, k * (n / order)));
    rels.emplace_back(FormalSum(std::move(terms)), FormalSum());
  }
  return Blueprint::generated("F1^" + std::to_string(n), p, rels);
}

std::vector<Monomial> carrier_sample(const Blueprint& b, std::size_t cap) {
  if (b.finite()) return b.monoid().elements();
  return b.elements_up_to(std::min(cap, b.budget().max_degree));
}

BlueprintPtr presented_form(const BlueprintPtr& b) {
  switch (b->kind()) {
    case AdditionKind::Generated:
    case AdditionKind::Lattice: return b;
    case AdditionKind::Semiring: return b->as_generated();
    default: break;
  }
  // Pullback: spanning forest of the relation among small sums.
  const bool finite = b->finite();
  auto pool = nonzero(carrier_sample(*b, 2), b->has_zero());
  auto sums = sums_over(pool, finite ? std::min<std::size_t>(3, b->budget().max_terms) : 2);
  std::vector<std::size_t> reps;
  std::vector<SumPair> rels = b->relations();
  for (std::size_t i = 0; i < sums.size(); ++i) {
    bool joined = false;
    for (auto r : reps)
      if (b->holds(sums[r], sums[i]).is_holds()) {
        rels.emplace_back(sums[i], sums[r]);
        joined = true;
        break;
      }
    if (!joined) reps.push_back(i);
  }
  auto options = b->options();
  options.approximate = true;
  options.note = "relations among sums of at most " + std::to_string(finite ? 3 : 2) + " terms";
  return Blueprint::generated(b->name(), b->monoid().presentation(), rels, options);
}

BlueprintPtr free_extension(const BlueprintPtr& b, const std::vector<std::string>& vars) {
  auto base = presented_form(b);
  MonoidPresentation p = base->monoid().presentation();
  for (const auto& v : vars) {
    if (p.find(v)) throw Error(ErrorCode::NameClash, v);
    p.generators.push_back(v);
  }
  const std::size_t n = p.generators.size();
  for (auto& [l, r] : p.relations) {
    l = shifted(l, 0, n);
    r = shifted(r, 0, n);
  }
  std::string name = b->name() + "[";
  for (std::size_t i = 0; i < vars.size(); ++i) name += (i ? "," : "") + vars[i];
  return rebuild(*base, name + "]", p, shifted(base->relations(), 0, n), base->options());
}

// ---------------------------------------------------------------------------
// Closures

Closure proper_closure(const BlueprintPtr& b) {
  if (b->kind() == AdditionKind::Semiring)
    return {b, identity(b), Decision::holds("distinct values of a semiring are distinct")};
  BlueprintPtr cur = b;
  Decision status = Decision::holds("no pair of distinct elements is related");
  for (int round = 0; round < 4; ++round) {
    auto sample = carrier_sample(*cur, 3);
    std::vector<std::size_t> parent(sample.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
      return parent[i] == i ? i : parent[i] = find(parent[i]);
    };
    std::vector<std::pair<Monomial, Monomial>> merges;
    for (std::size_t i = 0; i < sample.size(); ++i)
      for (std::size_t j = i + 1; j < sample.size(); ++j) {
        if (find(i) == find(j)) continue;
        Decision d = cur->holds(FormalSum::of(sample[i]), FormalSum::of(sample[j]));
        if (d.is_holds()) {
          parent[find(j)] = find(i);
          merges.emplace_back(sample[j], sample[i]);
        } else if (d.is_unknown()) {
          status = Decision::unknown("undecided pair " + cur->render(sample[i]) + ", " + cur->render(sample[j]));
        }
      }
    if (merges.empty()) break;
    MonoidPresentation p = cur->monoid().presentation();
    for (auto& m : merges) p.relations.push_back(m);
    if (cur->kind() == AdditionKind::Pullback)
      cur = Blueprint::pullback(b->name() + "_prop", p, cur->legs(), cur->relations(), cur->options());
    else
      cur = rebuild(*cur, b->name() + "_prop", p, cur->relations(), cur->options());
  }
  if (!b->finite() && status.is_holds()) status.note = "no related pair among elements of degree <= 3";
  return {cur, cur == b ? identity(b) : projection(b, cur), status};
}

Closure inverse_closure(const BlueprintPtr& b) {
  const FormalSum one = FormalSum::of(b->one());
  for (const auto& a : carrier_sample(*b)) {
    if (a.is_zero()) continue;
    if (b->holds(one + FormalSum::of(a), FormalSum()).is_holds()) {
      auto pc = proper_closure(b);
      pc.status.note = "-1 exists: " + b->render(a);
      return pc;
    }
  }
  auto base = presented_form(b);
  MonoidPresentation p = base->monoid().presentation();
  p.generators.push_back(fresh_name(p.generators, "neg"));
  const std::size_t n = p.generators.size();
  for (auto& [l, r] : p.relations) {
    l = shifted(l, 0, n);
    r = shifted(r, 0, n);
  }
  Monomial neg = Monomial::generator(n, n - 1);
  p.relations.emplace_back(neg * neg, Monomial(n));
  auto rels = shifted(base->relations(), 0, n);
  rels.emplace_back(FormalSum({Monomial(n), neg}), FormalSum());
  auto ext = rebuild(*base, b->name() + "_inv", p, rels, base->options());
  Morphism into = projection(b, ext);
  auto pc = proper_closure(ext);
  return {pc.result, compose(into, pc.map), pc.status};
}

Closure zero_closure(const BlueprintPtr& b) {
  if (b->has_zero()) return {b, identity(b), Decision::holds("already with zero")};
  auto base = presented_form(b);
  MonoidPresentation p = base->monoid().presentation();
  p.has_zero = true;
  auto opts = base->options();
  opts.zero_is_empty = true;
  auto ext = rebuild(*base, b->name() + "_0", p, base->relations(), opts);
  Morphism into = projection(b, ext);
  auto pc = proper_closure(ext);
  return {pc.result, compose(into, pc.map), pc.status};
}

Closure cancellative_closure(const BlueprintPtr& b) {
  if (b->kind() == AdditionKind::Lattice) return {b, identity(b), Decision::holds("already cancellative")};
  auto base = presented_form(b);
  auto canc = Blueprint::lattice(b->name() + "_canc", base->monoid().presentation(), base->relations(), base->options());
  return {canc, projection(b, canc), Decision::holds()};
}

// ---------------------------------------------------------------------------
// Localization

namespace {

// Adjoins one inverse per element, in order.
BlueprintPtr adjoin_inverses(const BlueprintPtr& b, const std::vector<Monomial>& elements) {
  std::string suffix = "[";
  for (std::size_t k = 0; k < elements.size(); ++k) suffix += (k ? "," : "") + b->render(elements[k]);
  suffix += "^-1]";
  if (b->kind() == AdditionKind::Pullback) {
    MonoidPresentation p = b->monoid().presentation();
    const std::size_t old = p.arity();
    for (const auto& e : elements) p.generators.push_back(fresh_name(p.generators, "inv_" + b->render(e)));
    const std::size_t n = p.generators.size();
    for (auto& [l, r] : p.relations) {
      l = shifted(l, 0, n);
      r = shifted(r, 0, n);
    }
    for (std::size_t k = 0; k < elements.size(); ++k)
      p.relations.emplace_back(shifted(elements[k], 0, n) * Monomial::generator(n, old + k), Monomial(n));
    std::vector<Leg> legs;
    for (const auto& leg : b->legs()) {
      std::vector<Monomial> targets;
      for (const auto& e : elements) targets.push_back(map_monomial(e, leg.images, *leg.target));
      auto local = adjoin_inverses(leg.target, targets);
      Leg next{local, {}};
      const std::size_t tn = local->arity(), told = leg.target->arity();
      for (const auto& img : leg.images) next.images.push_back(local->normalize(shifted(img, 0, tn)));
      for (std::size_t k = 0; k < elements.size(); ++k)
        next.images.push_back(local->normalize(Monomial::generator(tn, told + k)));
      legs.push_back(std::move(next));
    }
    return Blueprint::pullback(b->name() + suffix, p, legs, shifted(b->relations(), 0, n), b->options());
  }
  auto base = presented_form(b);
  MonoidPresentation p = base->monoid().presentation();
  const std::size_t old = p.arity();
  for (const auto& e : elements) p.generators.push_back(fresh_name(p.generators, "inv_" + b->render(e)));
  const std::size_t n = p.generators.size();
  for (auto& [l, r] : p.relations) {
    l = shifted(l, 0, n);
    r = shifted(r, 0, n);
  }
  for (std::size_t k = 0; k < elements.size(); ++k)
    p.relations.emplace_back(shifted(elements[k], 0, n) * Monomial::generator(n, old + k), Monomial(n));
  return rebuild(*base, b->name() + suffix, p, shifted(base->relations(), 0, n), base->options());
}

}  // namespace

Closure localize(const BlueprintPtr& b, const std::vector<Monomial>& elements) {
  std::vector<Monomial> todo;
  for (const auto& e : elements) {
    Monomial n = b->normalize(e);
    if (n == b->one() || std::find(todo.begin(), todo.end(), n) != todo.end()) continue;
    todo.push_back(n);
  }
  if (todo.empty()) return {b, identity(b), Decision::holds("only units inverted")};
  auto local = adjoin_inverses(b, todo);
  return {local, projection(b, local), Decision::holds()};
}

Decision fractions_equal(const Blueprint& b, const std::vector<Monomial>& denominators, const Fraction& x,
                         const Fraction& y) {
  auto matches = [&](const Monomial& t) {
    return b.normalize(t * x.denominator * y.numerator) == b.normalize(t * y.denominator * x.numerator);
  };
  std::vector<Monomial> layer{b.one()};
  std::unordered_set<Monomial, MonomialHash> seen{b.one()};
  for (std::size_t depth = 0; depth <= b.budget().max_exponent; ++depth) {
    std::vector<Monomial> next;
    for (const auto& t : layer) {
      if (matches(t)) return Decision::holds("witness " + b.render(t));
      for (const auto& s : denominators) {
        Monomial u = b.normalize(t * s);
        if (seen.insert(u).second) next.push_back(u);
      }
    }
    if (next.empty()) return Decision::fails("no witness in the finite multiplicative set");
    layer = std::move(next);
  }
  return Decision::unknown("no witness up to the exponent bound");
}

// ---------------------------------------------------------------------------
// Classification

Classification classify(const BlueprintPtr& b) {
  Classification c;
  c.exact = b->finite();
  auto sample = carrier_sample(*b, 3);
  const FormalSum empty;
  const FormalSum one = FormalSum::of(b->one());

  auto pc = proper_closure(b);
  c.proper = pc.status;
  if (c.proper.is_holds() && !c.exact && !b->relations().empty() && b->kind() != AdditionKind::Semiring)
    c.proper = Decision::unknown("no related pair among elements of degree <= 3");
  if (pc.result != b) c.proper = Decision::fails("distinct elements are related");

  c.with_zero = Decision::from(b->has_zero(), b->has_zero() ? "0 is absorbing and 0 == empty" : "no zero");

  c.with_inverses = c.exact ? Decision::fails("no a with 1 + a == empty") : Decision::unknown("no -1 of degree <= 3");
  for (const auto& a : sample) {
    if (a.is_zero()) continue;
    if (b->holds(one + FormalSum::of(a), empty).is_holds()) {
      c.with_inverses = Decision::holds("-1 = " + b->render(a));
      break;
    }
  }

  for (const auto& a : sample) {
    if (a.is_zero()) continue;
    for (const auto& x : sample)
      if (b->normalize(a * x) == b->one()) {
        c.units.push_back(a);
        break;
      }
    bool injective = true;
    for (std::size_t i = 0; i < sample.size() && injective; ++i)
      for (std::size_t j = i + 1; j < sample.size() && injective; ++j)
        if (b->normalize(a * sample[i]) == b->normalize(a * sample[j])) injective = false;
    if (injective) c.integral_elements.push_back(a);
  }

  // Blue field: proper, 1 != empty, every element a unit or zero.
  Decision unit_one = b->holds(one, empty);
  bool all_units = true;
  Monomial witness;
  for (const auto& a : sample)
    if (!a.is_zero() && std::find(c.units.begin(), c.units.end(), a) == c.units.end()) {
      all_units = false;
      witness = a;
      break;
    }
  if (unit_one.is_holds()) c.is_blue_field = Decision::fails("1 == empty");
  else if (!all_units && (c.exact || (b->monoid().homogeneous() && b->monoid().confluent() && witness.degree() > 0)))
    c.is_blue_field = Decision::fails(b->render(witness) + " is neither a unit nor zero");
  else if (!all_units) c.is_blue_field = Decision::unknown("no inverse found for " + b->render(witness));
  else c.is_blue_field = both(c.proper, negate(unit_one));

  // Cancellativity.
  if (b->kind() == AdditionKind::Lattice) {
    c.cancellative = Decision::holds("cancellative by construction");
  } else if (b->kind() == AdditionKind::Semiring) {
    const auto& r = *b->semiring().ring;
    c.cancellative = Decision::holds("addition of the semiring is cancellative");
    for (Element x = 0; x < r.size(); ++x)
      for (Element y = 0; y < r.size(); ++y)
        for (Element z = 0; z < r.size(); ++z)
          if (x != y && r.plus(x, z) == r.plus(y, z))
            c.cancellative = Decision::fails(r.carrier[x] + " + " + r.carrier[z] + " = " + r.carrier[y] + " + " + r.carrier[z]);
  } else if (b->relations().empty() && b->kind() == AdditionKind::Generated) {
    c.cancellative = Decision::holds("no relations besides 0 == empty");
  } else {
    auto canc = cancellative_closure(b).result;
    auto pool = nonzero(carrier_sample(*b, 2), b->has_zero());
    if (pool.size() > 6) pool.resize(6);
    auto sums = sums_over(pool, 2);
    c.cancellative = c.exact ? Decision::holds("no cancellation failure among sums of at most 2 terms")
                             : Decision::unknown("no cancellation failure among small sums");
    for (std::size_t i = 0; i < sums.size(); ++i)
      for (std::size_t j = i + 1; j < sums.size(); ++j)
        if (canc->holds(sums[i], sums[j]).is_holds() && b->holds(sums[i], sums[j]).is_fails()) {
          c.cancellative = Decision::fails(b->render(sums[i]) + " == " + b->render(sums[j]) + " only after cancelling");
          i = sums.size();
          break;
        }
  }

  // Monoid with zero: 0 == empty generates the pre-addition.
  if (!b->has_zero()) {
    c.monoid_with_zero = Decision::fails("no zero");
  } else if (b->kind() == AdditionKind::Generated && b->relations().empty()) {
    c.monoid_with_zero = Decision::holds("only 0 == empty");
  } else {
    auto pool = nonzero(carrier_sample(*b, 2), true);
    if (pool.size() > 8) pool.resize(8);
    auto sums = sums_over(pool, 2);
    c.monoid_with_zero = c.exact ? Decision::holds("no relation among sums of at most 2 terms")
                                 : Decision::unknown("no relation among small sums");
    for (std::size_t i = 0; i < sums.size(); ++i)
      for (std::size_t j = i + 1; j < sums.size(); ++j)
        if (b->holds(sums[i], sums[j]).is_holds()) {
          c.monoid_with_zero = Decision::fails(b->render(sums[i]) + " == " + b->render(sums[j]));
          i = sums.size();
          break;
        }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Base extension

namespace {

RingPresentation extend(const BlueprintPtr& b, bool integral) {
  RingPresentation r;
  r.integral = integral;
  r.source = presented_form(b);
  r.generators = r.source->names();
  r.monoid_relations = r.source->monoid().presentation().relations;
  for (const auto& [l, rr] : r.source->relations()) {
    FormalSum a = r.source->normalize(l), c = r.source->normalize(rr);
    if (a == c) continue;
    if (a < c) std::swap(a, c);
    r.relations.emplace_back(a, c);
  }
  return r;
}

std::string render_terms(const FormalSum& s, const std::vector<std::string>& names) {
  return s.empty() ? "0" : render(s, names);
}

}  // namespace

RingPresentation base_extend_N(const BlueprintPtr& b) { return extend(b, false); }
RingPresentation base_extend_Z(const BlueprintPtr& b) { return extend(b, true); }

std::string RingPresentation::text() const {
  std::string out = integral ? "Z[" : "N[";
  for (std::size_t i = 0; i < generators.size(); ++i) out += (i ? ", " : "") + generators[i];
  out += "]";
  std::vector<std::string> rels;
  for (const auto& [l, r] : monoid_relations) {
    std::string a = render(l, generators), c = render(r, generators);
    if (integral) rels.push_back(r.is_zero() ? a : a + " - " + c);
    else rels.push_back(a + " = " + c);
  }
  for (const auto& [l, r] : relations) {
    if (!integral) {
      rels.push_back(render_terms(l, generators) + " = " + render_terms(r, generators));
      continue;
    }
    std::string s = l.empty() ? "" : render(l, generators);
    for (const auto& t : r.terms()) s += (s.empty() ? "-" : " - ") + render(t, generators);
    rels.push_back(s.empty() ? "0" : s);
  }
  if (rels.empty()) return integral ? out + " / (0)" : out;
  out += " / (";
  for (std::size_t i = 0; i < rels.size(); ++i) out += (i ? ", " : "") + rels[i];
  return out + ")";
}

std::string RingPresentation::json() const {
  nlohmann::json j;
  j["ring"] = integral ? "Z" : "N";
  j["generators"] = generators;
  j["monoid_relations"] = nlohmann::json::array();
  for (const auto& [l, r] : monoid_relations)
    j["monoid_relations"].push_back({render(l, generators), render(r, generators)});
  j["relations"] = nlohmann::json::array();
  for (const auto& [l, r] : relations)
    j["relations"].push_back({render_terms(l, generators), render_terms(r, generators)});
  return j.dump(2);
}

Decision semiring_reconstructs(const BlueprintPtr& b) {
  if (b->kind() != AdditionKind::Semiring) throw Error(ErrorCode::TypeMismatch, "needs a semiring-backed blueprint");
  const auto& r = *b->semiring().ring;
  std::vector<bool> reached(r.size(), false);
  reached[r.zero] = true;
  bool grew = true;
  while (grew) {
    grew = false;
    for (Element v = 0; v < r.size(); ++v) {
      if (!reached[v]) continue;
      for (Element a : b->semiring().subset) {
        Element w = r.plus(v, a);
        if (!reached[w]) reached[w] = grew = true;
      }
    }
  }
  for (Element v = 0; v < r.size(); ++v)
    if (!reached[v]) return Decision::fails(r.carrier[v] + " is not a sum of elements of the blueprint");
  return Decision::holds("every value is a sum and sums are equal exactly when their values are");
}

std::optional<ZModule> additive_group(const RingPresentation& r) {
  const Blueprint& b = *r.source;
  if (!b.finite()) return std::nullopt;
  ZModule z;
  z.spanning = nonzero(b.monoid().elements(), b.has_zero());
  std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  for (std::size_t i = 0; i < z.spanning.size(); ++i) index[z.spanning[i]] = i;
  for (const auto& w : z.spanning)
    for (const auto& [l, rr] : r.relations) {
      IntVector v(z.spanning.size(), 0);
      const FormalSum lw = b.normalize(l.times(w)), rw = b.normalize(rr.times(w));
      for (const auto& t : lw.terms()) v[index.at(t)] += 1;
      for (const auto& t : rw.terms()) v[index.at(t)] -= 1;
      if (std::any_of(v.begin(), v.end(), [](const Integer& x) { return x != 0; })) z.rows.push_back(std::move(v));
    }
  return z;
}

std::optional<std::size_t> z_rank(const RingPresentation& r) {
  auto z = additive_group(r);
  if (!z) return std::nullopt;
  return cokernel(z->rows, z->spanning.size()).free_rank;
}

// ---------------------------------------------------------------------------
// Limits and colimits

Tensor tensor(const Morphism& f, const Morphism& g) {
  if (!same_blueprint(f.source, g.source)) throw Error(ErrorCode::SourceMismatch, "tensor needs a common source");
  auto left = presented_form(f.target), right = presented_form(g.target);
  MonoidPresentation p;
  p.generators = left->names();
  for (const auto& name : right->names())
    p.generators.push_back(std::find(p.generators.begin(), p.generators.end(), name) == p.generators.end()
                               ? name
                               : fresh_name(p.generators, name + "_r"));
  const std::size_t nl = left->arity(), n = p.generators.size();
  p.has_zero = left->monoid().has_zero() || right->monoid().has_zero();
  for (const auto& [a, c] : left->monoid().presentation().relations)
    p.relations.emplace_back(shifted(a, 0, n), shifted(c, 0, n));
  for (const auto& [a, c] : right->monoid().presentation().relations)
    p.relations.emplace_back(shifted(a, nl, n), shifted(c, nl, n));
  for (std::size_t i = 0; i < f.source->arity(); ++i) {
    Monomial a = shifted(f.images[i], 0, n), c = shifted(g.images[i], nl, n);
    if (a != c) p.relations.emplace_back(a, c);
  }
  auto rels = shifted(left->relations(), 0, n);
  for (auto& rel : shifted(right->relations(), nl, n)) rels.push_back(rel);
  auto options = left->options();
  options.approximate = left->approximate() || right->approximate();
  std::string name = f.target->name() + "(x)" + g.target->name();
  BlueprintPtr t = (left->kind() == AdditionKind::Lattice && right->kind() == AdditionKind::Lattice)
                       ? Blueprint::lattice(name, p, rels, options)
                       : Blueprint::generated(name, p, rels, options);
  Tensor out{t, {f.target, t, {}, std::nullopt}, {g.target, t, {}, std::nullopt}};
  for (std::size_t i = 0; i < nl; ++i) out.left.images.push_back(t->normalize(Monomial::generator(n, i)));
  for (std::size_t i = nl; i < n; ++i) out.right.images.push_back(t->normalize(Monomial::generator(n, i)));
  return out;
}

Product product(const std::vector<BlueprintPtr>& factors) {
  if (factors.empty()) return {terminal_blueprint(), {}};
  std::vector<std::vector<Monomial>> carriers;
  std::size_t total = 1;
  for (const auto& f : factors) {
    if (!f->finite()) throw Error(ErrorCode::StalkNotFinite, "products need finite carriers: " + f->name());
    carriers.push_back(f->monoid().elements());
    total *= carriers.back().size();
  }
  // Mixed-radix indexing of tuples.
  auto decode = [&](std::size_t idx) {
    std::vector<std::size_t> t(factors.size());
    for (std::size_t k = factors.size(); k-- > 0;) {
      t[k] = idx % carriers[k].size();
      idx /= carriers[k].size();
    }
    return t;
  };
  auto encode = [&](const std::vector<std::size_t>& t) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < t.size(); ++k) idx = idx * carriers[k].size() + t[k];
    return idx;
  };
  auto position = [&](std::size_t k, const Monomial& m) {
    return static_cast<std::size_t>(std::find(carriers[k].begin(), carriers[k].end(), m) - carriers[k].begin());
  };
  std::vector<std::string> labels(total);
  std::vector<std::vector<std::size_t>> table(total, std::vector<std::size_t>(total));
  for (std::size_t i = 0; i < total; ++i) {
    auto t = decode(i);
    std::string label = "(";
    for (std::size_t k = 0; k < t.size(); ++k) label += (k ? "," : "") + factors[k]->render(carriers[k][t[k]]);
    labels[i] = label + ")";
    for (std::size_t j = 0; j < total; ++j) {
      auto u = decode(j);
      std::vector<std::size_t> prod(t.size());
      for (std::size_t k = 0; k < t.size(); ++k)
        prod[k] = position(k, factors[k]->normalize(carriers[k][t[k]] * carriers[k][u[k]]));
      table[i][j] = encode(prod);
    }
  }
  std::vector<std::size_t> one_t, zero_t;
  bool all_zero = true;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    one_t.push_back(position(k, factors[k]->one()));
    all_zero = all_zero && factors[k]->has_zero();
    if (factors[k]->has_zero()) zero_t.push_back(position(k, factors[k]->zero()));
  }
  std::optional<std::size_t> zero;
  if (all_zero && encode(zero_t) != encode(one_t)) zero = encode(zero_t);
  auto tp = present_table(labels, table, encode(one_t), zero);

  std::string name;
  for (std::size_t k = 0; k < factors.size(); ++k) name += (k ? "x" : "") + factors[k]->name();
  std::vector<Leg> legs;
  const std::size_t n = tp.presentation.arity();
  for (std::size_t k = 0; k < factors.size(); ++k) {
    Leg leg{factors[k], std::vector<Monomial>(n)};
    for (std::size_t i = 0; i < total; ++i) {
      const Monomial& m = tp.element_monomials[i];
      if (m.is_zero() || m.degree() != 1) continue;
      for (std::size_t g = 0; g < n; ++g)
        if (m[g]) leg.images[g] = carriers[k][decode(i)[k]];
    }
    legs.push_back(std::move(leg));
  }
  auto result = Blueprint::pullback(name, tp.presentation, legs, {});
  Product out{result, {}};
  for (const auto& leg : legs) {
    Morphism m{result, leg.target, leg.images, std::nullopt};
    if (result->monoid().has_zero() && !leg.target->monoid().has_zero()) m.zero_image = leg.target->one();
    out.projections.push_back(std::move(m));
  }
  return out;
}

DiscoveredMonoid discover_monoid(std::vector<std::string> names,
                                 const std::function<std::string(const Monomial&)>& key_of,
                                 std::optional<std::string> zero_key, std::size_t max_degree) {
  DiscoveredMonoid out;
  auto& p = out.presentation;
  p.generators = std::move(names);
  p.has_zero = zero_key.has_value();
  const std::size_t n = p.arity();
  RewriteSystem rs(n, {});
  std::unordered_map<std::string, Monomial> rep;
  auto relate = [&](const Monomial& a, const Monomial& b) {
    p.relations.emplace_back(a, b);
    rs = RewriteSystem(n, p.relations);
  };
  auto accept = [&](const Monomial& m) {
    std::string k = key_of(m);
    if (zero_key && k == *zero_key) {
      relate(m, Monomial::zero(n));
      return false;
    }
    auto it = rep.find(k);
    if (it != rep.end()) {
      relate(m, it->second);
      return false;
    }
    rep.emplace(k, m);
    return true;
  };
  std::vector<Monomial> level;
  if (accept(Monomial(n))) level.push_back(Monomial(n));
  std::unordered_set<Monomial, MonomialHash> seen{Monomial(n)};
  for (std::size_t deg = 1; deg <= max_degree; ++deg) {
    std::vector<Monomial> candidates;
    for (const auto& m : level)
      for (std::size_t i = 0; i < n; ++i) {
        Monomial c = m * Monomial::generator(n, i);
        if (rs.irreducible(c) && seen.insert(c).second) candidates.push_back(c);
      }
    std::sort(candidates.begin(), candidates.end());
    std::vector<Monomial> next;
    for (const auto& c : candidates)
      if (rs.irreducible(c) && accept(c)) next.push_back(c);
    std::erase_if(next, [&](const Monomial& m) { return !rs.irreducible(m); });
    if (next.empty()) {
      out.exact = rs.complete();
      break;
    }
    level = std::move(next);
  }
  return out;
}

Equalizer equalizer(const Morphism& f, const Morphism& g) {
  if (!same_blueprint(f.source, g.source) || !same_blueprint(f.target, g.target))
    throw Error(ErrorCode::NotParallel, "equalizer needs parallel morphisms");
  const BlueprintPtr& b = f.source;
  auto sample = carrier_sample(*b, b->budget().max_degree);
  std::vector<Monomial> agree;
  for (const auto& a : sample)
    if (f.apply(a) == g.apply(a)) agree.push_back(a);
  // Generators: agreeing elements that are not products of two non-units.
  std::vector<Monomial> gens;
  for (const auto& a : agree) {
    if (a.is_zero() || a == b->one()) continue;
    bool decomposes = false;
    for (const auto& x : agree)
      for (const auto& y : agree)
        if (!x.is_zero() && !y.is_zero() && x != b->one() && y != b->one() && b->normalize(x * y) == a) decomposes = true;
    if (!decomposes) gens.push_back(a);
  }
  std::vector<std::string> names;
  for (const auto& m : gens) names.push_back(fresh_name(names, "e_" + b->render(m)));
  auto value = [&](const Monomial& m) {
    Monomial v = b->one();
    for (std::size_t i = 0; i < m.arity(); ++i)
      for (std::uint32_t k = 0; k < m[i]; ++k) v = b->normalize(v * gens[i]);
    return v;
  };
  bool keep_zero = b->has_zero() && std::find(agree.begin(), agree.end(), b->zero()) != agree.end();
  auto found = discover_monoid(
      names, [&](const Monomial& m) { return b->render(value(m)); },
      keep_zero ? std::optional<std::string>(b->render(b->zero())) : std::nullopt,
      b->finite() ? agree.size() + 1 : b->budget().max_degree);
  auto options = b->options();
  options.approximate = !b->finite() || !found.exact;
  Leg leg{b, gens};
  auto e = Blueprint::pullback("Eq", found.presentation, {leg}, {}, options);
  Morphism inclusion{e, b, gens, std::nullopt};
  if (e->monoid().has_zero() && !b->monoid().has_zero()) inclusion.zero_image = b->one();
  return {e, inclusion};
}

}  // namespace blue
