// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#include "blue/congruence.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "blue/error.hpp"

namespace blue {

const char* to_string(CongruenceMode mode) {
  switch (mode) {
    case CongruenceMode::Pairs: return "pairs";
    case CongruenceMode::Kernel: return "kernel";
    default: return "partition";
  }
}

const char* to_string(IdealMode mode) {
  switch (mode) {
    case IdealMode::Support: return "support";
    case IdealMode::Generated: return "generated";
    case IdealMode::Radical: return "radical";
    case IdealMode::Preimage: return "preimage";
    default: return "explicit";
  }
}

namespace {

constexpr std::size_t kSampleDegree = 3;
constexpr std::size_t kCheckDegree = 2;

BlueprintPtr rebuild_like(const Blueprint& like, std::string name, MonoidPresentation p, std::vector<SumPair> rels,
                          BlueprintOptions options) {
  if (like.kind() == AdditionKind::Lattice)
    return Blueprint::lattice(std::move(name), std::move(p), std::move(rels), std::move(options));
  return Blueprint::generated(std::move(name), std::move(p), std::move(rels), std::move(options));
}

// Identity on symbols from b onto a quotient over the same generators.
Morphism onto(const BlueprintPtr& b, const BlueprintPtr& q) {
  Morphism m{b, q, {}, std::nullopt};
  for (std::size_t i = 0; i < b->arity(); ++i) m.images.push_back(q->normalize(Monomial::generator(q->arity(), i)));
  if (b->monoid().has_zero() && !q->monoid().has_zero()) m.zero_image = q->one();
  return m;
}

std::vector<Monomial> sample_of(const Blueprint& b, std::size_t cap) { return carrier_sample(b, cap); }

// Union-find over indices.
struct Classes {
  std::vector<std::size_t> parent;
  explicit Classes(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) { return parent[i] == i ? i : parent[i] = find(parent[i]); }
  void join(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::string render_pair(const Blueprint& b, const MonomialPair& p) {
  return b.render(p.first) + " ~ " + b.render(p.second);
}

bool any_flag(const std::vector<bool>& mask) { return std::find(mask.begin(), mask.end(), true) != mask.end(); }

bool in_support(const Monomial& m, const std::vector<bool>& mask, bool zero_in) {
  return m.is_zero() ? zero_in : m.meets(mask);
}

// The subset cut out by (mask, zero_in) is well defined on the carrier and,
// when nonempty, contains the absorbing zero.
bool consistent(const Blueprint& b, const std::vector<bool>& mask, bool zero_in) {
  if (b.monoid().has_zero() && !zero_in && any_flag(mask)) return false;
  for (const auto& [l, r] : b.monoid().presentation().relations)
    if (in_support(l, mask, zero_in) != in_support(r, mask, zero_in)) return false;
  return true;
}

std::vector<Monomial> support_members(const Blueprint& b, const std::vector<bool>& mask, bool zero_in) {
  std::vector<Monomial> j;
  for (std::size_t g = 0; g < mask.size(); ++g)
    if (mask[g]) j.push_back(Monomial::generator(b.arity(), g));
  if (j.empty() && zero_in) j.push_back(b.zero());
  return j;
}

// Quotient collapsing J to an absorbing element; the element is the empty
// sum exactly when b has a zero.
struct Rees {
  BlueprintPtr quotient;
  bool exact = true;
  bool zero_empty = true;
};

Rees rees_quotient(const BlueprintPtr& b, const BlueprintPtr& base, const std::vector<Monomial>& j) {
  MonoidPresentation p = base->monoid().presentation();
  auto options = base->options();
  Rees out;
  out.exact = !base->approximate();
  out.zero_empty = b->has_zero();
  if (!p.has_zero) {
    p.has_zero = true;
    options.zero_is_empty = false;
  }
  const std::size_t n = p.arity();
  for (const auto& g : j)
    if (!g.is_zero()) p.relations.emplace_back(g, Monomial::zero(n));
  out.quotient = rebuild_like(*base, b->name() + "/J", std::move(p), base->relations(), std::move(options));
  return out;
}

std::vector<MonomialPair> clean_pairs(const Blueprint& b, std::vector<MonomialPair> pairs) {
  std::vector<MonomialPair> out;
  for (auto& [x, y] : pairs) {
    Monomial a = b.normalize(x), c = b.normalize(y);
    if (a == c) continue;
    if (a < c) std::swap(a, c);
    out.emplace_back(a, c);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Congruences

Decision Congruence::related(const Monomial& a, const Monomial& b) const {
  Monomial x = map.apply(base->normalize(a)), y = map.apply(base->normalize(b));
  if (x == y) return Decision::holds("same image");
  return map.target->holds(FormalSum::of(x), FormalSum::of(y));
}

std::vector<std::vector<Monomial>> Congruence::classes(std::size_t cap) const {
  auto elems = sample_of(*base, cap);
  std::map<Monomial, std::vector<std::size_t>> by_image;
  for (std::size_t i = 0; i < elems.size(); ++i) by_image[map.apply(elems[i])].push_back(i);
  std::vector<std::vector<std::size_t>> groups;
  for (auto& [img, members] : by_image) groups.push_back(members);
  Classes uf(groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i)
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      if (uf.find(i) == uf.find(j)) continue;
      if (related(elems[groups[i][0]], elems[groups[j][0]]).is_holds()) uf.join(i, j);
    }
  std::map<std::size_t, std::vector<Monomial>> merged;
  for (std::size_t i = 0; i < groups.size(); ++i)
    for (auto k : groups[i]) merged[uf.find(i)].push_back(elems[k]);
  std::vector<std::vector<Monomial>> out;
  for (auto& [root, cls] : merged) {
    std::sort(cls.begin(), cls.end());
    out.push_back(std::move(cls));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string Congruence::describe() const {
  auto show_classes = [&](const std::vector<std::vector<Monomial>>& cls) {
    std::string s;
    for (const auto& c : cls) {
      s += s.empty() ? "{" : " {";
      for (std::size_t k = 0; k < c.size(); ++k) s += (k ? ", " : "") + base->render(c[k]);
      s += "}";
    }
    return s;
  };
  if (base->finite()) return show_classes(classes());
  if (!pairs.empty()) {
    std::vector<std::string> shown;
    for (const auto& p : pairs) shown.push_back(render_pair(*base, p));
    std::sort(shown.begin(), shown.end());
    std::string s;
    for (const auto& x : shown) s += (s.empty() ? "" : ", ") + x;
    return s;
  }
  return show_classes(classes(kSampleDegree)) + " (degree <= " + std::to_string(kSampleDegree) + ")";
}

Congruence congruence_generated(const BlueprintPtr& b, std::vector<MonomialPair> pairs) {
  pairs = clean_pairs(*b, std::move(pairs));
  BlueprintPtr base = presented_form(b);
  MonoidPresentation p = base->monoid().presentation();
  for (const auto& [x, y] : pairs) {
    if ((x.is_zero() || y.is_zero()) && !p.has_zero) throw Error(ErrorCode::TypeMismatch, "pair mentions a missing zero");
    p.relations.emplace_back(x, y);
  }
  BlueprintPtr q0 = pairs.empty() ? base : rebuild_like(*base, b->name() + "/~", p, base->relations(), base->options());
  auto pc = proper_closure(q0);
  Congruence c;
  c.base = b;
  c.mode = CongruenceMode::Pairs;
  c.map = onto(b, pc.result);
  c.pairs = std::move(pairs);
  c.status = pc.status;
  if (base->approximate()) c.status = Decision::unknown("quotient of an approximate presentation");
  return c;
}

Congruence minimal_congruence(const BlueprintPtr& b) { return congruence_generated(b, {}); }

Congruence maximal_congruence(const BlueprintPtr& b) {
  auto t = terminal_blueprint();
  Morphism f{b, t, std::vector<Monomial>(b->arity(), t->normalize(t->one())), std::nullopt};
  Congruence c;
  c.base = b;
  c.mode = CongruenceMode::Kernel;
  c.map = std::move(f);
  c.status = Decision::holds("kernel of the map to the terminal blueprint");
  return c;
}

Congruence kernel_of(const Morphism& f) {
  Decision valid = validate_morphism(f);
  if (valid.is_fails()) throw Error(ErrorCode::InvalidMorphism, valid.note);
  Congruence c;
  c.base = f.source;
  c.mode = CongruenceMode::Kernel;
  c.map = f;
  c.status = valid;
  return c;
}

Congruence congruence_from_partition(const BlueprintPtr& b, const std::vector<std::vector<Monomial>>& classes) {
  std::vector<MonomialPair> pairs;
  for (const auto& cls : classes)
    for (std::size_t k = 1; k < cls.size(); ++k) pairs.emplace_back(cls[k], cls[0]);
  Congruence c = congruence_generated(b, pairs);
  c.mode = CongruenceMode::Partition;
  if (b->finite()) {
    std::vector<std::vector<Monomial>> given;
    for (auto cls : classes) {
      for (auto& m : cls) m = b->normalize(m);
      std::sort(cls.begin(), cls.end());
      cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
      given.push_back(std::move(cls));
    }
    // Elements not mentioned form singleton classes.
    for (const auto& m : b->monoid().elements()) {
      bool seen = false;
      for (const auto& cls : given) seen = seen || std::binary_search(cls.begin(), cls.end(), m);
      if (!seen) given.push_back({m});
    }
    std::sort(given.begin(), given.end());
    if (given != c.classes()) c.status = Decision::fails("the partition is not a congruence; its closure is coarser");
  }
  return c;
}

Congruence inverse_image_congruence(const Morphism& f, const Congruence& c) {
  Decision valid = validate_morphism(f);
  if (valid.is_fails()) throw Error(ErrorCode::InvalidMorphism, valid.note);
  Congruence out;
  out.base = f.source;
  out.mode = CongruenceMode::Kernel;
  out.map = compose(f, c.map);
  out.status = both(valid, c.status);
  return out;
}

std::vector<MonomialPair> generating_pairs(const Congruence& c, std::size_t cap) {
  if (c.mode != CongruenceMode::Kernel) return c.pairs;
  std::vector<MonomialPair> out;
  for (const auto& cls : c.classes(cap))
    for (std::size_t k = 1; k < cls.size(); ++k) out.emplace_back(cls[k], cls[0]);
  return out;
}

Decision same_congruence(const Congruence& a, const Congruence& b, std::size_t cap) {
  if (!a.base->finite() || !b.base->finite()) {
    auto elems = sample_of(*a.base, cap);
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = i + 1; j < elems.size(); ++j) {
        Decision x = a.related(elems[i], elems[j]), y = b.related(elems[i], elems[j]);
        if ((x.is_holds() && y.is_fails()) || (x.is_fails() && y.is_holds()))
          return Decision::fails("differ on " + a.base->render(elems[i]) + ", " + a.base->render(elems[j]));
      }
    return Decision::unknown("agree on elements of degree <= " + std::to_string(cap));
  }
  return Decision::from(a.classes() == b.classes(), "class lists compared");
}

Closure quotient_by(const Congruence& c) {
  if (c.mode == CongruenceMode::Pairs) return {c.map.target, c.map, c.status};
  Congruence g = congruence_generated(c.base, generating_pairs(c));
  Decision round = same_congruence(c, g);
  if (round.is_fails()) round.note = "kernel of the projection differs from the congruence";
  return {g.map.target, g.map, both(g.status, round)};
}

Decision is_congruence(const Congruence& c) {
  const Blueprint& b = *c.base;
  const bool exact = b.finite();
  auto elems = sample_of(b, 2);
  auto cls = c.classes(2);
  std::map<Monomial, std::size_t> class_of;
  for (std::size_t k = 0; k < cls.size(); ++k)
    for (const auto& m : cls[k]) class_of[m] = k;

  // (C1)*: a ~ b implies ad ~ bd.
  for (const auto& cl : cls)
    for (std::size_t k = 1; k < cl.size(); ++k)
      for (const auto& d : elems) {
        Decision r = c.related(cl[0] * d, cl[k] * d);
        if (r.is_fails())
          return Decision::fails("(C1) fails: " + b.render(cl[0]) + " ~ " + b.render(cl[k]) + " but not after * " + b.render(d));
      }

  // (C2)*: a == sum ~ sum' == b implies a ~ b, over sums of at most two terms.
  std::vector<Monomial> pool;
  for (const auto& m : elems)
    if (!(m.is_zero() && b.has_zero())) pool.push_back(m);
  if (pool.size() > 8) pool.resize(8);
  std::vector<FormalSum> sums;
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i; j < pool.size(); ++j) sums.emplace_back(std::vector<Monomial>{pool[i], pool[j]});
  if (b.has_zero()) sums.emplace_back();
  std::map<std::vector<std::size_t>, std::vector<Monomial>> by_signature;
  for (const auto& s : sums) {
    std::vector<std::size_t> sig;
    bool known = true;
    for (const auto& t : s.terms()) {
      auto it = class_of.find(b.normalize(t));
      if (it == class_of.end()) known = false;
      else sig.push_back(it->second);
    }
    if (!known) continue;
    std::sort(sig.begin(), sig.end());
    for (const auto& a : pool)
      if (b.holds(FormalSum::of(a), s).is_holds()) by_signature[sig].push_back(a);
  }
  for (const auto& [sig, members] : by_signature)
    for (std::size_t k = 1; k < members.size(); ++k)
      if (c.related(members[0], members[k]).is_fails())
        return Decision::fails("(C2) fails between " + b.render(members[0]) + " and " + b.render(members[k]));
  if (exact) return Decision::holds("checked on the whole carrier");
  return Decision::unknown("no violation among elements of degree <= 2");
}

Decision is_proper(const Congruence& c) {
  const Blueprint& b = *c.base;
  // Every element is a product of generators: all of them ~ 1 means one class,
  // unless a zero remains apart.
  std::vector<Monomial> probes;
  for (std::size_t g = 0; g < b.arity(); ++g) probes.push_back(b.generator(g));
  if (b.monoid().has_zero()) probes.push_back(b.zero());
  Decision acc = Decision::fails("every generator is related to 1");
  for (const auto& p : probes) {
    Decision d = c.related(b.one(), p);
    if (d.is_fails()) return Decision::holds(b.render(p) + " is not related to 1");
    if (d.is_unknown()) acc = Decision::unknown("undecided: " + b.render(p) + " ~ 1");
  }
  return acc;
}

Decision is_prime_congruence(const Congruence& c) {
  Decision proper = is_proper(c);
  if (proper.is_fails()) throw Error(ErrorCode::NotProper, "congruence has a single class");
  const Blueprint& b = *c.base;
  auto q = quotient_by(c);
  const Blueprint& qb = *q.result;
  auto is_zero = [&](const Monomial& a) { return qb.holds(FormalSum::of(q.map.apply(a)), FormalSum()); };
  if (is_zero(b.one()).is_holds()) return Decision::fails("1 == empty in the quotient");
  Decision acc = b.finite() ? Decision::holds("quotient is integral") : Decision::unknown("integral up to degree 2");
  if (proper.is_unknown()) acc = proper;
  auto elems = sample_of(b, 2);
  for (const auto& a : elems) {
    Decision z = is_zero(a);
    if (z.is_holds()) continue;
    if (z.is_unknown()) acc = Decision::unknown("undecided whether " + b.render(a) + " is a zero");
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = i + 1; j < elems.size(); ++j) {
        if (!c.related(a * elems[i], a * elems[j]).is_holds()) continue;
        Decision same = c.related(elems[i], elems[j]);
        if (same.is_fails() && z.is_fails())
          return Decision::fails(b.render(a) + "*" + b.render(elems[i]) + " ~ " + b.render(a) + "*" + b.render(elems[j]) +
                                 " with " + b.render(a) + " neither integral nor zero");
        if (same.is_unknown()) acc = Decision::unknown("undecided cancellation by " + b.render(a));
      }
  }
  if (!q.status.is_holds() && acc.is_holds()) acc = Decision::unknown("quotient approximate");
  return acc;
}

Decision is_maximal_congruence(const Congruence& c) {
  Decision proper = is_proper(c);
  if (proper.is_fails()) throw Error(ErrorCode::NotProper, "congruence has a single class");
  const Blueprint& b = *c.base;
  auto base_pairs = generating_pairs(c);
  auto cls = c.classes(b.finite() ? 0 : 2);
  Decision acc = b.finite() ? Decision::holds("every merge of two classes is improper")
                            : Decision::unknown("no proper merge among elements of degree <= 2");
  for (std::size_t i = 0; i < cls.size(); ++i)
    for (std::size_t j = i + 1; j < cls.size(); ++j) {
      auto pairs = base_pairs;
      pairs.emplace_back(cls[j][0], cls[i][0]);
      Decision p = is_proper(congruence_generated(c.base, pairs));
      if (p.is_holds())
        return Decision::fails("merging " + b.render(cls[i][0]) + " and " + b.render(cls[j][0]) + " stays proper");
      if (p.is_unknown()) acc = p;
    }
  return acc;
}

// ---------------------------------------------------------------------------
// Ideals

std::vector<Monomial> Ideal::elements(std::size_t cap) const {
  std::vector<Monomial> out;
  for (const auto& m : sample_of(*base, cap))
    if (contains(m).is_holds()) out.push_back(m);
  return out;
}

std::string Ideal::label() const {
  if (!tag.empty()) return tag;
  std::vector<std::string> shown;
  if (mode == IdealMode::Support) {
    for (std::size_t g = 0; g < mask.size(); ++g)
      if (mask[g]) shown.push_back(base->names()[g]);
    if (shown.empty() && zero_in) shown.push_back("0");
  } else {
    for (const auto& g : generators) shown.push_back(base->render(g));
  }
  std::string s = "(";
  for (std::size_t k = 0; k < shown.size(); ++k) s += (k ? "," : "") + shown[k];
  return s + ")";
}

Ideal support_ideal(const BlueprintPtr& b, std::vector<bool> mask, bool zero_in) {
  if (mask.size() != b->arity()) throw Error(ErrorCode::TypeMismatch, "one flag per generator");
  Ideal i;
  i.base = b;
  i.mode = IdealMode::Support;
  i.generators = support_members(*b, mask, zero_in);
  std::sort(i.generators.begin(), i.generators.end());
  i.mask = mask;
  i.zero_in = zero_in;
  i.member = [mask, zero_in](const Monomial& m) {
    return Decision::from(in_support(m, mask, zero_in), "factor test");
  };
  return i;
}

namespace {

Ideal generated_over(const BlueprintPtr& b, const BlueprintPtr& presented, std::vector<Monomial> j) {
  for (auto& m : j) m = b->normalize(m);
  std::sort(j.begin(), j.end());
  j.erase(std::unique(j.begin(), j.end()), j.end());
  Ideal i;
  i.base = b;
  i.mode = IdealMode::Generated;
  i.generators = j;
  if (j.empty() && !b->has_zero()) {
    i.member = [](const Monomial&) { return Decision::fails("empty ideal"); };
    return i;
  }
  Rees r = rees_quotient(b, presented, j);
  i.member = [r](const Monomial& m) {
    const Blueprint& q = *r.quotient;
    FormalSum target = r.zero_empty ? FormalSum() : FormalSum::of(q.zero());
    Decision d = q.holds(FormalSum::of(q.normalize(m)), target);
    if (d.is_fails() && !r.exact) return Decision::unknown("approximate presentation");
    return d;
  };
  return i;
}

}  // namespace

Ideal ideal_generated(const BlueprintPtr& b, std::vector<Monomial> j) {
  return generated_over(b, presented_form(b), std::move(j));
}

Ideal explicit_ideal(const BlueprintPtr& b, std::vector<Monomial> elements) {
  for (auto& m : elements) m = b->normalize(m);
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  Ideal i;
  i.base = b;
  i.mode = IdealMode::Explicit;
  i.generators = elements;
  i.member = [elements](const Monomial& m) {
    return Decision::from(std::binary_search(elements.begin(), elements.end(), m), "listed");
  };
  return i;
}

Ideal whole_ideal(const BlueprintPtr& b) {
  Ideal i;
  i.base = b;
  i.mode = IdealMode::Generated;
  i.generators = {b->one()};
  i.member = [](const Monomial&) { return Decision::holds("whole carrier"); };
  return i;
}

Ideal absorbing_ideal(const Congruence& c) {
  const BlueprintPtr& b = c.base;
  std::vector<Monomial> probes;
  for (std::size_t g = 0; g < b->arity(); ++g) probes.push_back(b->generator(g));
  if (b->monoid().has_zero()) probes.push_back(b->zero());
  Ideal i;
  i.base = b;
  i.mode = IdealMode::Explicit;
  // e*b ~ e for every generator b (and the zero) gives it for every element.
  i.member = [c, probes](const Monomial& e) {
    Decision acc = Decision::holds("absorbing");
    for (const auto& p : probes) {
      Decision d = c.related(e * p, e);
      if (d.is_fails()) return d;
      if (d.is_unknown()) acc = d;
    }
    return acc;
  };
  i.generators = i.elements();
  return i;
}

Ideal radical(const Ideal& i) {
  if (i.mode == IdealMode::Support) return i;
  Ideal r;
  r.base = i.base;
  r.mode = IdealMode::Radical;
  r.generators = i.generators;
  r.tag = "rad" + i.label();
  // Finite carriers: until the powers cycle. Otherwise a fixed power bound.
  const std::size_t bound =
      i.base->finite() ? i.base->monoid().elements().size() + 1 : i.base->budget().max_exponent;
  r.member = [i, bound](const Monomial& a) {
    const Blueprint& b = *i.base;
    std::set<Monomial> seen;
    Monomial p = a;
    bool undecided = false;
    for (std::size_t n = 1; n <= bound; ++n) {
      Decision d = i.contains(p);
      if (d.is_holds()) return Decision::holds("power " + std::to_string(n) + " is a member");
      if (d.is_unknown()) undecided = true;
      if (!seen.insert(p).second) {
        if (undecided) return Decision::unknown("undecided power");
        return Decision::fails("powers cycle outside the ideal");
      }
      p = b.normalize(p * a);
    }
    return Decision::unknown("no power up to " + std::to_string(bound));
  };
  return r;
}

Ideal inverse_image_ideal(const Morphism& f, const Ideal& i) {
  Decision valid = validate_morphism(f);
  if (valid.is_fails()) throw Error(ErrorCode::InvalidMorphism, valid.note);
  const BlueprintPtr& src = f.source;
  if (i.mode == IdealMode::Support) {
    std::vector<bool> mask(src->arity());
    for (std::size_t g = 0; g < src->arity(); ++g) mask[g] = i.contains(f.images[g]).is_holds();
    bool zero_in = src->monoid().has_zero() && i.contains(f.apply(src->zero())).is_holds();
    return support_ideal(src, mask, zero_in);
  }
  Ideal r;
  r.base = src;
  r.mode = IdealMode::Preimage;
  r.member = [f, i](const Monomial& a) { return i.contains(f.apply(a)); };
  r.generators = r.elements(2);
  r.tag = "f^-1" + i.label();
  return r;
}

Congruence congruence_of_ideal(const Ideal& i, std::size_t cap) {
  const BlueprintPtr& b = i.base;
  std::vector<Monomial> members;
  if (i.mode == IdealMode::Support && b->monoid().has_zero() && i.zero_in) {
    members = support_members(*b, i.mask, true);
    members.push_back(b->zero());
  } else if (i.mode == IdealMode::Generated && b->monoid().has_zero()) {
    // j ~ 0 for the generators forces every member to 0.
    members = i.generators;
    members.push_back(b->zero());
  } else {
    members = i.elements(cap);
  }
  if (members.empty()) return minimal_congruence(b);
  Monomial z = std::find(members.begin(), members.end(), b->zero()) != members.end() ? b->zero() : members.front();
  std::vector<MonomialPair> pairs;
  for (const auto& m : members)
    if (m != z) pairs.emplace_back(m, z);
  return congruence_generated(b, pairs);
}

Decision same_ideal(const Ideal& a, const Ideal& b, std::size_t cap) {
  if (a.mode == IdealMode::Support && b.mode == IdealMode::Support)
    return Decision::from(a.mask == b.mask && a.zero_in == b.zero_in, "supports compared");
  for (const auto& m : sample_of(*a.base, cap)) {
    Decision x = a.contains(m), y = b.contains(m);
    if ((x.is_holds() && y.is_fails()) || (x.is_fails() && y.is_holds()))
      return Decision::fails("differ on " + a.base->render(m));
    if (x.is_unknown() || y.is_unknown()) return Decision::unknown("undecided on " + a.base->render(m));
  }
  if (a.base->finite()) return Decision::holds("same elements");
  return Decision::unknown("agree on elements of degree <= " + std::to_string(cap));
}

namespace {

struct PrimeContext {
  std::map<const Blueprint*, PrimeList> cache;
  std::map<const Blueprint*, BlueprintPtr> presented;
  const BlueprintPtr& presented_of(const BlueprintPtr& b) {
    auto it = presented.find(b.get());
    if (it == presented.end()) it = presented.emplace(b.get(), presented_form(b)).first;
    return it->second;
  }
};

PrimeList enumerate_with(const BlueprintPtr& b, PrimeContext& ctx);

// Is the support subset closed under the ideal rules? Consistency is assumed.
Decision support_closed(const BlueprintPtr& b, const std::vector<bool>& mask, bool zero_in, PrimeContext& ctx) {
  const bool flagged = any_flag(mask);
  if (!flagged && !zero_in) return Decision::from(!b->has_zero(), b->has_zero() ? "the zero is missing" : "empty set");
  auto j = support_members(*b, mask, zero_in);
  Ideal closure = generated_over(b, ctx.presented_of(b), j);
  auto forced = [&](const std::vector<Monomial>& probes) -> std::optional<Decision> {
    Decision acc = Decision::holds();
    for (const auto& x : probes) {
      if (in_support(x, mask, zero_in)) continue;
      Decision d = closure.contains(x);
      if (d.is_holds()) return Decision::fails(b->render(x) + " is forced into the ideal");
      if (d.is_unknown()) acc = d;
    }
    if (acc.is_unknown()) return std::nullopt;
    return acc;
  };

  if (b->finite() && b->kind() != AdditionKind::Pullback) {
    auto r = forced(b->monoid().elements());
    if (!r) return Decision::unknown("undecided membership in the closure");
    return r->is_holds() ? Decision::holds("closure adds nothing") : *r;
  }

  if (b->kind() == AdditionKind::Pullback) {
    for (const auto& leg : b->legs()) {
      const PrimeList& primes = enumerate_with(leg.target, ctx);
      for (const auto& q : primes.primes) {
        std::vector<bool> pre(b->arity());
        for (std::size_t g = 0; g < b->arity(); ++g) pre[g] = in_support(leg.images[g], q.mask, q.zero_in);
        bool zero_pre = b->monoid().has_zero() && (leg.target->monoid().has_zero() ? q.zero_in : true);
        if (!any_flag(pre) && !b->monoid().has_zero()) zero_pre = false;
        if (pre == mask && zero_pre == zero_in)
          return Decision::holds("preimage of " + q.label() + " in " + leg.target->name());
      }
    }
  } else if (b->kind() == AdditionKind::Generated) {
    std::vector<bool> zero_mask = mask;
    if (auto chi = b->find_character(zero_mask); chi && (flagged || !b->monoid().has_zero() || zero_in))
      return Decision::holds("kernel of a character into a " + std::to_string(chi->ring->size()) + "-element semiring");
  }
  std::vector<Monomial> probes{b->one()};
  for (std::size_t g = 0; g < b->arity(); ++g) probes.push_back(b->generator(g));
  for (const auto& m : b->elements_up_to(b->finite() ? 2 : kSampleDegree)) probes.push_back(m);
  auto r = forced(probes);
  if (r && r->is_fails()) return *r;
  return Decision::unknown("neither certified nor refuted");
}

PrimeList enumerate_with(const BlueprintPtr& b, PrimeContext& ctx) {
  auto it = ctx.cache.find(b.get());
  if (it != ctx.cache.end()) return it->second;
  PrimeList out;
  out.complete = Decision::holds("every generator subset decided");
  const std::size_t n = b->arity();
  if (n > 20) throw Error(ErrorCode::IncompleteEnumeration, "too many generators for subset enumeration");
  std::vector<std::pair<std::vector<bool>, bool>> candidates;
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    std::vector<bool> mask(n);
    for (std::size_t g = 0; g < n; ++g) mask[g] = (bits >> g) & 1;
    if (bits == 0) {
      candidates.emplace_back(mask, false);
      if (b->monoid().has_zero()) candidates.emplace_back(mask, true);
    } else {
      candidates.emplace_back(mask, b->monoid().has_zero());
    }
  }
  for (const auto& [mask, zero_in] : candidates) {
    if (!consistent(*b, mask, zero_in)) continue;
    Decision d = support_closed(b, mask, zero_in, ctx);
    if (d.is_holds()) {
      out.primes.push_back(support_ideal(b, mask, zero_in));
    } else if (d.is_unknown()) {
      out.undecided.push_back(support_ideal(b, mask, zero_in).label() + (zero_in || any_flag(mask) ? "" : " (empty)"));
      out.complete = Decision::unknown("undecided candidates remain");
    }
  }
  auto weight = [](const Ideal& i) {
    return std::make_tuple(std::count(i.mask.begin(), i.mask.end(), true), i.zero_in, i.mask);
  };
  std::stable_sort(out.primes.begin(), out.primes.end(),
                   [&](const Ideal& x, const Ideal& y) {
                     auto wx = weight(x), wy = weight(y);
                     if (std::get<0>(wx) != std::get<0>(wy)) return std::get<0>(wx) < std::get<0>(wy);
                     if (std::get<1>(wx) != std::get<1>(wy)) return !std::get<1>(wx);
                     return std::get<2>(wx) > std::get<2>(wy);
                   });
  ctx.cache.emplace(b.get(), out);
  return out;
}

}  // namespace

PrimeList enumerate_prime_ideals(const BlueprintPtr& b) {
  PrimeContext ctx;
  return enumerate_with(b, ctx);
}

IdealCheck check_ideal(const Ideal& i) {
  const BlueprintPtr& b = i.base;
  IdealCheck out;
  const bool exact = b->finite();
  auto inexact = [&](Decision d, const std::string& what) {
    if (d.is_holds() && !exact) return Decision::unknown(what + ": no violation up to degree " + std::to_string(kCheckDegree));
    return d;
  };
  out.has_zero = b->has_zero() ? i.contains(b->zero()) : Decision::holds("no zero");

  // Membership in the Rees quotient is the least closed set containing J.
  if (i.mode == IdealMode::Generated && b->kind() != AdditionKind::Pullback) {
    out.absorbs = out.closed = out.zero_rule = Decision::holds("generated ideal");
    return out;
  }

  if (i.mode == IdealMode::Support) {
    bool ok = consistent(*b, i.mask, i.zero_in);
    out.absorbs = Decision::from(ok, ok ? "support is well defined" : "support is not compatible with the monoid");
    if (!ok) {
      out.closed = out.zero_rule = Decision::fails("not a subset of the carrier");
      return out;
    }
    PrimeContext ctx;
    Decision closed = support_closed(b, i.mask, i.zero_in, ctx);
    out.zero_rule = b->has_zero() ? closed : Decision::holds("no zero");
    // The general rule runs through ~_I on finite carriers.
    if (exact) {
      Congruence c = congruence_of_ideal(i);
      auto members = i.elements();
      out.closed = Decision::holds("closed under ~_I");
      if (!members.empty()) {
        Monomial z = b->has_zero() ? b->zero() : members.front();
        for (const auto& x : b->monoid().elements())
          if (i.contains(x).is_fails() && c.related(x, z).is_holds()) {
            out.closed = Decision::fails(b->render(x) + " ~_I " + b->render(z) + " outside the ideal");
            break;
          }
      }
    } else {
      out.closed = closed;
    }
    return out;
  }

  auto elems = sample_of(*b, kCheckDegree);
  std::vector<Monomial> members;
  Decision acc = Decision::holds("absorbs products");
  for (const auto& a : elems) {
    Decision d = i.contains(a);
    if (!d.is_holds()) continue;
    members.push_back(a);
    for (std::size_t g = 0; g < b->arity() && !acc.is_fails(); ++g) {
      Decision e = i.contains(a * b->generator(g));
      if (e.is_fails()) acc = Decision::fails(b->render(a) + " in the ideal but not " + b->render(a * b->generator(g)));
      else if (e.is_unknown()) acc = e;
    }
  }
  out.absorbs = inexact(acc, "(I1)");

  Decision closed = Decision::holds("closed under ~_I");
  if (!members.empty()) {
    Congruence c = congruence_of_ideal(i, kCheckDegree);
    Monomial z = std::find(members.begin(), members.end(), b->zero()) != members.end() ? b->zero() : members.front();
    for (const auto& x : elems) {
      if (!c.related(x, z).is_holds()) continue;
      Decision d = i.contains(x);
      if (d.is_fails()) {
        closed = Decision::fails(b->render(x) + " ~_I " + b->render(z) + " outside the ideal");
        break;
      }
      if (d.is_unknown()) closed = d;
    }
  }
  out.closed = inexact(closed, "(I3)");

  if (b->has_zero()) {
    Ideal gen = ideal_generated(b, members);
    Decision rule = Decision::holds("closed under the zero rule");
    for (const auto& x : elems) {
      if (!gen.contains(x).is_holds()) continue;
      Decision d = i.contains(x);
      if (d.is_fails()) {
        rule = Decision::fails(b->render(x) + " is forced by a + sum(I) == sum(I)");
        break;
      }
      if (d.is_unknown()) rule = d;
    }
    out.zero_rule = inexact(rule, "zero rule");
  } else {
    out.zero_rule = Decision::holds("no zero");
  }
  return out;
}

Decision is_ideal(const Ideal& i) { return check_ideal(i).verdict(); }

Decision is_prime_ideal(const Ideal& i) {
  const BlueprintPtr& b = i.base;
  if (i.contains(b->one()).is_holds()) throw Error(ErrorCode::NotProper, "1 is in the ideal");
  if (i.mode == IdealMode::Support) {
    if (!consistent(*b, i.mask, i.zero_in)) return Decision::fails("support is not compatible with the monoid");
    PrimeContext ctx;
    return support_closed(b, i.mask, i.zero_in, ctx);
  }
  Decision ideal = is_ideal(i);
  if (ideal.is_fails()) return ideal;
  auto elems = sample_of(*b, 2);
  Decision mult = b->finite() ? Decision::holds("complement is multiplicative")
                              : Decision::unknown("complement multiplicative up to degree 2");
  for (const auto& x : elems) {
    if (!i.contains(x).is_fails()) continue;
    for (const auto& y : elems) {
      if (!i.contains(y).is_fails()) continue;
      Decision d = i.contains(x * y);
      if (d.is_holds()) return Decision::fails(b->render(x) + " and " + b->render(y) + " are outside, their product inside");
      if (d.is_unknown()) mult = d;
    }
  }
  return both(ideal, mult);
}

Decision is_maximal_ideal(const Ideal& i) {
  const BlueprintPtr& b = i.base;
  if (i.contains(b->one()).is_holds()) throw Error(ErrorCode::NotProper, "1 is in the ideal");
  std::vector<Monomial> base_members =
      i.mode == IdealMode::Support ? support_members(*b, i.mask, i.zero_in) : i.elements(kSampleDegree);

  // Elements outside: the whole complement when it is finite.
  std::vector<Monomial> outside;
  bool complement_exact = b->finite();
  if (b->finite()) {
    for (const auto& m : b->monoid().elements())
      if (!i.contains(m).is_holds()) outside.push_back(m);
  } else if (i.mode == IdealMode::Support) {
    // Submonoid generated by the unflagged generators.
    std::set<Monomial> seen{b->one()};
    std::vector<Monomial> layer{b->one()};
    complement_exact = true;
    for (std::size_t deg = 0; !layer.empty(); ++deg) {
      if (deg > b->budget().max_degree) {
        complement_exact = false;
        break;
      }
      std::vector<Monomial> next;
      for (const auto& m : layer)
        for (std::size_t g = 0; g < b->arity(); ++g) {
          if (i.mask[g]) continue;
          Monomial x = b->normalize(m * Monomial::generator(b->arity(), g));
          if (!x.is_zero() && seen.insert(x).second) next.push_back(x);
        }
      layer = std::move(next);
    }
    outside.assign(seen.begin(), seen.end());
  } else {
    for (const auto& m : sample_of(*b, kSampleDegree))
      if (!i.contains(m).is_holds()) outside.push_back(m);
  }

  Decision acc = Decision::holds("every enlargement contains 1");
  for (const auto& a : outside) {
    auto gens = base_members;
    gens.push_back(a);
    Decision d = ideal_generated(b, gens).contains(b->one());
    if (d.is_fails()) return Decision::fails("the ideal generated with " + b->render(a) + " is proper");
    if (d.is_unknown()) acc = Decision::unknown("undecided enlargement by " + b->render(a));
  }
  if (complement_exact || !acc.is_holds()) return acc;

  // A larger proper ideal lies in a maximal, hence prime, ideal.
  if (i.mode != IdealMode::Support) return Decision::unknown("complement is infinite");
  auto primes = enumerate_prime_ideals(b);
  if (!primes.complete.is_holds()) return Decision::unknown("prime list incomplete");
  for (const auto& p : primes.primes) {
    bool contains = (!i.zero_in || p.zero_in);
    for (std::size_t g = 0; g < i.mask.size(); ++g) contains = contains && (!i.mask[g] || p.mask[g]);
    if (contains && (p.mask != i.mask || p.zero_in != i.zero_in))
      return Decision::fails("contained in the prime " + p.label());
  }
  return Decision::holds("no prime strictly contains it");
}

// ---------------------------------------------------------------------------
// The ideal I_Z

std::string IzIdeal::text() const {
  const auto& b = *ring.source;
  if (pairs.empty()) return "I_Z = (0)";
  std::string s = "I_Z = (";
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& [x, y] = pairs[k];
    s += k ? ", " : "";
    s += y.is_zero() ? b.render(x) : b.render(x) + " - " + b.render(y);
  }
  return s + ")";
}

IzIdeal iz_ideal(const Congruence& c, std::size_t cap) {
  IzIdeal out;
  out.ring = base_extend_Z(c.base);
  for (const auto& [x, y] : generating_pairs(c, cap)) {
    if (x.is_zero() && !y.is_zero()) out.pairs.emplace_back(y, x);
    else out.pairs.emplace_back(x, y);
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

IzCheck check_iz(const Congruence& c, std::size_t degree) {
  const BlueprintPtr& b = c.base;
  BlueprintPtr pres = presented_form(b);
  const bool zero_empty = b->has_zero();
  auto elems = sample_of(*b, degree);
  std::vector<Monomial> spanning;
  for (const auto& m : elems)
    if (!(m.is_zero() && zero_empty)) spanning.push_back(m);
  std::map<Monomial, std::size_t> index;
  for (std::size_t k = 0; k < spanning.size(); ++k) index[spanning[k]] = k;
  const std::size_t cols = spanning.size();

  auto vec = [&](const FormalSum& s, IntVector& v, int sign) {
    for (const auto& t : s.terms()) {
      if (t.is_zero() && zero_empty) continue;
      auto it = index.find(t);
      if (it == index.end()) return false;
      v[it->second] += sign;
    }
    return true;
  };
  auto diff_row = [&](const FormalSum& l, const FormalSum& r, std::vector<IntVector>& rows) {
    IntVector v(cols, 0);
    if (vec(pres->normalize(l), v, 1) && vec(pres->normalize(r), v, -1)) rows.push_back(std::move(v));
  };

  std::vector<IntVector> base_rows;
  for (const auto& [l, r] : pres->relations())
    for (const auto& m : elems) {
      if (m.is_zero()) continue;
      diff_row(l.times(m), r.times(m), base_rows);
    }

  std::vector<IntVector> ideal_rows = base_rows;
  for (const auto& [x, y] : iz_ideal(c, degree).pairs)
    for (const auto& m : elems) {
      if (m.is_zero()) continue;
      diff_row(FormalSum::of(x * m), FormalSum::of(y * m), ideal_rows);
    }

  std::vector<IntVector> quotient_rows = base_rows;
  for (const auto& cls : c.classes(degree))
    for (std::size_t k = 1; k < cls.size(); ++k) diff_row(FormalSum::of(cls[k]), FormalSum::of(cls[0]), quotient_rows);

  IzCheck out;
  out.spanning = cols;
  out.quotient_invariants = smith_invariants(quotient_rows, cols);
  out.ideal_invariants = smith_invariants(ideal_rows, cols);
  out.quotient_shape = cokernel(quotient_rows, cols);
  out.ideal_shape = cokernel(ideal_rows, cols);
  bool same = out.quotient_invariants == out.ideal_invariants && out.quotient_shape == out.ideal_shape;
  out.agree = Decision::from(same, "(B/~)_Z " + out.quotient_shape.describe() + ", B_Z/I_Z " + out.ideal_shape.describe() +
                                       " over " + std::to_string(cols) + " spanning elements");
  return out;
}

}  // namespace blue
