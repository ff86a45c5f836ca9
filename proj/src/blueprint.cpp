// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#include "blue/blueprint.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <map>
#include <unordered_map>

#include "blue/error.hpp"
#include "blue/lattice.hpp"
#include "blue/rewrite.hpp"

namespace blue {

const char* to_string(AdditionKind kind) {
  switch (kind) {
    case AdditionKind::Generated: return "generated";
    case AdditionKind::Semiring: return "semiring";
    case AdditionKind::Pullback: return "pullback";
    default: return "cancellative";
  }
}

// ---------------------------------------------------------------------------
// Caches. Each is filled once under the blueprint's mutex and read-only after.

struct FiniteAddition {
  std::vector<Monomial> carrier;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  RewriteSystem rs;
};

struct Move {
  FormalSum from;
  FormalSum to;
};

struct MoveTable {
  std::size_t max_terms = 0, max_degree = 0;
  std::unordered_map<Monomial, std::vector<Move>, MonomialHash> by_term;  // keyed by smallest term of `from`
  std::vector<Move> from_empty;
};

struct LatticeData {
  std::vector<Monomial> coords;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  std::vector<IntVector> basis;
  bool exact = false;
};

struct AdditionCache {
  std::mutex mu;
  std::unique_ptr<FiniteAddition> finite;
  bool finite_tried = false;
  std::unique_ptr<MoveTable> moves;
  std::unique_ptr<std::vector<Character>> characters;
  std::unique_ptr<LatticeData> lattice;
  BlueprintPtr generated;
};

namespace {

std::shared_ptr<const FiniteSemiring> shared_ring(FiniteSemiring r) {
  return std::make_shared<const FiniteSemiring>(std::move(r));
}

const std::vector<std::shared_ptr<const FiniteSemiring>>& character_rings() {
  static const std::vector<std::shared_ptr<const FiniteSemiring>> rings = {
      shared_ring(boolean_semiring()), shared_ring(residue_ring(2)), shared_ring(residue_ring(3)),
      shared_ring(residue_ring(5)), shared_ring(residue_ring(7))};
  return rings;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction

BlueprintPtr Blueprint::generated(std::string name, MonoidPresentation p, std::vector<SumPair> relations,
                                  Options options) {
  auto b = std::shared_ptr<Blueprint>(new Blueprint());
  b->name_ = std::move(name);
  b->kind_ = AdditionKind::Generated;
  b->monoid_ = std::make_shared<const Monoid>(std::move(p));
  b->options_ = std::move(options);
  for (auto& [l, r] : relations) {
    FormalSum nl = b->normalize(l), nr = b->normalize(r);
    if (nl == nr) continue;
    if (nr < nl) std::swap(nl, nr);
    b->relations_.emplace_back(std::move(nl), std::move(nr));
  }
  std::sort(b->relations_.begin(), b->relations_.end());
  b->relations_.erase(std::unique(b->relations_.begin(), b->relations_.end()), b->relations_.end());
  b->cache_ = std::make_shared<AdditionCache>();
  return b;
}

BlueprintPtr Blueprint::generated(std::string name, MonoidPresentation p, std::vector<SumPair> relations) {
  return generated(std::move(name), std::move(p), std::move(relations), Options{});
}

BlueprintPtr Blueprint::embedded(std::string name, FiniteSemiring r, std::vector<Element> subset,
                                 Options options) {
  auto violations = check_semiring_axioms(r);
  if (!violations.empty()) throw Error(ErrorCode::AxiomViolation, violations.front().axiom);
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  if (!subset_generates(r, subset))
    throw Error(ErrorCode::NotMultiplicativelyClosed, "subset does not generate the semiring");

  // Multiplication table restricted to the subset.
  std::vector<std::string> labels;
  std::vector<std::size_t> pos(r.size(), r.size());
  for (std::size_t i = 0; i < subset.size(); ++i) {
    pos[subset[i]] = i;
    const auto& l = r.carrier[subset[i]];
    labels.push_back(is_identifier(l) ? l : "[" + l + "]");
  }
  std::vector<std::vector<std::size_t>> table(subset.size(), std::vector<std::size_t>(subset.size()));
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (std::size_t j = 0; j < subset.size(); ++j) table[i][j] = pos[r.times(subset[i], subset[j])];
  std::optional<std::size_t> zero;
  if (r.one != r.zero) zero = pos[r.zero];
  auto tp = present_table(labels, table, pos[r.one], zero);

  auto b = std::shared_ptr<Blueprint>(new Blueprint());
  b->name_ = std::move(name);
  b->kind_ = AdditionKind::Semiring;
  b->monoid_ = std::make_shared<const Monoid>(tp.presentation);
  b->options_ = std::move(options);
  b->options_.zero_is_empty = true;
  b->semiring_.ring = shared_ring(r);
  b->semiring_.subset = subset;
  for (std::size_t g = 0; g < b->arity(); ++g) {
    // Generators follow the subset order with 0 and 1 skipped.
    for (std::size_t i = 0; i < subset.size(); ++i)
      if (tp.element_monomials[i] == Monomial::generator(b->arity(), g)) b->semiring_.images.push_back(subset[i]);
  }
  b->cache_ = std::make_shared<AdditionCache>();
  return b;
}

BlueprintPtr Blueprint::pullback(std::string name, MonoidPresentation p, std::vector<Leg> legs,
                                 std::vector<SumPair> known, Options options) {
  auto b = std::shared_ptr<Blueprint>(new Blueprint());
  b->name_ = std::move(name);
  b->kind_ = AdditionKind::Pullback;
  b->monoid_ = std::make_shared<const Monoid>(std::move(p));
  b->options_ = std::move(options);
  for (const auto& leg : legs)
    if (leg.images.size() != b->arity()) throw Error(ErrorCode::TypeMismatch, "leg arity");
  b->legs_ = std::move(legs);
  for (auto& [l, r] : known) b->relations_.emplace_back(b->normalize(l), b->normalize(r));
  b->cache_ = std::make_shared<AdditionCache>();
  return b;
}

BlueprintPtr Blueprint::lattice(std::string name, MonoidPresentation p, std::vector<SumPair> relations,
                                Options options) {
  auto b = generated(std::move(name), std::move(p), std::move(relations), std::move(options));
  std::const_pointer_cast<Blueprint>(b)->kind_ = AdditionKind::Lattice;
  return b;
}

FormalSum Blueprint::normalize(const FormalSum& s) const { return blue::normalize(s, *monoid_, has_zero()); }

Element Blueprint::evaluate(const Monomial& m) const {
  if (kind_ != AdditionKind::Semiring) throw Error(ErrorCode::TypeMismatch, "evaluation needs a semiring");
  const auto& r = *semiring_.ring;
  if (m.is_zero()) return r.zero;
  Element acc = r.one;
  for (std::size_t i = 0; i < m.arity(); ++i)
    for (std::uint32_t k = 0; k < m[i]; ++k) acc = r.times(acc, semiring_.images[i]);
  return acc;
}

Monomial map_monomial(const Monomial& m, const std::vector<Monomial>& images, const Blueprint& target) {
  if (m.is_zero()) {
    if (!target.monoid().has_zero()) throw Error(ErrorCode::InvalidMorphism, "zero has no image");
    return target.zero();
  }
  Monomial acc = target.one();
  for (std::size_t i = 0; i < m.arity(); ++i)
    for (std::uint32_t k = 0; k < m[i]; ++k) acc = target.normalize(acc * images[i]);
  return acc;
}

FormalSum map_sum(const FormalSum& s, const std::vector<Monomial>& images, const Blueprint& target) {
  std::vector<Monomial> out;
  for (const auto& t : s.terms()) out.push_back(map_monomial(t, images, target));
  return target.normalize(FormalSum(std::move(out)));
}

TablePresentation present_table(const std::vector<std::string>& labels,
                                const std::vector<std::vector<std::size_t>>& product, std::size_t one,
                                std::optional<std::size_t> zero) {
  TablePresentation tp;
  auto& p = tp.presentation;
  p.has_zero = zero.has_value();
  std::vector<std::size_t> gens;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (i != one && (!zero || i != *zero)) {
      gens.push_back(i);
      p.generators.push_back(labels[i]);
    }
  const std::size_t n = gens.size();
  tp.element_monomials.assign(labels.size(), Monomial(n));
  for (std::size_t k = 0; k < n; ++k) tp.element_monomials[gens[k]] = Monomial::generator(n, k);
  if (zero) tp.element_monomials[*zero] = Monomial::zero(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = a; c < n; ++c) {
      std::size_t prod = product[gens[a]][gens[c]];
      p.relations.emplace_back(Monomial::generator(n, a) * Monomial::generator(n, c), tp.element_monomials[prod]);
    }
  return tp;
}

// ---------------------------------------------------------------------------
// Characters

namespace {

Element value_in(const FiniteSemiring& r, const std::vector<Element>& values, const Monomial& m) {
  if (m.is_zero()) return r.zero;
  Element acc = r.one;
  for (std::size_t i = 0; i < m.arity(); ++i)
    for (std::uint32_t k = 0; k < m[i]; ++k) acc = r.times(acc, values[i]);
  return acc;
}

Element sum_in(const FiniteSemiring& r, const std::vector<Element>& values, const FormalSum& s) {
  Element acc = r.zero;
  for (const auto& t : s.terms()) acc = r.plus(acc, value_in(r, values, t));
  return acc;
}

std::size_t last_index(const Monomial& m) {
  for (std::size_t i = m.arity(); i-- > 0;)
    if (m[i]) return i;
  return 0;
}

// Backtracking over generator values; constraints are checked as soon as the
// last generator they mention is assigned.
struct CharacterSearch {
  const Blueprint& b;
  const FiniteSemiring& r;
  std::vector<std::vector<Element>> allowed;
  std::vector<std::vector<std::pair<Monomial, Monomial>>> rules_at;
  std::vector<std::vector<SumPair>> sums_at;
  std::size_t nodes = 0, max_nodes = 0;
  std::vector<Element> values;

  CharacterSearch(const Blueprint& bp, const FiniteSemiring& ring, std::size_t budget)
      : b(bp), r(ring), max_nodes(budget) {
    const std::size_t n = b.arity();
    allowed.assign(n, {});
    for (std::size_t g = 0; g < n; ++g)
      for (Element e = 0; e < r.size(); ++e) allowed[g].push_back(e);
    rules_at.assign(n + 1, {});
    sums_at.assign(n + 1, {});
    for (const auto& rule : b.monoid().rewriting().rules()) {
      std::size_t at = std::max(last_index(rule.lhs), last_index(rule.rhs));
      rules_at[at].emplace_back(rule.lhs, rule.rhs);
    }
    for (const auto& [l, rr] : b.relations()) {
      std::size_t at = 0;
      for (const auto& t : l.terms()) at = std::max(at, last_index(t));
      for (const auto& t : rr.terms()) at = std::max(at, last_index(t));
      sums_at[at].emplace_back(l, rr);
    }
    values.assign(n, r.zero);
  }

  bool consistent(std::size_t g) const {
    for (const auto& [l, rr] : rules_at[g])
      if (value_in(r, values, l) != value_in(r, values, rr)) return false;
    for (const auto& [l, rr] : sums_at[g])
      if (sum_in(r, values, l) != sum_in(r, values, rr)) return false;
    return true;
  }

  // Returns false when the visitor asks to stop or the budget runs out.
  bool run(std::size_t g, const std::function<bool(const std::vector<Element>&)>& visit) {
    if (g == values.size()) return visit(values);
    for (Element e : allowed[g]) {
      if (++nodes > max_nodes) return false;
      values[g] = e;
      if (consistent(g) && !run(g + 1, visit)) return false;
    }
    return true;
  }

  bool start(const std::function<bool(const std::vector<Element>&)>& visit) {
    // Constraints without generators (g = 0 slot covers unit relations).
    if (values.empty()) {
      for (const auto& [l, rr] : rules_at[0])
        if (value_in(r, values, l) != value_in(r, values, rr)) return true;
      for (const auto& [l, rr] : sums_at[0])
        if (sum_in(r, values, l) != sum_in(r, values, rr)) return true;
      return visit(values);
    }
    return run(0, visit);
  }
};

}  // namespace

Element Blueprint::character_value(const Character& c, const Monomial& m) const {
  return value_in(*c.ring, c.values, m);
}

const std::vector<Character>& Blueprint::characters() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->characters) {
    auto out = std::make_unique<std::vector<Character>>();
    if (kind_ == AdditionKind::Generated) {
      for (const auto& ring : character_rings()) {
        CharacterSearch search(*this, *ring, 200000);
        std::size_t kept = 0;
        search.start([&](const std::vector<Element>& v) {
          out->push_back({ring, v});
          return ++kept < 2048;
        });
      }
    }
    cache_->characters = std::move(out);
  }
  return *cache_->characters;
}

std::optional<Character> Blueprint::find_character(const std::vector<bool>& zero_mask) const {
  if (kind_ != AdditionKind::Generated) return std::nullopt;
  for (const auto& ring : character_rings()) {
    CharacterSearch search(*this, *ring, 200000);
    for (std::size_t g = 0; g < arity(); ++g) {
      search.allowed[g].clear();
      for (Element e = 0; e < ring->size(); ++e)
        if ((e == ring->zero) == zero_mask[g]) search.allowed[g].push_back(e);
    }
    std::optional<Character> found;
    search.start([&](const std::vector<Element>& v) {
      found = Character{ring, v};
      return false;
    });
    if (found) return found;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Pre-addition engine

namespace {

bool in_grade(const FormalSum& s, std::size_t max_terms, std::size_t max_degree) {
  return s.size() <= max_terms && s.max_degree() <= max_degree;
}

struct SearchOutcome {
  bool connected = false;
  bool closed[2] = {false, false};
  bool escaped[2] = {false, false};
  bool exhausted = false;
  std::size_t visited = 0;
};

SearchOutcome grade_search(const MoveTable& table, const FormalSum& a, const FormalSum& b,
                           std::size_t max_pairs) {
  SearchOutcome out;
  if (a == b) {
    out.connected = true;
    return out;
  }
  std::unordered_map<FormalSum, int, FormalSumHash> side;
  std::deque<FormalSum> queue[2];
  side[a] = 0;
  side[b] = 1;
  queue[0].push_back(a);
  queue[1].push_back(b);
  auto expand = [&](int s) -> bool {
    FormalSum cur = queue[s].front();
    queue[s].pop_front();
    auto visit = [&](const Move& mv) -> bool {
      FormalSum next = cur.minus(mv.from) + mv.to;
      if (!in_grade(next, table.max_terms, table.max_degree)) {
        out.escaped[s] = true;
        return false;
      }
      auto it = side.find(next);
      if (it == side.end()) {
        side.emplace(next, s);
        queue[s].push_back(std::move(next));
      } else if (it->second != s) {
        return true;
      }
      return false;
    };
    for (const auto& mv : table.from_empty)
      if (visit(mv)) return true;
    const Monomial* last = nullptr;
    for (const auto& t : cur.terms()) {
      if (last && *last == t) continue;
      last = &t;
      auto it = table.by_term.find(t);
      if (it == table.by_term.end()) continue;
      for (const auto& mv : it->second)
        if (cur.contains(mv.from) && visit(mv)) return true;
    }
    return false;
  };
  while (true) {
    if (queue[0].empty()) {
      out.closed[0] = true;
      break;
    }
    if (queue[1].empty()) {
      out.closed[1] = true;
      break;
    }
    if (side.size() > max_pairs) {
      out.exhausted = true;
      break;
    }
    int s = queue[0].size() <= queue[1].size() ? 0 : 1;
    if (expand(s)) {
      out.connected = true;
      break;
    }
  }
  out.visited = side.size();
  return out;
}

}  // namespace

Decision Blueprint::holds(const FormalSum& lhs_raw, const FormalSum& rhs_raw) const {
  FormalSum lhs = normalize(lhs_raw), rhs = normalize(rhs_raw);
  if (lhs == rhs) return Decision::holds("equal after normalization");
  switch (kind_) {
    case AdditionKind::Semiring: {
      const auto& r = *semiring_.ring;
      auto embed = [&](const Monomial& m) -> std::optional<Element> { return evaluate(m); };
      Element x = eval_in_semiring(lhs, embed, r), y = eval_in_semiring(rhs, embed, r);
      if (x == y) return Decision::holds("both sides evaluate to " + r.carrier[x]);
      return Decision::fails("values " + r.carrier[x] + " and " + r.carrier[y] + " differ");
    }
    case AdditionKind::Pullback: {
      Decision acc = Decision::holds("holds after every leg");
      for (const auto& leg : legs_) {
        Decision d = leg.target->holds(map_sum(lhs, leg.images, *leg.target), map_sum(rhs, leg.images, *leg.target));
        if (d.is_fails()) return Decision::fails("fails in " + leg.target->name());
        if (d.is_unknown()) acc = d;
      }
      if (legs_.empty()) return Decision::holds("no legs");
      return acc;
    }
    default: break;
  }

  if (relations_.empty()) return Decision::fails("no relations: only equal sums are related");

  if (kind_ == AdditionKind::Lattice) {
    std::unique_lock<std::mutex> lock(cache_->mu);
    if (!cache_->lattice) {
      auto data = std::make_unique<LatticeData>();
      std::vector<Monomial> multipliers;
      std::size_t extra = 0;
      for (const auto& [l, r] : relations_) extra = std::max({extra, l.max_degree(), r.max_degree()});
      if (finite()) {
        data->exact = true;
        multipliers = monoid_->elements();
        data->coords = monoid_->elements();
      } else {
        multipliers = elements_up_to(budget().max_degree);
        data->coords = elements_up_to(budget().max_degree + extra);
      }
      if (has_zero()) {
        std::erase_if(data->coords, [](const Monomial& m) { return m.is_zero(); });
        std::erase_if(multipliers, [](const Monomial& m) { return m.is_zero(); });
      }
      for (std::size_t i = 0; i < data->coords.size(); ++i) data->index[data->coords[i]] = i;
      std::vector<IntVector> rows;
      for (const auto& w : multipliers)
        for (const auto& [l, r] : relations_) {
          IntVector v(data->coords.size(), 0);
          bool fits = true;
          const FormalSum lw = normalize(l.times(w)), rw = normalize(r.times(w));
          for (const auto& t : lw.terms()) {
            auto it = data->index.find(t);
            if (it == data->index.end()) fits = false; else v[it->second] += 1;
          }
          for (const auto& t : rw.terms()) {
            auto it = data->index.find(t);
            if (it == data->index.end()) fits = false; else v[it->second] -= 1;
          }
          if (fits) rows.push_back(std::move(v));
        }
      data->basis = hermite_basis(std::move(rows), data->coords.size());
      cache_->lattice = std::move(data);
    }
    const LatticeData& data = *cache_->lattice;
    lock.unlock();
    IntVector v(data.coords.size(), 0);
    for (const auto& t : lhs.terms()) {
      auto it = data.index.find(t);
      if (it == data.index.end()) return Decision::unknown("term outside the truncated lattice");
      v[it->second] += 1;
    }
    for (const auto& t : rhs.terms()) {
      auto it = data.index.find(t);
      if (it == data.index.end()) return Decision::unknown("term outside the truncated lattice");
      v[it->second] -= 1;
    }
    if (in_lattice(data.basis, v)) return Decision::holds("difference lies in the relation lattice");
    if (data.exact) return Decision::fails("difference outside the relation lattice");
    return Decision::unknown("difference outside the truncated relation lattice");
  }

  // Generated: exact completion over N^carrier when the carrier is finite.
  if (finite()) {
    std::unique_lock<std::mutex> lock(cache_->mu);
    if (!cache_->finite_tried) {
      cache_->finite_tried = true;
      auto fa = std::make_unique<FiniteAddition>();
      for (const auto& m : monoid_->elements())
        if (!(has_zero() && m.is_zero())) fa->carrier.push_back(m);
      for (std::size_t i = 0; i < fa->carrier.size(); ++i) fa->index[fa->carrier[i]] = i;
      const std::size_t n = fa->carrier.size();
      auto vec = [&](const FormalSum& s) {
        Monomial v(n);
        for (const auto& t : s.terms()) v = v * Monomial::generator(n, fa->index.at(t));
        return v;
      };
      std::vector<std::pair<Monomial, Monomial>> binomials;
      for (const auto& w : fa->carrier)
        for (const auto& [l, r] : relations_) {
          Monomial a = vec(normalize(l.times(w))), c = vec(normalize(r.times(w)));
          if (a != c) binomials.emplace_back(a, c);
        }
      fa->rs = RewriteSystem(n, binomials, {256, 20000});
      if (fa->rs.complete()) cache_->finite = std::move(fa);
    }
    const FiniteAddition* fa = cache_->finite.get();
    lock.unlock();
    if (fa) {
      const std::size_t n = fa->carrier.size();
      auto vec = [&](const FormalSum& s) {
        Monomial v(n);
        for (const auto& t : s.terms()) v = v * Monomial::generator(n, fa->index.at(t));
        return v;
      };
      if (fa->rs.reduce(vec(lhs)) == fa->rs.reduce(vec(rhs)))
        return Decision::holds("equal normal forms over the finite carrier");
      return Decision::fails("distinct normal forms over the finite carrier");
    }
  }

  // Infinite carrier: characters, then grade search.
  for (const auto& c : characters()) {
    const auto& r = *c.ring;
    Element x = r.zero, y = r.zero;
    for (const auto& t : lhs.terms()) x = r.plus(x, character_value(c, t));
    for (const auto& t : rhs.terms()) y = r.plus(y, character_value(c, t));
    if (x != y) return Decision::fails("separated by a character into a finite semiring");
  }
  const std::size_t terms = std::max({budget().max_terms, lhs.size(), rhs.size()});
  const std::size_t degree = std::max({budget().max_degree, lhs.max_degree(), rhs.max_degree()});
  Decision within = holds_within(lhs, rhs, terms, degree);
  if (within.is_holds()) return within;
  if (within.is_fails() && within.note == "closed") {
    return Decision::fails("class closed inside the grade with no outgoing move");
  }
  return Decision::unknown("grade search inconclusive (L=" + std::to_string(terms) + ", d=" +
                           std::to_string(degree) + "): " + within.note);
}

Decision Blueprint::holds_within(const FormalSum& lhs_raw, const FormalSum& rhs_raw, std::size_t max_terms,
                                 std::size_t max_degree) const {
  if (kind_ != AdditionKind::Generated)
    throw Error(ErrorCode::TypeMismatch, "grade search needs generating relations");
  FormalSum lhs = normalize(lhs_raw), rhs = normalize(rhs_raw);
  if (lhs == rhs) return Decision::holds("equal after normalization");
  if (!in_grade(lhs, max_terms, max_degree) || !in_grade(rhs, max_terms, max_degree))
    return Decision::unknown("query outside the grade");

  std::unique_lock<std::mutex> lock(cache_->mu);
  if (!cache_->moves || cache_->moves->max_terms != max_terms || cache_->moves->max_degree != max_degree) {
    auto table = std::make_unique<MoveTable>();
    table->max_terms = max_terms;
    table->max_degree = max_degree;
    for (const auto& w : elements_up_to(max_degree)) {
      if (has_zero() && w.is_zero()) continue;
      for (const auto& [l, r] : relations_) {
        FormalSum a = normalize(l.times(w)), c = normalize(r.times(w));
        if (a == c) continue;
        for (int dir = 0; dir < 2; ++dir) {
          Move mv{dir ? c : a, dir ? a : c};
          if (!in_grade(mv.from, max_terms, max_degree)) continue;
          if (mv.from.empty()) table->from_empty.push_back(std::move(mv));
          else table->by_term[mv.from.terms().front()].push_back(std::move(mv));
        }
      }
    }
    cache_->moves = std::move(table);
  }
  auto table = std::shared_ptr<const MoveTable>(cache_->moves.get(), [](const MoveTable*) {});
  SearchOutcome out = grade_search(*table, lhs, rhs, budget().max_pairs);
  lock.unlock();

  if (out.connected) return Decision::holds("joined inside the grade");
  if (out.exhausted)
    return Decision::unknown("pair budget exhausted after " + std::to_string(out.visited) + " sums");
  // A closed class with no move leaving the grade is the full class when the
  // monoid is graded and zero terms vanish.
  bool graded = monoid_->homogeneous() && monoid_->confluent() && (has_zero() || !monoid_->has_zero());
  for (const auto& [l, r] : relations_)
    if (l.empty() != r.empty()) graded = false;
  for (int s = 0; s < 2; ++s)
    if (out.closed[s] && !out.escaped[s] && graded) return Decision::fails("closed");
  return Decision::fails("not connected inside the grade");
}

// ---------------------------------------------------------------------------

BlueprintPtr Blueprint::as_generated() const {
  if (kind_ == AdditionKind::Generated) return nullptr;
  if (kind_ != AdditionKind::Semiring)
    throw Error(ErrorCode::TypeMismatch, "only semiring-backed blueprints have an explicit generating set");
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (cache_->generated) return cache_->generated;
  const auto& r = *semiring_.ring;
  // Shortest sum of carrier elements representing each semiring value.
  std::vector<Monomial> carrier = monoid_->elements();
  std::erase_if(carrier, [](const Monomial& m) { return m.is_zero(); });
  std::vector<std::optional<FormalSum>> rep(r.size());
  rep[r.zero] = FormalSum();
  std::deque<Element> queue{r.zero};
  while (!queue.empty()) {
    Element v = queue.front();
    queue.pop_front();
    for (const auto& m : carrier) {
      Element w = r.plus(v, evaluate(m));
      if (rep[w]) continue;
      rep[w] = *rep[v] + FormalSum::of(m);
      queue.push_back(w);
    }
  }
  std::vector<SumPair> rels;
  for (const auto& m : carrier)
    for (Element v = 0; v < r.size(); ++v) {
      if (!rep[v]) continue;
      Element w = r.plus(evaluate(m), v);
      rels.emplace_back(FormalSum::of(m) + *rep[v], *rep[w]);
    }
  MonoidPresentation p = monoid_->presentation();
  if (p.has_zero) rels.emplace_back(FormalSum::of(monoid_->zero()), FormalSum());
  Options o = options_;
  cache_->generated = generated(name_, p, rels, o);
  return cache_->generated;
}

std::string Blueprint::describe() const {
  std::string out = "blueprint " + name_ + " [" + to_string(kind_) + "]\n";
  out += "  generators:";
  for (std::size_t i = 0; i < names().size(); ++i) out += (i ? ", " : " ") + names()[i];
  out += "\n";
  if (monoid_->has_zero()) out += "  zero\n";
  for (const auto& rule : monoid_->rewriting().rules())
    out += "  monoid: " + render(rule.lhs) + " = " + render(rule.rhs) + "\n";
  if (kind_ == AdditionKind::Semiring) {
    for (std::size_t g = 0; g < arity(); ++g)
      out += "  value: " + names()[g] + " -> " + semiring_.ring->carrier[semiring_.images[g]] + "\n";
  }
  for (const auto& [l, r] : relations_) out += "  addition: " + render(l) + " = " + render(r) + "\n";
  for (const auto& leg : legs_) out += "  leg: " + leg.target->name() + "\n";
  return out;
}

}  // namespace blue
