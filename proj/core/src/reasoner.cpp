#include "sqa/reasoner.hpp"

#include <algorithm>
#include <unordered_map>

#include "sqa/error.hpp"

namespace sqa {

std::string_view to_string(RuleKind k) {
  switch (k) {
    case RuleKind::Given: return "given";
    case RuleKind::Not: return "not";
    case RuleKind::Inverse: return "inverse";
    case RuleKind::Symmetry: return "symmetry";
    case RuleKind::Transitivity: return "transitivity";
    case RuleKind::Combination: return "combination";
    case RuleKind::PPPropagation: return "pp-propagation";
  }
  return "?";
}

std::string_view to_string(QueryResult r) {
  switch (r) {
    case QueryResult::DerivablyTrue: return "TRUE";
    case QueryResult::DerivablyFalse: return "FALSE";
    case QueryResult::Unknown: return "UNKNOWN";
  }
  return "?";
}

namespace {

// Packed atom key: relation (4 bits), polarity (1), head and tail entity
// indexes (13 each). Bases are bounded at 8192 entities.
using Key = std::uint32_t;
constexpr int kEntityBits = 13;
constexpr std::uint32_t kEntityMask = (1u << kEntityBits) - 1;

Key pack(Relation r, bool neg, std::uint32_t head, std::uint32_t tail) {
  return (static_cast<std::uint32_t>(relation_index(r)) << (2 * kEntityBits + 1)) |
         (static_cast<std::uint32_t>(neg) << (2 * kEntityBits)) |
         (head << kEntityBits) | tail;
}

Relation key_rel(Key k) {
  return static_cast<Relation>(k >> (2 * kEntityBits + 1));
}
bool key_neg(Key k) { return (k >> (2 * kEntityBits)) & 1u; }
std::uint32_t key_head(Key k) { return (k >> kEntityBits) & kEntityMask; }
std::uint32_t key_tail(Key k) { return k & kEntityMask; }

struct DerivRecord {
  RuleKind rule = RuleKind::Given;
  int depth = 0;
  std::uint32_t order = 0;  // registration order
  Key premises[3] = {0, 0, 0};
  int premise_count = 0;
};

}  // namespace

struct Closure::Impl {
  std::vector<EntityId> entities;
  std::unordered_map<std::string, std::uint32_t> entity_index;
  std::unordered_map<Key, DerivRecord> derivations;
  std::vector<Key> order;  // registration order

  // Positive active facts by endpoint; populated as rounds advance so
  // joins only ever see premises of strictly smaller depth or earlier
  // same-round registration.
  std::vector<std::vector<Key>> out_by_head;
  std::vector<std::vector<Key>> in_by_tail;

  std::uint32_t index_of(const EntityId& id) const {
    auto it = entity_index.find(id);
    if (it == entity_index.end()) throw UnknownEntityError(id);
    return it->second;
  }

  Fact unpack(Key k) const {
    return Fact{key_rel(k), entities[key_head(k)], entities[key_tail(k)],
                key_neg(k)};
  }

  bool registered(Key k) const { return derivations.count(k) > 0; }

  void register_fact(Key k, RuleKind rule, int depth,
                     std::initializer_list<Key> premises,
                     std::vector<Key>& delta) {
    DerivRecord rec;
    rec.rule = rule;
    rec.depth = depth;
    rec.order = static_cast<std::uint32_t>(order.size());
    for (Key p : premises) rec.premises[rec.premise_count++] = p;
    derivations.emplace(k, rec);
    order.push_back(k);
    delta.push_back(k);
  }

  void activate(Key k) {
    if (key_neg(k)) return;
    out_by_head[key_head(k)].push_back(k);
    in_by_tail[key_tail(k)].push_back(k);
  }

  void run(const FactBase& base);
  void fire_rules(Key k, std::vector<Key>& next);
};

void Closure::Impl::run(const FactBase& base) {
  entities = base.entities();
  if (entities.size() > kEntityMask) {
    throw Error("fact base exceeds the supported entity count");
  }
  for (std::uint32_t i = 0; i < entities.size(); ++i) {
    entity_index.emplace(entities[i], i);
  }
  out_by_head.resize(entities.size());
  in_by_tail.resize(entities.size());

  std::vector<Key> delta;
  for (const Fact& f : base.facts()) {
    Key k = pack(f.rel, f.negated, index_of(f.head), index_of(f.tail));
    if (!registered(k)) register_fact(k, RuleKind::Given, 0, {}, delta);
  }

  while (!delta.empty()) {
    std::vector<Key> next;
    for (Key k : delta) {
      if (key_neg(k)) continue;
      activate(k);
      fire_rules(k, next);
    }
    delta = std::move(next);
  }
}

void Closure::Impl::fire_rules(Key k, std::vector<Key>& next) {
  const Relation r = key_rel(k);
  const std::uint32_t x = key_head(k);
  const std::uint32_t y = key_tail(k);
  const RelationSet dir = dir_relations();
  const RelationSet dir_pp = dir_relations() | pp_relations();
  const RelationSet sym_class = dis_relations() | rcc_minus_pp();

  auto conclude = [&](Relation cr, bool neg, std::uint32_t h, std::uint32_t t,
                      RuleKind rule, std::initializer_list<Key> premises) {
    if (h == t) return;
    Key ck = pack(cr, neg, h, t);
    if (registered(ck)) return;
    int d = 0;
    for (Key p : premises) d = std::max(d, derivations[p].depth);
    register_fact(ck, rule, d + 1, premises, next);
  };

  if (dir_pp.contains(r)) {
    conclude(inverse(r), true, x, y, RuleKind::Not, {k});
    conclude(inverse(r), false, y, x, RuleKind::Inverse, {k});
    // Transitivity joins on both sides.
    for (Key w : in_by_tail[x]) {
      if (key_rel(w) == r) {
        conclude(r, false, key_head(w), y, RuleKind::Transitivity, {w, k});
      }
    }
    for (Key z : out_by_head[y]) {
      if (key_rel(z) == r) {
        conclude(r, false, x, key_tail(z), RuleKind::Transitivity, {k, z});
      }
    }
  }
  if (sym_class.contains(r)) {
    conclude(r, false, y, x, RuleKind::Symmetry, {k});
  }

  // PPPropagation: *PP(X,Z), R(Z,Y) => R(X,Y)  and  R(X,Z), *PPi(Z,Y) => R(X,Y).
  if (star_pp().contains(r)) {
    for (Key d2 : out_by_head[y]) {
      if (dir.contains(key_rel(d2))) {
        conclude(key_rel(d2), false, x, key_tail(d2), RuleKind::PPPropagation,
                 {k, d2});
      }
    }
  }
  if (star_ppi().contains(r)) {
    for (Key d2 : in_by_tail[x]) {
      if (dir.contains(key_rel(d2))) {
        conclude(key_rel(d2), false, key_head(d2), y, RuleKind::PPPropagation,
                 {d2, k});
      }
    }
  }
  if (dir.contains(r)) {
    for (Key pp : in_by_tail[x]) {
      if (star_pp().contains(key_rel(pp))) {
        conclude(r, false, key_head(pp), y, RuleKind::PPPropagation, {pp, k});
      }
    }
    for (Key ppi : out_by_head[y]) {
      if (star_ppi().contains(key_rel(ppi))) {
        conclude(r, false, x, key_tail(ppi), RuleKind::PPPropagation,
                 {k, ppi});
      }
    }
  }

  // Combination: *PP(X,Z), R(Z,H), *PPi(H,Y) => R(X,Y) with R in Dir.
  // Fired from whichever premise arrives last.
  if (star_pp().contains(r)) {
    for (Key d2 : out_by_head[y]) {
      if (!dir.contains(key_rel(d2))) continue;
      for (Key ppi : out_by_head[key_tail(d2)]) {
        if (star_ppi().contains(key_rel(ppi))) {
          conclude(key_rel(d2), false, x, key_tail(ppi), RuleKind::Combination,
                   {k, d2, ppi});
        }
      }
    }
  }
  if (dir.contains(r)) {
    for (Key pp : in_by_tail[x]) {
      if (!star_pp().contains(key_rel(pp))) continue;
      for (Key ppi : out_by_head[y]) {
        if (star_ppi().contains(key_rel(ppi))) {
          conclude(r, false, key_head(pp), key_tail(ppi), RuleKind::Combination,
                   {pp, k, ppi});
        }
      }
    }
  }
  if (star_ppi().contains(r)) {
    for (Key d2 : in_by_tail[x]) {
      if (!dir.contains(key_rel(d2))) continue;
      for (Key pp : in_by_tail[key_head(d2)]) {
        if (star_pp().contains(key_rel(pp))) {
          conclude(key_rel(d2), false, key_head(pp), y, RuleKind::Combination,
                   {pp, d2, k});
        }
      }
    }
  }
}

Closure::Closure() : impl_(std::make_unique<Impl>()) {}
Closure::Closure(Closure&&) noexcept = default;
Closure& Closure::operator=(Closure&&) noexcept = default;
Closure::~Closure() = default;

Closure Closure::compute(const FactBase& base) {
  Closure c;
  c.impl_->run(base);
  return c;
}

bool Closure::contains(const Fact& f) const {
  auto h = impl_->entity_index.find(f.head);
  auto t = impl_->entity_index.find(f.tail);
  if (h == impl_->entity_index.end() || t == impl_->entity_index.end()) {
    return false;
  }
  return impl_->registered(pack(f.rel, f.negated, h->second, t->second));
}

std::optional<Derivation> Closure::derivation(const Fact& f) const {
  auto h = impl_->entity_index.find(f.head);
  auto t = impl_->entity_index.find(f.tail);
  if (h == impl_->entity_index.end() || t == impl_->entity_index.end()) {
    return std::nullopt;
  }
  Key k = pack(f.rel, f.negated, h->second, t->second);
  auto it = impl_->derivations.find(k);
  if (it == impl_->derivations.end()) return std::nullopt;
  Derivation out;
  out.conclusion = impl_->unpack(k);
  out.rule = it->second.rule;
  out.depth = it->second.depth;
  for (int i = 0; i < it->second.premise_count; ++i) {
    out.premises.push_back(impl_->unpack(it->second.premises[i]));
  }
  return out;
}

QueryResult Closure::query(const Fact& probe) const {
  if (probe.negated) throw Error("probes must be positive atoms");
  std::uint32_t h = impl_->index_of(probe.head);
  std::uint32_t t = impl_->index_of(probe.tail);
  if (impl_->registered(pack(probe.rel, false, h, t))) {
    return QueryResult::DerivablyTrue;
  }
  if (impl_->registered(pack(probe.rel, true, h, t))) {
    return QueryResult::DerivablyFalse;
  }
  for (Relation ex : exclusion_set(probe.rel).to_vector()) {
    if (impl_->registered(pack(ex, false, h, t))) {
      return QueryResult::DerivablyFalse;
    }
  }
  return QueryResult::Unknown;
}

RelationSet Closure::relations_between(const EntityId& a,
                                       const EntityId& b) const {
  std::uint32_t h = impl_->index_of(a);
  std::uint32_t t = impl_->index_of(b);
  if (h == t) throw Error("relations_between requires distinct entities");
  RelationSet out;
  for (Relation r : all_relations_array()) {
    if (impl_->registered(pack(r, false, h, t))) out.insert(r);
  }
  return out;
}

std::optional<Contradiction> Closure::first_contradiction() const {
  for (Key k : impl_->order) {
    const Fact f = impl_->unpack(k);
    Key flipped = pack(key_rel(k), !key_neg(k), key_head(k), key_tail(k));
    if (impl_->registered(flipped) &&
        impl_->derivations.at(flipped).order < impl_->derivations.at(k).order) {
      return Contradiction{f, impl_->unpack(flipped)};
    }
    if (!key_neg(k)) {
      for (Relation ex : exclusion_set(key_rel(k)).to_vector()) {
        Key other = pack(ex, false, key_head(k), key_tail(k));
        if (impl_->registered(other) &&
            impl_->derivations.at(other).order <
                impl_->derivations.at(k).order) {
          return Contradiction{f, impl_->unpack(other)};
        }
      }
    }
  }
  return std::nullopt;
}

std::vector<EntityId> Closure::bindings(const Query& q) const {
  if (q.head && q.tail) {
    throw Error("bindings() requires an open query");
  }
  std::vector<EntityId> out;
  if (q.head) {
    std::uint32_t h = impl_->index_of(*q.head);
    for (std::uint32_t t = 0; t < impl_->entities.size(); ++t) {
      if (t != h && impl_->registered(pack(q.rel, false, h, t))) {
        out.push_back(impl_->entities[t]);
      }
    }
  } else {
    std::uint32_t t = impl_->index_of(*q.tail);
    for (std::uint32_t h = 0; h < impl_->entities.size(); ++h) {
      if (h != t && impl_->registered(pack(q.rel, false, h, t))) {
        out.push_back(impl_->entities[h]);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Fact> Closure::facts() const {
  std::vector<Fact> out;
  out.reserve(impl_->order.size());
  for (Key k : impl_->order) out.push_back(impl_->unpack(k));
  return out;
}

std::size_t Closure::size() const { return impl_->order.size(); }

const std::vector<EntityId>& Closure::entities() const {
  return impl_->entities;
}

Closure close(const FactBase& base) { return Closure::compute(base); }

QueryResult query(const FactBase& base, const Fact& probe) {
  return Closure::compute(base).query(probe);
}

RelationSet all_relations(const FactBase& base, const EntityId& a,
                          const EntityId& b) {
  return Closure::compute(base).relations_between(a, b);
}

std::optional<Contradiction> check_consistency(const FactBase& base) {
  return Closure::compute(base).first_contradiction();
}

namespace {

bool subset_derives(const std::vector<Fact>& subset, const Fact& target) {
  FactBase sub;
  for (const Fact& f : subset) sub.add_fact(f);
  if (!sub.has_entity(target.head) || !sub.has_entity(target.tail)) {
    return false;
  }
  return Closure::compute(sub).contains(target);
}

bool find_support(const std::vector<Fact>& sorted, std::size_t start,
                  std::vector<Fact>& chosen, std::size_t want,
                  const Fact& target) {
  if (chosen.size() == want) return subset_derives(chosen, target);
  if (sorted.size() - start < want - chosen.size()) return false;
  for (std::size_t i = start; i < sorted.size(); ++i) {
    chosen.push_back(sorted[i]);
    if (find_support(sorted, i + 1, chosen, want, target)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

std::optional<Support> minimal_support(const FactBase& base,
                                       const Fact& target) {
  if (target.negated) throw Error("support targets must be positive atoms");
  if (!Closure::compute(base).contains(target)) return std::nullopt;
  std::vector<Fact> sorted = base.facts();
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 1; k <= sorted.size(); ++k) {
    std::vector<Fact> chosen;
    chosen.reserve(k);
    if (find_support(sorted, 0, chosen, k, target)) {
      return Support{chosen, static_cast<int>(k)};
    }
  }
  return std::nullopt;  // unreachable: full base derives target
}

}  // namespace sqa
