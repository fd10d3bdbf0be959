#pragma once

#include <compare>
#include <iosfwd>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "sqa/relations.hpp"

namespace sqa {

using EntityId = std::string;

// A signed relational atom R(head, tail). Negative atoms arise only from
// the Not rule; all ground facts are positive.
struct Fact {
  Relation rel = Relation::DC;
  EntityId head;
  EntityId tail;
  bool negated = false;

  friend bool operator==(const Fact&, const Fact&) = default;

  // Canonical order used wherever deterministic tie-breaking is needed.
  friend std::strong_ordering operator<=>(const Fact& a, const Fact& b) {
    if (auto c = a.head <=> b.head; c != 0) return c;
    if (auto c = a.tail <=> b.tail; c != 0) return c;
    if (auto c = relation_index(a.rel) <=> relation_index(b.rel); c != 0)
      return c;
    return a.negated <=> b.negated;
  }
};

inline Fact make_fact(Relation r, EntityId head, EntityId tail) {
  return Fact{r, std::move(head), std::move(tail), false};
}

// "left(a,b)", negative atoms as "not left(a,b)".
std::string to_string(const Fact& f);

// A finite set of entities and ground facts; the reasoner's input.
// Fact endpoints are registered as entities automatically. Reflexive
// facts are rejected for every label except EQ.
class FactBase {
 public:
  FactBase() = default;
  explicit FactBase(const std::vector<Fact>& facts);

  void add_entity(const EntityId& id);
  void add_fact(const Fact& f);

  bool has_entity(const EntityId& id) const;
  const std::vector<EntityId>& entities() const { return entities_; }
  const std::vector<Fact>& facts() const { return facts_; }

 private:
  std::vector<EntityId> entities_;  // insertion order, unique
  std::vector<Fact> facts_;         // insertion order, unique
};

// One atom per line, `relname(entity1,entity2)`. Blank lines and lines
// starting with '#' or '%' are skipped.
FactBase parse_facts(const std::string& text);
FactBase parse_facts_file(const std::string& path);

// A ground probe or an open query with exactly one `?` slot,
// e.g. `front(a,b)`, `ntppi(room,?)`.
struct Query {
  Relation rel = Relation::DC;
  std::optional<EntityId> head;  // nullopt = open slot
  std::optional<EntityId> tail;
};

Query parse_query(const std::string& text);

}  // namespace sqa
