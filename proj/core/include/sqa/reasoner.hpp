#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "sqa/fact.hpp"

namespace sqa {

enum class RuleKind : std::uint8_t {
  Given,
  Not,
  Inverse,
  Symmetry,
  Transitivity,
  Combination,
  PPPropagation,
};

std::string_view to_string(RuleKind k);

// How one fact entered the closure. Given facts have depth 0 and no
// premises; otherwise depth = 1 + max premise depth, and the recorded
// derivation is one of minimal depth.
struct Derivation {
  Fact conclusion;
  RuleKind rule = RuleKind::Given;
  std::vector<Fact> premises;
  int depth = 0;
};

enum class QueryResult : std::uint8_t {
  DerivablyTrue,
  DerivablyFalse,
  Unknown,
};

std::string_view to_string(QueryResult r);

struct Contradiction {
  Fact fact;
  Fact conflicting_fact;
};

struct Support {
  std::vector<Fact> premises;
  int k = 0;
};

// Least fixpoint of the rule set over a finite fact base.
//
// Rules (premises are always positive atoms):
//   Not           R(X,Y), R in Dir|PP            => NOT inverse(R)(X,Y)
//   Inverse       R(Y,X), R in Dir|PP            => inverse(R)(X,Y)
//   Symmetry      R(Y,X), R in Dis|(RCC-PP)      => R(X,Y)
//   Transitivity  R(X,Z), R(Z,Y), R in Dir|PP    => R(X,Y)
//   Combination   *PP(X,Z), R(Z,H), *PPi(H,Y), R in Dir => R(X,Y)
//   PPPropagation *PP(X,Z), R(Z,Y), R in Dir     => R(X,Y)
//                 R(X,Z), *PPi(Z,Y), R in Dir    => R(X,Y)
class Closure {
 public:
  static Closure compute(const FactBase& base);

  bool contains(const Fact& f) const;
  std::optional<Derivation> derivation(const Fact& f) const;

  // DerivablyTrue if the positive probe is in the closure; DerivablyFalse
  // if its negation is, or a mutually exclusive positive fact on the same
  // ordered pair is; Unknown otherwise. Probe endpoints must be known.
  QueryResult query(const Fact& probe) const;

  // All r with positive r(a,b) in the closure. Endpoints must be known
  // and distinct.
  RelationSet relations_between(const EntityId& a, const EntityId& b) const;

  // First conflict in derivation order: P with NOT P, or two positive
  // facts on the same ordered pair related by exclusion_set.
  std::optional<Contradiction> first_contradiction() const;

  // All positive bindings x with rel(head,x) (or rel(x,tail)) derivable,
  // in lexicographic order.
  std::vector<EntityId> bindings(const Query& q) const;

  // Facts in derivation (registration) order.
  std::vector<Fact> facts() const;
  std::size_t size() const;

  const std::vector<EntityId>& entities() const;

  Closure(Closure&&) noexcept;
  Closure& operator=(Closure&&) noexcept;
  ~Closure();

 private:
  Closure();
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Convenience wrappers over a one-shot closure.
Closure close(const FactBase& base);
QueryResult query(const FactBase& base, const Fact& probe);
RelationSet all_relations(const FactBase& base, const EntityId& a,
                          const EntityId& b);
std::optional<Contradiction> check_consistency(const FactBase& base);

// Minimum-cardinality subset S of base.facts() from which target is
// derivable on its own; k = |S|. Ties broken by lexicographic fact order.
// nullopt when target is not derivable from the full base.
std::optional<Support> minimal_support(const FactBase& base,
                                       const Fact& target);

}  // namespace sqa
