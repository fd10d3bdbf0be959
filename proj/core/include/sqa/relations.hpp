#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace sqa {

// The closed vocabulary of qualitative spatial relation labels: the eight
// RCC8 topological values, six directional values, two qualitative
// distances.
enum class Relation : std::uint8_t {
  DC,
  EC,
  PO,
  EQ,
  TPP,
  NTPP,
  TPPI,
  NTPPI,
  LEFT,
  RIGHT,
  ABOVE,
  BELOW,
  FRONT,
  BEHIND,
  NEAR,
  FAR,
};

inline constexpr int kRelationCount = 16;

enum class Formalism : std::uint8_t { Topological, Directional, Distance };

constexpr std::uint8_t relation_index(Relation r) {
  return static_cast<std::uint8_t>(r);
}

// Value-semantic set of relation labels backed by a 16-bit mask.
class RelationSet {
 public:
  constexpr RelationSet() = default;
  constexpr RelationSet(std::initializer_list<Relation> rs) {
    for (Relation r : rs) insert(r);
  }
  static constexpr RelationSet from_bits(std::uint16_t bits) {
    RelationSet s;
    s.bits_ = bits;
    return s;
  }

  constexpr bool contains(Relation r) const {
    return (bits_ >> relation_index(r)) & 1u;
  }
  constexpr void insert(Relation r) { bits_ |= std::uint16_t(1u << relation_index(r)); }
  constexpr void erase(Relation r) { bits_ &= std::uint16_t(~(1u << relation_index(r))); }
  constexpr bool empty() const { return bits_ == 0; }
  int size() const { return __builtin_popcount(bits_); }
  constexpr std::uint16_t bits() const { return bits_; }

  constexpr RelationSet operator|(RelationSet o) const { return from_bits(bits_ | o.bits_); }
  constexpr RelationSet operator&(RelationSet o) const { return from_bits(bits_ & o.bits_); }
  constexpr RelationSet& operator|=(RelationSet o) { bits_ |= o.bits_; return *this; }
  constexpr bool operator==(const RelationSet&) const = default;

  // Members in enum (canonical) order.
  std::vector<Relation> to_vector() const;

 private:
  std::uint16_t bits_ = 0;
};

Formalism formalism(Relation r);

// LEFT<->RIGHT, ABOVE<->BELOW, FRONT<->BEHIND, TPP<->TPPI, NTPP<->NTPPI;
// symmetric labels map to themselves. Involutive.
Relation inverse(Relation r);

// True exactly for Dis | (RCC - PP) = {NEAR, FAR, DC, EC, PO, EQ}.
bool is_symmetric(Relation r);

// True exactly for Dir | PP.
bool is_transitive(Relation r);

// Labels that can never co-hold with r between the same ordered pair:
// the RCC8 values are pairwise exclusive, NEAR/FAR exclude each other,
// and each non-symmetric label excludes its inverse.
RelationSet exclusion_set(Relation r);

// Rule side-condition classes.
RelationSet dir_relations();      // LEFT RIGHT ABOVE BELOW FRONT BEHIND
RelationSet dis_relations();      // NEAR FAR
RelationSet pp_relations();       // TPP NTPP TPPI NTPPI
RelationSet rcc_minus_pp();       // DC EC PO EQ
RelationSet star_pp();            // TPP NTPP
RelationSet star_ppi();           // TPPI NTPPI
RelationSet topological_relations();
RelationSet all_relation_labels();
RelationSet generator_relations();  // all labels except EQ

// Canonical lowercase names used in every file format.
std::string_view to_string(Relation r);
std::optional<Relation> relation_from_string(std::string_view name);

const std::array<Relation, kRelationCount>& all_relations_array();

}  // namespace sqa
