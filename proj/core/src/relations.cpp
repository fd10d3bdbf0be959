#include "sqa/relations.hpp"

namespace sqa {

namespace {

constexpr std::array<std::string_view, kRelationCount> kNames = {
    "dc",   "ec",    "po",    "eq",    "tpp",   "ntpp", "tppi", "ntppi",
    "left", "right", "above", "below", "front", "behind", "near", "far"};

constexpr RelationSet kDir = {Relation::LEFT,  Relation::RIGHT,
                              Relation::ABOVE, Relation::BELOW,
                              Relation::FRONT, Relation::BEHIND};
constexpr RelationSet kDis = {Relation::NEAR, Relation::FAR};
constexpr RelationSet kPP = {Relation::TPP, Relation::NTPP, Relation::TPPI,
                             Relation::NTPPI};
constexpr RelationSet kRccMinusPP = {Relation::DC, Relation::EC, Relation::PO,
                                     Relation::EQ};
constexpr RelationSet kStarPP = {Relation::TPP, Relation::NTPP};
constexpr RelationSet kStarPPi = {Relation::TPPI, Relation::NTPPI};
constexpr RelationSet kTopological = {
    Relation::DC,  Relation::EC,   Relation::PO,   Relation::EQ,
    Relation::TPP, Relation::NTPP, Relation::TPPI, Relation::NTPPI};

}  // namespace

std::vector<Relation> RelationSet::to_vector() const {
  std::vector<Relation> out;
  for (int i = 0; i < kRelationCount; ++i) {
    if ((bits_ >> i) & 1u) out.push_back(static_cast<Relation>(i));
  }
  return out;
}

Formalism formalism(Relation r) {
  if (kTopological.contains(r)) return Formalism::Topological;
  if (kDir.contains(r)) return Formalism::Directional;
  return Formalism::Distance;
}

Relation inverse(Relation r) {
  switch (r) {
    case Relation::LEFT: return Relation::RIGHT;
    case Relation::RIGHT: return Relation::LEFT;
    case Relation::ABOVE: return Relation::BELOW;
    case Relation::BELOW: return Relation::ABOVE;
    case Relation::FRONT: return Relation::BEHIND;
    case Relation::BEHIND: return Relation::FRONT;
    case Relation::TPP: return Relation::TPPI;
    case Relation::TPPI: return Relation::TPP;
    case Relation::NTPP: return Relation::NTPPI;
    case Relation::NTPPI: return Relation::NTPP;
    default: return r;
  }
}

bool is_symmetric(Relation r) {
  return (kDis | kRccMinusPP).contains(r);
}

bool is_transitive(Relation r) {
  return (kDir | kPP).contains(r);
}

RelationSet exclusion_set(Relation r) {
  RelationSet out;
  if (kTopological.contains(r)) {
    out = kTopological;
    out.erase(r);
    return out;
  }
  if (kDis.contains(r)) {
    out.insert(r == Relation::NEAR ? Relation::FAR : Relation::NEAR);
    return out;
  }
  out.insert(inverse(r));  // directional
  return out;
}

RelationSet dir_relations() { return kDir; }
RelationSet dis_relations() { return kDis; }
RelationSet pp_relations() { return kPP; }
RelationSet rcc_minus_pp() { return kRccMinusPP; }
RelationSet star_pp() { return kStarPP; }
RelationSet star_ppi() { return kStarPPi; }
RelationSet topological_relations() { return kTopological; }

RelationSet all_relation_labels() {
  return RelationSet::from_bits(0xffff);
}

RelationSet generator_relations() {
  RelationSet s = all_relation_labels();
  s.erase(Relation::EQ);
  return s;
}

std::string_view to_string(Relation r) { return kNames[relation_index(r)]; }

std::optional<Relation> relation_from_string(std::string_view name) {
  for (int i = 0; i < kRelationCount; ++i) {
    if (kNames[i] == name) return static_cast<Relation>(i);
  }
  return std::nullopt;
}

const std::array<Relation, kRelationCount>& all_relations_array() {
  static const std::array<Relation, kRelationCount> arr = [] {
    std::array<Relation, kRelationCount> a{};
    for (int i = 0; i < kRelationCount; ++i) a[i] = static_cast<Relation>(i);
    return a;
  }();
  return arr;
}

}  // namespace sqa
