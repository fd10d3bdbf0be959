#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqa/fact.hpp"
#include "sqa/rng.hpp"

namespace sqa {

// Axis-aligned extent in block-local coordinates; y grows upward.
struct BBox {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;

  double cx() const { return (x0 + x1) / 2; }
  double cy() const { return (y0 + y1) / 2; }
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }

  friend bool operator==(const BBox&, const BBox&) = default;
};

struct ObjectEntity {
  EntityId id;
  std::string shape;
  std::string color;
  std::string size;  // small / medium / big
  BBox bbox;
  EntityId block_id;

  friend bool operator==(const ObjectEntity&, const ObjectEntity&) = default;
};

struct Block {
  EntityId id;
  std::string label;  // display name, e.g. "A" -> "block A"

  friend bool operator==(const Block&, const Block&) = default;
};

struct Scene {
  std::vector<Block> blocks;
  std::vector<ObjectEntity> objects;
  bool depth_remap_applied = false;

  const ObjectEntity* find_object(const EntityId& id) const;
  const Block* find_block(const EntityId& id) const;

  friend bool operator==(const Scene&, const Scene&) = default;
};

struct PropertyVocab {
  std::vector<std::string> shapes;
  std::vector<std::string> colors;
  std::vector<std::string> sizes;
};

PropertyVocab default_vocab();

struct IntRange {
  int min = 0;
  int max = 0;
};

struct SceneConfig {
  IntRange blocks{1, 3};
  IntRange objects_per_block{1, 4};
  PropertyVocab vocab = default_vocab();
  // Center-distance thresholds as fractions of the unit block width;
  // the gap between them yields pairs with no distance fact at all.
  double near_threshold = 0.25;
  double far_threshold = 0.6;
  // Chance that a new object is placed flush against an existing one,
  // producing boundary contact instead of a gap.
  double touch_probability = 0.15;
  double depth_remap_probability = 0.3;
  int block_relation_retry_rounds = 50;
};

// Blocks with non-overlapping object boxes inside the unit square;
// object property triples are unique within a block. Deterministic
// given (config, rng seed).
Scene sample_scene(const SceneConfig& config, Rng& rng);

// Ground facts from geometry, one orientation per object pair (the
// lower-indexed object is the head): an RCC8 label, LEFT/RIGHT and
// ABOVE/BELOW from strict center comparison, NEAR/FAR from center
// distance against the thresholds, plus NTPP(object, block) for every
// object. Inverse orientations are derivable, not stored.
std::vector<Fact> compute_intrinsic_relations(const Scene& scene,
                                              const SceneConfig& config);

// One relation (any label but EQ) per unordered block pair such that the
// closure of the returned facts is contradiction-free; whole-set resample
// on conflict, up to retry_rounds attempts.
std::vector<Fact> assign_block_relations(const Scene& scene, Rng& rng,
                                         int retry_rounds = 50);

// With per-call probability p, rewrites every LEFT fact to BEHIND and
// every RIGHT fact to FRONT (the whole list or nothing, so the axis
// stays coherent).
std::vector<Fact> remap_depth(std::vector<Fact> facts, Rng& rng, double p);

struct SceneGraph {
  std::vector<EntityId> nodes;  // objects first, then blocks
  std::vector<Fact> edges;      // positive ground facts
};

// Full pipeline: intrinsic facts + sampled block relations, one
// per-scene depth-remap decision, retried until the closed edge set is
// contradiction-free. Sets scene.depth_remap_applied.
SceneGraph build_scene_graph(Scene& scene, const SceneConfig& config,
                             Rng& rng);

// True when the geometry of (a, b) supports the relation under the
// scene's axis semantics (after depth remap, BEHIND/FRONT read as the
// former LEFT/RIGHT axis).
bool geometry_supports(Relation r, const BBox& a, const BBox& b,
                       const SceneConfig& config, bool depth_remapped);

}  // namespace sqa
