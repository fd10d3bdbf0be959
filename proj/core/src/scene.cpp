#include "sqa/scene.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "sqa/error.hpp"
#include "sqa/reasoner.hpp"

namespace sqa {

const ObjectEntity* Scene::find_object(const EntityId& id) const {
  for (const auto& o : objects) {
    if (o.id == id) return &o;
  }
  return nullptr;
}

const Block* Scene::find_block(const EntityId& id) const {
  for (const auto& b : blocks) {
    if (b.id == id) return &b;
  }
  return nullptr;
}

PropertyVocab default_vocab() {
  return PropertyVocab{
      {"circle", "square", "triangle", "rectangle", "star"},
      {"black", "blue", "red", "green", "yellow", "white"},
      {"small", "medium", "big"},
  };
}

namespace {

constexpr double kMargin = 0.02;

double side_for_size(const std::string& size, Rng& rng) {
  double lo = 0.10, hi = 0.16;
  if (size == "medium") {
    lo = 0.17;
    hi = 0.24;
  } else if (size == "big") {
    lo = 0.25;
    hi = 0.34;
  }
  return lo + rng.uniform01() * (hi - lo);
}

bool interiors_overlap(const BBox& a, const BBox& b) {
  return a.x0 < b.x1 && b.x0 < a.x1 && a.y0 < b.y1 && b.y0 < a.y1;
}

bool boxes_touch(const BBox& a, const BBox& b) {
  return a.x0 <= b.x1 && b.x0 <= a.x1 && a.y0 <= b.y1 && b.y0 <= a.y1 &&
         !interiors_overlap(a, b);
}

bool inside(const BBox& a, const BBox& b) {  // a within b, borders allowed
  return a.x0 >= b.x0 && a.x1 <= b.x1 && a.y0 >= b.y0 && a.y1 <= b.y1;
}

bool strictly_inside(const BBox& a, const BBox& b) {
  return a.x0 > b.x0 && a.x1 < b.x1 && a.y0 > b.y0 && a.y1 < b.y1;
}

std::optional<BBox> place_box(const std::vector<BBox>& placed, double side,
                              bool try_touch, Rng& rng) {
  const BBox unit{0, 0, 1, 1};
  if (try_touch && !placed.empty()) {
    // Snap flush against a random side of a random existing box.
    for (int attempt = 0; attempt < 8; ++attempt) {
      const BBox& host = placed[rng.uniform_below(placed.size())];
      int dir = rng.uniform_int(0, 3);
      double x0, y0;
      if (dir == 0) {  // right of host
        x0 = host.x1;
        y0 = host.y0 + (rng.uniform01() - 0.5) * side;
      } else if (dir == 1) {  // left
        x0 = host.x0 - side;
        y0 = host.y0 + (rng.uniform01() - 0.5) * side;
      } else if (dir == 2) {  // above
        x0 = host.x0 + (rng.uniform01() - 0.5) * side;
        y0 = host.y1;
      } else {  // below
        x0 = host.x0 + (rng.uniform01() - 0.5) * side;
        y0 = host.y0 - side;
      }
      BBox cand{x0, y0, x0 + side, y0 + side};
      if (!inside(cand, unit)) continue;
      bool ok = true;
      for (const BBox& other : placed) ok = ok && !interiors_overlap(cand, other);
      if (ok) return cand;
    }
  }
  for (int attempt = 0; attempt < 64; ++attempt) {
    double x0 = kMargin + rng.uniform01() * (1 - side - 2 * kMargin);
    double y0 = kMargin + rng.uniform01() * (1 - side - 2 * kMargin);
    BBox cand{x0, y0, x0 + side, y0 + side};
    bool ok = true;
    for (const BBox& other : placed) {
      ok = ok && !interiors_overlap(cand, other) && !boxes_touch(cand, other);
    }
    if (ok) return cand;
  }
  return std::nullopt;
}

}  // namespace

Scene sample_scene(const SceneConfig& config, Rng& rng) {
  if (config.blocks.min < 1 || config.objects_per_block.min < 1) {
    throw ConfigError("scene config needs at least one block and one object");
  }
  if (config.vocab.shapes.empty() || config.vocab.colors.empty() ||
      config.vocab.sizes.empty()) {
    throw ConfigError("property vocabulary must not be empty");
  }
  Scene scene;
  // Multi-block scenes carry the interesting cross-block reasoning, so
  // the block count takes the max of two draws from the range.
  int block_count =
      std::max(rng.uniform_int(config.blocks.min, config.blocks.max),
               rng.uniform_int(config.blocks.min, config.blocks.max));
  int object_id = 0;
  for (int b = 0; b < block_count; ++b) {
    Block block;
    block.id = "b" + std::to_string(b + 1);
    block.label = std::string(1, static_cast<char>('A' + b));
    scene.blocks.push_back(block);

    int want = std::max(rng.uniform_int(config.objects_per_block.min,
                                        config.objects_per_block.max),
                        rng.uniform_int(config.objects_per_block.min,
                                        config.objects_per_block.max));
    std::vector<BBox> placed;
    std::set<std::array<std::string, 3>> used_triples;
    for (int i = 0; i < want; ++i) {
      ObjectEntity obj;
      obj.id = "o" + std::to_string(++object_id);
      obj.block_id = block.id;
      // Property triples are unique inside a block so that a fully
      // qualified description resolves.
      for (int attempt = 0;; ++attempt) {
        obj.shape = rng.pick(config.vocab.shapes);
        obj.color = rng.pick(config.vocab.colors);
        obj.size = rng.pick(config.vocab.sizes);
        if (used_triples.insert({obj.shape, obj.color, obj.size}).second) break;
        if (attempt > 100) { obj.shape.clear(); break; }
      }
      if (obj.shape.empty()) break;  // vocabulary exhausted for this block
      double side = side_for_size(obj.size, rng);
      bool try_touch = rng.bernoulli(config.touch_probability);
      auto box = place_box(placed, side, try_touch, rng);
      if (!box) continue;  // block too crowded, skip the object
      obj.bbox = *box;
      placed.push_back(*box);
      scene.objects.push_back(obj);
    }
  }
  // A scene needs at least two entities to say anything at all.
  if (scene.blocks.size() + scene.objects.size() < 2) {
    Block extra;
    extra.id = "b" + std::to_string(scene.blocks.size() + 1);
    extra.label = std::string(1, static_cast<char>('A' + scene.blocks.size()));
    scene.blocks.push_back(extra);
  }
  return scene;
}

namespace {

std::optional<Relation> rcc8_label(const BBox& a, const BBox& b) {
  if (a == b) return std::nullopt;  // EQ never emitted
  if (strictly_inside(a, b)) return Relation::NTPP;
  if (strictly_inside(b, a)) return Relation::NTPPI;
  if (inside(a, b)) return Relation::TPP;
  if (inside(b, a)) return Relation::TPPI;
  if (interiors_overlap(a, b)) return Relation::PO;
  if (boxes_touch(a, b)) return Relation::EC;
  return Relation::DC;
}

}  // namespace

std::vector<Fact> compute_intrinsic_relations(const Scene& scene,
                                              const SceneConfig& config) {
  std::vector<Fact> out;
  for (const auto& obj : scene.objects) {
    out.push_back(make_fact(Relation::NTPP, obj.id, obj.block_id));
  }
  for (std::size_t i = 0; i < scene.objects.size(); ++i) {
    for (std::size_t j = i + 1; j < scene.objects.size(); ++j) {
      const ObjectEntity& a = scene.objects[i];
      const ObjectEntity& b = scene.objects[j];
      if (a.block_id != b.block_id) continue;
      if (auto rcc = rcc8_label(a.bbox, b.bbox)) {
        out.push_back(make_fact(*rcc, a.id, b.id));
      }
      if (a.bbox.cx() < b.bbox.cx()) {
        out.push_back(make_fact(Relation::LEFT, a.id, b.id));
      } else if (a.bbox.cx() > b.bbox.cx()) {
        out.push_back(make_fact(Relation::RIGHT, a.id, b.id));
      }
      if (a.bbox.cy() > b.bbox.cy()) {
        out.push_back(make_fact(Relation::ABOVE, a.id, b.id));
      } else if (a.bbox.cy() < b.bbox.cy()) {
        out.push_back(make_fact(Relation::BELOW, a.id, b.id));
      }
      double dist = std::hypot(a.bbox.cx() - b.bbox.cx(),
                               a.bbox.cy() - b.bbox.cy());
      if (dist < config.near_threshold) {
        out.push_back(make_fact(Relation::NEAR, a.id, b.id));
      } else if (dist > config.far_threshold) {
        out.push_back(make_fact(Relation::FAR, a.id, b.id));
      }
    }
  }
  return out;
}

std::vector<Fact> assign_block_relations(const Scene& scene, Rng& rng,
                                         int retry_rounds) {
  if (scene.blocks.size() < 2) return {};
  const std::vector<Relation> labels = generator_relations().to_vector();
  for (int round = 0; round < retry_rounds; ++round) {
    std::vector<Fact> facts;
    for (std::size_t i = 0; i < scene.blocks.size(); ++i) {
      for (std::size_t j = i + 1; j < scene.blocks.size(); ++j) {
        Relation r = labels[rng.uniform_below(labels.size())];
        facts.push_back(make_fact(r, scene.blocks[i].id, scene.blocks[j].id));
      }
    }
    if (!check_consistency(FactBase(facts))) return facts;
  }
  throw Error("no consistent block relation assignment found");
}

std::vector<Fact> remap_depth(std::vector<Fact> facts, Rng& rng, double p) {
  if (!rng.bernoulli(p)) return facts;
  for (Fact& f : facts) {
    if (f.rel == Relation::LEFT) f.rel = Relation::BEHIND;
    if (f.rel == Relation::RIGHT) f.rel = Relation::FRONT;
  }
  return facts;
}

SceneGraph build_scene_graph(Scene& scene, const SceneConfig& config,
                             Rng& rng) {
  SceneGraph graph;
  for (const auto& o : scene.objects) graph.nodes.push_back(o.id);
  for (const auto& b : scene.blocks) graph.nodes.push_back(b.id);

  std::vector<Fact> intrinsic = compute_intrinsic_relations(scene, config);
  bool do_remap = rng.bernoulli(config.depth_remap_probability);
  // Block labels and the remap interact (a remapped LEFT between blocks
  // becomes BEHIND and can collide with a sampled FRONT), so consistency
  // is re-checked on the combined, remapped set.
  for (int round = 0; round < config.block_relation_retry_rounds; ++round) {
    std::vector<Fact> edges = intrinsic;
    std::vector<Fact> block_facts =
        assign_block_relations(scene, rng, config.block_relation_retry_rounds);
    edges.insert(edges.end(), block_facts.begin(), block_facts.end());
    if (do_remap) edges = remap_depth(std::move(edges), rng, 1.0);
    if (!check_consistency(FactBase(edges))) {
      scene.depth_remap_applied = do_remap;
      graph.edges = std::move(edges);
      return graph;
    }
  }
  throw Error("no consistent scene graph found");
}

bool geometry_supports(Relation r, const BBox& a, const BBox& b,
                       const SceneConfig& config, bool depth_remapped) {
  // Map the relation back onto geometry. After a depth remap the former
  // x-axis reads as depth: BEHIND/FRONT take over LEFT/RIGHT and no
  // LEFT/RIGHT fact may exist at all.
  switch (r) {
    case Relation::LEFT:
      return !depth_remapped && a.cx() < b.cx();
    case Relation::RIGHT:
      return !depth_remapped && a.cx() > b.cx();
    case Relation::BEHIND:
      return depth_remapped && a.cx() < b.cx();
    case Relation::FRONT:
      return depth_remapped && a.cx() > b.cx();
    case Relation::ABOVE:
      return a.cy() > b.cy();
    case Relation::BELOW:
      return a.cy() < b.cy();
    case Relation::NEAR:
      return std::hypot(a.cx() - b.cx(), a.cy() - b.cy()) <
             config.near_threshold;
    case Relation::FAR:
      return std::hypot(a.cx() - b.cx(), a.cy() - b.cy()) >
             config.far_threshold;
    case Relation::DC:
      return !interiors_overlap(a, b) && !boxes_touch(a, b);
    case Relation::EC:
      return boxes_touch(a, b);
    case Relation::PO:
      return interiors_overlap(a, b) && !inside(a, b) && !inside(b, a);
    case Relation::TPP:
      return inside(a, b) && !strictly_inside(a, b) && !(a == b);
    case Relation::NTPP:
      return strictly_inside(a, b);
    case Relation::TPPI:
      return inside(b, a) && !strictly_inside(b, a) && !(a == b);
    case Relation::NTPPI:
      return strictly_inside(b, a);
    case Relation::EQ:
      return a == b;
  }
  return false;
}

}  // namespace sqa
