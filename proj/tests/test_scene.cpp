#include <doctest.h>

#include <set>

#include "sqa/reasoner.hpp"
#include "sqa/scene.hpp"

using namespace sqa;

namespace {

Scene two_object_scene(BBox a, BBox b) {
  Scene s;
  s.blocks.push_back(Block{"b1", "A"});
  s.objects.push_back(ObjectEntity{"o1", "circle", "black", "big", a, "b1"});
  s.objects.push_back(ObjectEntity{"o2", "square", "white", "small", b, "b1"});
  return s;
}

bool has_fact(const std::vector<Fact>& facts, Relation r, const EntityId& h,
              const EntityId& t) {
  for (const Fact& f : facts) {
    if (f.rel == r && f.head == h && f.tail == t && !f.negated) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("sampling is deterministic given config and seed") {
  SceneConfig config;
  Rng r1(7), r2(7);
  Scene a = sample_scene(config, r1);
  Scene b = sample_scene(config, r2);
  CHECK(a == b);
}

TEST_CASE("scene entity counts follow the config") {
  SceneConfig config;
  config.blocks = {1, 1};
  config.objects_per_block = {2, 2};
  Rng rng(3);
  Scene s = sample_scene(config, rng);
  CHECK(s.blocks.size() == 1);
  CHECK(s.objects.size() == 2);
}

TEST_CASE("sampled object boxes stay inside their block") {
  SceneConfig config;
  int objects_seen = 0;
  for (int seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    Scene s = sample_scene(config, rng);
    for (const auto& o : s.objects) {
      ++objects_seen;
      CHECK(o.bbox.x0 >= 0.0);
      CHECK(o.bbox.y0 >= 0.0);
      CHECK(o.bbox.x1 <= 1.0);
      CHECK(o.bbox.y1 <= 1.0);
      CHECK(o.bbox.x0 < o.bbox.x1);
    }
    // No two object interiors in a block may overlap.
    for (const auto& a : s.objects) {
      for (const auto& b : s.objects) {
        if (a.id == b.id || a.block_id != b.block_id) continue;
        bool overlap = a.bbox.x0 < b.bbox.x1 && b.bbox.x0 < a.bbox.x1 &&
                       a.bbox.y0 < b.bbox.y1 && b.bbox.y0 < a.bbox.y1;
        CHECK(!overlap);
      }
    }
  }
  CHECK(objects_seen > 1000);
}

TEST_CASE("intrinsic relations for disjoint side-by-side boxes") {
  Scene s = two_object_scene({0, 0, 2, 2}, {3, 0, 5, 2});
  auto facts = compute_intrinsic_relations(s, SceneConfig{});
  CHECK(has_fact(facts, Relation::DC, "o1", "o2"));
  CHECK(has_fact(facts, Relation::LEFT, "o1", "o2"));
  CHECK(has_fact(facts, Relation::NTPP, "o1", "b1"));
  CHECK(has_fact(facts, Relation::NTPP, "o2", "b1"));
}

TEST_CASE("intrinsic relations for touching boxes") {
  Scene s = two_object_scene({0, 0, 2, 2}, {2, 0, 4, 2});
  auto facts = compute_intrinsic_relations(s, SceneConfig{});
  CHECK(has_fact(facts, Relation::EC, "o1", "o2"));
}

TEST_CASE("intrinsic relations for nested boxes") {
  Scene s = two_object_scene({0, 0, 4, 4}, {1, 1, 2, 2});
  auto facts = compute_intrinsic_relations(s, SceneConfig{});
  CHECK(has_fact(facts, Relation::NTPPI, "o1", "o2"));
  // Directional facts come from centers, which differ even for nested boxes.
  CHECK(has_fact(facts, Relation::RIGHT, "o1", "o2"));
  CHECK(has_fact(facts, Relation::ABOVE, "o1", "o2"));
  // Same-center nesting yields no directional fact at all.
  Scene centered = two_object_scene({0, 0, 4, 4}, {1.5, 1.5, 2.5, 2.5});
  auto cf = compute_intrinsic_relations(centered, SceneConfig{});
  CHECK(has_fact(cf, Relation::NTPPI, "o1", "o2"));
  CHECK(!has_fact(cf, Relation::LEFT, "o1", "o2"));
  CHECK(!has_fact(cf, Relation::RIGHT, "o1", "o2"));
  CHECK(!has_fact(cf, Relation::ABOVE, "o1", "o2"));
  CHECK(!has_fact(cf, Relation::BELOW, "o1", "o2"));
}

TEST_CASE("intrinsic facts never contain an exclusion pair") {
  SceneConfig config;
  for (int seed = 0; seed < 200; ++seed) {
    Rng rng(seed + 5000);
    Scene s = sample_scene(config, rng);
    auto facts = compute_intrinsic_relations(s, config);
    for (const Fact& a : facts) {
      for (const Fact& b : facts) {
        if (a.head == b.head && a.tail == b.tail && !(a == b)) {
          CHECK(!exclusion_set(a.rel).contains(b.rel));
        }
      }
    }
  }
}

TEST_CASE("single block yields no block relations") {
  SceneConfig config;
  config.blocks = {1, 1};
  Rng rng(1);
  Scene s = sample_scene(config, rng);
  CHECK(assign_block_relations(s, rng).empty());
}

TEST_CASE("block relation closure is contradiction-free and never EQ") {
  SceneConfig config;
  config.blocks = {3, 3};
  long long pairs = 0;
  for (int seed = 0; seed < 3400; ++seed) {
    Rng rng(seed);
    Scene s = sample_scene(config, rng);
    auto facts = assign_block_relations(s, rng);
    CHECK(facts.size() == 3);
    if (seed < 100) CHECK(!check_consistency(FactBase(facts)));
    for (const Fact& f : facts) {
      ++pairs;
      CHECK(f.rel != Relation::EQ);
    }
  }
  CHECK(pairs > 10000);
}

TEST_CASE("depth remap rewrites the whole list or nothing") {
  std::vector<Fact> facts = {make_fact(Relation::LEFT, "a", "b"),
                             make_fact(Relation::RIGHT, "c", "d"),
                             make_fact(Relation::DC, "a", "b")};
  Rng rng(1);
  auto same = remap_depth(facts, rng, 0.0);
  CHECK(same == facts);
  auto flipped = remap_depth(facts, rng, 1.0);
  CHECK(flipped[0] == make_fact(Relation::BEHIND, "a", "b"));
  CHECK(flipped[1] == make_fact(Relation::FRONT, "c", "d"));
  CHECK(flipped[2] == make_fact(Relation::DC, "a", "b"));
}

TEST_CASE("scene graphs close without contradiction") {
  SceneConfig config;
  for (int seed = 0; seed < 100; ++seed) {
    Rng rng(seed + 99);
    Scene s = sample_scene(config, rng);
    SceneGraph g = build_scene_graph(s, config, rng);
    CHECK(!check_consistency(FactBase(g.edges)));
    for (const Fact& f : g.edges) CHECK(f.rel != Relation::EQ);
    CHECK(g.nodes.size() == s.blocks.size() + s.objects.size());
  }
}

TEST_CASE("remapped scenes carry no LEFT or RIGHT facts") {
  SceneConfig config;
  config.depth_remap_probability = 1.0;
  Rng rng(123);
  Scene s = sample_scene(config, rng);
  SceneGraph g = build_scene_graph(s, config, rng);
  CHECK(s.depth_remap_applied);
  for (const Fact& f : g.edges) {
    CHECK(f.rel != Relation::LEFT);
    CHECK(f.rel != Relation::RIGHT);
  }
}

TEST_CASE("derived same-block facts are geometrically sound") {
  SceneConfig config;
  for (int seed = 0; seed < 50; ++seed) {
    Rng rng(seed * 31 + 1);
    Scene s = sample_scene(config, rng);
    SceneGraph g = build_scene_graph(s, config, rng);
    Closure c = Closure::compute(FactBase(g.edges));
    for (const Fact& f : c.facts()) {
      if (f.negated) continue;
      const ObjectEntity* a = s.find_object(f.head);
      const ObjectEntity* b = s.find_object(f.tail);
      if (!a || !b || a->block_id != b->block_id) continue;
      CHECK(geometry_supports(f.rel, a->bbox, b->bbox, config,
                              s.depth_remap_applied));
    }
  }
}
