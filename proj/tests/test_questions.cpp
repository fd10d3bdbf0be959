#include <doctest.h>

#include <set>

#include "sqa/questions.hpp"

using namespace sqa;

namespace {

// A scene whose graph reliably supports multi-hop paths.
struct Fixture {
  Scene scene;
  SceneGraph graph;
  SceneConfig config;

  explicit Fixture(std::uint64_t seed) {
    config.blocks = {2, 3};
    config.objects_per_block = {2, 3};
    Rng rng(seed);
    scene = sample_scene(config, rng);
    graph = build_scene_graph(scene, config, rng);
  }
};

}  // namespace

TEST_CASE("distractors stay off the path and preserve the inferred set") {
  for (int seed = 0; seed < 30; ++seed) {
    Fixture fx(seed);
    Rng rng(seed * 7 + 1);
    auto path = sample_max_valid_path(fx.graph, 5, 2, rng);
    if (!path) continue;
    path->inferred = validate_path(*path);
    auto extras = sample_distractors(fx.graph, *path, rng, 4);
    std::vector<Fact> story = path->edges;
    story.insert(story.end(), extras.begin(), extras.end());
    // Extras never create a new relation between the endpoints...
    CHECK(all_relations(FactBase(story), path->head, path->tail) ==
          path->inferred);
    // ...nor a shorter derivation of any inferred relation.
    for (Relation r : path->inferred.to_vector()) {
      auto support = minimal_support(FactBase(story),
                                     make_fact(r, path->head, path->tail));
      REQUIRE(support.has_value());
      CHECK(support->k == path->length());
    }
    // And they are disjoint from the path edges.
    for (const Fact& e : extras) {
      for (const Fact& p : path->edges) {
        CHECK(!(e == p));
      }
    }
  }
}

TEST_CASE("zero distractors requested yields an empty list") {
  Fixture fx(3);
  Rng rng(5);
  auto path = sample_max_valid_path(fx.graph, 5, 2, rng);
  REQUIRE(path.has_value());
  CHECK(sample_distractors(fx.graph, *path, rng, 0).empty());
}

TEST_CASE("story plans put every path fact into the story") {
  QuestionOptions options;
  for (int seed = 0; seed < 20; ++seed) {
    Fixture fx(seed + 100);
    Rng rng(seed);
    auto story = plan_story(fx.graph, rng, options);
    if (!story) continue;
    CHECK(story->path_length >= 2);
    CHECK(static_cast<int>(story->path_fact_ids.size()) == story->path_length);
    CHECK(story->facts.size() ==
          story->path_fact_ids.size() + story->extra_fact_ids.size());
    CHECK(!story->path_inferred.empty());
    // Path facts alone derive the inferred set.
    CHECK(all_relations(FactBase(story->path_facts()), story->path_head,
                        story->path_tail) == story->path_inferred);
  }
}

TEST_CASE("path questions carry the path as supporting facts") {
  QuestionOptions options;
  int yn_seen = 0, fr_seen = 0;
  for (int seed = 0; seed < 40 && (yn_seen < 5 || fr_seen < 5); ++seed) {
    Fixture fx(seed + 17);
    Rng rng(seed);
    auto story = plan_story(fx.graph, rng, options);
    if (!story) continue;
    for (QuestionType qtype : {QuestionType::YN, QuestionType::FR}) {
      auto spec = make_path_question(*story, fx.scene, qtype, rng, options);
      if (!spec) continue;
      (qtype == QuestionType::YN ? yn_seen : fr_seen) += 1;
      CHECK(spec->k == story->path_length);
      CHECK(spec->k >= 2);
      std::vector<int> sorted_path = story->path_fact_ids;
      std::sort(sorted_path.begin(), sorted_path.end());
      CHECK(spec->supporting == sorted_path);
      CHECK(spec->supporting.size() + spec->extras.size() ==
            story->facts.size());
      if (qtype == QuestionType::YN) {
        REQUIRE(spec->probe.has_value());
        // Gold recomputed from supporting facts alone matches.
        std::vector<Fact> support;
        for (int id : spec->supporting) support.push_back(story->facts[id]);
        Closure c = Closure::compute(FactBase(support));
        CHECK(eval_yn(c, spec->head_ids, spec->tail_ids, *spec->probe,
                      spec->quantifier) == spec->gold_yes);
      } else {
        CHECK(!spec->gold_relations.empty());
        for (Relation a : spec->gold_relations.to_vector()) {
          for (Relation b : spec->gold_relations.to_vector()) {
            CHECK(!exclusion_set(a).contains(b));
          }
        }
      }
    }
  }
  CHECK(yn_seen >= 5);
  CHECK(fr_seen >= 5);
}

TEST_CASE("extra questions ride a minimal support of at least two facts") {
  QuestionOptions options;
  int seen = 0;
  for (int seed = 0; seed < 60 && seen < 8; ++seed) {
    Fixture fx(seed + 51);
    Rng rng(seed);
    auto story = plan_story(fx.graph, rng, options);
    if (!story) continue;
    auto spec =
        make_extra_question(*story, fx.scene, QuestionType::YN, rng, options);
    if (!spec) continue;
    ++seen;
    CHECK(spec->k >= 2);
    CHECK(static_cast<int>(spec->supporting.size()) == spec->k);
    std::vector<Fact> support;
    for (int id : spec->supporting) support.push_back(story->facts[id]);
    Closure c = Closure::compute(FactBase(support));
    CHECK(eval_yn(c, spec->head_ids, spec->tail_ids, *spec->probe,
                  spec->quantifier) == spec->gold_yes);
  }
  CHECK(seen >= 8);
}

TEST_CASE("yn answers are balanced near the probe flip rate") {
  QuestionOptions options;
  options.quantifier_probability = 0.0;
  int yes = 0, total = 0;
  for (int seed = 0; seed < 1500 && total < 1000; ++seed) {
    Fixture fx(seed);
    Rng rng(seed + 31337);
    auto story = plan_story(fx.graph, rng, options);
    if (!story) continue;
    auto spec =
        make_path_question(*story, fx.scene, QuestionType::YN, rng, options);
    if (!spec) continue;
    ++total;
    yes += spec->gold_yes ? 1 : 0;
  }
  REQUIRE(total >= 1000);
  double rate = static_cast<double>(yes) / total;
  CHECK(rate > 0.44);
  CHECK(rate < 0.64);
}

TEST_CASE("compute_answer resolves descriptions against the story") {
  Fixture fx(4);
  QuestionOptions options;
  Rng rng(12);
  auto story = plan_story(fx.graph, rng, options);
  REQUIRE(story.has_value());
  auto spec =
      make_path_question(*story, fx.scene, QuestionType::YN, rng, options);
  REQUIRE(spec.has_value());
  Answer answer = compute_answer(story->fact_base(), *spec, fx.scene);
  CHECK(answer.yes == spec->gold_yes);

  QuestionSpec broken = *spec;
  broken.head_desc = ReferringExpression{};
  broken.head_desc.shape = "nonexistent-shape";
  CHECK_THROWS_AS(compute_answer(story->fact_base(), broken, fx.scene),
                  UnresolvableDescription);
}

TEST_CASE("quantified all questions are vacuously no without pairs") {
  FactBase base;
  base.add_fact(make_fact(Relation::LEFT, "x", "y"));
  Closure c = Closure::compute(base);
  CHECK(!eval_yn(c, {"y"}, {"y"}, Relation::LEFT, Quantifier::All));
  CHECK(eval_yn(c, {"x"}, {"y"}, Relation::LEFT, Quantifier::All));
  CHECK(!eval_yn(c, {"x", "y"}, {"y"}, Relation::LEFT, Quantifier::All));
  CHECK(eval_yn(c, {"x", "y"}, {"y"}, Relation::LEFT, Quantifier::Any));
  // Entities outside the base are simply not derivable.
  CHECK(!eval_yn(c, {"zzz"}, {"y"}, Relation::LEFT, Quantifier::Any));
}
