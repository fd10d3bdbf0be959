#include <doctest.h>

#include <set>

#include "sqa/textgen.hpp"

using namespace sqa;

namespace {

Scene demo_scene() {
  Scene s;
  s.blocks.push_back(Block{"b1", "A"});
  s.blocks.push_back(Block{"b2", "B"});
  s.objects.push_back(
      ObjectEntity{"o1", "circle", "black", "big", {0.1, 0.1, 0.3, 0.3}, "b1"});
  s.objects.push_back(ObjectEntity{
      "o2", "rectangle", "black", "small", {0.5, 0.5, 0.6, 0.6}, "b1"});
  s.objects.push_back(
      ObjectEntity{"o3", "circle", "white", "big", {0.2, 0.2, 0.4, 0.4}, "b2"});
  return s;
}

void check_span(const std::string& text, const Span& span) {
  REQUIRE(span.present());
  REQUIRE(span.start >= 0);
  REQUIRE(span.end <= static_cast<int>(text.size()));
  CHECK(text.substr(span.start, span.end - span.start) == span.text);
}

}  // namespace

TEST_CASE("ambiguous color description denotes several entities") {
  Scene s = demo_scene();
  Rng rng(5);
  // Force the color-only subset by retrying until we see it.
  bool saw_multi = false;
  for (int i = 0; i < 64 && !saw_multi; ++i) {
    auto e = describe_entity("o1", s, DescribeMode::Ambiguous, rng);
    REQUIRE(e.has_value());
    if (e->color && !e->shape && !e->size) {
      CHECK(e->targets == std::vector<EntityId>{"o1", "o2"});
      CHECK(e->base() == "black object");
      saw_multi = true;
    }
  }
  CHECK(saw_multi);
}

TEST_CASE("unique descriptions always denote exactly their entity") {
  SceneConfig config;
  for (int seed = 0; seed < 300; ++seed) {
    Rng rng(seed);
    Scene s = sample_scene(config, rng);
    for (const auto& obj : s.objects) {
      auto e = describe_entity(obj.id, s, DescribeMode::Unique, rng);
      REQUIRE(e.has_value());
      CHECK(e->targets == std::vector<EntityId>{obj.id});
      auto resolved = resolve(*e, s, [&] {
        std::vector<EntityId> ids;
        for (const auto& o : s.objects) ids.push_back(o.id);
        for (const auto& b : s.blocks) ids.push_back(b.id);
        return ids;
      }());
      CHECK(resolved == std::vector<EntityId>{obj.id});
    }
  }
}

TEST_CASE("sole entity accepts any nonempty subset") {
  Scene s;
  s.blocks.push_back(Block{"b1", "A"});
  s.objects.push_back(
      ObjectEntity{"o1", "star", "red", "small", {0.1, 0.1, 0.2, 0.2}, "b1"});
  Rng rng(3);
  auto e = describe_entity("o1", s, DescribeMode::Unique, rng);
  REQUIRE(e.has_value());
  CHECK(e->targets == std::vector<EntityId>{"o1"});
}

TEST_CASE("story realization covers every fact once with valid spans") {
  Scene s = demo_scene();
  std::vector<Fact> facts = {
      make_fact(Relation::NTPP, "o1", "b1"),
      make_fact(Relation::LEFT, "o1", "o2"),
      make_fact(Relation::LEFT, "b1", "b2"),
      make_fact(Relation::NTPP, "o3", "b2"),
      make_fact(Relation::NEAR, "o1", "o2"),
  };
  const Lexicon& lex = Lexicon::builtin(LexiconVariant::Full);
  Rng rng(11);
  auto sentences = realize_story(facts, s, lex, rng);

  std::set<int> fact_ids;
  for (const auto& sentence : sentences) {
    CHECK(!sentence.text.empty());
    CHECK(sentence.text.back() == '.');
    for (const auto& t : sentence.triplets) {
      CHECK(fact_ids.insert(t.fact_id).second);
      check_span(sentence.text, t.trajector);
      check_span(sentence.text, t.landmark);
      check_span(sentence.text, t.indicator);
      CHECK(lex.knows_indicator(t.relation, t.indicator.text));
      // Trajector always receives the fact's head entity.
      CHECK(t.head == facts[t.fact_id].head);
      CHECK(t.tail == facts[t.fact_id].tail);
    }
  }
  CHECK(fact_ids.size() == facts.size());
}

TEST_CASE("story spans round trip to the originating triplet") {
  SceneConfig config;
  const Lexicon& lex = Lexicon::builtin(LexiconVariant::Full);
  for (int seed = 0; seed < 100; ++seed) {
    Rng rng(seed + 777);
    Scene s = sample_scene(config, rng);
    SceneGraph g = build_scene_graph(s, config, rng);
    if (g.edges.empty()) continue;
    std::vector<Fact> facts = g.edges;
    if (facts.size() > 8) facts.resize(8);
    auto sentences = realize_story(facts, s, lex, rng);
    for (const auto& sentence : sentences) {
      for (const auto& t : sentence.triplets) {
        check_span(sentence.text, t.trajector);
        check_span(sentence.text, t.landmark);
        check_span(sentence.text, t.indicator);
        CHECK(t.relation == facts[t.fact_id].rel);
        CHECK(lex.knows_indicator(t.relation, t.indicator.text));
      }
    }
  }
}

TEST_CASE("two-fact sentences conjoin clauses") {
  Scene s = demo_scene();
  std::vector<Fact> facts = {make_fact(Relation::LEFT, "o1", "o2"),
                             make_fact(Relation::NTPP, "o1", "b1")};
  StoryTextOptions options;
  options.pair_probability = 1.0;
  const Lexicon& lex = Lexicon::builtin(LexiconVariant::Simple);
  Rng rng(2);
  auto sentences = realize_story(facts, s, lex, rng, options);
  REQUIRE(sentences.size() == 1);
  CHECK(sentences[0].triplets.size() == 2);
  CHECK(sentences[0].text.find(" and ") != std::string::npos);
  for (const auto& t : sentences[0].triplets) {
    check_span(sentences[0].text, t.trajector);
    check_span(sentences[0].text, t.indicator);
  }
}

TEST_CASE("yn question with any-quantifier contains the word any") {
  Scene s = demo_scene();
  ReferringExpression head;
  head.color = "black";
  head.targets = {"o1", "o2"};
  ReferringExpression tail;
  tail.shape = "circle";
  tail.color = "white";
  tail.targets = {"o3"};
  Rng rng(8);
  auto q = realize_yn_question(head, tail, Relation::LEFT, Quantifier::Any,
                               Lexicon::builtin(LexiconVariant::Simple), rng);
  CHECK(q.text.find("any") != std::string::npos);
  CHECK(q.text.back() == '?');
  check_span(q.text, q.trajector);
  check_span(q.text, q.landmark);
  check_span(q.text, q.indicator);
  CHECK(q.indicator.text == "to the left of");
}

TEST_CASE("yn question with all-quantifier pluralizes the subject") {
  ReferringExpression head;
  head.color = "black";
  ReferringExpression tail;
  tail.shape = "circle";
  tail.color = "white";
  Rng rng(8);
  auto q = realize_yn_question(head, tail, Relation::LEFT, Quantifier::All,
                               Lexicon::builtin(LexiconVariant::Simple), rng);
  CHECK(q.text.find("all black objects") != std::string::npos);
  CHECK(q.text.rfind("Are ", 0) == 0);
}

TEST_CASE("verbal wordings take do-support in questions") {
  ReferringExpression head;
  head.is_block = true;
  head.block_label = "A";
  ReferringExpression tail;
  tail.shape = "circle";
  // Force the "covers" wording by using a lexicon slice with only it.
  Lexicon lex = Lexicon::load(R"(lexicon probe
relation tppi
  expr "{tr} covers {lm}" indicator "covers"
relation dc
  expr "{tr} is disjoint from {lm}" indicator "disjoint from"
relation ec
  expr "{tr} is touching {lm}" indicator "touching"
relation po
  expr "{tr} is overlapping {lm}" indicator "overlapping"
relation tpp
  expr "{tr} is covered by {lm}" indicator "covered by"
relation ntpp
  expr "{tr} is inside {lm}" indicator "inside"
relation ntppi
  expr "{tr} has {lm}" indicator "has"
relation left
  expr "{tr} is to the left of {lm}" indicator "to the left of"
relation right
  expr "{tr} is to the right of {lm}" indicator "to the right of"
relation above
  expr "{tr} is over {lm}" indicator "over"
relation below
  expr "{tr} is under {lm}" indicator "under"
relation front
  expr "{tr} is in front of {lm}" indicator "in front of"
relation behind
  expr "{tr} is behind {lm}" indicator "behind"
relation near
  expr "{tr} is close to {lm}" indicator "close to"
relation far
  expr "{tr} is far from {lm}" indicator "far from"
shapes circle square
colors black white
sizes small big
)");
  Rng rng(4);
  auto q = realize_yn_question(head, tail, Relation::TPPI, Quantifier::None,
                               lex, rng);
  CHECK(q.text.rfind("Does block A cover", 0) == 0);
  check_span(q.text, q.indicator);
  CHECK(q.indicator.text == "cover");
  CHECK(lex.knows_indicator(Relation::TPPI, q.indicator.text));
}

TEST_CASE("fr questions carry no relation wording") {
  ReferringExpression head;
  head.shape = "circle";
  head.color = "black";
  ReferringExpression tail;
  tail.is_block = true;
  tail.block_label = "B";
  auto q = realize_fr_question(head, tail);
  CHECK(q.text == "Where is the black circle relative to block B?");
  CHECK(!q.indicator.present());
  check_span(q.text, q.trajector);
  check_span(q.text, q.landmark);
}
