#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "sqa/dataset.hpp"
#include "sqa/error.hpp"
#include "sqa/generator.hpp"

using namespace sqa;

namespace {

GeneratorConfig small_config() {
  GeneratorConfig config;
  config.seed = 7;
  config.train_count = 20;
  config.dev_count = 5;
  config.test_count = 5;
  return config;
}

long long count_questions(const GenerationResult& result,
                          const std::string& split, QuestionType type) {
  long long n = 0;
  auto it = result.splits.find(split);
  if (it == result.splits.end()) return 0;
  for (const auto& r : it->second) {
    for (const auto& q : r.questions) n += q.qtype == type ? 1 : 0;
  }
  return n;
}

}  // namespace

TEST_CASE("yn-only quotas are met exactly") {
  GeneratorConfig config;
  config.seed = 3;
  config.train_count = 100;
  config.dev_count = 10;
  config.test_count = 10;
  config.mix = QuestionMix::YN;
  GenerationResult result = run_generation(config);
  CHECK(count_questions(result, "train", QuestionType::YN) == 100);
  CHECK(count_questions(result, "dev", QuestionType::YN) == 10);
  CHECK(count_questions(result, "test", QuestionType::YN) == 10);
  CHECK(count_questions(result, "train", QuestionType::FR) == 0);
  CHECK(result.notes.empty());
}

TEST_CASE("mixed quotas are met per question type") {
  GenerationResult result = run_generation(small_config());
  for (const std::string split : {"train", "dev", "test"}) {
    long long want = split == "train" ? 20 : 5;
    CHECK(count_questions(result, split, QuestionType::YN) == want);
    CHECK(count_questions(result, split, QuestionType::FR) == want);
  }
}

TEST_CASE("generation is deterministic") {
  GenerationResult a = run_generation(small_config());
  GenerationResult b = run_generation(small_config());
  for (const std::string split : {"train", "dev", "test"}) {
    const auto& ra = a.splits.at(split);
    const auto& rb = b.splits.at(split);
    REQUIRE(ra.size() == rb.size());
    for (std::size_t i = 0; i < ra.size(); ++i) {
      CHECK(record_to_json_line(ra[i]) == record_to_json_line(rb[i]));
    }
  }
}

TEST_CASE("threaded generation matches single-threaded output") {
  GeneratorConfig config = small_config();
  GenerationResult a = run_generation(config);
  config.threads = 4;
  GenerationResult b = run_generation(config);
  for (const std::string split : {"train", "dev", "test"}) {
    const auto& ra = a.splits.at(split);
    const auto& rb = b.splits.at(split);
    REQUIRE(ra.size() == rb.size());
    for (std::size_t i = 0; i < ra.size(); ++i) {
      CHECK(record_to_json_line(ra[i]) == record_to_json_line(rb[i]));
    }
  }
}

TEST_CASE("no story leaks across splits") {
  GenerationResult result = run_generation(small_config());
  std::set<std::uint64_t> seen;
  for (const auto& [split, records] : result.splits) {
    for (const auto& r : records) {
      CHECK(seen.insert(r.scene_seed).second);
      CHECK(r.split == split);
    }
  }
}

TEST_CASE("every generated record validates clean end to end") {
  GenerationResult result = run_generation(small_config());
  const Lexicon& lex = Lexicon::builtin(LexiconVariant::Full);
  for (const auto& [split, records] : result.splits) {
    for (const auto& r : records) {
      auto violations = validate_record(r, &lex);
      if (!violations.empty()) {
        CAPTURE(r.id);
        CAPTURE(violations[0]);
      }
      CHECK(violations.empty());
    }
  }
}

TEST_CASE("simple variant corpora validate against the simple lexicon") {
  GeneratorConfig config = small_config();
  config.train_count = 8;
  config.dev_count = 2;
  config.test_count = 2;
  config.variant = LexiconVariant::Simple;
  GenerationResult result = run_generation(config);
  const Lexicon& lex = Lexicon::builtin(LexiconVariant::Simple);
  for (const auto& [split, records] : result.splits) {
    for (const auto& r : records) {
      CHECK(validate_record(r, &lex).empty());
    }
  }
}

TEST_CASE("yes-rate targeting lands within two points") {
  GeneratorConfig config;
  config.seed = 11;
  config.train_count = 150;
  config.dev_count = 0;
  config.test_count = 0;
  config.mix = QuestionMix::YN;
  config.yes_rate_target = 0.5;
  GenerationResult result = run_generation(config);
  long long yes = 0, yn = 0;
  for (const auto& r : result.splits.at("train")) {
    for (const auto& q : r.questions) {
      if (q.qtype == QuestionType::YN) {
        ++yn;
        yes += q.answer[0] == "Yes" ? 1 : 0;
      }
    }
  }
  REQUIRE(yn > 0);
  double rate = static_cast<double>(yes) / yn;
  CHECK(rate > 0.48);
  CHECK(rate < 0.52);
}

TEST_CASE("config files parse with overrides and reject junk") {
  GeneratorConfig config = config_from_json_text(R"({
    "seed": 42,
    "splits": {"train": 10, "dev": 2, "test": 2},
    "question_types": "fr",
    "lexicon": {"variant": "clock"},
    "depth_remap_probability": 0.5,
    "distractors": {"min": 1, "max": 3},
    "max_path_length": 4,
    "questions_per_story": {"min": 1, "max": 2},
    "scene": {"blocks": {"min": 2, "max": 2}}
  })");
  CHECK(config.seed == 42);
  CHECK(config.train_count == 10);
  CHECK(config.mix == QuestionMix::FR);
  CHECK(config.variant == LexiconVariant::Clock);
  CHECK(config.scene.depth_remap_probability == 0.5);
  CHECK(config.questions.max_path_length == 4);

  CHECK_THROWS_AS(config_from_json_text("{\"zzz\": 1}"), ConfigError);
  CHECK_THROWS_AS(config_from_json_text("not json"), ConfigError);
  CHECK_THROWS_AS(
      config_from_json_text("{\"depth_remap_probability\": 1.5}"),
      ConfigError);
}

TEST_CASE("records reproduce from their scene seed") {
  GeneratorConfig config = small_config();
  GenerationResult result = run_generation(config);
  const Lexicon lexicon = load_generator_lexicon(config);
  const DatasetRecord& sample = result.splits.at("train").front();
  auto again = generate_record(config, lexicon, sample.scene_seed);
  REQUIRE(again.has_value());
  CHECK(again->story == sample.story);
}
