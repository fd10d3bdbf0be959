#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sqa/dataset.hpp"
#include "sqa/lexicon.hpp"
#include "sqa/questions.hpp"

namespace sqa {

enum class QuestionMix { YN, FR, Both };

std::string_view to_string(QuestionMix m);
std::optional<QuestionMix> question_mix_from_string(std::string_view);

struct GeneratorConfig {
  std::uint64_t seed = 7;
  // Questions per split and question type (paper-scale defaults; desk
  // runs override these).
  int train_count = 20000;
  int dev_count = 3000;
  int test_count = 3000;
  QuestionMix mix = QuestionMix::Both;
  LexiconVariant variant = LexiconVariant::Full;
  std::optional<std::string> lexicon_path;  // overrides the variant
  SceneConfig scene;
  QuestionOptions questions;
  IntRange questions_per_story{1, 3};
  StoryTextOptions text;
  std::optional<double> yes_rate_target;
  int threads = 1;

  void validate() const;  // throws ConfigError
};

// JSON config file; unknown keys are rejected. Flag overrides are the
// CLI's business.
GeneratorConfig config_from_json_text(const std::string& text);
GeneratorConfig config_from_json_file(const std::string& path);

Lexicon load_generator_lexicon(const GeneratorConfig& config);

// One scene end to end: sample, close, select, realize. The record
// carries no id/split yet. nullopt when the scene yields no valid
// multi-hop question.
std::optional<DatasetRecord> generate_record(const GeneratorConfig& config,
                                             const Lexicon& lexicon,
                                             std::uint64_t scene_index);

struct GenerationResult {
  std::map<std::string, std::vector<DatasetRecord>> splits;
  StatsReport stats;
  std::vector<std::string> notes;  // shortfalls, rebalance outcome
};

GenerationResult run_generation(const GeneratorConfig& config);

}  // namespace sqa
