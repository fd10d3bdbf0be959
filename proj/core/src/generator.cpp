#include "sqa/generator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sqa/error.hpp"

namespace sqa {

using nlohmann::json;

std::string_view to_string(QuestionMix m) {
  switch (m) {
    case QuestionMix::YN: return "yn";
    case QuestionMix::FR: return "fr";
    case QuestionMix::Both: return "both";
  }
  return "?";
}

std::optional<QuestionMix> question_mix_from_string(std::string_view s) {
  if (s == "yn") return QuestionMix::YN;
  if (s == "fr") return QuestionMix::FR;
  if (s == "both") return QuestionMix::Both;
  return std::nullopt;
}

void GeneratorConfig::validate() const {
  if (train_count < 0 || dev_count < 0 || test_count < 0) {
    throw ConfigError("split counts must be non-negative");
  }
  auto check_prob = [](double p, const char* what) {
    if (p < 0.0 || p > 1.0) {
      throw ConfigError(std::string(what) + " must lie in [0, 1]");
    }
  };
  check_prob(scene.depth_remap_probability, "depth_remap_probability");
  check_prob(scene.touch_probability, "touch_probability");
  check_prob(questions.quantifier_probability, "quantifier_probability");
  check_prob(questions.no_probe_probability, "no_probe_probability");
  check_prob(text.pair_probability, "pair_probability");
  if (yes_rate_target && (*yes_rate_target <= 0.0 || *yes_rate_target >= 1.0)) {
    throw ConfigError("yes_rate_target must lie strictly between 0 and 1");
  }
  if (questions.max_path_length < 2) {
    throw ConfigError("max_path_length must be at least 2");
  }
  if (questions_per_story.min < 1 ||
      questions_per_story.max < questions_per_story.min) {
    throw ConfigError("questions_per_story range is invalid");
  }
  if (questions.distractors.min < 0 ||
      questions.distractors.max < questions.distractors.min) {
    throw ConfigError("distractor range is invalid");
  }
  if (scene.blocks.min < 1 || scene.blocks.max < scene.blocks.min ||
      scene.objects_per_block.min < 1 ||
      scene.objects_per_block.max < scene.objects_per_block.min) {
    throw ConfigError("scene ranges are invalid");
  }
  if (threads < 1) throw ConfigError("threads must be at least 1");
  if (lexicon_path) {
    std::ifstream probe(*lexicon_path);
    if (!probe) throw ConfigError("lexicon file not found: " + *lexicon_path);
  }
}

namespace {

IntRange range_from_json(const json& j, const char* what) {
  if (!j.is_object() || !j.contains("min") || !j.contains("max")) {
    throw ConfigError(std::string(what) + " needs {\"min\": .., \"max\": ..}");
  }
  return IntRange{j.at("min").get<int>(), j.at("max").get<int>()};
}

}  // namespace

GeneratorConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  GeneratorConfig config;
  static const std::set<std::string> known = {
      "seed",          "splits",           "question_types",
      "lexicon",       "scene",            "depth_remap_probability",
      "distractors",   "max_path_length",  "questions_per_story",
      "yes_rate_target", "quantifier_probability", "pair_sentence_probability",
      "threads"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ConfigError("unknown config key: " + key);
  }
  if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("splits")) {
    const json& s = j.at("splits");
    if (s.contains("train")) config.train_count = s.at("train").get<int>();
    if (s.contains("dev")) config.dev_count = s.at("dev").get<int>();
    if (s.contains("test")) config.test_count = s.at("test").get<int>();
  }
  if (j.contains("question_types")) {
    auto mix = question_mix_from_string(j.at("question_types").get<std::string>());
    if (!mix) throw ConfigError("question_types must be yn, fr, or both");
    config.mix = *mix;
  }
  if (j.contains("lexicon")) {
    const json& lex = j.at("lexicon");
    if (lex.contains("path")) {
      config.lexicon_path = lex.at("path").get<std::string>();
    } else if (lex.contains("variant")) {
      auto v = lexicon_variant_from_string(lex.at("variant").get<std::string>());
      if (!v) throw ConfigError("lexicon variant must be simple, full, or clock");
      config.variant = *v;
    }
  }
  if (j.contains("scene")) {
    const json& s = j.at("scene");
    if (s.contains("blocks")) {
      config.scene.blocks = range_from_json(s.at("blocks"), "scene.blocks");
    }
    if (s.contains("objects_per_block")) {
      config.scene.objects_per_block =
          range_from_json(s.at("objects_per_block"), "scene.objects_per_block");
    }
    if (s.contains("near_threshold")) {
      config.scene.near_threshold = s.at("near_threshold").get<double>();
    }
    if (s.contains("far_threshold")) {
      config.scene.far_threshold = s.at("far_threshold").get<double>();
    }
    if (s.contains("touch_probability")) {
      config.scene.touch_probability = s.at("touch_probability").get<double>();
    }
  }
  if (j.contains("depth_remap_probability")) {
    config.scene.depth_remap_probability =
        j.at("depth_remap_probability").get<double>();
  }
  if (j.contains("distractors")) {
    config.questions.distractors =
        range_from_json(j.at("distractors"), "distractors");
  }
  if (j.contains("max_path_length")) {
    config.questions.max_path_length = j.at("max_path_length").get<int>();
  }
  if (j.contains("questions_per_story")) {
    config.questions_per_story =
        range_from_json(j.at("questions_per_story"), "questions_per_story");
  }
  if (j.contains("yes_rate_target") && !j.at("yes_rate_target").is_null()) {
    config.yes_rate_target = j.at("yes_rate_target").get<double>();
  }
  if (j.contains("quantifier_probability")) {
    config.questions.quantifier_probability =
        j.at("quantifier_probability").get<double>();
  }
  if (j.contains("pair_sentence_probability")) {
    config.text.pair_probability =
        j.at("pair_sentence_probability").get<double>();
  }
  if (j.contains("threads")) config.threads = j.at("threads").get<int>();
  config.validate();
  return config;
}

GeneratorConfig config_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json_text(buf.str());
}

Lexicon load_generator_lexicon(const GeneratorConfig& config) {
  if (config.lexicon_path) return Lexicon::load_file(*config.lexicon_path);
  return Lexicon::builtin(config.variant);
}

namespace {

std::vector<std::string> answer_strings(const QuestionSpec& spec) {
  if (spec.qtype == QuestionType::YN) {
    return {spec.gold_yes ? "Yes" : "No"};
  }
  std::vector<std::string> out;
  for (Relation r : spec.gold_relations.to_vector()) {
    out.emplace_back(to_string(r));
  }
  return out;
}

QuestionRecord build_question_record(const QuestionSpec& spec,
                                     const std::vector<SentenceRecord>& sentences,
                                     const Lexicon& lexicon, Rng& rng) {
  QuestionRealization realized =
      spec.qtype == QuestionType::YN
          ? realize_yn_question(spec.head_desc, spec.tail_desc, *spec.probe,
                                spec.quantifier, lexicon, rng)
          : realize_fr_question(spec.head_desc, spec.tail_desc);
  QuestionRecord q;
  q.text = realized.text;
  q.qtype = spec.qtype;
  q.quantifier = spec.quantifier;
  q.probe = spec.probe;
  q.candidate_answers = spec.qtype == QuestionType::YN
                            ? yn_candidate_answers()
                            : fr_candidate_answers();
  q.answer = answer_strings(spec);
  q.k = spec.k;
  q.supporting_facts = spec.supporting;
  q.extra_facts = spec.extras;
  q.head_ids = spec.head_ids;
  q.tail_ids = spec.tail_ids;
  q.trajector = realized.trajector;
  q.landmark = realized.landmark;
  q.indicator = realized.indicator;

  std::set<int> support(spec.supporting.begin(), spec.supporting.end());
  for (std::size_t si = 0; si < sentences.size(); ++si) {
    for (const TripletAnnotation& t : sentences[si].triplets) {
      if (support.count(t.fact_id)) {
        q.supporting_sentences.push_back(static_cast<int>(si));
        break;
      }
    }
  }
  return q;
}

QuestionType pick_type(QuestionMix mix, Rng& rng) {
  switch (mix) {
    case QuestionMix::YN: return QuestionType::YN;
    case QuestionMix::FR: return QuestionType::FR;
    case QuestionMix::Both:
      return rng.bernoulli(0.5) ? QuestionType::YN : QuestionType::FR;
  }
  return QuestionType::YN;
}

}  // namespace

std::optional<DatasetRecord> generate_record(const GeneratorConfig& config,
                                             const Lexicon& lexicon,
                                             std::uint64_t scene_index) {
  Rng rng(config.seed, scene_index + 1);
  SceneConfig scene_config = config.scene;
  scene_config.vocab = lexicon.vocab();

  Scene scene = sample_scene(scene_config, rng);
  SceneGraph graph;
  try {
    graph = build_scene_graph(scene, scene_config, rng);
  } catch (const Error&) {
    return std::nullopt;
  }
  auto story = plan_story(graph, rng, config.questions);
  if (!story) return std::nullopt;

  int want = rng.uniform_int(config.questions_per_story.min,
                             config.questions_per_story.max);
  std::vector<QuestionSpec> specs;
  std::set<std::tuple<EntityId, EntityId, QuestionType>> used;
  for (int qi = 0; qi < want; ++qi) {
    QuestionType qtype = pick_type(config.mix, rng);
    auto spec = qi == 0 ? make_path_question(*story, scene, qtype, rng,
                                             config.questions)
                        : make_extra_question(*story, scene, qtype, rng,
                                              config.questions);
    if (!spec) continue;
    auto key = std::make_tuple(spec->head, spec->tail, spec->qtype);
    if (!used.insert(key).second) continue;
    specs.push_back(std::move(*spec));
  }
  if (specs.empty()) return std::nullopt;

  std::vector<AnnotatedSentence> sentences =
      realize_story(story->facts, scene, lexicon, rng, config.text);

  DatasetRecord record;
  record.scene_seed = scene_index;
  for (const AnnotatedSentence& s : sentences) {
    SentenceRecord sr;
    sr.text = s.text;
    sr.story_start = static_cast<int>(record.story.size() +
                                      (record.story.empty() ? 0 : 1));
    if (!record.story.empty()) record.story += " ";
    record.story += s.text;
    sr.story_end = static_cast<int>(record.story.size());
    sr.triplets = s.triplets;
    record.sentences.push_back(std::move(sr));
  }
  for (const QuestionSpec& spec : specs) {
    record.questions.push_back(
        build_question_record(spec, record.sentences, lexicon, rng));
  }
  return record;
}

namespace {

struct Quota {
  long long yn = 0;
  long long fr = 0;
  long long total() const { return yn + fr; }
};

void trim_record_to_quota(DatasetRecord& record, Quota& quota) {
  std::vector<QuestionRecord> kept;
  for (QuestionRecord& q : record.questions) {
    long long& remaining = q.qtype == QuestionType::YN ? quota.yn : quota.fr;
    if (remaining > 0) {
      --remaining;
      kept.push_back(std::move(q));
    }
  }
  record.questions = std::move(kept);
}

}  // namespace

GenerationResult run_generation(const GeneratorConfig& config) {
  config.validate();
  const Lexicon lexicon = load_generator_lexicon(config);

  const std::vector<std::string> split_names = {"train", "dev", "test"};
  std::map<std::string, Quota> quota;
  std::map<std::string, Quota> requested;
  const double inflate = config.yes_rate_target ? 1.35 : 1.0;
  auto quota_for = [&](int count) {
    Quota q;
    if (config.mix != QuestionMix::FR) {
      q.yn = static_cast<long long>(std::ceil(count * inflate));
    }
    if (config.mix != QuestionMix::YN) q.fr = count;
    return q;
  };
  quota["train"] = quota_for(config.train_count);
  quota["dev"] = quota_for(config.dev_count);
  quota["test"] = quota_for(config.test_count);
  requested["train"] = Quota{config.mix != QuestionMix::FR ? config.train_count : 0,
                             config.mix != QuestionMix::YN ? config.train_count : 0};
  requested["dev"] = Quota{config.mix != QuestionMix::FR ? config.dev_count : 0,
                           config.mix != QuestionMix::YN ? config.dev_count : 0};
  requested["test"] = Quota{config.mix != QuestionMix::FR ? config.test_count : 0,
                            config.mix != QuestionMix::YN ? config.test_count : 0};

  long long total_needed = 0;
  for (const auto& name : split_names) total_needed += quota[name].total();

  GenerationResult result;
  for (const auto& name : split_names) result.splits[name] = {};

  const std::uint64_t scene_cap =
      200 * static_cast<std::uint64_t>(std::max<long long>(total_needed, 1)) +
      1000;
  const int batch = std::max(1, config.threads * 8);
  std::uint64_t next_index = 0;

  auto remaining_total = [&] {
    long long n = 0;
    for (const auto& name : split_names) n += quota[name].total();
    return n;
  };

  while (remaining_total() > 0 && next_index < scene_cap) {
    std::vector<std::future<std::optional<DatasetRecord>>> futures;
    std::uint64_t begin = next_index;
    std::uint64_t end = std::min<std::uint64_t>(begin + batch, scene_cap);
    next_index = end;
    if (config.threads > 1) {
      for (std::uint64_t i = begin; i < end; ++i) {
        futures.push_back(std::async(std::launch::async, [&, i] {
          return generate_record(config, lexicon, i);
        }));
      }
    }
    for (std::uint64_t i = begin; i < end; ++i) {
      std::optional<DatasetRecord> record =
          config.threads > 1 ? futures[i - begin].get()
                             : generate_record(config, lexicon, i);
      if (!record) continue;
      if (remaining_total() == 0) break;
      // Offer the record to the first split that can keep a question;
      // trimming consumes quota only for questions it keeps.
      for (const auto& name : split_names) {
        if (quota[name].total() == 0) continue;
        DatasetRecord candidate = *record;
        trim_record_to_quota(candidate, quota[name]);
        if (!candidate.questions.empty()) {
          candidate.split = name;
          result.splits[name].push_back(std::move(candidate));
          break;
        }
      }
    }
  }

  for (const auto& name : split_names) {
    if (quota[name].total() > 0) {
      result.notes.push_back("shortfall in " + name + ": " +
                             std::to_string(quota[name].total()) +
                             " questions missing");
    }
  }

  if (config.yes_rate_target) {
    Rng rebalance_rng(config.seed, 0xbadcafe);
    for (const auto& name : split_names) {
      auto outcome = rebalance_yn(std::move(result.splits[name]),
                                  *config.yes_rate_target, rebalance_rng);
      if (!outcome.feasible) {
        result.notes.push_back("rebalance infeasible for " + name);
      }
      // Trim YN surplus left by oversampling back to the requested count.
      Quota trim_quota{requested[name].yn, requested[name].fr};
      std::vector<DatasetRecord> trimmed;
      for (DatasetRecord& r : outcome.records) {
        trim_record_to_quota(r, trim_quota);
        if (!r.questions.empty()) trimmed.push_back(std::move(r));
      }
      result.splits[name] = std::move(trimmed);
    }
  }

  for (const auto& name : split_names) {
    auto& records = result.splits[name];
    for (std::size_t i = 0; i < records.size(); ++i) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%s-%06zu", name.c_str(), i);
      records[i].id = buf;
      records[i].split = name;
    }
    for (const DatasetRecord& r : records) {
      accumulate_stats(result.stats, r);
    }
  }
  return result;
}

}  // namespace sqa
