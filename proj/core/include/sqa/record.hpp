#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqa/questions.hpp"
#include "sqa/textgen.hpp"

namespace sqa {

struct SentenceRecord {
  std::string text;
  int story_start = 0;  // [start, end) into the story string
  int story_end = 0;
  std::vector<TripletAnnotation> triplets;  // spans index the sentence text
};

struct QuestionRecord {
  std::string text;
  QuestionType qtype = QuestionType::YN;
  Quantifier quantifier = Quantifier::None;
  std::optional<Relation> probe;            // YN only
  std::vector<std::string> candidate_answers;
  std::vector<std::string> answer;          // ["Yes"]/["No"] or gold labels
  int k = 0;
  std::vector<int> supporting_facts;
  std::vector<int> supporting_sentences;
  std::vector<int> extra_facts;
  std::vector<EntityId> head_ids;  // story resolution of the descriptions
  std::vector<EntityId> tail_ids;
  Span trajector;
  Span landmark;
  Span indicator;  // absent for FR
};

// One story with its annotated sentences and questions; the JSONL unit.
struct DatasetRecord {
  std::string id;
  std::string split;  // train / dev / test
  std::uint64_t scene_seed = 0;
  std::string story;
  std::vector<SentenceRecord> sentences;
  std::vector<QuestionRecord> questions;
};

inline const std::vector<std::string>& yn_candidate_answers() {
  static const std::vector<std::string> v = {"Yes", "No"};
  return v;
}

// The fixed FR label list: every relation name but eq, canonical order.
const std::vector<std::string>& fr_candidate_answers();

}  // namespace sqa
