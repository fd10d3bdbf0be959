#pragma once

#include <optional>
#include <vector>

#include "sqa/error.hpp"
#include "sqa/paths.hpp"
#include "sqa/textgen.hpp"

namespace sqa {

enum class QuestionType { YN, FR };

std::string_view to_string(QuestionType t);
std::optional<QuestionType> question_type_from_string(std::string_view);

struct QuestionOptions {
  IntRange distractors{2, 5};
  int max_path_length = 5;
  double quantifier_probability = 0.15;
  double no_probe_probability = 0.5;  // chance a YN question goes for gold No
};

// A story's fact material: the selected path's edges plus distractors,
// shuffled; fact ids are indices into `facts`.
struct StoryPlan {
  std::vector<Fact> facts;
  std::vector<int> path_fact_ids;   // F
  std::vector<int> extra_fact_ids;  // E
  EntityId path_head;
  EntityId path_tail;
  RelationSet path_inferred;  // derivable from F alone
  int path_length = 0;

  std::vector<Fact> path_facts() const;
  FactBase fact_base() const;
  std::vector<EntityId> entity_universe() const;
};

// A fully determined question over a story, pre-realization.
struct QuestionSpec {
  QuestionType qtype = QuestionType::YN;
  EntityId head;
  EntityId tail;
  ReferringExpression head_desc;
  ReferringExpression tail_desc;
  std::vector<EntityId> head_ids;  // story resolution of head_desc
  std::vector<EntityId> tail_ids;
  std::optional<Relation> probe;          // YN only
  Quantifier quantifier = Quantifier::None;
  bool gold_yes = false;                  // YN gold
  RelationSet gold_relations;             // FR gold
  int k = 0;
  std::vector<int> supporting;  // story fact ids, sorted
  std::vector<int> extras;      // complement of supporting, sorted
};

// Distractor edges off the path such that (a) the derivable relations
// between the path endpoints stay exactly those of the path and (b) no
// subset smaller than the path can re-derive any of them. Returns fewer
// than n when the pool cannot satisfy the constraints.
std::vector<Fact> sample_distractors(const SceneGraph& graph,
                                     const CandidatePath& path, Rng& rng,
                                     int n);

// Maximal-length valid path (>= 2 edges) plus distractors, shuffled into
// story order. nullopt when the graph has no valid multi-hop path.
std::optional<StoryPlan> plan_story(const SceneGraph& graph, Rng& rng,
                                    const QuestionOptions& options);

// Question on the path endpoints; supporting facts are the path edges.
std::optional<QuestionSpec> make_path_question(const StoryPlan& story,
                                               const Scene& scene,
                                               QuestionType qtype, Rng& rng,
                                               const QuestionOptions& options);

// Question on another derivable pair of the story; supporting facts are
// a minimal support of the pair's relation, k >= 2.
std::optional<QuestionSpec> make_extra_question(const StoryPlan& story,
                                                const Scene& scene,
                                                QuestionType qtype, Rng& rng,
                                                const QuestionOptions& options);

struct Answer {
  bool yes = false;            // YN
  RelationSet relations;       // FR
};

struct UnresolvableDescription : Error {
  using Error::Error;
};

// Answers a question over explicit resolution sets. YN with any/none:
// Yes iff some matching ordered pair derives the probe; all: Yes iff
// every matching head derives it against the resolved tail. Pairs with
// identical endpoints or entities outside the base count as
// underivable. FR: relations between the uniquely resolved pair.
bool eval_yn(const Closure& closure, const std::vector<EntityId>& head_ids,
             const std::vector<EntityId>& tail_ids, Relation probe,
             Quantifier quantifier);

// Resolves the descriptions against the story's entities and evaluates;
// throws UnresolvableDescription when a description matches nothing.
Answer compute_answer(const FactBase& story_facts, const QuestionSpec& spec,
                      const Scene& scene);

}  // namespace sqa
