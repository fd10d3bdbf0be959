#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqa/lexicon.hpp"
#include "sqa/rng.hpp"
#include "sqa/scene.hpp"

namespace sqa {

// Character range [start, end) plus the surface it must slice back to.
struct Span {
  int start = -1;
  int end = -1;
  std::string text;

  bool present() const { return start >= 0; }
  friend bool operator==(const Span&, const Span&) = default;
};

// SpRL roles of one realized fact within its sentence.
struct TripletAnnotation {
  int fact_id = -1;
  Relation relation = Relation::DC;
  EntityId head;
  EntityId tail;
  Span trajector;
  Span landmark;
  Span indicator;
};

struct AnnotatedSentence {
  std::string text;
  std::vector<TripletAnnotation> triplets;
};

// A property-based noun phrase denoting one or more scene entities.
struct ReferringExpression {
  bool is_block = false;
  std::string block_label;                  // blocks only
  std::optional<std::string> shape;
  std::optional<std::string> color;
  std::optional<std::string> size;
  std::optional<std::string> block_constraint_label;  // "... in block A"
  std::vector<EntityId> targets;            // extension when created

  std::string noun() const;                  // shape word or "object"
  std::string base() const;                  // "big black circle in block A"
  std::string singular(const std::string& determiner) const;
  std::string plural(const std::string& determiner) const;
};

enum class DescribeMode { Unique, Ambiguous };

// Unique mode: smallest random property subset whose extension in the
// scene is exactly {entity}, falling back to the full triple qualified
// by block membership. Ambiguous mode: a random subset covering the
// entity (possibly many others too). nullopt only when even the
// block-qualified description stays ambiguous.
std::optional<ReferringExpression> describe_entity(const EntityId& id,
                                                   const Scene& scene,
                                                   DescribeMode mode,
                                                   Rng& rng);

ReferringExpression describe_block(const Block& block);

// Entities of `universe` matched by the expression, in universe order.
std::vector<EntityId> resolve(const ReferringExpression& expr,
                              const Scene& scene,
                              const std::vector<EntityId>& universe);

struct StoryTextOptions {
  double pair_probability = 0.15;  // chance a sentence carries two facts
};

// One sentence per one-or-two facts, each fact realized exactly once
// with a wording sampled from the lexicon. First mentions use a full
// indefinite description, later mentions the shortest definite one that
// stays unique among the story's entities. Spans index into the
// sentence text.
std::vector<AnnotatedSentence> realize_story(const std::vector<Fact>& facts,
                                             const Scene& scene,
                                             const Lexicon& lexicon, Rng& rng,
                                             const StoryTextOptions& options = {});

enum class Quantifier { None, Any, All };

std::string_view to_string(Quantifier q);
std::optional<Quantifier> quantifier_from_string(std::string_view);

struct QuestionRealization {
  std::string text;
  Span trajector;
  Span landmark;
  Span indicator;  // absent for FR questions
};

// "Is/Are <quantifier?> <head> <expression> <tail>?", with do-support
// for verb-phrase wordings.
QuestionRealization realize_yn_question(const ReferringExpression& head,
                                        const ReferringExpression& tail,
                                        Relation probe, Quantifier quantifier,
                                        const Lexicon& lexicon, Rng& rng);

// "Where is <head> relative to <tail>?"
QuestionRealization realize_fr_question(const ReferringExpression& head,
                                        const ReferringExpression& tail);

int count_tokens(const std::string& text);

}  // namespace sqa
