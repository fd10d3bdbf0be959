#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sqa/relations.hpp"
#include "sqa/scene.hpp"

namespace sqa {

// One way of wording a relation. The template carries exactly one {tr}
// and one {lm} slot; the indicator is the spatial phrase and occurs
// verbatim inside the template.
struct RelationExpression {
  std::string template_text;
  std::string indicator;

  friend bool operator==(const RelationExpression&,
                         const RelationExpression&) = default;
};

enum class LexiconVariant { Simple, Full, Clock };

std::string_view to_string(LexiconVariant v);
std::optional<LexiconVariant> lexicon_variant_from_string(std::string_view);

// Relation wordings plus the entity property vocabulary. Immutable after
// load; concurrent readers are fine.
class Lexicon {
 public:
  // Parses the lexicon text format:
  //
  //   lexicon full
  //   relation left
  //     expr "{tr} is to the left of {lm}" indicator "to the left of"
  //   shapes circle square ...
  //   colors black ...
  //   sizes small medium big
  //
  // Unknown relation names, bad templates, and missing coverage of any
  // label but EQ are reported with line numbers.
  static Lexicon load(const std::string& text);
  static Lexicon load_file(const std::string& path);
  static const Lexicon& builtin(LexiconVariant v);

  const std::vector<RelationExpression>& expressions(Relation r) const;
  bool has_expressions(Relation r) const;

  // Whether `surface` is a registered indicator for r, in its written
  // form or a conjugated one (infinitive / plural agreement).
  bool knows_indicator(Relation r, const std::string& surface) const;

  const PropertyVocab& vocab() const { return vocab_; }
  const std::string& name() const { return name_; }

  int expression_count() const;

 private:
  std::map<Relation, std::vector<RelationExpression>> expressions_;
  PropertyVocab vocab_;
  std::string name_ = "custom";
};

// Built-in lexicon sources, also usable as file-format references.
const std::string& builtin_lexicon_text(LexiconVariant v);

// Verb-phrase agreement used by question realization: "covers" ->
// "cover", "has" -> "have", token-wise over a phrase.
std::string infinitive_phrase(const std::string& phrase);

}  // namespace sqa
