#include "sqa/textgen.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <sstream>

#include "sqa/error.hpp"

namespace sqa {

std::string_view to_string(Quantifier q) {
  switch (q) {
    case Quantifier::None: return "none";
    case Quantifier::Any: return "any";
    case Quantifier::All: return "all";
  }
  return "?";
}

std::optional<Quantifier> quantifier_from_string(std::string_view s) {
  if (s == "none") return Quantifier::None;
  if (s == "any") return Quantifier::Any;
  if (s == "all") return Quantifier::All;
  return std::nullopt;
}

namespace {

std::string article_for(const std::string& word) {
  if (word.empty()) return "a";
  switch (std::tolower(static_cast<unsigned char>(word[0]))) {
    case 'a': case 'e': case 'i': case 'o': case 'u': return "an";
    default: return "a";
  }
}

std::string pluralize(const std::string& noun) {
  if (noun.ends_with("s") || noun.ends_with("x") || noun.ends_with("ch") ||
      noun.ends_with("sh")) {
    return noun + "es";
  }
  return noun + "s";
}

}  // namespace

std::string ReferringExpression::noun() const {
  if (is_block) return "block " + block_label;
  return shape.value_or("object");
}

std::string ReferringExpression::base() const {
  if (is_block) return "block " + block_label;
  std::string out;
  if (size) out += *size + " ";
  if (color) out += *color + " ";
  out += noun();
  if (block_constraint_label) out += " in block " + *block_constraint_label;
  return out;
}

std::string ReferringExpression::singular(const std::string& determiner) const {
  if (is_block) return base();  // "block A" takes no determiner
  std::string b = base();
  if (determiner == "a") return article_for(b) + " " + b;
  if (determiner.empty()) return b;
  return determiner + " " + b;
}

std::string ReferringExpression::plural(const std::string& determiner) const {
  if (is_block) return base();
  std::string out;
  if (size) out += *size + " ";
  if (color) out += *color + " ";
  out += pluralize(noun());
  if (block_constraint_label) out += " in block " + *block_constraint_label;
  if (determiner.empty()) return out;
  return determiner + " " + out;
}

namespace {

bool object_matches(const ReferringExpression& e, const ObjectEntity& o,
                    const Scene& scene) {
  if (e.shape && o.shape != *e.shape) return false;
  if (e.color && o.color != *e.color) return false;
  if (e.size && o.size != *e.size) return false;
  if (e.block_constraint_label) {
    const Block* b = scene.find_block(o.block_id);
    if (!b || b->label != *e.block_constraint_label) return false;
  }
  return true;
}

std::vector<EntityId> extension(const ReferringExpression& e,
                                const Scene& scene) {
  std::vector<EntityId> out;
  if (e.is_block) {
    for (const Block& b : scene.blocks) {
      if (b.label == e.block_label) out.push_back(b.id);
    }
    return out;
  }
  for (const ObjectEntity& o : scene.objects) {
    if (object_matches(e, o, scene)) out.push_back(o.id);
  }
  return out;
}

}  // namespace

std::vector<EntityId> resolve(const ReferringExpression& expr,
                              const Scene& scene,
                              const std::vector<EntityId>& universe) {
  std::vector<EntityId> out;
  for (const EntityId& id : universe) {
    if (expr.is_block) {
      const Block* b = scene.find_block(id);
      if (b && b->label == expr.block_label) out.push_back(id);
      continue;
    }
    const ObjectEntity* o = scene.find_object(id);
    if (o && object_matches(expr, *o, scene)) out.push_back(id);
  }
  return out;
}

ReferringExpression describe_block(const Block& block) {
  ReferringExpression e;
  e.is_block = true;
  e.block_label = block.label;
  e.targets = {block.id};
  return e;
}

std::optional<ReferringExpression> describe_entity(const EntityId& id,
                                                   const Scene& scene,
                                                   DescribeMode mode,
                                                   Rng& rng) {
  if (const Block* b = scene.find_block(id)) return describe_block(*b);
  const ObjectEntity* obj = scene.find_object(id);
  if (!obj) throw UnknownEntityError(id);

  // Subsets of {shape, color, size} as bitmasks, shape = bit 0.
  auto make = [&](unsigned mask) {
    ReferringExpression e;
    if (mask & 1u) e.shape = obj->shape;
    if (mask & 2u) e.color = obj->color;
    if (mask & 4u) e.size = obj->size;
    return e;
  };

  if (mode == DescribeMode::Ambiguous) {
    unsigned mask = 1u + static_cast<unsigned>(rng.uniform_below(7));  // 1..7
    ReferringExpression e = make(mask);
    e.targets = extension(e, scene);
    return e;
  }

  std::array<std::vector<unsigned>, 3> by_size = {
      std::vector<unsigned>{1, 2, 4}, {3, 5, 6}, {7}};
  for (auto& masks : by_size) {
    rng.shuffle(masks);
    for (unsigned mask : masks) {
      ReferringExpression e = make(mask);
      auto ext = extension(e, scene);
      if (ext.size() == 1 && ext[0] == id) {
        e.targets = ext;
        return e;
      }
    }
  }
  // Fall back to the full triple qualified by block membership.
  ReferringExpression e = make(7);
  const Block* b = scene.find_block(obj->block_id);
  if (b) e.block_constraint_label = b->label;
  auto ext = extension(e, scene);
  if (ext.size() == 1 && ext[0] == id) {
    e.targets = ext;
    return e;
  }
  return std::nullopt;
}

namespace {

struct ClauseBuild {
  std::string text;
  Span trajector;
  Span landmark;
  Span indicator;
};

// Realizes one template, tracking where the slots and the indicator land.
ClauseBuild realize_clause(const std::string& tpl, const std::string& indicator,
                           const std::string& tr_np, const std::string& lm_np) {
  ClauseBuild out;
  const std::size_t tr_at = tpl.find("{tr}");
  const std::size_t lm_at = tpl.find("{lm}");
  const std::size_t ind_at = tpl.find(indicator);

  struct Slot {
    std::size_t at;
    bool is_tr;
  };
  std::vector<Slot> slots = {{tr_at, true}, {lm_at, false}};
  std::sort(slots.begin(), slots.end(),
            [](const Slot& a, const Slot& b) { return a.at < b.at; });

  std::string& s = out.text;
  std::size_t pos = 0;
  auto map_indicator = [&](std::size_t upto) {
    if (ind_at >= pos && ind_at < upto) {
      out.indicator.start = static_cast<int>(s.size() + (ind_at - pos));
      out.indicator.end = out.indicator.start + static_cast<int>(indicator.size());
    }
  };
  for (const Slot& slot : slots) {
    map_indicator(slot.at);
    s += tpl.substr(pos, slot.at - pos);
    Span& span = slot.is_tr ? out.trajector : out.landmark;
    span.start = static_cast<int>(s.size());
    s += slot.is_tr ? tr_np : lm_np;
    span.end = static_cast<int>(s.size());
    pos = slot.at + 4;
  }
  map_indicator(tpl.size());
  s += tpl.substr(pos);
  return out;
}

void shift_span(Span& span, int delta) {
  if (!span.present()) return;
  span.start += delta;
  span.end += delta;
}

void fill_span_texts(const std::string& text, Span& span) {
  if (!span.present()) return;
  span.text = text.substr(span.start, span.end - span.start);
}

// Shortest definite description unique within the story's objects.
std::string later_mention(const ObjectEntity& obj, const Scene& scene,
                          const std::vector<const ObjectEntity*>& story_objects) {
  auto count_matches = [&](bool use_shape, bool use_color, bool use_size) {
    int n = 0;
    for (const ObjectEntity* o : story_objects) {
      bool ok = (!use_shape || o->shape == obj.shape) &&
                (!use_color || o->color == obj.color) &&
                (!use_size || o->size == obj.size);
      if (ok) ++n;
    }
    return n;
  };
  auto render = [&](bool use_shape, bool use_color, bool use_size,
                    bool with_block) {
    std::string out = "the ";
    if (use_size) out += obj.size + " ";
    if (use_color) out += obj.color + " ";
    out += use_shape ? obj.shape : "object";
    if (with_block) {
      const Block* b = scene.find_block(obj.block_id);
      if (b) out += " in block " + b->label;
    }
    return out;
  };
  struct Combo { bool s, c, z; };
  static constexpr Combo combos[] = {
      {true, false, false}, {true, true, false}, {true, false, true},
      {true, true, true}};
  for (const Combo& combo : combos) {
    if (count_matches(combo.s, combo.c, combo.z) == 1) {
      return render(combo.s, combo.c, combo.z, false);
    }
  }
  return render(true, true, true, true);
}

std::string first_mention(const ObjectEntity& obj) {
  std::string body = obj.size + " " + obj.color + " " + obj.shape;
  return article_for(body) + " " + body;
}

}  // namespace

std::vector<AnnotatedSentence> realize_story(const std::vector<Fact>& facts,
                                             const Scene& scene,
                                             const Lexicon& lexicon, Rng& rng,
                                             const StoryTextOptions& options) {
  std::vector<const ObjectEntity*> story_objects;
  std::set<EntityId> seen_ids;
  for (const Fact& f : facts) {
    for (const EntityId& id : {f.head, f.tail}) {
      if (const ObjectEntity* o = scene.find_object(id)) {
        if (seen_ids.insert(id).second) story_objects.push_back(o);
      }
    }
  }

  std::set<EntityId> mentioned;
  auto mention = [&](const EntityId& id) -> std::string {
    if (const Block* b = scene.find_block(id)) return "block " + b->label;
    const ObjectEntity* obj = scene.find_object(id);
    if (!obj) throw UnknownEntityError(id);
    if (mentioned.insert(id).second) return first_mention(*obj);
    return later_mention(*obj, scene, story_objects);
  };

  std::vector<AnnotatedSentence> sentences;
  std::size_t i = 0;
  while (i < facts.size()) {
    int group = 1;
    if (i + 1 < facts.size() && rng.bernoulli(options.pair_probability)) {
      group = 2;
    }
    AnnotatedSentence sentence;
    for (int g = 0; g < group; ++g) {
      const Fact& fact = facts[i + g];
      const auto& exprs = lexicon.expressions(fact.rel);
      if (exprs.empty()) {
        throw Error(std::string("lexicon has no wording for ") +
                    std::string(to_string(fact.rel)));
      }
      const RelationExpression& expr = exprs[rng.uniform_below(exprs.size())];
      ClauseBuild clause = realize_clause(expr.template_text, expr.indicator,
                                          mention(fact.head),
                                          mention(fact.tail));
      int delta = static_cast<int>(sentence.text.size());
      if (g > 0) {
        sentence.text += " and ";
        delta += 5;
      }
      sentence.text += clause.text;
      shift_span(clause.trajector, delta);
      shift_span(clause.landmark, delta);
      shift_span(clause.indicator, delta);
      TripletAnnotation triplet;
      triplet.fact_id = static_cast<int>(i + g);
      triplet.relation = fact.rel;
      triplet.head = fact.head;
      triplet.tail = fact.tail;
      triplet.trajector = clause.trajector;
      triplet.landmark = clause.landmark;
      triplet.indicator = clause.indicator;
      sentence.triplets.push_back(std::move(triplet));
    }
    sentence.text += ".";
    if (!sentence.text.empty()) {
      sentence.text[0] = static_cast<char>(
          std::toupper(static_cast<unsigned char>(sentence.text[0])));
    }
    for (TripletAnnotation& t : sentence.triplets) {
      fill_span_texts(sentence.text, t.trajector);
      fill_span_texts(sentence.text, t.landmark);
      fill_span_texts(sentence.text, t.indicator);
    }
    sentences.push_back(std::move(sentence));
    i += group;
  }
  return sentences;
}

namespace {

// Template shapes recognized for question fronting.
bool is_copular(const std::string& tpl) { return tpl.rfind("{tr} is ", 0) == 0; }

bool is_verbal(const std::string& tpl) {
  return tpl.rfind("{tr} ", 0) == 0 && tpl.ends_with(" {lm}");
}

QuestionRealization finish_question(ClauseBuild clause, int prefix_len) {
  shift_span(clause.trajector, prefix_len);
  shift_span(clause.landmark, prefix_len);
  shift_span(clause.indicator, prefix_len);
  QuestionRealization out;
  out.text = clause.text + "?";
  out.text[0] = static_cast<char>(
      std::toupper(static_cast<unsigned char>(out.text[0])));
  out.trajector = clause.trajector;
  out.landmark = clause.landmark;
  out.indicator = clause.indicator;
  fill_span_texts(out.text, out.trajector);
  fill_span_texts(out.text, out.landmark);
  fill_span_texts(out.text, out.indicator);
  return out;
}

}  // namespace

QuestionRealization realize_yn_question(const ReferringExpression& head,
                                        const ReferringExpression& tail,
                                        Relation probe, Quantifier quantifier,
                                        const Lexicon& lexicon, Rng& rng) {
  const auto& exprs = lexicon.expressions(probe);
  if (exprs.empty()) {
    throw Error(std::string("lexicon has no wording for ") +
                std::string(to_string(probe)));
  }
  const RelationExpression& expr = exprs[rng.uniform_below(exprs.size())];
  const std::string& tpl = expr.template_text;
  const std::string lm_np = tail.singular("the");

  std::string head_np;
  switch (quantifier) {
    case Quantifier::None: head_np = head.singular("the"); break;
    case Quantifier::Any: head_np = head.singular("any"); break;
    case Quantifier::All: head_np = head.plural("all"); break;
  }
  const bool plural_subject = quantifier == Quantifier::All && !head.is_block;

  if (is_copular(tpl)) {
    // "{tr} is X {lm}" -> "is {tr} X {lm}?" / "are all ... X {lm}?"
    std::string rest = tpl.substr(8);  // after "{tr} is "
    std::string qtpl =
        std::string(plural_subject ? "are" : "is") + " {tr} " + rest;
    return finish_question(
        realize_clause(qtpl, expr.indicator, head_np, lm_np), 0);
  }
  if (is_verbal(tpl)) {
    // "{tr} covers {lm}" -> "does {tr} cover {lm}?" / "do all ... cover ...?"
    std::string middle = tpl.substr(5, tpl.size() - 5 - 5);  // verb phrase
    std::string qtpl = std::string(plural_subject ? "do" : "does") + " {tr} " +
                       infinitive_phrase(middle) + " {lm}";
    return finish_question(
        realize_clause(qtpl, infinitive_phrase(expr.indicator), head_np, lm_np),
        0);
  }
  // Unrecognized template shape: wrap the declarative clause.
  std::string qtpl = "is it true that " + tpl;
  return finish_question(realize_clause(qtpl, expr.indicator, head_np, lm_np),
                         0);
}

QuestionRealization realize_fr_question(const ReferringExpression& head,
                                        const ReferringExpression& tail) {
  QuestionRealization out;
  out.text = "Where is ";
  out.trajector.start = static_cast<int>(out.text.size());
  out.text += head.singular("the");
  out.trajector.end = static_cast<int>(out.text.size());
  out.text += " relative to ";
  out.landmark.start = static_cast<int>(out.text.size());
  out.text += tail.singular("the");
  out.landmark.end = static_cast<int>(out.text.size());
  out.text += "?";
  fill_span_texts(out.text, out.trajector);
  fill_span_texts(out.text, out.landmark);
  return out;
}

int count_tokens(const std::string& text) {
  std::istringstream in(text);
  std::string word;
  int n = 0;
  while (in >> word) ++n;
  return n;
}

}  // namespace sqa
