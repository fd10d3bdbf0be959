#include <doctest.h>

#include "sqa/error.hpp"
#include "sqa/lexicon.hpp"

using namespace sqa;

TEST_CASE("built-in variants load and cover every relation but EQ") {
  for (LexiconVariant v : {LexiconVariant::Simple, LexiconVariant::Full,
                           LexiconVariant::Clock}) {
    const Lexicon& lex = Lexicon::builtin(v);
    for (Relation r : generator_relations().to_vector()) {
      CHECK(lex.has_expressions(r));
    }
    CHECK(!lex.has_expressions(Relation::EQ));
  }
}

TEST_CASE("simple variant has exactly one wording per relation") {
  const Lexicon& lex = Lexicon::builtin(LexiconVariant::Simple);
  for (Relation r : generator_relations().to_vector()) {
    CHECK(lex.expressions(r).size() == 1);
  }
}

TEST_CASE("full variant gives ABOVE at least above and over") {
  const Lexicon& lex = Lexicon::builtin(LexiconVariant::Full);
  const auto& exprs = lex.expressions(Relation::ABOVE);
  CHECK(exprs.size() >= 3);
  bool above = false, over = false;
  for (const auto& e : exprs) {
    above = above || e.indicator == "above";
    over = over || e.indicator == "over";
  }
  CHECK(above);
  CHECK(over);
}

TEST_CASE("clock variant adds clock wordings for the four planar directions") {
  const Lexicon& lex = Lexicon::builtin(LexiconVariant::Clock);
  CHECK(lex.knows_indicator(Relation::LEFT, "at 9 o'clock of"));
  CHECK(lex.knows_indicator(Relation::RIGHT, "at 3 o'clock of"));
  CHECK(lex.knows_indicator(Relation::ABOVE, "at 12 o'clock of"));
  CHECK(lex.knows_indicator(Relation::BELOW, "at 6 o'clock of"));
  CHECK(!lex.knows_indicator(Relation::FRONT, "at 9 o'clock of"));
}

TEST_CASE("indicators occur verbatim inside their templates") {
  for (LexiconVariant v : {LexiconVariant::Simple, LexiconVariant::Full,
                           LexiconVariant::Clock}) {
    const Lexicon& lex = Lexicon::builtin(v);
    for (Relation r : generator_relations().to_vector()) {
      for (const auto& e : lex.expressions(r)) {
        CHECK(e.template_text.find(e.indicator) != std::string::npos);
        CHECK(e.template_text.find("{tr}") != std::string::npos);
        CHECK(e.template_text.find("{lm}") != std::string::npos);
      }
    }
  }
}

TEST_CASE("unknown relation names are rejected with a line number") {
  std::string text = R"(lexicon bad
relation zzz
  expr "{tr} is odd to {lm}" indicator "odd to"
)";
  CHECK_THROWS_AS(Lexicon::load(text), ParseError);
  try {
    Lexicon::load(text);
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("missing coverage is rejected") {
  // Only one relation covered.
  std::string text = R"(lexicon tiny
relation left
  expr "{tr} is to the left of {lm}" indicator "to the left of"
shapes circle
colors black
sizes small
)";
  CHECK_THROWS_AS(Lexicon::load(text), ParseError);
}

TEST_CASE("bad templates are rejected") {
  auto wrap = [](const std::string& expr_line) {
    return "relation left\n" + expr_line + "\n";
  };
  CHECK_THROWS_AS(
      Lexicon::load(wrap("  expr \"{tr} is left\" indicator \"left\"")),
      ParseError);  // no {lm}
  CHECK_THROWS_AS(
      Lexicon::load(wrap(
          "  expr \"{tr} is left of {lm}\" indicator \"right of\"")),
      ParseError);  // indicator not in template
}

TEST_CASE("verb phrases conjugate token-wise") {
  CHECK(infinitive_phrase("covers") == "cover");
  CHECK(infinitive_phrase("has") == "have");
  CHECK(infinitive_phrase("contains and touches") == "contain and touch");
  CHECK(infinitive_phrase("to the left of") == "to the left of");
}

TEST_CASE("knows_indicator accepts conjugated surfaces") {
  const Lexicon& lex = Lexicon::builtin(LexiconVariant::Full);
  CHECK(lex.knows_indicator(Relation::TPPI, "covers"));
  CHECK(lex.knows_indicator(Relation::TPPI, "cover"));
  CHECK(lex.knows_indicator(Relation::NTPPI, "have"));
  CHECK(!lex.knows_indicator(Relation::TPPI, "covering"));
}

TEST_CASE("lexicon round trips through its own dump format") {
  const std::string& text = builtin_lexicon_text(LexiconVariant::Full);
  Lexicon lex = Lexicon::load(text);
  CHECK(lex.name() == "full");
  CHECK(lex.expression_count() ==
        Lexicon::builtin(LexiconVariant::Full).expression_count());
  CHECK(lex.vocab().shapes.size() == 5);
  CHECK(lex.vocab().colors.size() == 6);
  CHECK(lex.vocab().sizes.size() == 3);
}
