#include "sqa/lexicon.hpp"

namespace sqa {

namespace {

const char* const kSimple = R"(# one wording per relation
lexicon simple

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
relation tppi
  expr "{tr} covers {lm}" indicator "covers"
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

shapes circle square triangle rectangle star
colors black blue red green yellow white
sizes small medium big
)";

const char* const kFullBody = R"(relation dc
  expr "{tr} is disjoint from {lm}" indicator "disjoint from"
  expr "{tr} is disconnected from {lm}" indicator "disconnected from"
  expr "{tr} is apart from {lm}" indicator "apart from"
relation ec
  expr "{tr} is touching {lm}" indicator "touching"
  expr "{tr} touches {lm}" indicator "touches"
  expr "{tr} is in contact with {lm}" indicator "in contact with"
relation po
  expr "{tr} is overlapping {lm}" indicator "overlapping"
  expr "{tr} overlaps {lm}" indicator "overlaps"
  expr "{tr} is partially overlapping {lm}" indicator "partially overlapping"
relation tpp
  expr "{tr} is covered by {lm}" indicator "covered by"
  expr "{tr} is inside and touching {lm}" indicator "inside and touching"
relation ntpp
  expr "{tr} is inside {lm}" indicator "inside"
  expr "{tr} is in {lm}" indicator "in"
  expr "{tr} is within {lm}" indicator "within"
relation tppi
  expr "{tr} covers {lm}" indicator "covers"
  expr "{tr} contains and touches {lm}" indicator "contains and touches"
relation ntppi
  expr "{tr} has {lm}" indicator "has"
  expr "{tr} contains {lm}" indicator "contains"
relation left
  expr "{tr} is to the left of {lm}" indicator "to the left of"
  expr "{tr} is left of {lm}" indicator "left of"
  expr "{tr} is to the west of {lm}" indicator "to the west of"
  expr "{tr} is on the left side of {lm}" indicator "on the left side of"
relation right
  expr "{tr} is to the right of {lm}" indicator "to the right of"
  expr "{tr} is right of {lm}" indicator "right of"
  expr "{tr} is to the east of {lm}" indicator "to the east of"
  expr "{tr} is on the right side of {lm}" indicator "on the right side of"
relation above
  expr "{tr} is above {lm}" indicator "above"
  expr "{tr} is over {lm}" indicator "over"
  expr "{tr} is to the north of {lm}" indicator "to the north of"
  expr "{tr} is on top of {lm}" indicator "on top of"
relation below
  expr "{tr} is below {lm}" indicator "below"
  expr "{tr} is under {lm}" indicator "under"
  expr "{tr} is to the south of {lm}" indicator "to the south of"
  expr "{tr} is beneath {lm}" indicator "beneath"
relation front
  expr "{tr} is in front of {lm}" indicator "in front of"
  expr "{tr} is ahead of {lm}" indicator "ahead of"
relation behind
  expr "{tr} is behind {lm}" indicator "behind"
  expr "{tr} is at the back of {lm}" indicator "at the back of"
relation near
  expr "{tr} is close to {lm}" indicator "close to"
  expr "{tr} is near {lm}" indicator "near"
  expr "{tr} is near to {lm}" indicator "near to"
relation far
  expr "{tr} is far from {lm}" indicator "far from"
  expr "{tr} is far away from {lm}" indicator "far away from"

shapes circle square triangle rectangle star
colors black blue red green yellow white
sizes small medium big
)";

const char* const kClockExtra = R"(relation left
  expr "{tr} is at 9 o'clock of {lm}" indicator "at 9 o'clock of"
relation right
  expr "{tr} is at 3 o'clock of {lm}" indicator "at 3 o'clock of"
relation above
  expr "{tr} is at 12 o'clock of {lm}" indicator "at 12 o'clock of"
relation below
  expr "{tr} is at 6 o'clock of {lm}" indicator "at 6 o'clock of"
)";

}  // namespace

const std::string& builtin_lexicon_text(LexiconVariant v) {
  static const std::string simple = kSimple;
  static const std::string full = std::string("lexicon full\n\n") + kFullBody;
  static const std::string clock =
      std::string("lexicon clock\n\n") + kClockExtra + kFullBody;
  switch (v) {
    case LexiconVariant::Simple: return simple;
    case LexiconVariant::Full: return full;
    case LexiconVariant::Clock: return clock;
  }
  return full;
}

}  // namespace sqa
