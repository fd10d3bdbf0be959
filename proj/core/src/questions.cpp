#include "sqa/questions.hpp"

#include <algorithm>
#include <set>

namespace sqa {

std::string_view to_string(QuestionType t) {
  return t == QuestionType::YN ? "yn" : "fr";
}

std::optional<QuestionType> question_type_from_string(std::string_view s) {
  if (s == "yn") return QuestionType::YN;
  if (s == "fr") return QuestionType::FR;
  return std::nullopt;
}

std::vector<Fact> StoryPlan::path_facts() const {
  std::vector<Fact> out;
  for (int id : path_fact_ids) out.push_back(facts[id]);
  return out;
}

FactBase StoryPlan::fact_base() const { return FactBase(facts); }

std::vector<EntityId> StoryPlan::entity_universe() const {
  return fact_base().entities();
}

namespace {

bool same_edge(const Fact& a, const Fact& b) {
  if (a == b) return true;
  return a.rel == inverse(b.rel) && a.head == b.tail && a.tail == b.head;
}

// Any subset of fewer than limit facts deriving the target?
bool has_shorter_support(const std::vector<Fact>& facts, const Fact& target,
                         int limit) {
  auto support = minimal_support(FactBase(facts), target);
  return support && support->k < limit;
}

}  // namespace

std::vector<Fact> sample_distractors(const SceneGraph& graph,
                                     const CandidatePath& path, Rng& rng,
                                     int n) {
  std::vector<Fact> pool;
  for (const Fact& edge : graph.edges) {
    bool on_path = false;
    for (const Fact& used : path.edges) {
      on_path = on_path || same_edge(edge, used);
    }
    if (!on_path) pool.push_back(edge);
  }
  rng.shuffle(pool);

  std::vector<Fact> accepted;
  std::vector<Fact> candidate_story = path.edges;
  for (const Fact& edge : pool) {
    if (static_cast<int>(accepted.size()) >= n) break;
    candidate_story.push_back(edge);
    bool ok = true;
    FactBase base(candidate_story);
    if (base.has_entity(path.head) && base.has_entity(path.tail)) {
      RelationSet with_extra = Closure::compute(base).relations_between(
          path.head, path.tail);
      ok = with_extra == path.inferred;
    }
    if (ok) {
      for (Relation r : path.inferred.to_vector()) {
        ok = ok && !has_shorter_support(candidate_story,
                                        make_fact(r, path.head, path.tail),
                                        path.length());
      }
    }
    if (ok) {
      accepted.push_back(edge);
    } else {
      candidate_story.pop_back();
    }
  }
  return accepted;
}

std::optional<StoryPlan> plan_story(const SceneGraph& graph, Rng& rng,
                                    const QuestionOptions& options) {
  auto path = sample_max_valid_path(graph, options.max_path_length, 2, rng);
  if (!path) return std::nullopt;
  // The DP-computed set must agree with the exact closure route.
  RelationSet exact = validate_path(*path);
  if (exact.empty()) return std::nullopt;
  path->inferred = exact;

  int want = rng.uniform_int(options.distractors.min, options.distractors.max);
  std::vector<Fact> extras = sample_distractors(graph, *path, rng, want);

  StoryPlan plan;
  plan.path_head = path->head;
  plan.path_tail = path->tail;
  plan.path_inferred = path->inferred;
  plan.path_length = path->length();

  std::vector<std::pair<Fact, bool>> tagged;  // fact, is_path_edge
  for (const Fact& f : path->edges) tagged.emplace_back(f, true);
  for (const Fact& f : extras) tagged.emplace_back(f, false);
  rng.shuffle(tagged);
  for (std::size_t i = 0; i < tagged.size(); ++i) {
    plan.facts.push_back(tagged[i].first);
    (tagged[i].second ? plan.path_fact_ids : plan.extra_fact_ids)
        .push_back(static_cast<int>(i));
  }
  return plan;
}

bool eval_yn(const Closure& closure, const std::vector<EntityId>& head_ids,
             const std::vector<EntityId>& tail_ids, Relation probe,
             Quantifier quantifier) {
  const auto& known = closure.entities();
  auto in_base = [&](const EntityId& id) {
    return std::find(known.begin(), known.end(), id) != known.end();
  };
  auto derivable = [&](const EntityId& h, const EntityId& t) {
    if (h == t || !in_base(h) || !in_base(t)) return false;
    return closure.query(make_fact(probe, h, t)) == QueryResult::DerivablyTrue;
  };
  if (quantifier == Quantifier::All) {
    // Every matching head must satisfy the probe; a head equal to the
    // tail can never satisfy a reflexive probe and fails the question.
    bool any_pair = false;
    for (const EntityId& h : head_ids) {
      for (const EntityId& t : tail_ids) {
        any_pair = true;
        if (!derivable(h, t)) return false;
      }
    }
    return any_pair;
  }
  for (const EntityId& h : head_ids) {
    for (const EntityId& t : tail_ids) {
      if (derivable(h, t)) return true;
    }
  }
  return false;
}

Answer compute_answer(const FactBase& story_facts, const QuestionSpec& spec,
                      const Scene& scene) {
  std::vector<EntityId> universe = story_facts.entities();
  std::vector<EntityId> head_ids = resolve(spec.head_desc, scene, universe);
  std::vector<EntityId> tail_ids = resolve(spec.tail_desc, scene, universe);
  if (head_ids.empty()) {
    throw UnresolvableDescription("head description matches nothing: " +
                                  spec.head_desc.base());
  }
  if (tail_ids.empty()) {
    throw UnresolvableDescription("tail description matches nothing: " +
                                  spec.tail_desc.base());
  }
  Closure closure = Closure::compute(story_facts);
  Answer answer;
  if (spec.qtype == QuestionType::YN) {
    answer.yes =
        eval_yn(closure, head_ids, tail_ids, *spec.probe, spec.quantifier);
  } else {
    answer.relations = closure.relations_between(head_ids[0], tail_ids[0]) &
                       generator_relations();
  }
  return answer;
}

namespace {

std::vector<int> complement_ids(int total, const std::vector<int>& chosen) {
  std::vector<int> out;
  std::set<int> used(chosen.begin(), chosen.end());
  for (int i = 0; i < total; ++i) {
    if (!used.count(i)) out.push_back(i);
  }
  return out;
}

// Gold No probes: anything not derivably true between the pair.
std::vector<Relation> no_probe_candidates(const Closure& closure,
                                          const EntityId& head,
                                          const EntityId& tail) {
  std::vector<Relation> out;
  for (Relation r : generator_relations().to_vector()) {
    if (closure.query(make_fact(r, head, tail)) !=
        QueryResult::DerivablyTrue) {
      out.push_back(r);
    }
  }
  return out;
}

struct DescPair {
  ReferringExpression head_desc;
  ReferringExpression tail_desc;
};

std::optional<DescPair> describe_pair(const EntityId& head,
                                      const EntityId& tail, const Scene& scene,
                                      DescribeMode head_mode, Rng& rng) {
  auto hd = describe_entity(head, scene, head_mode, rng);
  auto td = describe_entity(tail, scene, DescribeMode::Unique, rng);
  if (!hd || !td) return std::nullopt;
  return DescPair{*hd, *td};
}

// Shared YN assembly: picks probe and quantifier, resolves descriptions,
// computes gold over the story, and requires the same gold over the
// supporting facts alone.
std::optional<QuestionSpec> finish_yn(QuestionSpec spec, const StoryPlan& story,
                                      const Scene& scene, Rng& rng,
                                      const QuestionOptions& options,
                                      const Closure& story_closure,
                                      RelationSet derivable_from_support) {
  bool want_no = rng.bernoulli(options.no_probe_probability);
  if (want_no) {
    auto candidates =
        no_probe_candidates(story_closure, spec.head, spec.tail);
    if (candidates.empty()) {
      want_no = false;
    } else {
      spec.probe = candidates[rng.uniform_below(candidates.size())];
    }
  }
  if (!want_no) {
    auto yes_pool = derivable_from_support.to_vector();
    if (yes_pool.empty()) return std::nullopt;
    spec.probe = yes_pool[rng.uniform_below(yes_pool.size())];
  }

  bool quantified = rng.bernoulli(options.quantifier_probability) &&
                    scene.find_object(spec.head) != nullptr;
  for (int attempt = 0; attempt < 3; ++attempt) {
    DescribeMode head_mode =
        quantified ? DescribeMode::Ambiguous : DescribeMode::Unique;
    auto descs = describe_pair(spec.head, spec.tail, scene, head_mode, rng);
    if (!descs) return std::nullopt;
    spec.head_desc = descs->head_desc;
    spec.tail_desc = descs->tail_desc;
    // "all" questions skew toward No (one stray match sinks them), so
    // "any" gets the larger share to keep the answer balance.
    spec.quantifier = quantified
                          ? (rng.bernoulli(0.6) ? Quantifier::Any
                                                : Quantifier::All)
                          : Quantifier::None;

    std::vector<EntityId> universe = story.entity_universe();
    spec.head_ids = resolve(spec.head_desc, scene, universe);
    spec.tail_ids = resolve(spec.tail_desc, scene, universe);
    if (spec.head_ids.empty() || spec.tail_ids.size() != 1) {
      quantified = false;
      continue;
    }
    bool gold = eval_yn(story_closure, spec.head_ids, spec.tail_ids,
                        *spec.probe, spec.quantifier);
    // The answer must already be determined by the supporting facts.
    std::vector<Fact> support;
    for (int id : spec.supporting) support.push_back(story.facts[id]);
    Closure support_closure = Closure::compute(FactBase(support));
    bool gold_from_support = eval_yn(support_closure, spec.head_ids,
                                     spec.tail_ids, *spec.probe,
                                     spec.quantifier);
    if (gold == gold_from_support) {
      spec.gold_yes = gold;
      return spec;
    }
    quantified = false;  // retry with a plain unique description
  }
  return std::nullopt;
}

}  // namespace

std::optional<QuestionSpec> make_path_question(const StoryPlan& story,
                                               const Scene& scene,
                                               QuestionType qtype, Rng& rng,
                                               const QuestionOptions& options) {
  QuestionSpec spec;
  spec.qtype = qtype;
  spec.head = story.path_head;
  spec.tail = story.path_tail;
  spec.supporting = story.path_fact_ids;
  std::sort(spec.supporting.begin(), spec.supporting.end());
  spec.extras = complement_ids(static_cast<int>(story.facts.size()),
                               spec.supporting);
  spec.k = story.path_length;

  Closure story_closure = Closure::compute(story.fact_base());
  if (qtype == QuestionType::FR) {
    auto descs = describe_pair(spec.head, spec.tail, scene,
                               DescribeMode::Unique, rng);
    if (!descs) return std::nullopt;
    spec.head_desc = descs->head_desc;
    spec.tail_desc = descs->tail_desc;
    std::vector<EntityId> universe = story.entity_universe();
    spec.head_ids = resolve(spec.head_desc, scene, universe);
    spec.tail_ids = resolve(spec.tail_desc, scene, universe);
    if (spec.head_ids.size() != 1 || spec.tail_ids.size() != 1) {
      return std::nullopt;
    }
    spec.gold_relations =
        story_closure.relations_between(spec.head, spec.tail) &
        generator_relations();
    // Distractor sampling keeps the story's answer equal to the path's.
    if (!(spec.gold_relations == (story.path_inferred & generator_relations()))) {
      return std::nullopt;
    }
    return spec;
  }
  return finish_yn(std::move(spec), story, scene, rng, options, story_closure,
                   story.path_inferred & generator_relations());
}

std::optional<QuestionSpec> make_extra_question(const StoryPlan& story,
                                                const Scene& scene,
                                                QuestionType qtype, Rng& rng,
                                                const QuestionOptions& options) {
  FactBase base = story.fact_base();
  Closure story_closure = Closure::compute(base);
  std::vector<EntityId> universe = base.entities();

  std::vector<std::pair<EntityId, EntityId>> pairs;
  for (const EntityId& a : universe) {
    for (const EntityId& b : universe) {
      if (a == b) continue;
      if (a == story.path_head && b == story.path_tail) continue;
      pairs.emplace_back(a, b);
    }
  }
  rng.shuffle(pairs);

  for (const auto& [head, tail] : pairs) {
    RelationSet rels =
        story_closure.relations_between(head, tail) & generator_relations();
    if (rels.empty()) continue;

    // Supporting facts: minimal support of the pair's relations; every
    // gold relation must ride the same evidence chain.
    std::vector<Fact> supports;
    std::optional<std::vector<Fact>> common;
    bool uniform = true;
    for (Relation r : rels.to_vector()) {
      auto s = minimal_support(base, make_fact(r, head, tail));
      if (!s) {
        uniform = false;
        break;
      }
      std::sort(s->premises.begin(), s->premises.end());
      if (!common) {
        common = s->premises;
      } else if (!(*common == s->premises)) {
        uniform = false;
        break;
      }
    }
    if (!uniform || !common || common->size() < 2) continue;
    supports = *common;

    QuestionSpec spec;
    spec.qtype = qtype;
    spec.head = head;
    spec.tail = tail;
    spec.k = static_cast<int>(supports.size());
    for (const Fact& f : supports) {
      for (std::size_t i = 0; i < story.facts.size(); ++i) {
        if (story.facts[i] == f) {
          spec.supporting.push_back(static_cast<int>(i));
        }
      }
    }
    std::sort(spec.supporting.begin(), spec.supporting.end());
    if (static_cast<int>(spec.supporting.size()) != spec.k) continue;
    spec.extras = complement_ids(static_cast<int>(story.facts.size()),
                                 spec.supporting);

    if (qtype == QuestionType::FR) {
      auto descs =
          describe_pair(head, tail, scene, DescribeMode::Unique, rng);
      if (!descs) continue;
      spec.head_desc = descs->head_desc;
      spec.tail_desc = descs->tail_desc;
      spec.head_ids = resolve(spec.head_desc, scene, universe);
      spec.tail_ids = resolve(spec.tail_desc, scene, universe);
      if (spec.head_ids.size() != 1 || spec.tail_ids.size() != 1) continue;
      spec.gold_relations = rels;
      // Gold must be answerable from the supporting facts alone.
      RelationSet from_support =
          all_relations(FactBase(supports), head, tail) &
          generator_relations();
      if (!(from_support == rels)) continue;
      return spec;
    }
    auto done = finish_yn(spec, story, scene, rng, options, story_closure,
                          rels);
    if (done) return done;
  }
  return std::nullopt;
}

}  // namespace sqa
