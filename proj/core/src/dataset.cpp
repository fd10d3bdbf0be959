#include "sqa/dataset.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sqa/error.hpp"
#include "sqa/reasoner.hpp"

namespace sqa {

using ordered_json = nlohmann::ordered_json;

const std::vector<std::string>& fr_candidate_answers() {
  static const std::vector<std::string> v = [] {
    std::vector<std::string> out;
    for (Relation r : generator_relations().to_vector()) {
      out.emplace_back(to_string(r));
    }
    return out;
  }();
  return v;
}

namespace {

ordered_json span_to_json(const Span& span) {
  if (!span.present()) return nullptr;
  return ordered_json{{"start", span.start},
                      {"end", span.end},
                      {"text", span.text}};
}

Span span_from_json(const ordered_json& j) {
  Span s;
  if (j.is_null()) return s;
  s.start = j.at("start").get<int>();
  s.end = j.at("end").get<int>();
  s.text = j.at("text").get<std::string>();
  return s;
}

Relation relation_from_json(const ordered_json& j, const char* what) {
  auto r = relation_from_string(j.get<std::string>());
  if (!r) throw ParseError(std::string("unknown relation in ") + what);
  return *r;
}

ordered_json record_to_json(const DatasetRecord& r) {
  ordered_json j;
  j["id"] = r.id;
  j["split"] = r.split;
  j["scene_seed"] = r.scene_seed;
  j["story"] = r.story;
  j["sentences"] = ordered_json::array();
  for (const SentenceRecord& s : r.sentences) {
    ordered_json js;
    js["text"] = s.text;
    js["story_start"] = s.story_start;
    js["story_end"] = s.story_end;
    js["triplets"] = ordered_json::array();
    for (const TripletAnnotation& t : s.triplets) {
      ordered_json jt;
      jt["fact_id"] = t.fact_id;
      jt["relation"] = to_string(t.relation);
      jt["head"] = t.head;
      jt["tail"] = t.tail;
      jt["trajector"] = span_to_json(t.trajector);
      jt["landmark"] = span_to_json(t.landmark);
      jt["indicator"] = span_to_json(t.indicator);
      js["triplets"].push_back(std::move(jt));
    }
    j["sentences"].push_back(std::move(js));
  }
  j["questions"] = ordered_json::array();
  for (const QuestionRecord& q : r.questions) {
    ordered_json jq;
    jq["text"] = q.text;
    jq["qtype"] = to_string(q.qtype);
    jq["quantifier"] = to_string(q.quantifier);
    jq["probe_relation"] =
        q.probe ? ordered_json(to_string(*q.probe)) : ordered_json(nullptr);
    jq["candidate_answers"] = q.candidate_answers;
    jq["answer"] = q.answer;
    jq["k"] = q.k;
    jq["supporting_facts"] = q.supporting_facts;
    jq["supporting_sentences"] = q.supporting_sentences;
    jq["extra_facts"] = q.extra_facts;
    jq["head_ids"] = q.head_ids;
    jq["tail_ids"] = q.tail_ids;
    jq["trajector"] = span_to_json(q.trajector);
    jq["landmark"] = span_to_json(q.landmark);
    jq["indicator"] = span_to_json(q.indicator);
    j["questions"].push_back(std::move(jq));
  }
  return j;
}

DatasetRecord record_from_json(const ordered_json& j) {
  DatasetRecord r;
  r.id = j.at("id").get<std::string>();
  r.split = j.at("split").get<std::string>();
  r.scene_seed = j.at("scene_seed").get<std::uint64_t>();
  r.story = j.at("story").get<std::string>();
  for (const auto& js : j.at("sentences")) {
    SentenceRecord s;
    s.text = js.at("text").get<std::string>();
    s.story_start = js.at("story_start").get<int>();
    s.story_end = js.at("story_end").get<int>();
    for (const auto& jt : js.at("triplets")) {
      TripletAnnotation t;
      t.fact_id = jt.at("fact_id").get<int>();
      t.relation = relation_from_json(jt.at("relation"), "triplet");
      t.head = jt.at("head").get<std::string>();
      t.tail = jt.at("tail").get<std::string>();
      t.trajector = span_from_json(jt.at("trajector"));
      t.landmark = span_from_json(jt.at("landmark"));
      t.indicator = span_from_json(jt.at("indicator"));
      s.triplets.push_back(std::move(t));
    }
    r.sentences.push_back(std::move(s));
  }
  for (const auto& jq : j.at("questions")) {
    QuestionRecord q;
    q.text = jq.at("text").get<std::string>();
    auto qt = question_type_from_string(jq.at("qtype").get<std::string>());
    if (!qt) throw ParseError("unknown question type");
    q.qtype = *qt;
    auto quant = quantifier_from_string(jq.at("quantifier").get<std::string>());
    if (!quant) throw ParseError("unknown quantifier");
    q.quantifier = *quant;
    if (!jq.at("probe_relation").is_null()) {
      q.probe = relation_from_json(jq.at("probe_relation"), "probe");
    }
    q.candidate_answers =
        jq.at("candidate_answers").get<std::vector<std::string>>();
    q.answer = jq.at("answer").get<std::vector<std::string>>();
    q.k = jq.at("k").get<int>();
    q.supporting_facts = jq.at("supporting_facts").get<std::vector<int>>();
    q.supporting_sentences =
        jq.at("supporting_sentences").get<std::vector<int>>();
    q.extra_facts = jq.at("extra_facts").get<std::vector<int>>();
    q.head_ids = jq.at("head_ids").get<std::vector<std::string>>();
    q.tail_ids = jq.at("tail_ids").get<std::vector<std::string>>();
    q.trajector = span_from_json(jq.at("trajector"));
    q.landmark = span_from_json(jq.at("landmark"));
    q.indicator = span_from_json(jq.at("indicator"));
    r.questions.push_back(std::move(q));
  }
  return r;
}

}  // namespace

std::string record_to_json_line(const DatasetRecord& record) {
  return record_to_json(record).dump();
}

DatasetRecord record_from_json_line(const std::string& line, int lineno) {
  try {
    return record_from_json(ordered_json::parse(line));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad record JSON: ") + e.what(), lineno);
  }
}

std::vector<std::string> write_corpus(
    const std::map<std::string, std::vector<DatasetRecord>>& splits,
    const std::string& directory) {
  std::filesystem::create_directories(directory);
  std::vector<std::string> written;
  for (const auto& [split, records] : splits) {
    std::string path = directory + "/" + split + ".jsonl";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    for (const DatasetRecord& r : records) {
      out << record_to_json_line(r) << '\n';
    }
    if (!out) throw IoError("write failed for " + path);
    written.push_back(path);
  }
  return written;
}

std::vector<DatasetRecord> read_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus file: " + path);
  std::vector<DatasetRecord> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    out.push_back(record_from_json_line(line, lineno));
  }
  return out;
}

namespace {

void check_span(std::vector<std::string>& violations, const std::string& text,
                const Span& span, const std::string& what) {
  if (!span.present()) {
    violations.push_back(what + ": span missing");
    return;
  }
  if (span.start < 0 || span.end > static_cast<int>(text.size()) ||
      span.start >= span.end) {
    violations.push_back(what + ": span out of bounds");
    return;
  }
  if (text.substr(span.start, span.end - span.start) != span.text) {
    violations.push_back(what + ": span does not slice back to its surface");
  }
}

std::vector<std::string> answer_labels(const RelationSet& rels) {
  std::vector<std::string> out;
  for (Relation r : rels.to_vector()) out.emplace_back(to_string(r));
  return out;
}

}  // namespace

std::vector<std::string> validate_record(const DatasetRecord& record,
                                         const Lexicon* lexicon) {
  std::vector<std::string> violations;

  // Sentence and story text agreement.
  std::string joined;
  for (std::size_t i = 0; i < record.sentences.size(); ++i) {
    const SentenceRecord& s = record.sentences[i];
    if (i > 0) joined += " ";
    if (s.story_start != static_cast<int>(joined.size())) {
      violations.push_back("sentence " + std::to_string(i) +
                           ": story_start mismatch");
    }
    joined += s.text;
    if (s.story_end != static_cast<int>(joined.size())) {
      violations.push_back("sentence " + std::to_string(i) +
                           ": story_end mismatch");
    }
  }
  if (joined != record.story) violations.push_back("story text mismatch");

  // Triplet spans and fact ids.
  std::map<int, Fact> facts_by_id;
  std::map<int, int> sentence_of_fact;
  for (std::size_t i = 0; i < record.sentences.size(); ++i) {
    const SentenceRecord& s = record.sentences[i];
    for (const TripletAnnotation& t : s.triplets) {
      std::string what = "sentence " + std::to_string(i) + " fact " +
                         std::to_string(t.fact_id);
      check_span(violations, s.text, t.trajector, what + " trajector");
      check_span(violations, s.text, t.landmark, what + " landmark");
      check_span(violations, s.text, t.indicator, what + " indicator");
      if (lexicon && t.indicator.present() &&
          !lexicon->knows_indicator(t.relation, t.indicator.text)) {
        violations.push_back(what + ": indicator `" + t.indicator.text +
                             "` not registered for " +
                             std::string(to_string(t.relation)));
      }
      if (facts_by_id.count(t.fact_id)) {
        violations.push_back(what + ": duplicate fact id");
      }
      facts_by_id.emplace(t.fact_id,
                          make_fact(t.relation, t.head, t.tail));
      sentence_of_fact.emplace(t.fact_id, static_cast<int>(i));
    }
  }
  for (int i = 0; i < static_cast<int>(facts_by_id.size()); ++i) {
    if (!facts_by_id.count(i)) {
      violations.push_back("fact ids are not contiguous");
      break;
    }
  }

  std::vector<Fact> story_facts;
  for (const auto& [id, fact] : facts_by_id) story_facts.push_back(fact);

  for (std::size_t qi = 0; qi < record.questions.size(); ++qi) {
    const QuestionRecord& q = record.questions[qi];
    std::string what = "question " + std::to_string(qi);

    if (q.k != static_cast<int>(q.supporting_facts.size())) {
      violations.push_back(what + ": k != |supporting facts|");
    }
    if (q.k < 2) violations.push_back(what + ": k < 2");

    // Supporting sentences are exactly those hosting supporting facts.
    std::set<int> expected_sentences;
    for (int f : q.supporting_facts) {
      auto it = sentence_of_fact.find(f);
      if (it == sentence_of_fact.end()) {
        violations.push_back(what + ": supporting fact " + std::to_string(f) +
                             " unknown");
      } else {
        expected_sentences.insert(it->second);
      }
    }
    std::set<int> listed(q.supporting_sentences.begin(),
                         q.supporting_sentences.end());
    if (listed != expected_sentences) {
      violations.push_back(what + ": supporting sentences mismatch");
    }

    // Extras are the complement of the supporting facts.
    std::set<int> support_set(q.supporting_facts.begin(),
                              q.supporting_facts.end());
    std::set<int> extra_set(q.extra_facts.begin(), q.extra_facts.end());
    for (int f : q.supporting_facts) {
      if (extra_set.count(f)) {
        violations.push_back(what + ": fact both supporting and extra");
      }
    }
    if (support_set.size() + extra_set.size() != facts_by_id.size()) {
      violations.push_back(what + ": supporting+extra do not cover the story");
    }

    const auto& expected_candidates = q.qtype == QuestionType::YN
                                          ? yn_candidate_answers()
                                          : fr_candidate_answers();
    if (q.candidate_answers != expected_candidates) {
      violations.push_back(what + ": wrong candidate answer list");
    }

    check_span(violations, q.text, q.trajector, what + " trajector");
    check_span(violations, q.text, q.landmark, what + " landmark");
    if (q.qtype == QuestionType::YN) {
      if (!q.probe) violations.push_back(what + ": YN without probe");
      check_span(violations, q.text, q.indicator, what + " indicator");
      if (lexicon && q.probe && q.indicator.present() &&
          !lexicon->knows_indicator(*q.probe, q.indicator.text)) {
        violations.push_back(what + ": question indicator not registered");
      }
      if (q.answer.size() != 1 ||
          (q.answer[0] != "Yes" && q.answer[0] != "No")) {
        violations.push_back(what + ": YN answer must be Yes or No");
        continue;
      }
    } else if (q.indicator.present()) {
      violations.push_back(what + ": FR question carries an indicator");
    }

    if (q.head_ids.empty() || q.tail_ids.empty()) {
      violations.push_back(what + ": unresolved head or tail");
      continue;
    }

    // Gold recomputation from the supporting facts alone and from the
    // whole story; both must agree with the stored answer.
    std::vector<Fact> support;
    for (int f : q.supporting_facts) {
      auto it = facts_by_id.find(f);
      if (it != facts_by_id.end()) support.push_back(it->second);
    }
    if (support.size() != q.supporting_facts.size()) continue;
    Closure support_closure = Closure::compute(FactBase(support));
    Closure story_closure = Closure::compute(FactBase(story_facts));

    if (q.qtype == QuestionType::YN) {
      bool stored_yes = q.answer[0] == "Yes";
      bool from_support = eval_yn(support_closure, q.head_ids, q.tail_ids,
                                  *q.probe, q.quantifier);
      bool from_story = eval_yn(story_closure, q.head_ids, q.tail_ids,
                                *q.probe, q.quantifier);
      bool answer_ok = from_support == stored_yes && from_story == stored_yes;
      if (from_support != stored_yes) {
        violations.push_back(what + ": answer mismatch from supporting facts");
      } else if (from_story != stored_yes) {
        violations.push_back(what + ": answer not stable over the story");
      }
      if (answer_ok && stored_yes && q.quantifier == Quantifier::None) {
        auto ms = minimal_support(FactBase(story_facts),
                                  make_fact(*q.probe, q.head_ids[0],
                                            q.tail_ids[0]));
        if (!ms || ms->k != q.k) {
          violations.push_back(what + ": k is not the minimal support size");
        }
      }
    } else {
      if (q.head_ids.size() != 1 || q.tail_ids.size() != 1) {
        violations.push_back(what + ": FR descriptions must be unique");
        continue;
      }
      RelationSet from_support;
      RelationSet from_story;
      const auto& sup_entities = support_closure.entities();
      bool present =
          std::find(sup_entities.begin(), sup_entities.end(), q.head_ids[0]) !=
              sup_entities.end() &&
          std::find(sup_entities.begin(), sup_entities.end(), q.tail_ids[0]) !=
              sup_entities.end();
      if (present) {
        from_support =
            support_closure.relations_between(q.head_ids[0], q.tail_ids[0]) &
            generator_relations();
      }
      from_story =
          story_closure.relations_between(q.head_ids[0], q.tail_ids[0]) &
          generator_relations();
      bool answer_ok = answer_labels(from_support) == q.answer &&
                       answer_labels(from_story) == q.answer;
      if (answer_labels(from_support) != q.answer) {
        violations.push_back(what + ": answer mismatch from supporting facts");
      } else if (answer_labels(from_story) != q.answer) {
        violations.push_back(what + ": answer not stable over the story");
      }
      bool exclusion_hit = false;
      for (const std::string& a : q.answer) {
        for (const std::string& b : q.answer) {
          auto ra = relation_from_string(a);
          auto rb = relation_from_string(b);
          if (ra && rb && exclusion_set(*ra).contains(*rb)) exclusion_hit = true;
        }
      }
      if (exclusion_hit) {
        violations.push_back(what + ": FR answers contain an exclusion pair");
      }
      if (answer_ok) {
        for (Relation r : from_story.to_vector()) {
          auto ms = minimal_support(
              FactBase(story_facts),
              make_fact(r, q.head_ids[0], q.tail_ids[0]));
          if (!ms || ms->k != q.k) {
            violations.push_back(what + ": k is not the minimal support size");
            break;
          }
        }
      }
    }
  }
  return violations;
}

double SplitStats::mean_sentences() const {
  return records ? static_cast<double>(sentences) / records : 0.0;
}
double SplitStats::mean_tokens() const {
  return records ? static_cast<double>(tokens) / records : 0.0;
}
double SplitStats::mean_relations() const {
  return records ? static_cast<double>(relations) / records : 0.0;
}
std::optional<double> SplitStats::yes_rate() const {
  if (!yn_questions) return std::nullopt;
  return static_cast<double>(yes_answers) / yn_questions;
}
std::optional<double> SplitStats::fr_presence_rate(
    const std::string& label) const {
  if (!fr_questions) return std::nullopt;
  auto it = fr_label_presence.find(label);
  return static_cast<double>(it == fr_label_presence.end() ? 0 : it->second) /
         fr_questions;
}

SplitStats StatsReport::overall() const {
  SplitStats all;
  for (const auto& [name, s] : splits) {
    all.records += s.records;
    all.questions += s.questions;
    all.yn_questions += s.yn_questions;
    all.fr_questions += s.fr_questions;
    all.yes_answers += s.yes_answers;
    all.sentences += s.sentences;
    all.tokens += s.tokens;
    all.relations += s.relations;
    for (const auto& [k, n] : s.k_histogram) all.k_histogram[k] += n;
    for (const auto& [l, n] : s.fr_label_presence) {
      all.fr_label_presence[l] += n;
    }
  }
  return all;
}

void accumulate_stats(StatsReport& report, const DatasetRecord& record) {
  SplitStats& s = report.splits[record.split];
  s.records += 1;
  s.sentences += static_cast<long long>(record.sentences.size());
  s.tokens += count_tokens(record.story);
  long long rels = 0;
  for (const SentenceRecord& sent : record.sentences) {
    rels += static_cast<long long>(sent.triplets.size());
  }
  s.relations += rels;
  for (const QuestionRecord& q : record.questions) {
    s.questions += 1;
    s.k_histogram[q.k] += 1;
    if (q.qtype == QuestionType::YN) {
      s.yn_questions += 1;
      if (!q.answer.empty() && q.answer[0] == "Yes") s.yes_answers += 1;
    } else {
      s.fr_questions += 1;
      for (const std::string& label : q.answer) {
        s.fr_label_presence[label] += 1;
      }
    }
  }
}

StatsReport compute_stats(const std::string& path) {
  return compute_stats(std::vector<std::string>{path});
}

StatsReport compute_stats(const std::vector<std::string>& paths) {
  StatsReport report;
  for (const std::string& path : paths) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open corpus file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      accumulate_stats(report, record_from_json_line(line, lineno));
    }
  }
  return report;
}

namespace {

std::string format_rate(std::optional<double> rate) {
  if (!rate) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", *rate);
  return buf;
}

std::string format_mean(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string StatsReport::to_text() const {
  std::ostringstream out;
  auto emit = [&](const std::string& name, const SplitStats& s) {
    out << name << ": " << s.records << " records, " << s.questions
        << " questions (" << s.yn_questions << " yn / " << s.fr_questions
        << " fr)\n";
    out << "  sentences/story " << format_mean(s.mean_sentences())
        << ", tokens/story " << format_mean(s.mean_tokens())
        << ", relations/story " << format_mean(s.mean_relations()) << "\n";
    out << "  yn yes-rate " << format_rate(s.yes_rate()) << "\n";
    out << "  k histogram:";
    for (const auto& [k, n] : s.k_histogram) out << " " << k << ":" << n;
    out << "\n";
    if (s.fr_questions) {
      out << "  fr label presence:";
      for (const std::string& label : fr_candidate_answers()) {
        auto rate = s.fr_presence_rate(label);
        if (rate && *rate > 0) out << " " << label << ":" << format_rate(rate);
      }
      out << "\n";
    }
  };
  for (const auto& [name, s] : splits) emit(name, s);
  if (splits.size() > 1) emit("overall", overall());
  return out.str();
}

std::string StatsReport::to_json() const {
  ordered_json j;
  auto split_json = [](const SplitStats& s) {
    ordered_json js;
    js["records"] = s.records;
    js["questions"] = s.questions;
    js["yn_questions"] = s.yn_questions;
    js["fr_questions"] = s.fr_questions;
    js["mean_sentences"] = s.mean_sentences();
    js["mean_tokens"] = s.mean_tokens();
    js["mean_relations"] = s.mean_relations();
    if (auto rate = s.yes_rate()) {
      js["yn_yes_rate"] = *rate;
    } else {
      js["yn_yes_rate"] = nullptr;
    }
    js["k_histogram"] = ordered_json::object();
    for (const auto& [k, n] : s.k_histogram) {
      js["k_histogram"][std::to_string(k)] = n;
    }
    js["fr_label_presence"] = ordered_json::object();
    for (const std::string& label : fr_candidate_answers()) {
      if (auto rate = s.fr_presence_rate(label)) {
        js["fr_label_presence"][label] = *rate;
      }
    }
    return js;
  };
  for (const auto& [name, s] : splits) j[name] = split_json(s);
  j["overall"] = split_json(overall());
  return j.dump(2);
}

RebalanceResult rebalance_yn(std::vector<DatasetRecord> records,
                             double target_yes_rate, Rng& rng) {
  if (target_yes_rate <= 0.0 || target_yes_rate >= 1.0) {
    throw ConfigError("target yes-rate must lie strictly between 0 and 1");
  }
  struct Ref {
    std::size_t record;
    std::size_t question;
  };
  std::vector<Ref> yes_refs, no_refs;
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (std::size_t qi = 0; qi < records[i].questions.size(); ++qi) {
      const QuestionRecord& q = records[i].questions[qi];
      if (q.qtype != QuestionType::YN || q.answer.empty()) continue;
      (q.answer[0] == "Yes" ? yes_refs : no_refs).push_back({i, qi});
    }
  }
  const double y = static_cast<double>(yes_refs.size());
  const double n = static_cast<double>(no_refs.size());
  RebalanceResult result;
  if (y + n == 0) {
    result.records = std::move(records);
    result.feasible = false;
    return result;
  }

  std::vector<Ref>* majority = nullptr;
  long long keep = 0;
  if (y / (y + n) > target_yes_rate) {
    // Too many Yes: keep y' with y' / (y' + n) == target.
    majority = &yes_refs;
    keep = static_cast<long long>(
        std::llround(target_yes_rate * n / (1.0 - target_yes_rate)));
  } else {
    majority = &no_refs;
    keep = static_cast<long long>(
        std::llround((1.0 - target_yes_rate) * y / target_yes_rate));
  }
  keep = std::min<long long>(keep, static_cast<long long>(majority->size()));
  result.feasible = (majority == &yes_refs ? n : y) > 0;

  rng.shuffle(*majority);
  std::set<std::pair<std::size_t, std::size_t>> drop;
  for (std::size_t i = keep; i < majority->size(); ++i) {
    drop.insert({(*majority)[i].record, (*majority)[i].question});
  }

  std::vector<DatasetRecord> out;
  long long kept_yes = 0, kept_yn = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    DatasetRecord r = std::move(records[i]);
    std::vector<QuestionRecord> kept;
    for (std::size_t qi = 0; qi < r.questions.size(); ++qi) {
      if (drop.count({i, qi})) continue;
      kept.push_back(std::move(r.questions[qi]));
    }
    r.questions = std::move(kept);
    for (const QuestionRecord& q : r.questions) {
      if (q.qtype == QuestionType::YN) {
        ++kept_yn;
        if (!q.answer.empty() && q.answer[0] == "Yes") ++kept_yes;
      }
    }
    if (!r.questions.empty()) out.push_back(std::move(r));
  }
  result.records = std::move(out);
  result.achieved_rate =
      kept_yn ? static_cast<double>(kept_yes) / kept_yn : 0.0;
  return result;
}

}  // namespace sqa
