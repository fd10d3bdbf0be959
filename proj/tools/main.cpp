// sqagen: spatial-reasoning corpus generator and query tool.
//
// Subcommands: generate, query, validate, stats, lexicon.
// Exit codes: 0 success, 1 validation/data failure, 2 usage/config error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "sqa/dataset.hpp"
#include "sqa/error.hpp"
#include "sqa/generator.hpp"
#include "sqa/reasoner.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kDataFailure = 1;
constexpr int kUsageError = 2;

using namespace sqa;

std::vector<std::string> corpus_files(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::is_directory(path)) {
    std::vector<std::string> out;
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.path().extension() == ".jsonl") {
        out.push_back(entry.path().string());
      }
    }
    std::sort(out.begin(), out.end());
    if (out.empty()) throw IoError("no .jsonl files under " + path);
    return out;
  }
  return {path};
}

int cmd_generate(const std::string& config_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed_override,
                 std::optional<std::string> variant_override,
                 std::optional<std::string> qtype_override, int threads,
                 bool json_stats) {
  GeneratorConfig config;
  if (!config_path.empty()) config = config_from_json_file(config_path);
  if (seed_override) config.seed = *seed_override;
  if (variant_override) {
    auto v = lexicon_variant_from_string(*variant_override);
    if (!v) throw ConfigError("unknown lexicon variant: " + *variant_override);
    config.variant = *v;
    config.lexicon_path.reset();
  }
  if (qtype_override) {
    auto mix = question_mix_from_string(*qtype_override);
    if (!mix) throw ConfigError("unknown question type mix: " + *qtype_override);
    config.mix = *mix;
  }
  if (threads > 0) config.threads = threads;
  config.validate();

  auto started = std::chrono::steady_clock::now();
  GenerationResult result = run_generation(config);
  auto elapsed = std::chrono::duration<double>(
                     std::chrono::steady_clock::now() - started)
                     .count();

  std::vector<std::string> written = write_corpus(result.splits, out_dir);
  {
    std::ofstream stats_file(out_dir + "/stats.json", std::ios::binary);
    stats_file << result.stats.to_json() << "\n";
  }

  std::cout << (json_stats ? result.stats.to_json() + "\n"
                           : result.stats.to_text());
  for (const std::string& path : written) {
    std::cout << "wrote " << path << "\n";
  }
  bool shortfall = false;
  for (const std::string& note : result.notes) {
    std::cerr << "note: " << note << "\n";
    shortfall = shortfall || note.find("shortfall") != std::string::npos;
  }
  std::cerr << "generated in " << elapsed << " s\n";
  return shortfall ? kDataFailure : kOk;
}

int cmd_query(const std::string& facts_path, const std::string& query_text) {
  FactBase base = parse_facts_file(facts_path);
  Query q = parse_query(query_text);
  Closure closure = Closure::compute(base);
  if (q.head && q.tail) {
    QueryResult r = closure.query(make_fact(q.rel, *q.head, *q.tail));
    std::cout << to_string(r) << "\n";
    return kOk;
  }
  for (const EntityId& id : closure.bindings(q)) {
    std::cout << id << "\n";
  }
  return kOk;
}

int cmd_validate(const std::string& path, const std::string& variant_name) {
  auto variant = lexicon_variant_from_string(variant_name);
  if (!variant) throw ConfigError("unknown lexicon variant: " + variant_name);
  const Lexicon& lexicon = Lexicon::builtin(*variant);

  long long records = 0, bad_records = 0, violation_count = 0;
  for (const std::string& file : corpus_files(path)) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open " + file);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      ++records;
      std::vector<std::string> violations;
      try {
        DatasetRecord record = record_from_json_line(line, lineno);
        violations = validate_record(record, &lexicon);
      } catch (const ParseError& e) {
        violations = {std::string("parse: ") + e.what()};
      }
      if (!violations.empty()) {
        ++bad_records;
        violation_count += static_cast<long long>(violations.size());
        for (const std::string& v : violations) {
          std::cout << file << ":" << lineno << ": " << v << "\n";
        }
      }
    }
  }
  std::cout << records << " records checked, " << bad_records << " bad, "
            << violation_count << " violations\n";
  return violation_count == 0 ? kOk : kDataFailure;
}

int cmd_stats(const std::string& path, bool as_json) {
  StatsReport report = compute_stats(corpus_files(path));
  std::cout << (as_json ? report.to_json() + "\n" : report.to_text());
  return kOk;
}

int cmd_lexicon_list() {
  for (LexiconVariant v : {LexiconVariant::Simple, LexiconVariant::Full,
                           LexiconVariant::Clock}) {
    const Lexicon& lex = Lexicon::builtin(v);
    std::cout << to_string(v) << ": " << lex.expression_count()
              << " expressions over "
              << generator_relations().size() << " relations\n";
  }
  return kOk;
}

int cmd_lexicon_dump(const std::string& variant_name) {
  auto variant = lexicon_variant_from_string(variant_name);
  if (!variant) throw ConfigError("unknown lexicon variant: " + variant_name);
  std::cout << builtin_lexicon_text(*variant);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spatial question answering corpus generator"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "generate a corpus");
  std::string config_path, out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> variant, qtype;
  int threads = 0;
  bool gen_json_stats = false;
  generate->add_option("--config", config_path, "JSON config file");
  generate->add_option("--out", out_dir, "output directory");
  generate->add_option("--seed", seed, "seed override");
  generate->add_option("--variant", variant, "lexicon variant: simple|full|clock");
  generate->add_option("--qtype", qtype, "question types: yn|fr|both");
  generate->add_option("--threads", threads, "worker threads");
  generate->add_flag("--json", gen_json_stats, "print stats as JSON");

  // query
  auto* query = app.add_subcommand("query", "query a facts file");
  std::string facts_path, query_text;
  query->add_option("--facts", facts_path, "facts file, one atom per line")
      ->required();
  query->add_option("query", query_text,
                    "e.g. front(a,b) or ntppi(room,?)")
      ->required();

  // validate
  auto* validate = app.add_subcommand("validate", "validate a corpus");
  std::string validate_path, validate_variant = "full";
  validate->add_option("--in", validate_path, "corpus file or directory")
      ->required();
  validate->add_option("--variant", validate_variant,
                       "lexicon the corpus was generated with");

  // stats
  auto* stats = app.add_subcommand("stats", "report corpus statistics");
  std::string stats_path;
  bool stats_json = false;
  stats->add_option("--in", stats_path, "corpus file or directory")->required();
  stats->add_flag("--json", stats_json, "emit JSON instead of text");

  // lexicon
  auto* lexicon = app.add_subcommand("lexicon", "inspect built-in lexicons");
  lexicon->require_subcommand(1);
  auto* lexicon_list = lexicon->add_subcommand("list", "list variants");
  auto* lexicon_dump =
      lexicon->add_subcommand("dump", "print a variant in lexicon format");
  std::string dump_variant = "full";
  lexicon_dump->add_option("--variant", dump_variant, "variant to print");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (generate->parsed()) {
      return cmd_generate(config_path, out_dir, seed, variant, qtype, threads,
                          gen_json_stats);
    }
    if (query->parsed()) return cmd_query(facts_path, query_text);
    if (validate->parsed()) {
      return cmd_validate(validate_path, validate_variant);
    }
    if (stats->parsed()) return cmd_stats(stats_path, stats_json);
    if (lexicon->parsed()) {
      if (lexicon_list->parsed()) return cmd_lexicon_list();
      if (lexicon_dump->parsed()) return cmd_lexicon_dump(dump_variant);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsageError;
  } catch (const UnknownEntityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kDataFailure;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataFailure;
  }
  return kUsageError;
}
