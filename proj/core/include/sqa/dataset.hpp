#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sqa/lexicon.hpp"
#include "sqa/record.hpp"

namespace sqa {

std::string record_to_json_line(const DatasetRecord& record);
DatasetRecord record_from_json_line(const std::string& line, int lineno = 0);

// One line-delimited JSON file per non-empty split (train.jsonl, ...),
// stable field order, no timestamps. Returns the written paths.
std::vector<std::string> write_corpus(
    const std::map<std::string, std::vector<DatasetRecord>>& splits,
    const std::string& directory);

std::vector<DatasetRecord> read_corpus_file(const std::string& path);

// Re-checks everything the generator promises: span integrity, fact id
// coverage, supporting-sentence consistency, candidate/answer shape,
// exclusion-free FR gold, k >= 2 with k == |supporting|, minimal-support
// agreement, and gold recomputation from the supporting facts alone as
// well as from the whole story. Violations are data, not errors.
std::vector<std::string> validate_record(const DatasetRecord& record,
                                         const Lexicon* lexicon = nullptr);

struct SplitStats {
  long long records = 0;
  long long questions = 0;
  long long yn_questions = 0;
  long long fr_questions = 0;
  long long yes_answers = 0;
  long long sentences = 0;
  long long tokens = 0;
  long long relations = 0;
  std::map<int, long long> k_histogram;
  std::map<std::string, long long> fr_label_presence;

  double mean_sentences() const;
  double mean_tokens() const;
  double mean_relations() const;
  std::optional<double> yes_rate() const;
  std::optional<double> fr_presence_rate(const std::string& label) const;
};

struct StatsReport {
  std::map<std::string, SplitStats> splits;

  SplitStats overall() const;
  std::string to_text() const;
  std::string to_json() const;
};

void accumulate_stats(StatsReport& report, const DatasetRecord& record);

// Streaming single pass over one JSONL file; split taken per record.
StatsReport compute_stats(const std::string& path);
StatsReport compute_stats(const std::vector<std::string>& paths);

struct RebalanceResult {
  std::vector<DatasetRecord> records;
  double achieved_rate = 0.0;
  bool feasible = true;
};

// Subsamples the majority YN answer class toward the target yes-rate
// (within two points when feasible); records left without questions are
// dropped. Deterministic under the rng seed.
RebalanceResult rebalance_yn(std::vector<DatasetRecord> records,
                             double target_yes_rate, Rng& rng);

}  // namespace sqa
