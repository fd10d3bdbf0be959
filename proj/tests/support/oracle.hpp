#pragma once

#include <set>
#include <vector>

#include "sqa/fact.hpp"

// Independent naive fixpoint reference for the rule set: apply every rule
// to every fact combination and iterate until nothing changes. No
// indexing, no delta sets — deliberately dumb, kept separate from the
// engine it checks.
namespace sqa::oracle {

std::set<Fact> naive_close(const std::vector<Fact>& given);

bool naive_derivable(const std::vector<Fact>& given, const Fact& target);

// Exhaustive subset search for the smallest premise set deriving target;
// -1 when not derivable from the full set.
int naive_min_support(const std::vector<Fact>& given, const Fact& target);

// All simple paths (no repeated nodes) of 1..max_len edges between every
// ordered node pair, counting parallel edges separately. Counts only.
long long naive_path_count(int node_count,
                           const std::vector<std::pair<int, int>>& edges,
                           int max_len);

}  // namespace sqa::oracle
