#pragma once

#include <optional>
#include <vector>

#include "sqa/reasoner.hpp"
#include "sqa/rng.hpp"
#include "sqa/scene.hpp"

namespace sqa {

// A chain of scene-graph edges oriented head -> ... -> tail. Edges
// traversed against their stored direction are reoriented through
// inverse(), which the rule set makes information-preserving.
struct CandidatePath {
  std::vector<Fact> edges;
  EntityId head;
  EntityId tail;
  // Relations derivable between head and tail from exactly these edges.
  RelationSet inferred;

  int length() const { return static_cast<int>(edges.size()); }
  bool valid() const { return !inferred.empty(); }
};

// All simple paths (no repeated nodes) of 1..max_len edges between every
// ordered node pair; parallel edges count separately.
std::vector<CandidatePath> enumerate_paths(const SceneGraph& graph,
                                           int max_len);

// Exact semantics of path validity: the closure of a base holding
// exactly path.edges, restricted to (head, tail).
RelationSet validate_path(const CandidatePath& path);

// Composition lookup: relations derivable between a and c from
// {r1(a,b), r2(b,c)}, computed once through the reasoner itself.
const RelationSet& compose_relations(Relation r1, Relation r2);

// Interval DP over a chain of edge labels; equals validate_path on
// node-simple chains (enforced by tests), at a fraction of the cost.
RelationSet infer_chain(const std::vector<Relation>& labels);

// Uniformly sampled valid path of maximal length (>= min_len edges)
// via single-pass reservoir over the DFS; nullopt when none exists.
std::optional<CandidatePath> sample_max_valid_path(const SceneGraph& graph,
                                                   int max_len, int min_len,
                                                   Rng& rng);

}  // namespace sqa
