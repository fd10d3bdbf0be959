#include "sqa/paths.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <unordered_map>

namespace sqa {

RelationSet validate_path(const CandidatePath& path) {
  if (path.edges.empty()) return {};
  FactBase base;
  for (const Fact& f : path.edges) base.add_fact(f);
  return Closure::compute(base).relations_between(path.head, path.tail);
}

const RelationSet& compose_relations(Relation r1, Relation r2) {
  static const auto table = [] {
    std::array<std::array<RelationSet, kRelationCount>, kRelationCount> t{};
    for (Relation a : all_relations_array()) {
      for (Relation b : all_relations_array()) {
        FactBase base;
        base.add_fact(make_fact(a, "u", "v"));
        base.add_fact(make_fact(b, "v", "w"));
        t[relation_index(a)][relation_index(b)] =
            Closure::compute(base).relations_between("u", "w");
      }
    }
    return t;
  }();
  return table[relation_index(r1)][relation_index(r2)];
}

namespace {

RelationSet compose_sets(RelationSet a, RelationSet b) {
  RelationSet out;
  for (std::uint16_t abits = a.bits(); abits; abits &= (abits - 1)) {
    auto x = static_cast<Relation>(std::countr_zero(abits));
    for (std::uint16_t bbits = b.bits(); bbits; bbits &= (bbits - 1)) {
      auto y = static_cast<Relation>(std::countr_zero(bbits));
      out |= compose_relations(x, y);
    }
  }
  return out;
}

// Triangular table S[i][j] (i < j) of relations between chain positions,
// grown one column at a time as a DFS extends the path.
class ChainState {
 public:
  void push(Relation label) {
    std::size_t j = cols_.size() + 1;
    std::vector<RelationSet> col(j);
    col[j - 1] = RelationSet{label};
    for (std::size_t i = j - 1; i-- > 0;) {
      RelationSet acc;
      for (std::size_t k = i + 1; k < j; ++k) {
        acc |= compose_sets(at(i, k), col[k]);
      }
      col[i] = acc;
    }
    cols_.push_back(std::move(col));
  }

  void pop() { cols_.pop_back(); }

  // Relations between position 0 and the current end.
  RelationSet head_to_end() const { return cols_.back()[0]; }

  std::size_t length() const { return cols_.size(); }

 private:
  RelationSet at(std::size_t i, std::size_t j) const {
    return cols_[j - 1][i];
  }
  std::vector<std::vector<RelationSet>> cols_;  // cols_[j-1][i] = S[i][j]
};

struct HalfEdge {
  int to = 0;
  Relation label = Relation::DC;  // as seen walking this direction
  int edge_index = 0;
};

struct Walker {
  std::vector<std::vector<HalfEdge>> adjacency;
  std::vector<EntityId> nodes;
  std::vector<const Fact*> edge_facts;

  explicit Walker(const SceneGraph& graph) {
    std::unordered_map<std::string, int> index;
    nodes = graph.nodes;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      index.emplace(nodes[i], static_cast<int>(i));
    }
    adjacency.resize(nodes.size());
    edge_facts.reserve(graph.edges.size());
    for (const Fact& f : graph.edges) {
      int u = index.at(f.head);
      int v = index.at(f.tail);
      int e = static_cast<int>(edge_facts.size());
      edge_facts.push_back(&f);
      adjacency[u].push_back({v, f.rel, e});
      adjacency[v].push_back({u, inverse(f.rel), e});
    }
  }

  // Depth-first walk over all simple paths up to max_len edges; visit is
  // called once per path with the oriented edge stack and chain state.
  template <class Visit>
  void walk(int max_len, Visit&& visit) {
    std::vector<char> on_path(nodes.size(), 0);
    std::vector<Fact> edges;
    ChainState chain;
    for (int start = 0; start < static_cast<int>(nodes.size()); ++start) {
      on_path[start] = 1;
      extend(start, start, max_len, on_path, edges, chain, visit);
      on_path[start] = 0;
    }
  }

 private:
  template <class Visit>
  void extend(int start, int at, int remaining, std::vector<char>& on_path,
              std::vector<Fact>& edges, ChainState& chain, Visit&& visit) {
    if (remaining == 0) return;
    for (const HalfEdge& half : adjacency[at]) {
      if (on_path[half.to]) continue;
      const Fact& stored = *edge_facts[half.edge_index];
      Fact oriented =
          (stored.head == nodes[at])
              ? stored
              : make_fact(inverse(stored.rel), nodes[at], nodes[half.to]);
      edges.push_back(oriented);
      chain.push(half.label);
      on_path[half.to] = 1;
      visit(start, half.to, edges, chain);
      extend(start, half.to, remaining - 1, on_path, edges, chain, visit);
      on_path[half.to] = 0;
      chain.pop();
      edges.pop_back();
    }
  }
};

}  // namespace

RelationSet infer_chain(const std::vector<Relation>& labels) {
  ChainState chain;
  for (Relation r : labels) chain.push(r);
  return labels.empty() ? RelationSet{} : chain.head_to_end();
}

std::vector<CandidatePath> enumerate_paths(const SceneGraph& graph,
                                           int max_len) {
  std::vector<CandidatePath> out;
  Walker walker(graph);
  walker.walk(max_len, [&](int start, int end, const std::vector<Fact>& edges,
                           const ChainState& chain) {
    CandidatePath p;
    p.edges = edges;
    p.head = walker.nodes[start];
    p.tail = walker.nodes[end];
    p.inferred = chain.head_to_end();
    out.push_back(std::move(p));
  });
  return out;
}

std::optional<CandidatePath> sample_max_valid_path(const SceneGraph& graph,
                                                   int max_len, int min_len,
                                                   Rng& rng) {
  Walker walker(graph);
  std::vector<CandidatePath> reservoir(max_len + 1);
  std::vector<std::uint64_t> seen(max_len + 1, 0);
  walker.walk(max_len, [&](int start, int end, const std::vector<Fact>& edges,
                           const ChainState& chain) {
    RelationSet inferred = chain.head_to_end();
    if (inferred.empty()) return;
    int len = static_cast<int>(edges.size());
    if (len < min_len) return;
    ++seen[len];
    if (rng.uniform_below(seen[len]) == 0) {
      reservoir[len] = CandidatePath{edges, walker.nodes[start],
                                     walker.nodes[end], inferred};
    }
  });
  for (int len = max_len; len >= min_len; --len) {
    if (seen[len] > 0) return reservoir[len];
  }
  return std::nullopt;
}

}  // namespace sqa
