#include "support/oracle.hpp"

#include <algorithm>

namespace sqa::oracle {

namespace {

bool in_dir_pp(Relation r) {
  return (dir_relations() | pp_relations()).contains(r);
}

bool in_sym_class(Relation r) {
  return (dis_relations() | rcc_minus_pp()).contains(r);
}

}  // namespace

std::set<Fact> naive_close(const std::vector<Fact>& given) {
  std::set<Fact> all(given.begin(), given.end());
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Fact> pos;
    for (const Fact& f : all) {
      if (!f.negated) pos.push_back(f);
    }
    auto add = [&](Fact f) {
      if (f.head != f.tail && all.insert(f).second) changed = true;
    };
    for (const Fact& f : pos) {
      if (in_dir_pp(f.rel)) {
        add(Fact{inverse(f.rel), f.head, f.tail, true});   // Not
        add(Fact{inverse(f.rel), f.tail, f.head, false});  // Inverse
      }
      if (in_sym_class(f.rel)) {
        add(Fact{f.rel, f.tail, f.head, false});  // Symmetry
      }
    }
    for (const Fact& a : pos) {
      for (const Fact& b : pos) {
        // Transitivity
        if (a.rel == b.rel && in_dir_pp(a.rel) && a.tail == b.head) {
          add(Fact{a.rel, a.head, b.tail, false});
        }
        // PPPropagation, both one-sided forms
        if (star_pp().contains(a.rel) && dir_relations().contains(b.rel) &&
            a.tail == b.head) {
          add(Fact{b.rel, a.head, b.tail, false});
        }
        if (dir_relations().contains(a.rel) && star_ppi().contains(b.rel) &&
            a.tail == b.head) {
          add(Fact{a.rel, a.head, b.tail, false});
        }
        // Combination
        for (const Fact& c : pos) {
          if (star_pp().contains(a.rel) && dir_relations().contains(b.rel) &&
              star_ppi().contains(c.rel) && a.tail == b.head &&
              b.tail == c.head) {
            add(Fact{b.rel, a.head, c.tail, false});
          }
        }
      }
    }
  }
  return all;
}

bool naive_derivable(const std::vector<Fact>& given, const Fact& target) {
  return naive_close(given).count(target) > 0;
}

int naive_min_support(const std::vector<Fact>& given, const Fact& target) {
  if (!naive_derivable(given, target)) return -1;
  const int n = static_cast<int>(given.size());
  for (int k = 1; k <= n; ++k) {
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + k, true);
    // std::prev_permutation walks all k-subsets
    do {
      std::vector<Fact> subset;
      for (int i = 0; i < n; ++i) {
        if (mask[i]) subset.push_back(given[i]);
      }
      if (naive_derivable(subset, target)) return k;
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return -1;
}

namespace {

void count_paths_from(int node, int node_count,
                      const std::vector<std::pair<int, int>>& edges,
                      std::vector<bool>& visited, int remaining,
                      long long& total) {
  if (remaining == 0) return;
  for (const auto& [u, v] : edges) {
    int next = -1;
    if (u == node) next = v;
    if (v == node) next = u;
    if (next < 0 || next >= node_count || visited[next]) continue;
    ++total;
    visited[next] = true;
    count_paths_from(next, node_count, edges, visited, remaining - 1, total);
    visited[next] = false;
  }
}

}  // namespace

long long naive_path_count(int node_count,
                           const std::vector<std::pair<int, int>>& edges,
                           int max_len) {
  long long total = 0;
  for (int start = 0; start < node_count; ++start) {
    std::vector<bool> visited(node_count, false);
    visited[start] = true;
    count_paths_from(start, node_count, edges, visited, max_len, total);
  }
  return total;
}

}  // namespace sqa::oracle
