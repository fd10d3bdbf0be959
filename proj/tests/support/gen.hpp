#pragma once

#include <string>
#include <vector>

#include "sqa/fact.hpp"
#include "sqa/rng.hpp"

namespace sqa::testgen {

// Random positive ground facts over a small fixed entity pool.
class FactPoolGen {
 public:
  FactPoolGen(std::uint64_t seed, int max_entities)
      : rng_(seed), max_entities_(max_entities) {
    for (int i = 0; i < max_entities; ++i) {
      entities_.push_back(std::string(1, static_cast<char>('a' + i)));
    }
  }

  Fact random_fact() {
    int h = rng_.uniform_int(0, max_entities_ - 1);
    int t = rng_.uniform_int(0, max_entities_ - 1);
    while (t == h) t = rng_.uniform_int(0, max_entities_ - 1);
    auto rel = static_cast<Relation>(rng_.uniform_int(0, kRelationCount - 1));
    return make_fact(rel, entities_[h], entities_[t]);
  }

  std::vector<Fact> random_base(int max_facts) {
    int n = rng_.uniform_int(1, max_facts);
    std::vector<Fact> out;
    for (int i = 0; i < n; ++i) {
      Fact f = random_fact();
      bool dup = false;
      for (const Fact& g : out) dup = dup || g == f;
      if (!dup) out.push_back(f);
    }
    return out;
  }

  Rng& rng() { return rng_; }

 private:
  Rng rng_;
  int max_entities_;
  std::vector<std::string> entities_;
};

}  // namespace sqa::testgen
