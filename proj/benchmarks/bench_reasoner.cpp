#include <benchmark/benchmark.h>

#include "sqa/paths.hpp"
#include "sqa/reasoner.hpp"
#include "sqa/rng.hpp"

namespace {

using namespace sqa;

std::vector<Fact> random_facts(int entities, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> ids;
  for (int i = 0; i < entities; ++i) ids.push_back("e" + std::to_string(i));
  std::vector<Fact> out;
  while (static_cast<int>(out.size()) < count) {
    int h = rng.uniform_int(0, entities - 1);
    int t = rng.uniform_int(0, entities - 1);
    if (h == t) continue;
    auto rel = static_cast<Relation>(rng.uniform_below(kRelationCount));
    if (rel == Relation::EQ) continue;
    Fact f = make_fact(rel, ids[h], ids[t]);
    bool dup = false;
    for (const Fact& g : out) dup = dup || g == f;
    if (!dup) out.push_back(f);
  }
  return out;
}

void BM_Closure(benchmark::State& state) {
  auto facts = random_facts(static_cast<int>(state.range(0)),
                            static_cast<int>(state.range(1)), 42);
  FactBase base(facts);
  for (auto _ : state) {
    Closure c = Closure::compute(base);
    benchmark::DoNotOptimize(c.size());
  }
}
BENCHMARK(BM_Closure)->Args({4, 5})->Args({8, 12})->Args({16, 30});

void BM_MinimalSupport(benchmark::State& state) {
  std::vector<Fact> chain = {make_fact(Relation::NTPP, "a", "x"),
                             make_fact(Relation::FRONT, "x", "y"),
                             make_fact(Relation::TPPI, "y", "b")};
  auto extras = random_facts(6, static_cast<int>(state.range(0)), 7);
  chain.insert(chain.end(), extras.begin(), extras.end());
  FactBase base(chain);
  Fact target = make_fact(Relation::FRONT, "a", "b");
  for (auto _ : state) {
    auto support = minimal_support(base, target);
    benchmark::DoNotOptimize(support);
  }
}
BENCHMARK(BM_MinimalSupport)->Arg(3)->Arg(6);

void BM_ComposeTable(benchmark::State& state) {
  std::vector<Relation> labels;
  Rng rng(3);
  for (int i = 0; i < 5; ++i) {
    labels.push_back(static_cast<Relation>(rng.uniform_below(kRelationCount)));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(infer_chain(labels));
  }
}
BENCHMARK(BM_ComposeTable);

}  // namespace

BENCHMARK_MAIN();
