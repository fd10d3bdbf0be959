#include <benchmark/benchmark.h>

#include "sqa/generator.hpp"
#include "sqa/paths.hpp"

namespace {

using namespace sqa;

void BM_SceneGraph(benchmark::State& state) {
  SceneConfig config;
  config.blocks = {3, 3};
  config.objects_per_block = {4, 4};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Rng rng(seed++);
    Scene scene = sample_scene(config, rng);
    SceneGraph graph = build_scene_graph(scene, config, rng);
    benchmark::DoNotOptimize(graph.edges.size());
  }
}
BENCHMARK(BM_SceneGraph);

void BM_MaxValidPath(benchmark::State& state) {
  SceneConfig config;
  config.blocks = {3, 3};
  config.objects_per_block = {4, 4};
  Rng rng(11);
  Scene scene = sample_scene(config, rng);
  SceneGraph graph = build_scene_graph(scene, config, rng);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Rng sample_rng(seed++);
    auto path = sample_max_valid_path(graph, 5, 2, sample_rng);
    benchmark::DoNotOptimize(path);
  }
}
BENCHMARK(BM_MaxValidPath);

void BM_RecordEndToEnd(benchmark::State& state) {
  GeneratorConfig config;
  const Lexicon lexicon = load_generator_lexicon(config);
  std::uint64_t index = 0;
  for (auto _ : state) {
    auto record = generate_record(config, lexicon, index++);
    benchmark::DoNotOptimize(record);
  }
}
BENCHMARK(BM_RecordEndToEnd);

}  // namespace
