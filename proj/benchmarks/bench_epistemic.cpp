#include <benchmark/benchmark.h>

#include <random>

#include "delearn/epistemic.hpp"

using namespace delearn;

namespace {

Signature signature_of(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  return Signature(names);
}

// One component holding every valuation, updated by a model that flips p0
// in one event and keeps everything in the other.
void BM_ProductUpdate(benchmark::State& state) {
  const Signature sig = signature_of(static_cast<std::size_t>(state.range(0)));
  const EpistemicModel m = single_component_model(sig, all_valuations(sig));
  EventModel e;
  e.props = sig;
  e.events.push_back(Event{"set", Formula::negation(Formula::atom("p0")), 1u, 0u});
  e.events.push_back(Event{"keep", Formula::top(), 0u, 0u});
  e.partition = {{0}, {1}};
  for (auto _ : state) benchmark::DoNotOptimize(product_update(m, e));
  state.SetComplexityN(static_cast<long long>(m.size()));
}
BENCHMARK(BM_ProductUpdate)->DenseRange(2, 10, 2)->Complexity();

void BM_EvalNestedKnowledge(benchmark::State& state) {
  const Signature sig = signature_of(static_cast<std::size_t>(state.range(0)));
  const EpistemicModel m = single_component_model(sig, all_valuations(sig));
  const Formula f = parse_formula("K(p0 | ~p0) & ~Kw p1 & K(Kw p0 -> p1)");
  for (auto _ : state) benchmark::DoNotOptimize(eval_global(m, f));
}
BENCHMARK(BM_EvalNestedKnowledge)->DenseRange(2, 10, 2);

void BM_Canonicalize(benchmark::State& state) {
  std::mt19937 rng(1);
  const Signature sig = signature_of(4);
  EpistemicModel m;
  m.props = sig;
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::uniform_int_distribution<std::uint32_t> val(0, sig.full_mask());
  for (std::size_t i = 0; i < n; ++i) m.worlds.push_back(Valuation{val(rng)});
  m.partition.resize(4);
  for (std::size_t i = 0; i < n; ++i) m.partition[i % 4].push_back(i);
  for (auto _ : state) benchmark::DoNotOptimize(canonicalize(m));
}
BENCHMARK(BM_Canonicalize)->RangeMultiplier(4)->Range(16, 1024);

}  // namespace
