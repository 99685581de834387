#include <benchmark/benchmark.h>

#include "delearn/equivalence.hpp"

using namespace delearn;

namespace {

// Two-proposition domain cycling through every valuation, observing q.
Domain cycle() {
  const Signature pq({"p", "q"});
  Domain d(pq, {"a", "b"});
  const auto vals = all_valuations(pq);
  for (auto v : vals) d.add_state(v, Observation{v.bits & 2u, ~v.bits & 2u});
  for (std::size_t s = 0; s < vals.size(); ++s) {
    d.add_transition(s, 0, (s + 1) % vals.size());
    d.add_transition(s, 1, s);
  }
  return d;
}

void BM_EnumerateBisimilar(benchmark::State& state) {
  const Domain d = cycle();
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_bisimilar(d));
}
BENCHMARK(BM_EnumerateBisimilar);

void BM_ObsBisimilar(benchmark::State& state) {
  const Domain d = cycle();
  const auto all = enumerate_bisimilar(d);
  for (auto _ : state) {
    for (const auto& other : all) benchmark::DoNotOptimize(obs_bisimilar(d, other));
  }
}
BENCHMARK(BM_ObsBisimilar);

void BM_TraceEquivalent(benchmark::State& state) {
  const Domain d = cycle();
  const Domain e = enumerate_bisimilar(d).back();
  for (auto _ : state) benchmark::DoNotOptimize(trace_equivalent(d, e, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_TraceEquivalent)->DenseRange(4, 12, 4);

void BM_BehaviouralEquivalenceDomain(benchmark::State& state) {
  const Domain d = cycle();
  for (auto _ : state) benchmark::DoNotOptimize(behavioural_equivalence_domain(d));
}
BENCHMARK(BM_BehaviouralEquivalenceDomain);

}  // namespace
