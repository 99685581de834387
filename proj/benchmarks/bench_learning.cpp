#include <benchmark/benchmark.h>

#include "delearn/explicit_learner.hpp"
#include "delearn/implicit_learner.hpp"

using namespace delearn;

namespace {

Domain door() {
  const Signature pq({"p", "q"});
  Domain d(pq, {"a"});
  d.add_state(parse_valuation("p q", pq), parse_observation("q", pq));
  d.add_state(parse_valuation("~p q", pq), parse_observation("q", pq));
  d.add_state(parse_valuation("~p ~q", pq), parse_observation("~q", pq));
  d.add_transition(0, 0, 1);
  d.add_transition(1, 0, 2);
  d.add_transition(2, 0, 0);
  return d;
}

// Ring of 2^n valuation states where `a` steps forward and `b` back,
// observing only p0.
Domain ring(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  const Signature sig(names);
  Domain d(sig, {"a", "b"});
  const auto vals = all_valuations(sig);
  for (auto v : vals) d.add_state(v, Observation{v.bits & 1u, ~v.bits & 1u});
  for (std::size_t s = 0; s < vals.size(); ++s) {
    d.add_transition(s, 0, (s + 1) % vals.size());
    d.add_transition(s, 1, (s + vals.size() - 1) % vals.size());
  }
  return d;
}

void BM_LearnExplicit(benchmark::State& state) {
  const Domain d = ring(static_cast<std::size_t>(state.range(0)));
  const auto sigma = sound_complete_transitions(d);
  for (auto _ : state) benchmark::DoNotOptimize(learn_explicit(d.props, d.actions, sigma));
}
BENCHMARK(BM_LearnExplicit)->DenseRange(2, 6, 1);

void BM_HistoriesDoor(benchmark::State& state) {
  const Domain d = door();
  const auto traces = sound_complete_traces(d, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(histories(d.props, traces.front()));
}
BENCHMARK(BM_HistoriesDoor)->RangeMultiplier(2)->Range(4, 64);

void BM_HistoriesByFilterDoor(benchmark::State& state) {
  const Domain d = door();
  const auto traces = sound_complete_traces(d, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(histories_by_filter(d.props, traces.front()));
}
BENCHMARK(BM_HistoriesByFilterDoor)->DenseRange(2, 6, 2);

void BM_LearnDomains(benchmark::State& state) {
  const Domain d = door();
  const auto traces = sound_complete_traces(d);
  LearnOptions opts;
  opts.naive_product = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(learn_domains(d.props, traces, opts));
}
BENCHMARK(BM_LearnDomains)->Arg(0)->Arg(1);

}  // namespace
