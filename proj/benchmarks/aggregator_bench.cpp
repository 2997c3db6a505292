#include <benchmark/benchmark.h>

#include <random>

#include "iotrace/aggregator/aggregator.hpp"

using namespace iotrace::aggregator;

namespace {

CallTupleSet make_tuples(std::size_t n, std::size_t vars) {
  std::mt19937_64 rng(1);
  CallTupleSet set;
  set.function = "f";
  for (std::size_t v = 0; v < vars; ++v) set.variables.push_back("v" + std::to_string(v));
  for (std::size_t i = 0; i < n; ++i) {
    CallTuple t;
    t.call_id = i + 1;
    for (const auto& v : set.variables) t.values[v] = std::to_string(rng() % 50);
    set.tuples.push_back(std::move(t));
  }
  return set;
}

void BM_Histograms(benchmark::State& state) {
  const auto set = make_tuples(static_cast<std::size_t>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(histograms(set));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Histograms)->Arg(1000)->Arg(100000);

void BM_Cofilter(benchmark::State& state) {
  const auto set = make_tuples(static_cast<std::size_t>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(cofilter(set, "v0", "7"));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Cofilter)->Arg(1000)->Arg(100000);

}  // namespace
