#include <benchmark/benchmark.h>

#include "iotrace/debuginfo/debug_index.hpp"

namespace {

// The benchmark binary itself is a convenient, reasonably large input.
void BM_LoadDebugInfo(benchmark::State& state) {
  for (auto _ : state) {
    auto index = iotrace::debuginfo::load_debug_info("/proc/self/exe");
    benchmark::DoNotOptimize(index.functions().size());
  }
}
BENCHMARK(BM_LoadDebugInfo)->Unit(benchmark::kMillisecond);

void BM_ListFunctions(benchmark::State& state) {
  const auto index = iotrace::debuginfo::load_debug_info("/proc/self/exe");
  for (auto _ : state) benchmark::DoNotOptimize(index.list_functions("*bench*"));
}
BENCHMARK(BM_ListFunctions);

}  // namespace
