#include <benchmark/benchmark.h>

// libbenchmark_main.a ships as LTO bytecode that other gcc releases reject.
BENCHMARK_MAIN();
