#include <benchmark/benchmark.h>

// Defined here: the packaged benchmark_main archive is LTO bytecode from another compiler.
BENCHMARK_MAIN();
