// Compares the serial reference Monte Carlo estimator against the OpenMP
// kernel and verifies that both produce identical tables.

#include "exchstruct/typestats.hpp"

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace exchstruct;

int main(int argc, char** argv) {
  std::uint64_t samples = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 200000;
  const std::uint64_t seed = 1729;
  const int n = 4;

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (no OpenMP)\n");
#endif
  std::printf("%-14s %12s %12s %12s  %s\n", "structure", "samples", "serial[ms]", "parallel[ms]",
              "identical");

  for (const char* name : {"order", "betweenness", "circular", "separation", "unary-split"}) {
    BorelStructure p = builtin(name);
    auto m = std_normal();

    auto t0 = std::chrono::steady_clock::now();
    FrequencyTable serial = estimate_frequencies_serial(p, *m, n, samples, seed);
    auto t1 = std::chrono::steady_clock::now();
    FrequencyTable parallel = estimate_frequencies(p, *m, n, samples, seed);
    auto t2 = std::chrono::steady_clock::now();

    auto ms = [](auto a, auto b) {
      return std::chrono::duration_cast<std::chrono::milliseconds>(b - a).count();
    };
    bool same = serial.counts == parallel.counts && serial.total == parallel.total;
    std::printf("%-14s %12llu %12lld %12lld  %s\n", name, (unsigned long long)samples,
                (long long)ms(t0, t1), (long long)ms(t1, t2), same ? "yes" : "NO");
    if (!same) return 1;
  }
  return 0;
}
