#include <benchmark/benchmark.h>

#include <chrono>

#include "kgen/decider.hpp"
#include "kgen/generator.hpp"
#include "kgen/spec.hpp"
#include "kgen/text.hpp"

using namespace kgen;

namespace {

GenParams transition_params(int L, Method method) {
  GenParams gp;
  gp.d = 1;
  gp.m = 1;
  gp.N = 3;
  gp.L = L;
  gp.method = method;
  basic_to_advanced(Rational64::parse("3"), Rational64::parse("0.5"), 1, method,
                    gp.C, gp.p);
  return gp;
}

void BM_generate(benchmark::State& state) {
  GenParams gp = transition_params(int(state.range(0)), Method::kNew);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    gp.seed = seed++;
    benchmark::DoNotOptimize(generate_formula(gp));
  }
}
BENCHMARK(BM_generate)->Arg(10)->Arg(40)->Arg(120);

void BM_generate_deep(benchmark::State& state) {
  GenParams gp;
  gp.d = 2;
  gp.m = 2;
  gp.N = 4;
  gp.L = 10;
  gp.C = parse_length_spec("[[0,1,1],[0,1],[1]]");
  gp.p = parse_prop_spec("[[[],[0,1,0],[0,1,1,0]],[[],[0,1,0]]]");
  std::uint64_t seed = 1;
  for (auto _ : state) {
    gp.seed = seed++;
    benchmark::DoNotOptimize(generate_formula(gp));
  }
}
BENCHMARK(BM_generate_deep);

void BM_print_parse(benchmark::State& state) {
  GenParams gp = transition_params(40, Method::kNew);
  gp.seed = 5;
  const Formula f = generate_formula(gp);
  for (auto _ : state) benchmark::DoNotOptimize(parse_formula(print_formula(f)));
}
BENCHMARK(BM_print_parse);

void BM_decide(benchmark::State& state) {
  GenParams gp = transition_params(int(state.range(0)), Method::kNew);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    gp.seed = seed++;
    const Formula f = generate_formula(gp);
    benchmark::DoNotOptimize(k_satisfiable(f, std::chrono::seconds(10)));
  }
}
BENCHMARK(BM_decide)->Arg(10)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
